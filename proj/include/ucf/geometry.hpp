#pragma once

// Planar primitives used throughout: points, circles, angular measure,
// smallest enclosing circles, sectors, footprints and regular polygons.
// Every predicate on derived reals goes through a TolerancePolicy; the
// library never compares raw doubles for equality.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace ucf {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point {
    double x = 0.0;
    double y = 0.0;

    Point() = default;
    Point(double px, double py) : x(px), y(py) {}

    Point operator+(const Point& o) const { return {x + o.x, y + o.y}; }
    Point operator-(const Point& o) const { return {x - o.x, y - o.y}; }
    Point operator*(double s) const { return {x * s, y * s}; }
    bool operator==(const Point& o) const { return x == o.x && y == o.y; }

    double dot(const Point& o) const { return x * o.x + y * o.y; }
    double cross(const Point& o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    double norm2() const { return x * x + y * y; }
};

inline double dist(const Point& a, const Point& b) { return (a - b).norm(); }

inline Point unit_dir(double angle) { return {std::cos(angle), std::sin(angle)}; }

// Linear interpolation along a segment; t=1 lands exactly on b.
inline Point lerp(const Point& a, const Point& b, double t) {
    if (t >= 1.0) return b;
    if (t <= 0.0) return a;
    return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

struct Circle {
    Point center;
    double radius = 0.0;
};

// Absolute/relative tolerances for every equality and ordering predicate on
// derived quantities (lengths, angles, lexicographic sequence comparison).
// eps_abs is expected to be pre-scaled by the configuration size, typically
// 1e-9 times the SEC radius.
struct TolerancePolicy {
    double eps_abs = 1e-12;
    double eps_rel = 1e-9;

    static TolerancePolicy scaled(double sec_radius) {
        TolerancePolicy t;
        t.eps_abs = 1e-9 * std::max(sec_radius, 1e-300);
        t.eps_rel = 1e-9;
        return t;
    }

    double len_eps() const { return eps_abs; }
    // Angular resolution; angles live on the unit circle so eps_rel applies.
    double ang_eps() const { return std::max(eps_rel, 1e-12); }

    bool len_eq(double a, double b) const {
        return std::fabs(a - b) <= eps_abs + eps_rel * std::max(std::fabs(a), std::fabs(b));
    }
    bool len_lt(double a, double b) const { return a < b && !len_eq(a, b); }
    bool len_le(double a, double b) const { return a < b || len_eq(a, b); }
    bool ang_eq(double a, double b) const { return std::fabs(a - b) <= ang_eps(); }
    bool pt_eq(const Point& a, const Point& b) const { return len_eq(0.0, dist(a, b)); }
};

// ---------------------------------------------------------------------------
// Angular distance and sectors.

// Smallest angle between rays center->a and center->b, in [0, pi].
inline double angular_distance(const Point& center, const Point& a, const Point& b) {
    Point u = a - center;
    Point v = b - center;
    if (u.norm2() == 0.0 || v.norm2() == 0.0)
        throw std::invalid_argument("angular_distance: point coincides with center");
    double ang = std::atan2(std::fabs(u.cross(v)), u.dot(v));
    return std::clamp(ang, 0.0, kPi);
}

inline bool is_coradial(const Point& center, const Point& a, const Point& b,
                        const TolerancePolicy& tol) {
    return angular_distance(center, a, b) <= tol.ang_eps();
}

inline bool on_circle(const Circle& c, const Point& p, const TolerancePolicy& tol) {
    return tol.len_eq(dist(c.center, p), c.radius);
}

inline bool is_antipodal_on(const Circle& c, const Point& a, const Point& b,
                            const TolerancePolicy& tol) {
    if (!on_circle(c, a, tol) || !on_circle(c, b, tol)) return false;
    return angular_distance(c.center, a, b) >= kPi - tol.ang_eps();
}

// The sector spanned by rays center->a and center->b (the locus where
// theta(a,x) + theta(x,b) = theta(a,b)).  When the center lies on segment ab
// the two points define two half-planes; degenerate_side picks one of them
// by a witness point.
struct Sector {
    Point center;
    Point a;
    Point b;
    std::optional<Point> degenerate_side;  // present iff center lies on ab
};

inline bool sector_contains(const Sector& s, const Point& x, const TolerancePolicy& tol) {
    Point u = x - s.center;
    if (u.norm2() == 0.0)
        throw std::invalid_argument("sector_contains: x coincides with center");
    if (s.degenerate_side) {
        Point n = s.a - s.center;
        Point side = *s.degenerate_side - s.center;
        double sx = n.cross(u);
        double ss = n.cross(side);
        return sx * ss >= -tol.eps_abs * std::fabs(n.norm() * u.norm());
    }
    double tab = angular_distance(s.center, s.a, s.b);
    double tax = angular_distance(s.center, s.a, x);
    double txb = angular_distance(s.center, x, s.b);
    return std::fabs(tax + txb - tab) <= 4.0 * tol.ang_eps();
}

// ---------------------------------------------------------------------------
// Smallest enclosing circle.  Deterministic Welzl without shuffling; n is
// desk-scale so the worst case does not matter.

namespace detail {

inline Circle circle_two(const Point& a, const Point& b) {
    Point c{(a.x + b.x) * 0.5, (a.y + b.y) * 0.5};
    return {c, std::max(dist(c, a), dist(c, b))};
}

inline std::optional<Circle> circumcircle(const Point& a, const Point& b, const Point& c) {
    double d = 2.0 * ((b - a).cross(c - a));
    if (d == 0.0) return std::nullopt;
    double a2 = a.norm2(), b2 = b.norm2(), c2 = c.norm2();
    Point u{(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
            (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
    double r = std::max({dist(u, a), dist(u, b), dist(u, c)});
    return Circle{u, r};
}

inline bool in_circle(const Circle& c, const Point& p, double slack) {
    return dist(c.center, p) <= c.radius + slack;
}

inline Circle welzl_boundary(const std::vector<Point>& boundary) {
    switch (boundary.size()) {
        case 0: return {Point{0, 0}, 0.0};
        case 1: return {boundary[0], 0.0};
        case 2: return circle_two(boundary[0], boundary[1]);
        default: {
            auto cc = circumcircle(boundary[0], boundary[1], boundary[2]);
            if (cc) return *cc;
            // collinear triple: widest pair
            Circle best = circle_two(boundary[0], boundary[1]);
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j) {
                    Circle c2 = circle_two(boundary[i], boundary[j]);
                    if (c2.radius > best.radius) best = c2;
                }
            return best;
        }
    }
}

inline Circle welzl(const std::vector<Point>& pts, size_t k, std::vector<Point>& boundary,
                    double slack) {
    if (k == 0 || boundary.size() == 3) return welzl_boundary(boundary);
    Circle d = welzl(pts, k - 1, boundary, slack);
    const Point& p = pts[k - 1];
    if (in_circle(d, p, slack)) return d;
    boundary.push_back(p);
    Circle r = welzl(pts, k - 1, boundary, slack);
    boundary.pop_back();
    return r;
}

}  // namespace detail

inline Circle smallest_enclosing_circle(const std::vector<Point>& points,
                                        const TolerancePolicy& tol = {}) {
    if (points.empty())
        throw std::invalid_argument("smallest_enclosing_circle: empty input");
    for (const Point& p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("smallest_enclosing_circle: non-finite point");
    double scale = 0.0;
    for (const Point& p : points) scale = std::max({scale, std::fabs(p.x), std::fabs(p.y)});
    double slack = 1e-12 * std::max(scale, 1.0);
    std::vector<Point> boundary;
    Circle c = detail::welzl(points, points.size(), boundary, slack);
    (void)tol;
    // Grow minimally so that the enclosure postcondition holds exactly.
    double worst = c.radius;
    for (const Point& p : points) worst = std::max(worst, dist(c.center, p));
    c.radius = worst;
    return c;
}

inline Circle sed_third(const Circle& c) { return {c.center, c.radius / 3.0}; }

// Radial projection of p onto the circle (footprint) or onto the concentric
// one-third circle (anti-footprint).
inline Point footprint(const Circle& sec, const Point& p) {
    Point u = p - sec.center;
    double n = u.norm();
    if (n == 0.0) throw std::invalid_argument("footprint: point at center");
    return sec.center + u * (sec.radius / n);
}

inline Point anti_footprint(const Circle& sec, const Point& p) {
    return footprint(sed_third(sec), p);
}

// ---------------------------------------------------------------------------
// Convexity.

// True iff every point is a vertex of the convex hull and no three points are
// collinear (within tolerance).
inline bool strictly_convex_position(const std::vector<Point>& pts, const TolerancePolicy& tol) {
    size_t n = pts.size();
    if (n < 3) return false;
    Point centroid{0, 0};
    for (const Point& p : pts) centroid = centroid + p;
    centroid = centroid * (1.0 / static_cast<double>(n));
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<double> ang(n);
    double scale = 0.0;
    for (size_t i = 0; i < n; ++i) {
        Point u = pts[i] - centroid;
        if (u.norm2() == 0.0) return false;  // a point at the centroid is interior
        ang[i] = std::atan2(u.y, u.x);
        scale = std::max(scale, u.norm());
    }
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return ang[a] < ang[b]; });
    // All turns around the ordered cycle must be strictly the same orientation.
    double area_eps = tol.eps_abs * scale + 1e-12 * scale * scale;
    for (size_t i = 0; i < n; ++i) {
        const Point& a = pts[order[i]];
        const Point& b = pts[order[(i + 1) % n]];
        const Point& c = pts[order[(i + 2) % n]];
        double cr = (b - a).cross(c - a);
        if (cr <= area_eps) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Regular polygons.

struct Line {
    // Points x with normal.dot(x) == offset; |normal| == 1.
    Point normal;
    double offset = 0.0;

    static Line through(const Point& a, const Point& b) {
        Point d = b - a;
        double n = d.norm();
        if (n == 0.0) throw std::invalid_argument("Line::through: coincident points");
        Point nv{-d.y / n, d.x / n};
        return {nv, nv.dot(a)};
    }
    double signed_dist(const Point& p) const { return normal.dot(p) - offset; }
};

struct RegularPolygon {
    Point center;
    double apothem = 0.0;  // distance center -> edge
    double phase = 0.0;    // direction of edge 0's outward normal
    int n = 0;

    double circumradius() const { return apothem / std::cos(kPi / n); }
    double edge_length() const { return 2.0 * apothem * std::tan(kPi / n); }
    // Vertex j sits between edges j and j+1.
    Point vertex(int j) const {
        double a = phase + (2.0 * j + 1.0) * kPi / n;
        return center + unit_dir(a) * circumradius();
    }
    Point edge_normal(int k) const { return unit_dir(phase + kTwoPi * k / n); }
    double edge_offset(int k) const { return edge_normal(k).dot(center) + apothem; }
    // Edge k's supporting line, oriented with the normal pointing outward.
    Line edge_line(int k) const { return {edge_normal(k), edge_offset(k)}; }
    // Edge k spans vertex(k-1)..vertex(k).
    std::array<Point, 2> edge(int k) const {
        int m = ((k % n) + n) % n;
        return {vertex((m - 1 + n) % n), vertex(m)};
    }
    std::vector<Point> vertices() const {
        std::vector<Point> v(n);
        for (int j = 0; j < n; ++j) v[j] = vertex(j);
        return v;
    }
};

namespace detail {

inline double norm_angle_2pi(double a) {
    a = std::fmod(a, kTwoPi);
    if (a < 0) a += kTwoPi;
    return a;
}

// Solve rows (u_k . c) + a = rhs for (cx, cy, a) by normal equations.
struct PolyFit {
    std::vector<Point> normals;
    std::vector<double> rhs;

    void add(const Point& u, double r) {
        normals.push_back(u);
        rhs.push_back(r);
    }
    // Returns {cx, cy, apothem} or nullopt when the system is rank deficient.
    std::optional<std::array<double, 3>> solve() const {
        double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        double b[3] = {0, 0, 0};
        for (size_t i = 0; i < normals.size(); ++i) {
            double row[3] = {normals[i].x, normals[i].y, 1.0};
            for (int r = 0; r < 3; ++r) {
                for (int c = 0; c < 3; ++c) m[r][c] += row[r] * row[c];
                b[r] += row[r] * rhs[i];
            }
        }
        // Gaussian elimination with partial pivoting.
        int piv[3] = {0, 1, 2};
        double a[3][4];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) a[r][c] = m[r][c];
            a[r][3] = b[r];
        }
        for (int c = 0; c < 3; ++c) {
            int best = c;
            for (int r = c + 1; r < 3; ++r)
                if (std::fabs(a[r][c]) > std::fabs(a[best][c])) best = r;
            if (std::fabs(a[best][c]) < 1e-14) return std::nullopt;
            std::swap(a[c], a[best]);
            std::swap(piv[c], piv[best]);
            for (int r = 0; r < 3; ++r) {
                if (r == c) continue;
                double f = a[r][c] / a[c][c];
                for (int k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
            }
        }
        return std::array<double, 3>{a[0][3] / a[0][0], a[1][3] / a[1][1], a[2][3] / a[2][2]};
    }
};

}  // namespace detail

// Reconstructs the regular n-gon whose edges lie on the three given lines,
// taken as oriented support lines (normals pointing away from the polygon),
// or nullopt when slopes or spacing are incompatible.  Orientation makes the
// polygon unique: the center sits at equal depth behind all three lines, and
// the edge indices are forced by the normal directions.
inline std::optional<RegularPolygon> regular_polygon_from_lines(int n,
                                                                const std::array<Line, 3>& lines,
                                                                const TolerancePolicy& tol) {
    if (n < 3) return std::nullopt;
    double ang_eps = std::max(tol.ang_eps() * 16.0, 1e-9);
    auto norm_dir = [](const Point& v) { return std::atan2(v.y, v.x); };
    double phase = norm_dir(lines[0].normal);
    int ks[3] = {0, -1, -1};
    for (int li = 1; li <= 2; ++li) {
        for (int k = 1; k < n; ++k) {
            double want = detail::norm_angle_2pi(phase + kTwoPi * k / n);
            double have = detail::norm_angle_2pi(norm_dir(lines[li].normal));
            double d = std::fabs(want - have);
            d = std::min(d, kTwoPi - d);
            if (d <= ang_eps) ks[li] = k;
        }
        if (ks[li] < 0) return std::nullopt;
    }
    if (ks[1] == ks[2]) return std::nullopt;
    detail::PolyFit fit;
    for (int i = 0; i < 3; ++i) fit.add(unit_dir(phase + kTwoPi * ks[i] / n), lines[i].offset);
    auto sol = fit.solve();
    if (!sol) return std::nullopt;
    RegularPolygon poly{Point{(*sol)[0], (*sol)[1]}, (*sol)[2], phase, n};
    if (poly.apothem <= tol.eps_abs) return std::nullopt;
    for (int i = 0; i < 3; ++i) {
        double resid = std::fabs(poly.edge_offset(ks[i]) - lines[i].offset);
        if (resid > tol.eps_abs + 1e-9 * poly.apothem) return std::nullopt;
    }
    return poly;
}

// ---------------------------------------------------------------------------
// Similarity transforms of the plane (rotation, reflection, uniform scale,
// translation).  Used for local robot frames and for invariance tests.

struct Similarity {
    // p -> A p + t with A = scale * rotation * (optional reflection); stored
    // as the full linear part so composition and inversion stay trivial.
    double m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
    Point t;

    static Similarity make(double angle, double scale, bool reflect, const Point& trans) {
        double c = std::cos(angle), s = std::sin(angle);
        Similarity out;
        // reflection across the x-axis applied first
        double fx = 1.0, fy = reflect ? -1.0 : 1.0;
        out.m00 = scale * c * fx;
        out.m01 = scale * -s * fy;
        out.m10 = scale * s * fx;
        out.m11 = scale * c * fy;
        out.t = trans;
        return out;
    }
    Point apply(const Point& p) const {
        return {m00 * p.x + m01 * p.y + t.x, m10 * p.x + m11 * p.y + t.y};
    }
    double scale() const { return std::sqrt(std::fabs(m00 * m11 - m01 * m10)); }
    bool reflecting() const { return m00 * m11 - m01 * m10 < 0.0; }
    Similarity inverse() const {
        double det = m00 * m11 - m01 * m10;
        Similarity inv;
        inv.m00 = m11 / det;
        inv.m01 = -m01 / det;
        inv.m10 = -m10 / det;
        inv.m11 = m00 / det;
        inv.t = {-(inv.m00 * t.x + inv.m01 * t.y), -(inv.m10 * t.x + inv.m11 * t.y)};
        return inv;
    }
    std::vector<Point> apply(const std::vector<Point>& pts) const {
        std::vector<Point> out;
        out.reserve(pts.size());
        for (const Point& p : pts) out.push_back(apply(p));
        return out;
    }
};

}  // namespace ucf

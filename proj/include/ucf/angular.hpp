#pragma once

// Angular structure of a configuration about the SED center: the cyclic
// order of rays, tolerance-clustered gap values, clockwise/counterclockwise
// angle sequences, periods, analogy/strong-analogy/concordance partitions
// and angular symmetries.
//
// Gap values are canonicalized first: the multiset of raw gaps is clustered
// at the angular tolerance and every gap is replaced by its cluster
// representative.  All sequence comparisons downstream are then exact, which
// keeps lexicographic order and equality transitive.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ucf/geometry.hpp"

namespace ucf {

struct RayView {
    Point center;
    double radius = 0.0;                     // SEC radius
    std::vector<double> ray_angle;           // ascending in (-pi, pi], one per ray
    std::vector<std::vector<int>> ray_points;  // per ray, point indices sorted inner->outer
    std::vector<int> point_ray;              // point index -> ray index
    std::vector<double> gap;                 // clustered ccw gap ray i -> ray i+1 (mod m)
    std::vector<double> raw_gap;
    bool coradial = false;

    int rays() const { return static_cast<int>(ray_angle.size()); }
};

namespace detail {

inline std::vector<double> cluster_values(std::vector<double> vals, double eps) {
    // Returns, for the input order, the representative (cluster mean) of each
    // value after merging values whose sorted neighbors differ by < eps.
    std::vector<size_t> order(vals.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return vals[a] < vals[b]; });
    std::vector<double> reps(vals.size());
    size_t i = 0;
    while (i < order.size()) {
        size_t j = i;
        double sum = 0.0;
        while (j < order.size() &&
               (j == i || vals[order[j]] - vals[order[j - 1]] < eps)) {
            sum += vals[order[j]];
            ++j;
        }
        double rep = sum / static_cast<double>(j - i);
        for (size_t k = i; k < j; ++k) reps[order[k]] = rep;
        i = j;
    }
    return reps;
}

}  // namespace detail

inline RayView make_ray_view(const std::vector<Point>& pts, const Circle& sed,
                             const TolerancePolicy& tol) {
    RayView rv;
    rv.center = sed.center;
    rv.radius = sed.radius;
    int n = static_cast<int>(pts.size());
    rv.point_ray.assign(n, -1);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> ang(n), rad(n);
    for (int i = 0; i < n; ++i) {
        Point u = pts[i] - sed.center;
        rad[i] = u.norm();
        ang[i] = rad[i] == 0.0 ? 0.0 : std::atan2(u.y, u.x);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (ang[a] != ang[b]) return ang[a] < ang[b];
        return rad[a] < rad[b];
    });

    double aeps = tol.ang_eps();
    for (int idx : order) {
        if (rad[idx] == 0.0) {
            // A point at the center has no ray; the configuration is Central
            // and callers must not rely on sequences.  Give it its own slot.
            rv.ray_angle.push_back(ang[idx]);
            rv.ray_points.push_back({idx});
            rv.point_ray[idx] = rv.rays() - 1;
            rv.coradial = true;
            continue;
        }
        bool merged = false;
        if (!rv.ray_points.empty()) {
            double d = std::fabs(ang[idx] - rv.ray_angle.back());
            d = std::min(d, kTwoPi - d);
            if (d <= aeps && rad[rv.ray_points.back().back()] != 0.0) {
                rv.ray_points.back().push_back(idx);
                rv.point_ray[idx] = rv.rays() - 1;
                rv.coradial = true;
                merged = true;
            }
        }
        if (!merged) {
            rv.ray_angle.push_back(ang[idx]);
            rv.ray_points.push_back({idx});
            rv.point_ray[idx] = rv.rays() - 1;
        }
    }
    // wrap-around co-radial merge
    if (rv.rays() >= 2) {
        double d = std::fabs(rv.ray_angle.front() + kTwoPi - rv.ray_angle.back());
        d = std::min(d, kTwoPi - d);
        if (d <= aeps) {
            for (int idx : rv.ray_points.back()) {
                rv.ray_points.front().push_back(idx);
                rv.point_ray[idx] = 0;
            }
            std::sort(rv.ray_points.front().begin(), rv.ray_points.front().end(),
                      [&](int a, int b) { return rad[a] < rad[b]; });
            rv.ray_points.pop_back();
            rv.ray_angle.pop_back();
            rv.coradial = true;
        }
    }
    int m = rv.rays();
    rv.raw_gap.resize(m);
    for (int i = 0; i < m; ++i) {
        double g = rv.ray_angle[(i + 1) % m] - rv.ray_angle[i];
        if (i + 1 == m) g += kTwoPi;
        rv.raw_gap[i] = g;
    }
    if (m == 1) rv.raw_gap[0] = kTwoPi;
    rv.gap = detail::cluster_values(rv.raw_gap, aeps);
    return rv;
}

// ---------------------------------------------------------------------------
// Angle sequences.  All functions below require a non-co-radial view (each
// ray holds exactly one point) and index sequences by ray == point position
// in the cyclic order.

inline void require_not_coradial(const RayView& rv) {
    if (rv.coradial)
        throw std::logic_error("angle sequences are undefined on Co-radial sets");
}

// Clockwise sequence alpha^(p): gaps encountered walking clockwise from the
// ray r.  Clockwise is decreasing angle in the global frame.
inline std::vector<double> seq_cw(const RayView& rv, int r) {
    require_not_coradial(rv);
    int m = rv.rays();
    std::vector<double> s(m);
    for (int i = 0; i < m; ++i) s[i] = rv.gap[((r - 1 - i) % m + m) % m];
    return s;
}

// Counterclockwise sequence beta^(p): the elementwise reversal of alpha^(p).
inline std::vector<double> seq_ccw(const RayView& rv, int r) {
    require_not_coradial(rv);
    int m = rv.rays();
    std::vector<double> s(m);
    for (int i = 0; i < m; ++i) s[i] = rv.gap[(r + i) % m];
    return s;
}

inline bool seq_less(const std::vector<double>& a, const std::vector<double>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline std::vector<double> seq_mu(const RayView& rv, int r) {
    auto a = seq_cw(rv, r);
    auto b = seq_ccw(rv, r);
    return seq_less(b, a) ? b : a;
}

struct GlobalSequences {
    std::vector<double> alpha;  // lexicographically smallest clockwise sequence
    std::vector<double> beta;   // lexicographically smallest counterclockwise sequence
    std::vector<double> mu;
    int alpha_origin = 0;       // a ray attaining alpha
    int beta_origin = 0;
};

inline GlobalSequences global_sequences(const RayView& rv) {
    require_not_coradial(rv);
    GlobalSequences g;
    int m = rv.rays();
    for (int r = 0; r < m; ++r) {
        auto a = seq_cw(rv, r);
        if (r == 0 || seq_less(a, g.alpha)) {
            g.alpha = a;
            g.alpha_origin = r;
        }
        auto b = seq_ccw(rv, r);
        if (r == 0 || seq_less(b, g.beta)) {
            g.beta = b;
            g.beta_origin = r;
        }
    }
    g.mu = seq_less(g.beta, g.alpha) ? g.beta : g.alpha;
    return g;
}

// ---------------------------------------------------------------------------
// Periods.

enum class PeriodKind { Equiangular, Biangular, UniPeriodic, BiPeriodic, UniAperiodic, BiAperiodic };

struct PeriodClass {
    int period = 0;
    PeriodKind kind = PeriodKind::Equiangular;
    bool double_biangular = false;  // set by classify-level code; needs analogy classes
};

inline int gap_word_period(const RayView& rv) {
    require_not_coradial(rv);
    int m = rv.rays();
    for (int d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        bool ok = true;
        for (int i = 0; i < m && ok; ++i)
            if (rv.gap[i] != rv.gap[(i + d) % m]) ok = false;
        if (ok) return d;
    }
    return m;
}

inline PeriodClass period_class_of(const RayView& rv) {
    PeriodClass pc;
    int m = rv.rays();
    pc.period = gap_word_period(rv);
    bool mirror;
    {
        auto g = global_sequences(rv);
        mirror = g.alpha == g.beta;
    }
    if (pc.period == 1)
        pc.kind = PeriodKind::Equiangular;
    else if (pc.period == 2)
        pc.kind = PeriodKind::Biangular;
    else if (pc.period < m)
        pc.kind = mirror ? PeriodKind::BiPeriodic : PeriodKind::UniPeriodic;
    else
        pc.kind = mirror ? PeriodKind::BiAperiodic : PeriodKind::UniAperiodic;
    return pc;
}

// ---------------------------------------------------------------------------
// Partitions: analogy, strong analogy, concordance (all on ray indices).

struct RayPartition {
    std::vector<std::vector<int>> analogy;
    std::vector<std::vector<int>> strong;
    std::vector<std::vector<int>> concordance;
    std::vector<int> analogy_of;  // ray -> analogy class id
};

namespace detail {

inline std::vector<std::vector<int>> group_by_sequences(
    const RayView& rv, const std::function<std::vector<double>(int)>& key) {
    int m = rv.rays();
    std::vector<std::vector<double>> keys(m);
    for (int r = 0; r < m; ++r) keys[r] = key(r);
    std::vector<int> cls(m, -1);
    std::vector<std::vector<int>> out;
    for (int r = 0; r < m; ++r) {
        if (cls[r] >= 0) continue;
        cls[r] = static_cast<int>(out.size());
        out.push_back({r});
        for (int s = r + 1; s < m; ++s)
            if (cls[s] < 0 && keys[s] == keys[r]) {
                cls[s] = cls[r];
                out[cls[r]].push_back(s);
            }
    }
    return out;
}

struct UnionFind {
    std::vector<int> p;
    explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace detail

// Number of rays in the closed sector from ray a counterclockwise to ray b.
inline int rays_in_ccw_span(const RayView& rv, int a, int b) {
    int m = rv.rays();
    return ((b - a) % m + m) % m + 1;
}

inline RayPartition ray_partition(const RayView& rv, int n_for_concordance,
                                  const TolerancePolicy& tol) {
    require_not_coradial(rv);
    RayPartition part;
    int m = rv.rays();
    part.analogy = detail::group_by_sequences(rv, [&](int r) { return seq_mu(rv, r); });
    part.strong = detail::group_by_sequences(rv, [&](int r) { return seq_cw(rv, r); });
    part.analogy_of.assign(m, -1);
    for (size_t c = 0; c < part.analogy.size(); ++c)
        for (int r : part.analogy[c]) part.analogy_of[r] = static_cast<int>(c);

    // Concordance: angular distance 2k*pi/n with exactly k+1 rays in the
    // sector (inclusive), closed transitively.
    int n = n_for_concordance;
    detail::UnionFind uf(m);
    double aeps = tol.ang_eps() * 8.0;
    // Angular slack for "theta equals 2k*pi/n": generous against gap-cluster
    // rounding but far below half a grid step at desk scale.
    const double grid_eps = 1e-6;
    for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
            int ccw = ((b - a) % m + m) % m;
            double span = 0.0;
            for (int i = 0; i < ccw; ++i) span += rv.gap[(a + i) % m];
            double theta = std::min(span, kTwoPi - span);
            double kf = theta * n / kTwoPi;
            int k = static_cast<int>(std::lround(kf));
            if (k < 1 || std::fabs(kf - k) > grid_eps) continue;
            int count_ccw = ccw + 1;           // rays in ccw sector from a to b
            int count_cw = (m - ccw) + 1;      // rays in the complementary sector
            bool match;
            if (std::fabs(span - kPi) <= aeps) {
                match = (count_ccw == k + 1) || (count_cw == k + 1);
            } else if (span < kPi) {
                match = count_ccw == k + 1;
            } else {
                match = count_cw == k + 1;
            }
            if (match) uf.unite(a, b);
        }
    }
    std::vector<int> root_id(m, -1);
    for (int r = 0; r < m; ++r) {
        int root = uf.find(r);
        if (root_id[root] < 0) {
            root_id[root] = static_cast<int>(part.concordance.size());
            part.concordance.push_back({});
        }
        part.concordance[root_id[root]].push_back(r);
    }
    return part;
}

// ---------------------------------------------------------------------------
// Angular symmetries of a point set about the SED center.

struct AngularSymmetry {
    bool reflection = false;
    double param = 0.0;  // rotation angle, or axis angle for reflections

    double map_angle(double theta) const {
        double out = reflection ? 2.0 * param - theta : theta + param;
        out = std::fmod(out, kTwoPi);
        if (out <= -kPi) out += kTwoPi;
        if (out > kPi) out -= kTwoPi;
        return out;
    }
};

namespace detail {

// True when the symmetry maps the point multiset onto itself (angles within
// angular tolerance, radii within length tolerance).
inline bool symmetry_preserves(const RayView& rv, const std::vector<Point>& pts,
                               const std::vector<double>& radii, const AngularSymmetry& sym,
                               const TolerancePolicy& tol) {
    int m = rv.rays();
    double aeps = tol.ang_eps() * 4.0;
    for (int r = 0; r < m; ++r) {
        double target = sym.map_angle(rv.ray_angle[r]);
        // locate a ray at that angle
        int hit = -1;
        for (int s = 0; s < m; ++s) {
            double d = std::fabs(rv.ray_angle[s] - target);
            d = std::min(d, kTwoPi - d);
            if (d <= aeps) {
                hit = s;
                break;
            }
        }
        if (hit < 0) return false;
        if (rv.ray_points[r].size() != rv.ray_points[hit].size()) return false;
        for (size_t i = 0; i < rv.ray_points[r].size(); ++i)
            if (!tol.len_eq(radii[rv.ray_points[r][i]], radii[rv.ray_points[hit][i]]))
                return false;
    }
    (void)pts;
    return true;
}

}  // namespace detail

// All angular symmetries (rotations and reflections about the SED center)
// mapping the point set onto itself.  The identity rotation is included.
inline std::vector<AngularSymmetry> angular_symmetries(const RayView& rv,
                                                       const std::vector<Point>& pts,
                                                       const TolerancePolicy& tol) {
    std::vector<double> radii(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) radii[i] = dist(pts[i], rv.center);
    std::vector<AngularSymmetry> out;
    int m = rv.rays();
    if (m == 0) return out;
    for (int j = 0; j < m; ++j) {
        AngularSymmetry rot{false, 0.0};
        rot.param = rv.ray_angle[j] - rv.ray_angle[0];
        if (detail::symmetry_preserves(rv, pts, radii, rot, tol)) out.push_back(rot);
    }
    for (int j = 0; j < m; ++j) {
        AngularSymmetry ref{true, 0.0};
        ref.param = 0.5 * (rv.ray_angle[0] + rv.ray_angle[j]);
        if (detail::symmetry_preserves(rv, pts, radii, ref, tol)) out.push_back(ref);
        // the axis through the midpoint of the complementary arc
        AngularSymmetry ref2{true, ref.param + kPi / 2.0};
        if (detail::symmetry_preserves(rv, pts, radii, ref2, tol)) {
            bool dup = false;
            for (const auto& s : out) {
                if (!s.reflection) continue;
                double d = std::fabs(std::fmod(s.param - ref2.param, kPi));
                if (d < tol.ang_eps() * 4 || std::fabs(d - kPi) < tol.ang_eps() * 4) dup = true;
            }
            if (!dup) out.push_back(ref2);
        }
    }
    return out;
}

// Axes of symmetry of the point set (reflection symmetries only), as axis
// angles mod pi, each passing through the SED center.
inline std::vector<double> symmetry_axes(const RayView& rv, const std::vector<Point>& pts,
                                         const TolerancePolicy& tol) {
    std::vector<double> axes;
    for (const auto& s : angular_symmetries(rv, pts, tol)) {
        if (!s.reflection) continue;
        double a = std::fmod(s.param, kPi);
        if (a < 0) a += kPi;
        bool dup = false;
        for (double b : axes) {
            double d = std::fabs(a - b);
            d = std::min(d, kPi - d);
            if (d <= tol.ang_eps() * 8) dup = true;
        }
        if (!dup) axes.push_back(a);
    }
    std::sort(axes.begin(), axes.end());
    return axes;
}

}  // namespace ucf

#pragma once

// The Cautious Move protocol and the constructive critical-point sets that
// intercept Pre-regular configurations during radial moves.
//
// critical_points() returns, for the class of robots about to move radially,
// a finite set of points such that every Pre-regular configuration reachable
// during the move either appears as an emitted full configuration (the swarm
// provably freezes there) or is blocked by ladder points that prevent its
// formation.  The case analysis follows the period taxonomy: Equiangular
// needs nothing, Biangular uses the inscribed-polygon slide, Double-biangular
// combines a slope-pinning reconstruction with a one-parameter family
// construction, Periodic and Aperiodic cases pin the supporting polygon from
// the non-moving robots, and the six-robot companion case uses a geometric
// ladder.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "ucf/classify.hpp"
#include "ucf/targets.hpp"

namespace ucf {

enum class MoveDir { ToSec, ToSec3 };

struct CriticalPointSet {
    std::vector<Point> points;                // flattened input critical points
    std::vector<std::vector<Point>> configs;  // full n-point critical configurations

    void add_config(std::vector<Point> cfg) {
        for (const Point& p : cfg) points.push_back(p);
        configs.push_back(std::move(cfg));
    }
    void add_point(const Point& p) { points.push_back(p); }
    bool empty() const { return points.empty(); }
};

// ---------------------------------------------------------------------------
// Procedure Cautious Move: the per-observer destination.

inline std::optional<Point> cautious_destination(const Snapshot& s, const std::vector<int>& movers,
                                                 const CriticalPointSet& crit, MoveDir dir,
                                                 int observer) {
    bool is_mover = false;
    for (int m : movers)
        if (m == observer) is_mover = true;
    if (!is_mover) return std::nullopt;

    const Point c = s.center();
    const double R = s.radius();
    double my_rad = s.radial(observer);
    Point w = (s.points[observer] - c) * (1.0 / my_rad);
    double end_rad = dir == MoveDir::ToSec ? R : R / 3.0;
    Point d = c + w * end_rad;

    // Only the movers farthest from their endpoints proceed.
    for (int m : movers) {
        double r = s.radial(m);
        if (dir == MoveDir::ToSec) {
            if (r < my_rad - s.tol.eps_abs) return std::nullopt;
        } else {
            if (r > my_rad + s.tol.eps_abs) return std::nullopt;
        }
    }

    // Transpose every critical point onto my path, keep the endpoint, then
    // close under pair midpoints.
    std::vector<double> radii;
    radii.push_back(end_rad);
    for (const Point& p : crit.points) {
        double r = dist(p, c);
        if (r <= R + s.tol.eps_abs) radii.push_back(r);
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end(),
                            [&](double a, double b) { return std::fabs(a - b) <= s.tol.eps_abs; }),
                radii.end());
    std::vector<double> closed = radii;
    for (size_t i = 0; i < radii.size(); ++i)
        for (size_t j = i + 1; j < radii.size(); ++j) closed.push_back((radii[i] + radii[j]) / 2.0);
    std::sort(closed.begin(), closed.end());
    closed.erase(std::unique(closed.begin(), closed.end(),
                             [&](double a, double b) { return std::fabs(a - b) <= s.tol.eps_abs; }),
                 closed.end());

    // Nearest critical point strictly ahead along the move direction.
    double best = end_rad;
    double best_gap = std::fabs(end_rad - my_rad);
    for (double r : closed) {
        bool ahead = dir == MoveDir::ToSec ? (r > my_rad + s.tol.eps_abs && r <= end_rad + s.tol.eps_abs)
                                           : (r < my_rad - s.tol.eps_abs && r >= end_rad - s.tol.eps_abs);
        if (!ahead) continue;
        double gap = std::fabs(r - my_rad);
        if (gap < best_gap) {
            best_gap = gap;
            best = r;
        }
    }
    if (std::fabs(best - my_rad) <= s.tol.eps_abs) return std::nullopt;  // already at the endpoint
    return c + w * best;
}

// ---------------------------------------------------------------------------
// Critical point construction.

namespace detail {

struct MoverPath {
    int point = -1;
    Point dir;       // unit ray direction from the SED center
    double cur = 0;  // current radius
    double end = 0;  // endpoint radius
};

inline double prog(double radius, MoveDir dir) { return dir == MoveDir::ToSec ? radius : -radius; }

// One-parameter family of regular n-gons satisfying a rank-2 line/point
// constraint system (center and apothem affine in the parameter).
struct PolygonFamily {
    int n = 0;
    double phase = 0;
    Point c0, dc;       // center(s) = c0 + s*dc
    double a0 = 0, da = 0;  // apothem(s) = a0 + s*da

    Point center(double s) const { return c0 + dc * s; }
    double apothem(double s) const { return a0 + s * da; }
};

// Affine value v(s) = a + b*s.
struct Affine {
    double a = 0, b = 0;
    double at(double s) const { return a + b * s; }
};

struct SRange {
    double lo = -1e300, hi = 1e300;
    void cut_ge(const Affine& f, double rhs) {  // f(s) >= rhs
        if (std::fabs(f.b) < 1e-13) {
            if (f.a < rhs) lo = 1, hi = 0;
            return;
        }
        double s = (rhs - f.a) / f.b;
        if (f.b > 0)
            lo = std::max(lo, s);
        else
            hi = std::min(hi, s);
    }
    void cut_le(const Affine& f, double rhs) {
        Affine g{-f.a, -f.b};
        cut_ge(g, -rhs);
    }
    bool empty() const { return lo > hi; }
};

// Builds the family from two independent rows (u.c + a = rhs).
inline std::optional<PolygonFamily> solve_family(int n, double phase,
                                                 const std::vector<Point>& us,
                                                 const std::vector<double>& rhs) {
    // Find two independent rows.
    int r1 = -1, r2 = -1;
    for (size_t i = 0; i < us.size() && r2 < 0; ++i) {
        if (r1 < 0) {
            r1 = static_cast<int>(i);
            continue;
        }
        double d0 = us[i].x - us[r1].x, d1 = us[i].y - us[r1].y;
        if (std::fabs(d0) + std::fabs(d1) > 1e-9) r2 = static_cast<int>(i);
    }
    if (r1 < 0 || r2 < 0) return std::nullopt;
    double m0[3] = {us[r1].x, us[r1].y, 1.0};
    double m1[3] = {us[r2].x, us[r2].y, 1.0};
    // null vector = cross product of the two rows
    double nv[3] = {m0[1] * m1[2] - m0[2] * m1[1], m0[2] * m1[0] - m0[0] * m1[2],
                    m0[0] * m1[1] - m0[1] * m1[0]};
    double nn = std::sqrt(nv[0] * nv[0] + nv[1] * nv[1] + nv[2] * nv[2]);
    if (nn < 1e-12) return std::nullopt;
    for (double& v : nv) v /= nn;
    // particular solution: solve 3x3 with the null-direction pinned to zero
    double A[3][4] = {{m0[0], m0[1], m0[2], rhs[r1]},
                      {m1[0], m1[1], m1[2], rhs[r2]},
                      {nv[0], nv[1], nv[2], 0.0}};
    for (int cpos = 0; cpos < 3; ++cpos) {
        int bestr = cpos;
        for (int r = cpos + 1; r < 3; ++r)
            if (std::fabs(A[r][cpos]) > std::fabs(A[bestr][cpos])) bestr = r;
        if (std::fabs(A[bestr][cpos]) < 1e-13) return std::nullopt;
        std::swap(A[cpos], A[bestr]);
        for (int r = 0; r < 3; ++r) {
            if (r == cpos) continue;
            double f = A[r][cpos] / A[cpos][cpos];
            for (int k = cpos; k < 4; ++k) A[r][k] -= f * A[cpos][k];
        }
    }
    PolygonFamily fam;
    fam.n = n;
    fam.phase = phase;
    fam.c0 = {A[0][3] / A[0][0], A[1][3] / A[1][1]};
    fam.a0 = A[2][3] / A[2][2];
    fam.dc = {nv[0], nv[1]};
    fam.da = nv[2];
    // residual check against the remaining rows
    for (size_t i = 0; i < us.size(); ++i) {
        double resid = us[i].x * fam.c0.x + us[i].y * fam.c0.y + fam.a0 - rhs[i];
        double along = us[i].x * nv[0] + us[i].y * nv[1] + nv[2];
        if (std::fabs(along) > 1e-9) continue;  // varies along the family
        if (std::fabs(resid) > 1e-7 * (std::fabs(rhs[i]) + 1.0)) return std::nullopt;
    }
    return fam;
}

}  // namespace detail

// Forward declaration used by the constructions below for verification.
inline bool config_is_preregular(const Snapshot& proto, std::vector<Point> cfg) {
    try {
        Snapshot sn = make_snapshot(std::move(cfg));
        return is_pre_regular(sn).has_value();
    } catch (const std::invalid_argument&) {
        (void)proto;
        return false;
    }
}

namespace detail {

// Generic construction: pin the supporting polygon from non-moving robots
// under each alternating companion matching; at most one candidate per
// matching and orientation survives verification.  Rank-deficient systems
// are delegated to the family handler.
inline void generic_matching_configs(const Snapshot& s, const std::vector<MoverPath>& movers,
                                     MoveDir dir, CriticalPointSet& out);

// One-parameter family handler covering the Double-biangular n=8 interval
// construction and the Aperiodic n=6 companion case (with its ladder).
inline void family_configs(const Snapshot& s, const std::vector<MoverPath>& movers, MoveDir dir,
                           const PolygonFamily& fam, const std::vector<int>& mover_edges,
                           CriticalPointSet& out);

inline std::vector<MoverPath> build_paths(const Snapshot& s, const std::vector<int>& movers,
                                          MoveDir dir) {
    std::vector<MoverPath> out;
    double end = dir == MoveDir::ToSec ? s.radius() : s.radius() / 3.0;
    for (int m : movers) {
        MoverPath mp;
        mp.point = m;
        mp.cur = s.radial(m);
        if (std::fabs(mp.cur - end) <= s.tol.eps_abs) continue;  // already at the endpoint
        mp.dir = (s.points[m] - s.center()) * (1.0 / mp.cur);
        mp.end = end;
        out.push_back(mp);
    }
    return out;
}

inline bool is_effective_mover(const std::vector<MoverPath>& paths, int point) {
    for (const auto& p : paths)
        if (p.point == point) return true;
    return false;
}

inline void generic_matching_configs(const Snapshot& s, const std::vector<MoverPath>& movers,
                                     MoveDir dir, CriticalPointSet& out) {
    int n = s.n();
    const RayView& rv = s.rays;
    if (rv.coradial || rv.rays() != n) return;
    Point X = s.center();

    for (int parity = 0; parity < 2; ++parity) {
        // pair j occupies polygon edge 2j
        std::vector<Point> us;
        std::vector<double> rhs;
        std::vector<std::pair<int, int>> pair_pts(n / 2);
        int pinned = -1;  // first fully non-moving pair
        for (int j = 0; j < n / 2; ++j) {
            int ra = (2 * j + parity) % n;
            int rb = (2 * j + 1 + parity) % n;
            pair_pts[j] = {rv.ray_points[ra][0], rv.ray_points[rb][0]};
            bool am = is_effective_mover(movers, pair_pts[j].first);
            bool bm = is_effective_mover(movers, pair_pts[j].second);
            if (!am && !bm && pinned < 0) pinned = j;
        }
        if (pinned < 0) continue;  // no pinned line; special branches own this case
        Line base = Line::through(s.points[pair_pts[pinned].first], s.points[pair_pts[pinned].second]);
        for (int orient = 0; orient < 2; ++orient) {
            double phase = std::atan2(base.normal.y, base.normal.x) + (orient ? kPi : 0.0) -
                           kTwoPi * (2 * pinned) / n;
            us.clear();
            rhs.clear();
            std::vector<int> mover_edge(movers.size(), -1);
            for (int j = 0; j < n / 2; ++j) {
                Point u = unit_dir(phase + kTwoPi * (2 * j) / n);
                auto [pa, pb] = pair_pts[j];
                bool am = is_effective_mover(movers, pa);
                bool bm = is_effective_mover(movers, pb);
                if (!am) {
                    us.push_back(u);
                    rhs.push_back(u.dot(s.points[pa]));
                }
                if (!bm) {
                    us.push_back(u);
                    rhs.push_back(u.dot(s.points[pb]));
                }
                for (size_t mi = 0; mi < movers.size(); ++mi) {
                    if (movers[mi].point == pa || movers[mi].point == pb)
                        mover_edge[mi] = 2 * j;
                }
            }
            PolyFit fit;
            for (size_t i = 0; i < us.size(); ++i) fit.add(us[i], rhs[i]);
            auto sol = fit.solve();
            if (!sol) {
                auto fam = solve_family(n, phase, us, rhs);
                if (fam) family_configs(s, movers, dir, *fam, mover_edge, out);
                continue;
            }
            RegularPolygon poly{Point{(*sol)[0], (*sol)[1]}, (*sol)[2], phase, n};
            if (poly.apothem <= s.tol.eps_abs) continue;
            // residuals
            bool ok = true;
            for (size_t i = 0; i < us.size() && ok; ++i)
                if (std::fabs(us[i].dot(poly.center) + poly.apothem - rhs[i]) >
                    1e-7 * s.radius())
                    ok = false;
            if (!ok) continue;
            // movers on their edges, within the remaining path
            std::vector<Point> cfg = s.points;
            for (size_t mi = 0; mi < movers.size() && ok; ++mi) {
                Point u = poly.edge_normal(mover_edge[mi]);
                double denom = movers[mi].dir.dot(u);
                if (std::fabs(denom) < 1e-12) {
                    ok = false;
                    break;
                }
                double rho = (poly.edge_offset(mover_edge[mi]) - X.dot(u)) / denom;
                double lo = std::min(movers[mi].cur, movers[mi].end) - s.tol.eps_abs * 4;
                double hi = std::max(movers[mi].cur, movers[mi].end) + s.tol.eps_abs * 4;
                if (rho < lo || rho > hi) {
                    ok = false;
                    break;
                }
                cfg[movers[mi].point] = X + movers[mi].dir * rho;
            }
            if (!ok) continue;
            if (!config_is_preregular(s, cfg)) continue;
            out.add_config(std::move(cfg));
        }
    }
}

inline void family_configs(const Snapshot& s, const std::vector<MoverPath>& movers, MoveDir dir,
                           const PolygonFamily& fam, const std::vector<int>& mover_edges,
                           CriticalPointSet& out) {
    int n = s.n();
    Point X = s.center();
    double R = s.radius();
    SRange zone;
    // apothem positive, every robot outside SED/3 and inside SED
    zone.cut_ge({fam.a0, fam.da}, s.tol.eps_abs);

    // Fixed points must stay within their edge extents; movers' levels are
    // affine in the family parameter.
    std::vector<Affine> level(movers.size());
    auto tangent_extent_ok = [&](const Point& u, const Affine& toff, SRange& z) {
        // |tangential offset(s)| <= halflen(s); tangential = toff, halflen =
        // apothem * tan(pi/n)
        double t = std::tan(kPi / n);
        Affine half{fam.a0 * t, fam.da * t};
        // toff <= half  and  -toff <= half
        Affine diff{half.a - toff.a, half.b - toff.b};
        z.cut_ge(diff, 0.0);
        Affine sum{half.a + toff.a, half.b + toff.b};
        z.cut_ge(sum, 0.0);
        (void)u;
    };
    // non-moving robots: identify their edges by proximity under the family
    // at a trial parameter (their line constraints already shaped the family,
    // so only tangential extents matter).
    for (int i = 0; i < s.n(); ++i) {
        bool moving = false;
        for (const auto& mp : movers)
            if (mp.point == i) moving = true;
        if (moving) continue;
        // pick the nearest edge at s=0 and keep it; the family translates
        int best_e = 0;
        double best_d = 1e300;
        for (int e = 0; e < n; ++e) {
            Point u = unit_dir(fam.phase + kTwoPi * e / n);
            double d0 = std::fabs(u.dot(s.points[i]) - (u.dot(fam.c0) + fam.a0));
            double d1 = std::fabs(u.dot(s.points[i]) - (u.dot(fam.center(1.0)) + fam.apothem(1.0)));
            double d = std::min(d0, d1);
            if (d < best_d) {
                best_d = d;
                best_e = e;
            }
        }
        Point u = unit_dir(fam.phase + kTwoPi * best_e / n);
        Point tau{-u.y, u.x};
        // tangential offset of fixed p from center(s):  tau.(p - c0) - s tau.dc
        Affine toff{tau.dot(s.points[i] - fam.c0), -tau.dot(fam.dc)};
        tangent_extent_ok(u, toff, zone);
        // the robot must lie on the edge line for the constraint system; the
        // family was built from those rows, so no extra cut is needed here.
    }
    for (size_t mi = 0; mi < movers.size(); ++mi) {
        Point u = unit_dir(fam.phase + kTwoPi * mover_edges[mi] / n);
        double denom = movers[mi].dir.dot(u);
        if (std::fabs(denom) < 1e-12) return;
        // rho(s) = (u.c(s) + a(s) - u.X) / denom
        level[mi] = {(u.dot(fam.c0) + fam.a0 - u.dot(X)) / denom, (u.dot(fam.dc) + fam.da) / denom};
        // stay on the path segment geometry: outside SED/3, inside SED
        zone.cut_ge(level[mi], R / 3.0 + s.tol.eps_abs);
        zone.cut_le(level[mi], R);
        // tangential extent of the mover position on its edge
        Point tau{-u.y, u.x};
        // position(s) = X + rho(s) * dir; toff = tau.(X - c(s)) + rho(s) tau.dir
        double td = tau.dot(movers[mi].dir);
        Affine toff{tau.dot(X - fam.c0) + level[mi].a * td, -tau.dot(fam.dc) + level[mi].b * td};
        tangent_extent_ok(u, toff, zone);
    }
    if (zone.empty()) return;

    // Orient the parameter so the first mover's progress increases with s.
    double flip = prog(level[0].b, dir) < 0 ? -1.0 : 1.0;
    auto lv = [&](size_t mi, double sp) { return level[mi].at(flip * sp); };
    double zlo = flip > 0 ? zone.lo : -zone.hi;
    double zhi = flip > 0 ? zone.hi : -zone.lo;
    if (std::fabs(level[0].b) < 1e-12) return;  // degenerate; nothing reachable to pin

    // Reachability window in s: movers only advance along their paths.
    double s_lo = zlo, s_hi = zhi;
    double s_pin = -1e300;  // the binding advancing mover's parameter
    size_t pin_mi = 0;
    bool pin_set = false;
    for (size_t mi = 0; mi < movers.size(); ++mi) {
        double b = prog(level[mi].b * flip, dir);
        double cur_p = prog(movers[mi].cur, dir);
        if (std::fabs(b) < 1e-12) {
            // constant level along the family: must already match
            if (std::fabs(prog(level[mi].a, dir) - cur_p) > s.tol.eps_abs * 8 &&
                prog(level[mi].a, dir) < cur_p)
                return;
            continue;
        }
        double si = (cur_p - prog(level[mi].a, dir)) / b;
        if (b > 0) {
            s_lo = std::max(s_lo, si);
            if (si > s_pin) {
                s_pin = si;
                pin_mi = mi;
                pin_set = true;
            }
        } else {
            s_hi = std::min(s_hi, si);
        }
    }
    if (s_lo > s_hi + 1e-12 * (1 + std::fabs(s_lo))) return;  // unreachable
    if (!pin_set) return;

    auto emit_at = [&](double sp) {
        std::vector<Point> cfg = s.points;
        for (size_t mi = 0; mi < movers.size(); ++mi) cfg[movers[mi].point] = X + movers[mi].dir * lv(mi, sp);
        out.add_config(std::move(cfg));
    };

    bool all_same_sign = true;
    for (size_t mi = 0; mi < movers.size(); ++mi)
        if (prog(level[mi].b * flip, dir) < 0) all_same_sign = false;

    if (!all_same_sign) {
        // Opposed movers (Double-biangular n=8 shape): funnel everyone to the
        // midpoint configuration when nobody is past it, else pin at the most
        // advanced mover.
        double s_mid = (zlo + zhi) / 2.0;
        double target = std::max(s_pin, std::min(s_mid, s_hi));
        target = std::max(target, zlo);
        if (target > s_hi + 1e-12) return;
        emit_at(std::max(target, s_lo));
        return;
    }

    // Same-direction movers (two-robot companion case).
    if (s_pin >= zlo - 1e-12) {
        // The binding mover is inside the feasible zone: a single pinned
        // configuration, provided the binding mover will wait (it is the one
        // nearest its endpoint).  Otherwise it keeps advancing and a ladder
        // is required to prevent transient formations.
        bool pin_waits = true;
        for (size_t mi = 0; mi < movers.size(); ++mi) {
            if (mi == pin_mi) continue;
            if (prog(movers[pin_mi].cur, dir) < prog(movers[mi].cur, dir) - s.tol.eps_abs)
                pin_waits = false;
        }
        if (pin_waits) {
            emit_at(std::min(s_pin, s_hi));
            return;
        }
        // Ladder: orbit of the partner map on the trailing mover's path.
        size_t lead = pin_mi;
        for (size_t mi = 0; mi < movers.size(); ++mi) {
            if (mi == lead) continue;
            double b_lead = level[lead].b * flip;
            double b_me = level[mi].b * flip;
            if (std::fabs(b_me) < 1e-14) continue;
            double lam = std::fabs(b_lead / b_me);
            double start = lv(mi, zlo);
            double endr = movers[mi].end;
            if (lam <= 1.0 + 1e-9) continue;  // degenerate ladder; pinned case covers it
            double r = start;
            for (int k = 0; k < 64; ++k) {
                out.add_point(X + movers[mi].dir * r);
                double next = dir == MoveDir::ToSec ? r * lam : r / lam;
                bool past = dir == MoveDir::ToSec ? next >= endr : next <= endr;
                if (past) break;
                r = next;
            }
        }
        return;
    }
    // Everyone before the zone: funnel to the zone boundary configuration.
    emit_at(zlo);
}

// ---------------------------------------------------------------------------
// Biangular construction (strong classes; inscribed polygon slide).

inline void biangular_configs(const Snapshot& s, const std::vector<MoverPath>& movers,
                              const std::vector<int>& mover_pts, MoveDir dir,
                              CriticalPointSet& out) {
    if (dir != MoveDir::ToSec) return;
    int n = s.n();
    auto part = ray_partition(s.rays, n, s.tol);
    // strong classes on the angular structure
    std::vector<int> strong_of(n, -1);
    for (size_t c = 0; c < part.strong.size(); ++c)
        for (int r : part.strong[c]) strong_of[s.rays.ray_points[r][0]] = static_cast<int>(c);
    // Are all on-SEC robots in one strong class?
    int sec_class = -2;
    for (int i = 0; i < n; ++i) {
        if (!s.on_sec(i)) continue;
        if (sec_class == -2)
            sec_class = strong_of[i];
        else if (strong_of[i] != sec_class)
            sec_class = -1;
    }
    if (sec_class == -1) return;  // two non-strongly-analogous robots on SEC: nothing below SEC

    int mover_class = strong_of[mover_pts[0]];
    if (mover_class == sec_class) {
        // the moving strong class still has members reaching SEC: the
        // supporting polygon is pinned by the generic construction
        generic_matching_configs(s, movers, dir, out);
        return;
    }
    // The other strong class is complete on SEC and forms a regular n/2-gon;
    // P is the regular n-gon inscribed in SEC having those robots among its
    // vertices.
    std::vector<double> sec_angles;
    for (int i = 0; i < n; ++i)
        if (s.on_sec(i) && strong_of[i] == sec_class) {
            Point u = s.points[i] - s.center();
            sec_angles.push_back(std::atan2(u.y, u.x));
        }
    if (static_cast<int>(sec_angles.size()) != n / 2) return;
    std::sort(sec_angles.begin(), sec_angles.end());
    std::vector<double> pverts = sec_angles;
    for (size_t i = 0; i < sec_angles.size(); ++i) {
        double nxt = i + 1 < sec_angles.size() ? sec_angles[i + 1] : sec_angles[0] + kTwoPi;
        pverts.push_back((sec_angles[i] + nxt) / 2.0);
    }
    std::sort(pverts.begin(), pverts.end());
    std::vector<Point> verts;
    for (double a : pverts) verts.push_back(s.center() + unit_dir(a) * s.radius());

    auto ray_hits_polygon = [&](const Point& w) -> std::optional<double> {
        // distance from center to the polygon boundary along direction w
        for (int e = 0; e < n; ++e) {
            Point a = verts[e], b = verts[(e + 1) % n];
            Point u = b - a;
            double denom = w.cross(u);
            if (std::fabs(denom) < 1e-15) continue;
            // X + t w = a + v u
            Point d = a - s.center();
            double t = d.cross(u) / denom;
            double v = d.cross(w) / denom;
            if (t > 0 && v >= -1e-9 && v <= 1 + 1e-9) return t;
        }
        return std::nullopt;
    };

    bool all_inside = true;
    double dmax = 0;
    for (const auto& mp : movers) {
        auto hit = ray_hits_polygon(mp.dir);
        if (!hit || mp.cur > *hit + s.tol.eps_abs) all_inside = false;
        dmax = std::max(dmax, mp.cur);
    }
    if (all_inside) {
        std::vector<Point> cfg = s.points;
        bool ok = true;
        for (const auto& mp : movers) {
            auto hit = ray_hits_polygon(mp.dir);
            if (!hit) {
                ok = false;
                break;
            }
            cfg[mp.point] = s.center() + mp.dir * *hit;
        }
        if (ok) out.add_config(std::move(cfg));
    } else {
        // Equidistance gate at the most advanced mover's radius, plus the
        // polygon-boundary configuration for whoever can still reach it.
        std::vector<Point> gate = s.points;
        for (const auto& mp : movers) gate[mp.point] = s.center() + mp.dir * dmax;
        out.add_config(std::move(gate));
        std::vector<Point> cfg = s.points;
        bool ok = true;
        for (const auto& mp : movers) {
            auto hit = ray_hits_polygon(mp.dir);
            if (!hit || mp.cur > *hit + s.tol.eps_abs) {
                ok = false;
                break;
            }
            cfg[mp.point] = s.center() + mp.dir * *hit;
        }
        if (ok) out.add_config(std::move(cfg));
    }
}

// ---------------------------------------------------------------------------
// Double-biangular: the mixed matching pins edge slopes through the
// stationary class (the angle at each stationary robot is determined by the
// gap structure), yielding at most one configuration.

inline void double_biangular_mixed(const Snapshot& s, const std::vector<MoverPath>& movers,
                                   MoveDir dir, CriticalPointSet& out) {
    int n = s.n();
    const RayView& rv = s.rays;
    Point X = s.center();
    // stationary robots all on SEC, pattern around the circle: pairs of the
    // stationary class alternate with pairs of the moving class
    std::vector<bool> moving(n, false);
    for (const auto& mp : movers) moving[mp.point] = true;
    // locate a stationary pair (adjacent rays both stationary)
    int m = rv.rays();
    if (m != n) return;
    int p0r = -1;
    for (int r = 0; r < m; ++r) {
        int a = rv.ray_points[r][0], b = rv.ray_points[(r + 1) % m][0];
        if (!moving[a] && !moving[b]) {
            p0r = r;
            break;
        }
    }
    if (p0r < 0) return;
    int p0 = rv.ray_points[p0r][0];
    int p1 = rv.ray_points[(p0r + 1) % m][0];
    double alpha = angular_distance(X, s.points[p0], s.points[p1]);
    // Angle between the ray to the center and the edge through each
    // stationary point, fixed by the Double-biangular structure.
    double beta_angle = kPi * (n + 4.0) / (2.0 * n) - alpha / 2.0;
    // Build line constraints: for each stationary pair (q0, q1) the edge of
    // q0 heads toward the shared vertex between q0 and q1 and vice versa.
    std::vector<Point> us;
    std::vector<double> rhs;
    double phase = 0;
    bool phase_set = false;
    for (int r = 0; r < m; ++r) {
        int a = rv.ray_points[r][0], b = rv.ray_points[(r + 1) % m][0];
        if (moving[a] || moving[b]) continue;
        for (int side = 0; side < 2; ++side) {
            int q = side == 0 ? a : b;
            int other = side == 0 ? b : a;
            Point to_c = (X - s.points[q]) * (1.0 / dist(X, s.points[q]));
            // rotate toward the companion-side vertex
            Point u_other = s.points[other] - s.points[q];
            double sgn = to_c.cross(u_other) >= 0 ? 1.0 : -1.0;
            double ca = std::cos(sgn * beta_angle), sa = std::sin(sgn * beta_angle);
            Point edir{to_c.x * ca - to_c.y * sa, to_c.x * sa + to_c.y * ca};
            Point nrm{-edir.y, edir.x};
            // outward orientation: positive radial component at q
            if (nrm.dot(s.points[q] - X) < 0) nrm = nrm * -1.0;
            us.push_back(nrm);
            rhs.push_back(nrm.dot(s.points[q]));
        }
        if (!phase_set) {
            phase_set = true;
            phase = std::atan2(us.back().y, us.back().x);
        }
    }
    if (us.size() < 3) return;
    PolyFit fit;
    for (size_t i = 0; i < us.size(); ++i) fit.add(us[i], rhs[i]);
    auto sol = fit.solve();
    if (!sol) return;
    RegularPolygon poly{Point{(*sol)[0], (*sol)[1]}, (*sol)[2], phase, n};
    if (poly.apothem <= s.tol.eps_abs) return;
    for (size_t i = 0; i < us.size(); ++i) {
        double resid = std::fabs(us[i].dot(poly.center) + poly.apothem - rhs[i]);
        if (resid > 1e-7 * s.radius()) return;
    }
    // movers slide to the polygon boundary along their rays
    std::vector<Point> cfg = s.points;
    auto vtx = poly.vertices();
    for (const auto& mp : movers) {
        double best_t = -1;
        for (int e = 0; e < n; ++e) {
            Point a = vtx[e], b = vtx[(e + 1) % n];
            Point u = b - a;
            double denom = mp.dir.cross(u);
            if (std::fabs(denom) < 1e-15) continue;
            Point d = a - X;
            double tt = d.cross(u) / denom;
            double v = d.cross(mp.dir) / denom;
            if (tt > 0 && v >= -1e-9 && v <= 1 + 1e-9) best_t = tt;
        }
        if (best_t < 0) return;
        double lo = std::min(mp.cur, mp.end) - s.tol.eps_abs * 4;
        double hi = std::max(mp.cur, mp.end) + s.tol.eps_abs * 4;
        if (best_t < lo || best_t > hi) return;
        cfg[mp.point] = X + mp.dir * best_t;
    }
    (void)dir;
    if (config_is_preregular(s, cfg)) out.add_config(std::move(cfg));
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline CriticalPointSet critical_points(const Snapshot& s, const std::vector<int>& movers,
                                        MoveDir dir) {
    CriticalPointSet out;
    int n = s.n();
    if (n % 2 != 0 || n < 6) return out;
    if (s.rays.coradial) return out;
    auto paths = detail::build_paths(s, movers, dir);
    if (paths.empty()) return out;
    std::vector<int> mover_pts;
    for (const auto& mp : paths) mover_pts.push_back(mp.point);
    // No configuration with a robot in SED/3 can be Pre-regular; a robot
    // that stays there for the whole move makes every critical point moot.
    for (int i = 0; i < n; ++i) {
        if (detail::is_effective_mover(paths, i)) continue;
        if (s.radial(i) <= s.radius() / 3.0 + s.tol.eps_abs) return out;
    }

    PeriodClass pc = period_class(s);
    switch (pc.kind) {
        case PeriodKind::Equiangular:
            return out;  // nothing can be Pre-regular below SEC
        case PeriodKind::Biangular:
            detail::biangular_configs(s, paths, mover_pts, dir, out);
            return out;
        default:
            break;
    }
    detail::generic_matching_configs(s, paths, dir, out);
    if (pc.double_biangular) {
        // the mixed matching has no pinned pair when the stationary class is
        // complete on SEC; its slope construction covers that case
        bool stationary_on_sec = true;
        std::vector<bool> moving(n, false);
        for (int p : mover_pts) moving[p] = true;
        for (int i = 0; i < n; ++i)
            if (!moving[i] && !s.on_sec(i)) stationary_on_sec = false;
        if (stationary_on_sec) detail::double_biangular_mixed(s, paths, dir, out);
    }
    return out;
}

}  // namespace ucf

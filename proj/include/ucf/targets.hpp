#pragma once

// Target sets, point-target correspondences, movable/satisfied/improvable
// analogy classes, locked-configuration analysis, walkers and finish sets.
// All angular reasoning happens on SEC-projected working sets.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ucf/classify.hpp"

namespace ucf {

struct TargetAssignment {
    std::vector<Point> targets;  // n points on SEC forming a Regular set
    std::vector<int> corr;       // point index -> target index
    Point target_of(int point) const { return targets[corr[point]]; }
};

struct LockInfo {
    bool locked = false;
    std::vector<int> non_movable;  // analogy class ids
    std::vector<int> unlocking;    // analogy class ids
    std::vector<int> improvable;   // analogy class ids
};

struct FinishSet {
    std::vector<double> line_angles;  // half-lines from the SED center
    std::vector<int> corr;            // internal-point position -> line index
    std::vector<int> internals;       // internal point indices, fixed order
    double line_of(int internal_point) const {
        for (size_t i = 0; i < internals.size(); ++i)
            if (internals[i] == internal_point) return line_angles[corr[i]];
        throw std::logic_error("finish_set: not an internal point");
    }
};

namespace detail {

inline double point_angle(const Snapshot& s, const Point& p) {
    Point u = p - s.center();
    return std::atan2(u.y, u.x);
}

inline Point antipode(const Circle& c, const Point& p) {
    return c.center + (c.center - p);
}

// Working view: an all-on-SEC set derived from a snapshot, with each derived
// point owned by an original point.
struct SecSet {
    Snapshot snap;               // derived set (all points on SEC)
    std::vector<int> owner;      // derived index -> original point index
    std::vector<int> image;      // original point index -> derived index
};

inline SecSet footprint_set(const Snapshot& s) {
    SecSet out;
    std::vector<Point> pts;
    out.owner.resize(s.n());
    out.image.assign(s.n(), -1);
    for (int i = 0; i < s.n(); ++i) {
        pts.push_back(footprint(s.sed, s.points[i]));
        out.owner[i] = i;
        out.image[i] = i;
    }
    out.snap = make_snapshot(std::move(pts));
    return out;
}

inline SecSet ready_set(const Snapshot& s) {
    SecSet out;
    std::vector<Point> pts;
    out.image.assign(s.n(), -1);
    for (int i : s.external()) {
        out.image[i] = static_cast<int>(pts.size());
        out.owner.push_back(i);
        pts.push_back(s.points[i]);
    }
    for (auto& [idx, p] : principal_relocation(s)) {
        out.image[idx] = static_cast<int>(pts.size());
        out.owner.push_back(idx);
        pts.push_back(p);
    }
    out.snap = make_snapshot(std::move(pts));
    return out;
}

inline bool sed_preserved_without(const Snapshot& s, const std::vector<int>& drop) {
    std::vector<bool> out(s.n(), false);
    for (int i : drop) out[i] = true;
    std::vector<Point> rest;
    for (int i = 0; i < s.n(); ++i)
        if (!out[i]) rest.push_back(s.points[i]);
    if (rest.size() < 2) return false;
    Circle c = smallest_enclosing_circle(rest);
    return s.tol.pt_eq(c.center, s.center()) && s.tol.len_eq(c.radius, s.radius());
}

// Lexicographic key of an analogy class: the smallest mu among its points.
inline std::vector<double> class_mu_key(const Snapshot& s, const std::vector<int>& cls) {
    std::vector<double> best;
    for (int p : cls) {
        auto mu = seq_mu(s.rays, s.rays.point_ray[p]);
        if (best.empty() || seq_less(mu, best)) best = mu;
    }
    return best;
}

inline int lex_min_class(const Snapshot& s, const std::vector<std::vector<int>>& classes,
                         const std::vector<int>& candidates) {
    int best = -1;
    std::vector<double> best_key;
    for (int c : candidates) {
        auto key = class_mu_key(s, classes[c]);
        if (best < 0 || seq_less(key, best_key)) {
            best = c;
            best_key = key;
        }
    }
    return best;
}

// q reachable by p: q and p lie in the interior of the same main sector of
// S minus p.  Grazing co-radiality counts as unreachable.
inline bool reachable(const Snapshot& s, int p, const Point& q) {
    double aeps = s.tol.ang_eps() * 4;
    double pa = point_angle(s, s.points[p]);
    double qa = point_angle(s, q);
    double lo = -kTwoPi, hi = kTwoPi;  // neighbor offsets around p
    for (int i = 0; i < s.n(); ++i) {
        if (i == p) continue;
        double d = std::remainder(point_angle(s, s.points[i]) - pa, kTwoPi);
        if (d >= 0) hi = std::min(hi, d);
        if (d <= 0) lo = std::max(lo, d);
    }
    double dq = std::remainder(qa - pa, kTwoPi);
    return dq > lo + aeps && dq < hi - aeps;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Target assignment.

namespace detail {

struct GridAnchor {
    int sprime_index = -1;   // derived point serving as anchor
    double target_angle = 0.0;  // its target's angle
};

// Concordance-grid positions compatible with class anchor angle.
inline double grid_angle(double anchor, int step, int n) {
    double a = anchor + step * kTwoPi / n;
    return std::remainder(a, kTwoPi);
}

// Enumerates relocations of `dropped` points into grid positions strictly
// inside their sectors of `rest`, and tests whether `core` joined with the
// relocation forms one concordance class of rest + relocation.
inline bool grid_relocation_exists(const Snapshot& base, const std::vector<Point>& rest,
                                   const std::vector<Point>& core, double grid_anchor_angle,
                                   const std::vector<std::pair<double, double>>& sectors,
                                   int n_total, const TolerancePolicy& tol) {
    // sectors: per dropped point, (start_angle, span) of its sector in rest.
    double aeps = tol.ang_eps() * 8;
    std::vector<std::vector<double>> cand(sectors.size());
    for (size_t i = 0; i < sectors.size(); ++i) {
        for (int k = 0; k < n_total; ++k) {
            double g = grid_angle(grid_anchor_angle, k, n_total);
            double rel = std::fmod(g - sectors[i].first + 2 * kTwoPi, kTwoPi);
            if (rel > aeps && rel < sectors[i].second - aeps) cand[i].push_back(g);
        }
        if (cand[i].empty()) return false;
    }
    long combos = 1;
    for (auto& c : cand) {
        combos *= static_cast<long>(c.size());
        if (combos > 20000) return false;
    }
    Circle circ = base.sed;
    for (long c = 0; c < combos; ++c) {
        long rem = c;
        std::vector<Point> pts = rest;
        std::vector<double> placed;
        bool ok = true;
        for (size_t i = 0; i < cand.size(); ++i) {
            double g = cand[i][rem % cand[i].size()];
            rem /= static_cast<long>(cand[i].size());
            for (double other : placed)
                if (std::fabs(std::remainder(g - other, kTwoPi)) <= aeps) ok = false;
            placed.push_back(g);
            pts.push_back(circ.center + unit_dir(g) * circ.radius);
        }
        if (!ok) continue;
        Snapshot sn;
        try {
            sn = make_snapshot(pts);
        } catch (const std::invalid_argument&) {
            continue;
        }
        if (sn.rays.coradial) continue;
        auto part = ray_partition(sn.rays, n_total, tol);
        // all of core + placed must be one concordance class
        int want = -1;
        size_t members = 0;
        bool same = true;
        auto check_pt = [&](const Point& p) {
            for (int i = 0; i < sn.n() && same; ++i) {
                if (dist(sn.points[i], p) <= tol.eps_abs * 8) {
                    int ray = sn.rays.point_ray[i];
                    for (size_t cc = 0; cc < part.concordance.size(); ++cc)
                        for (int r : part.concordance[cc])
                            if (r == ray) {
                                if (want < 0) want = static_cast<int>(cc);
                                if (static_cast<int>(cc) != want) same = false;
                                ++members;
                            }
                    return;
                }
            }
            same = false;
        };
        for (const Point& p : core) check_pt(p);
        for (double g : placed) check_pt(circ.center + unit_dir(g) * circ.radius);
        if (!same || want < 0) continue;
        if (part.concordance[want].size() == members) return true;
    }
    return false;
}

}  // namespace detail

inline TargetAssignment target_assignment(const Snapshot& s) {
    if (s.n() < 5) throw std::invalid_argument("target_assignment requires n >= 5");
    bool ready = is_valid_ready(s);
    if (!ready && !is_valid_waiting(s))
        throw std::invalid_argument("target_assignment requires a Valid snapshot");
    detail::SecSet sp = ready ? detail::ready_set(s) : detail::footprint_set(s);
    const Snapshot& w = sp.snap;
    int n = s.n();

    auto axes = symmetry_axes(w.rays, w.points, w.tol);
    detail::GridAnchor anchor;
    double aeps = w.tol.ang_eps() * 8;

    if (!axes.empty()) {
        // Points on an axis coincide with their targets.
        int on_axis = -1;
        for (int i = 0; i < w.n() && on_axis < 0; ++i) {
            double a = detail::point_angle(w, w.points[i]);
            for (double ax : axes) {
                double d = std::fabs(std::remainder(a - ax, kPi));
                if (d <= aeps) {
                    on_axis = i;
                    break;
                }
            }
        }
        if (on_axis >= 0) {
            anchor.sprime_index = on_axis;
            anchor.target_angle = detail::point_angle(w, w.points[on_axis]);
        } else {
            // No point on any axis: targets straddle the axis; the point
            // nearest the axis maps to the straddling target on its side.
            double ax = axes.front();
            int best = -1;
            double bestd = kTwoPi;
            for (int i = 0; i < w.n(); ++i) {
                double a = detail::point_angle(w, w.points[i]);
                double d = std::fabs(std::remainder(a - ax, kPi));
                if (d < bestd) {
                    bestd = d;
                    best = i;
                }
            }
            double a = detail::point_angle(w, w.points[best]);
            double dax = std::remainder(a - ax, kPi);  // signed offset from axis
            double axis_line = ax + (std::fabs(std::remainder(a - ax, kTwoPi)) <= kPi / 2 ? 0.0 : kPi);
            anchor.sprime_index = best;
            anchor.target_angle = axis_line + (dax >= 0 ? kPi / n : -kPi / n);
        }
    } else {
        // Asymmetric: concordance class selection.
        auto part = ray_partition(w.rays, n, w.tol);
        size_t best_size = 0;
        auto class_size_metric = [&](const std::vector<int>& cls) {
            if (!ready) return cls.size();
            size_t c = 0;
            for (int r : cls) {
                int pt = w.rays.ray_points[r][0];
                if (sp.owner[pt] >= 0 && s.on_sec(sp.owner[pt])) ++c;
            }
            return c;
        };
        for (const auto& cls : part.concordance) best_size = std::max(best_size, class_size_metric(cls));
        std::vector<int> tees;
        for (size_t c = 0; c < part.concordance.size(); ++c)
            if (class_size_metric(part.concordance[c]) == best_size) tees.push_back(static_cast<int>(c));

        // The feasibility filter selecting T~ out of T.
        std::vector<int> tee_tilde;
        for (int c : tees) {
            const auto& cls = part.concordance[c];
            std::vector<Point> core;
            for (int r : cls) core.push_back(w.points[w.rays.ray_points[r][0]]);
            double ga = detail::point_angle(w, core.front());
            bool feasible = false;
            if (!ready) {
                // Need a movable analogy class A disjoint from the class and a
                // relocation of its anti-footprints into grid positions.
                for (const auto& acls : part.analogy) {
                    bool overlap = false;
                    for (int r : acls)
                        for (int rc : cls)
                            if (r == rc) overlap = true;
                    if (overlap) continue;
                    std::vector<int> drop;
                    for (int r : acls) drop.push_back(w.rays.ray_points[r][0]);
                    if (!detail::sed_preserved_without(w, drop)) continue;
                    std::vector<Point> rest;
                    std::vector<bool> dropped(w.n(), false);
                    for (int d : drop) dropped[d] = true;
                    for (int i = 0; i < w.n(); ++i)
                        if (!dropped[i]) rest.push_back(w.points[i]);
                    // sectors of the dropped points within rest
                    Snapshot rest_snap = make_snapshot(rest);
                    std::vector<std::pair<double, double>> sectors;
                    bool sec_ok = true;
                    for (int d : drop) {
                        double a = detail::point_angle(w, w.points[d]);
                        double lo = -kTwoPi, hi = kTwoPi;
                        for (const Point& rp : rest) {
                            double dd = std::remainder(detail::point_angle(w, rp) - a, kTwoPi);
                            if (dd >= 0) hi = std::min(hi, dd);
                            if (dd <= 0) lo = std::max(lo, dd);
                        }
                        if (hi - lo >= kTwoPi - aeps) sec_ok = false;
                        sectors.push_back({a + lo, hi - lo});
                    }
                    if (!sec_ok) continue;
                    if (detail::grid_relocation_exists(w, rest, core, ga, sectors, n, w.tol)) {
                        feasible = true;
                        break;
                    }
                }
            } else {
                // Relocation of the original internal points within their own
                // occupied sectors of S.
                std::vector<Point> core_ext;
                for (int r : cls) {
                    int pt = w.rays.ray_points[r][0];
                    if (sp.owner[pt] >= 0 && s.on_sec(sp.owner[pt])) core_ext.push_back(w.points[pt]);
                }
                std::vector<Point> rest;
                for (int i : s.external()) rest.push_back(s.points[i]);
                std::vector<std::pair<double, double>> sectors;
                for (const auto& sec : occupied_sectors(s))
                    for (size_t j = 0; j < sec.internals.size(); ++j)
                        sectors.push_back({sec.start_angle, sec.span});
                if (core_ext.empty()) {
                    feasible = false;
                } else {
                    feasible = detail::grid_relocation_exists(w, rest, core_ext, ga, sectors, n, w.tol);
                }
            }
            if (feasible) tee_tilde.push_back(c);
        }
        const std::vector<int>& pool = tee_tilde.empty() ? tees : tee_tilde;
        std::vector<std::vector<int>> classes_pts;
        for (const auto& cls : part.concordance) {
            std::vector<int> c;
            for (int r : cls) c.push_back(w.rays.ray_points[r][0]);
            classes_pts.push_back(c);
        }
        int chosen = detail::lex_min_class(w, classes_pts, pool);
        // Anchor: the class member inducing the smallest angle sequence.
        int best_pt = -1;
        std::vector<double> best_key;
        for (int pt : classes_pts[chosen]) {
            auto mu = seq_mu(w.rays, w.rays.point_ray[pt]);
            if (best_pt < 0 || seq_less(mu, best_key)) {
                best_pt = pt;
                best_key = mu;
            }
        }
        anchor.sprime_index = best_pt;
        anchor.target_angle = detail::point_angle(w, w.points[best_pt]);
    }

    // Extend: walk the derived cyclic order from the anchor; target k is the
    // anchor target rotated by k grid steps counterclockwise.
    TargetAssignment ta;
    ta.targets.resize(n);
    ta.corr.assign(n, -1);
    int m = w.n();
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return detail::point_angle(w, w.points[a]) < detail::point_angle(w, w.points[b]);
    });
    int start = 0;
    for (int i = 0; i < m; ++i)
        if (order[i] == anchor.sprime_index) start = i;
    for (int k = 0; k < n; ++k) {
        double ang = anchor.target_angle + k * kTwoPi / n;
        ta.targets[k] = s.center() + unit_dir(ang) * s.radius();
    }
    for (int k = 0; k < m; ++k) {
        int spi = order[(start + k) % m];
        ta.corr[sp.owner[spi]] = k;
    }
    return ta;
}

// ---------------------------------------------------------------------------
// Class predicates on Valid & Waiting sets.

struct ClassView {
    Partition part;                        // point-index partitions
    TargetAssignment targets;
    std::vector<bool> satisfied_pt;        // per point: footprint on its target
};

inline ClassView class_view(const Snapshot& s) {
    ClassView cv;
    cv.part = partitions(s);
    cv.targets = target_assignment(s);
    cv.satisfied_pt.assign(s.n(), false);
    for (int i = 0; i < s.n(); ++i) {
        Point fp = footprint(s.sed, s.points[i]);
        cv.satisfied_pt[i] = s.tol.pt_eq(fp, cv.targets.target_of(i));
    }
    return cv;
}

inline bool movable_class(const Snapshot& s, const std::vector<int>& cls) {
    if (static_cast<int>(cls.size()) == s.n()) return false;
    return detail::sed_preserved_without(s, cls);
}

inline bool satisfied_class(const ClassView& cv, const std::vector<int>& cls) {
    for (int p : cls)
        if (!cv.satisfied_pt[p]) return false;
    return true;
}

inline bool improvable_class(const Snapshot& s, const ClassView& cv, const std::vector<int>& cls) {
    if (!movable_class(s, cls)) return false;
    if (satisfied_class(cv, cls)) return false;
    for (int p : cls)
        if (!detail::reachable(s, p, cv.targets.target_of(p))) return false;
    return true;
}

inline LockInfo lock_info(const Snapshot& s) {
    if (!is_valid_waiting(s)) throw std::invalid_argument("lock_info requires Valid and Waiting");
    ClassView cv = class_view(s);
    if (cv.part.analogy.size() <= 1)
        throw std::invalid_argument("lock_info requires more than one analogy class");
    LockInfo info;
    int k = static_cast<int>(cv.part.analogy.size());
    std::vector<bool> movable(k);
    for (int c = 0; c < k; ++c) {
        movable[c] = movable_class(s, cv.part.analogy[c]);
        if (!movable[c]) info.non_movable.push_back(c);
        if (improvable_class(s, cv, cv.part.analogy[c])) info.improvable.push_back(c);
    }
    info.locked = info.improvable.empty();
    // Unlocking: movable classes with a point consecutive to a non-movable
    // class's point in the cyclic order.
    auto rp = ray_partition(s.rays, s.n(), s.tol);
    int m = s.rays.rays();
    std::vector<int> class_of_pt(s.n(), -1);
    for (int c = 0; c < k; ++c)
        for (int p : cv.part.analogy[c]) class_of_pt[p] = c;
    for (int c = 0; c < k; ++c) {
        if (!movable[c]) continue;
        bool adj = false;
        for (int p : cv.part.analogy[c]) {
            int r = s.rays.point_ray[p];
            for (int d : {-1, 1}) {
                int q = s.rays.ray_points[((r + d) % m + m) % m][0];
                for (int nm : info.non_movable)
                    if (class_of_pt[q] == nm) adj = true;
            }
        }
        if (adj) info.unlocking.push_back(c);
    }
    (void)rp;
    return info;
}

// ---------------------------------------------------------------------------
// Walkers.

// Returns the walker analogy class as point indices of s (possibly empty).
inline std::vector<int> walkers(const Snapshot& s) {
    if (!is_valid_waiting(s)) throw std::invalid_argument("walkers requires Valid and Waiting");
    if (s.n() < 5) throw std::invalid_argument("walkers requires n >= 5");
    detail::SecSet fs = detail::footprint_set(s);
    const Snapshot& w = fs.snap;
    ClassView cv = class_view(w);
    int k = static_cast<int>(cv.part.analogy.size());
    if (k <= 1) return {};

    auto lift = [&](const std::vector<int>& cls) {
        std::vector<int> out;
        for (int p : cls) out.push_back(fs.owner[p]);
        std::sort(out.begin(), out.end());
        return out;
    };

    if (s.n() == 5) {
        PeriodClass pc = period_class(w);
        // antipodal pairs on the footprint circle
        std::vector<std::pair<int, int>> anti;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b)
                if (is_antipodal_on(w.sed, w.points[a], w.points[b], w.tol)) anti.push_back({a, b});
        if (pc.kind == PeriodKind::UniAperiodic) {
            if (anti.empty()) {
                // movable points that can reach the antipodal of another point
                int best = -1;
                std::vector<double> key;
                for (int p = 0; p < 5; ++p) {
                    if (!movable_class(w, {p})) continue;
                    bool reach = false;
                    for (int q = 0; q < 5 && !reach; ++q)
                        if (q != p && detail::reachable(w, p, detail::antipode(w.sed, w.points[q])))
                            reach = true;
                    if (!reach) continue;
                    auto mu = seq_mu(w.rays, w.rays.point_ray[p]);
                    if (best < 0 || seq_less(mu, key)) {
                        best = p;
                        key = mu;
                    }
                }
                if (best >= 0) return lift({best});
            } else if (anti.size() == 1) {
                auto [a, b] = anti[0];
                int m = w.rays.rays();
                for (int p = 0; p < 5; ++p) {
                    if (p == a || p == b) continue;
                    int r = w.rays.point_ray[p];
                    int prev = w.rays.ray_points[(r + m - 1) % m][0];
                    int next = w.rays.ray_points[(r + 1) % m][0];
                    if ((prev == a && next == b) || (prev == b && next == a)) return lift({p});
                }
            } else if (anti.size() >= 2) {
                std::vector<bool> in_pair(5, false);
                for (auto& [a, b] : anti) in_pair[a] = in_pair[b] = true;
                for (int p = 0; p < 5; ++p)
                    if (!in_pair[p]) return lift({p});
            }
        } else if (pc.kind == PeriodKind::BiAperiodic) {
            int sat = 0;
            for (int p = 0; p < 5; ++p)
                if (cv.satisfied_pt[p]) ++sat;
            if (sat == 1) {
                // a 2-class of antipodal analogous points present?
                int anti_cls = -1, other_cls = -1;
                for (int c = 0; c < k; ++c) {
                    if (cv.part.analogy[c].size() != 2) continue;
                    int a = cv.part.analogy[c][0], b = cv.part.analogy[c][1];
                    if (is_antipodal_on(w.sed, w.points[a], w.points[b], w.tol))
                        anti_cls = c;
                    else
                        other_cls = c;
                }
                if (anti_cls >= 0 && other_cls >= 0) return lift(cv.part.analogy[other_cls]);
            }
        }
    }

    LockInfo li;
    {
        // inline lock computation against cv to avoid recomputation
        li.locked = true;
        for (int c = 0; c < k; ++c) {
            if (!movable_class(w, cv.part.analogy[c])) li.non_movable.push_back(c);
            if (improvable_class(w, cv, cv.part.analogy[c])) li.improvable.push_back(c);
        }
        li.locked = li.improvable.empty();
        int m = w.rays.rays();
        std::vector<int> class_of_pt(w.n(), -1);
        for (int c = 0; c < k; ++c)
            for (int p : cv.part.analogy[c]) class_of_pt[p] = c;
        for (int c = 0; c < k; ++c) {
            bool nm = false;
            for (int x : li.non_movable)
                if (x == c) nm = true;
            if (nm) continue;
            bool adj = false;
            for (int p : cv.part.analogy[c]) {
                int r = w.rays.point_ray[p];
                for (int d : {-1, 1}) {
                    int q = w.rays.ray_points[((r + d) % m + m) % m][0];
                    for (int x : li.non_movable)
                        if (class_of_pt[q] == x) adj = true;
                }
            }
            if (adj) li.unlocking.push_back(c);
        }
    }

    if (!li.locked) {
        int c = detail::lex_min_class(w, cv.part.analogy, li.improvable);
        return lift(cv.part.analogy[c]);
    }
    if (s.n() > 5) {
        std::vector<int> pool;
        for (int c : li.unlocking)
            if (!satisfied_class(cv, cv.part.analogy[c])) pool.push_back(c);
        if (pool.empty()) pool = li.unlocking;  // defensive; p:locked2 gives nonempty
        int c = detail::lex_min_class(w, cv.part.analogy, pool);
        return lift(cv.part.analogy[c]);
    }
    int c = detail::lex_min_class(w, cv.part.analogy, li.unlocking);
    return lift(cv.part.analogy[c]);
}

// ---------------------------------------------------------------------------
// Finish sets.

namespace detail {

struct LockView {
    bool locked = false;
    std::vector<std::vector<int>> analogy;  // of the working all-on-SEC set
    std::vector<int> non_movable_cls;
    std::vector<int> unlocking_cls;
    ClassView cv;
};

inline LockView lock_view(const Snapshot& w) {
    LockView lv;
    lv.cv = class_view(w);
    lv.analogy = lv.cv.part.analogy;
    int k = static_cast<int>(lv.analogy.size());
    if (k <= 1) {
        lv.locked = false;
        return lv;
    }
    std::vector<int> improvable;
    for (int c = 0; c < k; ++c) {
        if (!movable_class(w, lv.analogy[c])) lv.non_movable_cls.push_back(c);
        if (improvable_class(w, lv.cv, lv.analogy[c])) improvable.push_back(c);
    }
    lv.locked = improvable.empty();
    int m = w.rays.rays();
    std::vector<int> class_of_pt(w.n(), -1);
    for (int c = 0; c < k; ++c)
        for (int p : lv.analogy[c]) class_of_pt[p] = c;
    for (int c = 0; c < k; ++c) {
        bool nm = false;
        for (int x : lv.non_movable_cls)
            if (x == c) nm = true;
        if (nm) continue;
        bool adj = false;
        for (int p : lv.analogy[c]) {
            int r = w.rays.point_ray[p];
            for (int d : {-1, 1}) {
                int q = w.rays.ray_points[((r + d) % m + m) % m][0];
                for (int x : lv.non_movable_cls)
                    if (class_of_pt[q] == x) adj = true;
            }
        }
        if (adj) lv.unlocking_cls.push_back(c);
    }
    return lv;
}

}  // namespace detail

inline FinishSet finish_set(const Snapshot& s) {
    if (!is_valid_ready(s)) throw std::invalid_argument("finish_set requires Valid and Ready");
    if (s.n() < 5) throw std::invalid_argument("finish_set requires n >= 5");
    auto internal = s.internal();
    auto reloc = principal_relocation(s);

    // S' = E(S) + principal relocation, as an all-on-SEC working set.
    detail::SecSet sp = detail::ready_set(s);
    const Snapshot& w = sp.snap;
    auto wpart = ray_partition(w.rays, w.n(), w.tol);
    std::vector<int> p_idx;  // derived indices of the relocated points
    for (int i : internal) p_idx.push_back(sp.image[i]);

    // Is P a proper subset of one analogy class of S'?
    bool proper_subset = false;
    {
        int cls = wpart.analogy_of[w.rays.point_ray[p_idx[0]]];
        bool same = true;
        for (int pi : p_idx)
            if (wpart.analogy_of[w.rays.point_ray[pi]] != cls) same = false;
        if (same && wpart.analogy[cls].size() > p_idx.size()) proper_subset = true;
    }

    std::vector<double> finish_angles;  // candidate finish points (angles on SEC)
    bool use_targets = false;
    TargetAssignment ta;
    if (!proper_subset) {
        ta = target_assignment(s);
        // Are the internal points' targets a relocation of I(S)?
        auto occ = occupied_sectors(s);
        bool ok = true;
        double aeps = s.tol.ang_eps() * 8;
        for (int i : internal) {
            Point t = ta.target_of(i);
            double tang = detail::point_angle(s, t);
            bool inside = false;
            for (const auto& sec : occ) {
                bool owns = false;
                for (int x : sec.internals)
                    if (x == i) owns = true;
                if (!owns) continue;
                double rel = std::fmod(tang - sec.start_angle + 2 * kTwoPi, kTwoPi);
                if (rel > aeps && rel < sec.span - aeps) inside = true;
            }
            if (!inside) ok = false;
        }
        use_targets = ok;
    }
    if (use_targets) {
        for (int i : internal) finish_angles.push_back(detail::point_angle(s, ta.target_of(i)));
    } else {
        for (auto& [idx, p] : reloc) finish_angles.push_back(detail::point_angle(s, p));
    }

    // n = 5 overrides of the finish set.
    bool overridden = false;
    if (s.n() == 5) {
        PeriodClass pc = period_class(w);
        if (pc.kind == PeriodKind::UniAperiodic && internal.size() == 1) {
            int pp = p_idx[0];
            int best = -1;
            std::vector<double> key;
            for (int q = 0; q < w.n(); ++q) {
                Point anti = detail::antipode(w.sed, w.points[q]);
                if (!detail::reachable(w, pp, anti)) continue;
                auto mu = seq_mu(w.rays, w.rays.point_ray[q]);
                if (best < 0 || seq_less(mu, key)) {
                    best = q;
                    key = mu;
                }
            }
            if (best >= 0) {
                finish_angles = {detail::point_angle(w, detail::antipode(w.sed, w.points[best]))};
                overridden = true;
            }
        } else if (pc.kind == PeriodKind::BiAperiodic && internal.size() == 2) {
            // P two non-consecutive points, the two consecutive analogous
            // points of S' non-satisfied.
            int r0 = w.rays.point_ray[p_idx[0]], r1 = w.rays.point_ray[p_idx[1]];
            int m = w.rays.rays();
            bool consecutive = ((r0 + 1) % m == r1) || ((r1 + 1) % m == r0);
            if (!consecutive) {
                detail::LockView lv = detail::lock_view(w);
                int cons_cls = -1;
                for (size_t c = 0; c < lv.analogy.size(); ++c) {
                    if (lv.analogy[c].size() != 2) continue;
                    int a = w.rays.point_ray[lv.analogy[c][0]];
                    int b = w.rays.point_ray[lv.analogy[c][1]];
                    if ((a + 1) % m == b || (b + 1) % m == a) cons_cls = static_cast<int>(c);
                }
                if (cons_cls >= 0 && !satisfied_class(lv.cv, lv.analogy[cons_cls])) {
                    auto axes = symmetry_axes(w.rays, w.points, w.tol);
                    if (!axes.empty()) {
                        double perp = axes.front() + kPi / 2;
                        finish_angles = {perp, perp + kPi};
                        overridden = true;
                    }
                }
            }
        }
    }

    if (!overridden) {
        // Locked/unlocking override on S'' = E(S) + tentative finish set R.
        std::vector<Point> spp;
        for (int i : s.external()) spp.push_back(s.points[i]);
        for (double a : finish_angles) spp.push_back(s.center() + unit_dir(a) * s.radius());
        Snapshot wpp = make_snapshot(spp);
        detail::LockView lv = detail::lock_view(wpp);
        if (lv.locked) {
            // index of the class formed by R, if R is exactly a class
            int rcls = -1;
            {
                size_t base = s.external().size();
                std::vector<int> rpts;
                for (size_t i = base; i < spp.size(); ++i) rpts.push_back(static_cast<int>(i));
                for (size_t c = 0; c < lv.analogy.size(); ++c) {
                    std::vector<int> sorted = lv.analogy[c];
                    std::sort(sorted.begin(), sorted.end());
                    if (sorted == rpts) rcls = static_cast<int>(c);
                }
            }
            bool unlocking = false;
            for (int u : lv.unlocking_cls)
                if (u == rcls) unlocking = true;
            if (rcls >= 0 && unlocking) {
                PeriodClass pcpp = period_class(wpp);
                if (pcpp.kind == PeriodKind::UniAperiodic && finish_angles.size() == 1) {
                    // r', the non-movable point consecutive to r; r'' its other
                    // consecutive point; the finish point is antipodal to r''.
                    int r = wpp.rays.point_ray[static_cast<int>(s.external().size())];
                    int m = wpp.rays.rays();
                    std::vector<int> class_of_pt(wpp.n(), -1);
                    for (size_t c = 0; c < lv.analogy.size(); ++c)
                        for (int p : lv.analogy[c]) class_of_pt[p] = static_cast<int>(c);
                    for (int d : {-1, 1}) {
                        int rp = wpp.rays.ray_points[((r + d) % m + m) % m][0];
                        bool nm = false;
                        for (int x : lv.non_movable_cls)
                            if (class_of_pt[rp] == x) nm = true;
                        if (!nm) continue;
                        int rpp_ray = ((wpp.rays.point_ray[rp] + d) % m + m) % m;
                        int rpp = wpp.rays.ray_points[rpp_ray][0];
                        finish_angles = {detail::point_angle(wpp, detail::antipode(wpp.sed, wpp.points[rpp]))};
                        break;
                    }
                } else if (pcpp.kind == PeriodKind::BiAperiodic && finish_angles.size() == 2) {
                    auto axes = symmetry_axes(wpp.rays, wpp.points, wpp.tol);
                    if (!axes.empty()) {
                        double perp = axes.front() + kPi / 2;
                        finish_angles = {perp, perp + kPi};
                    }
                }
            }
        }
    }

    // Correspondence: match finish lines to internal points sector by sector.
    FinishSet fs;
    fs.internals = internal;
    fs.line_angles = finish_angles;
    fs.corr.assign(internal.size(), -1);
    auto occ = occupied_sectors(s);
    double aeps = s.tol.ang_eps() * 8;
    for (const auto& sec : occ) {
        std::vector<int> lines_here;
        for (size_t li = 0; li < finish_angles.size(); ++li) {
            double rel = std::fmod(finish_angles[li] - sec.start_angle + 2 * kTwoPi, kTwoPi);
            if (rel > aeps && rel < sec.span - aeps) lines_here.push_back(static_cast<int>(li));
        }
        std::sort(lines_here.begin(), lines_here.end(), [&](int a, int b) {
            double ra = std::fmod(finish_angles[a] - sec.start_angle + 2 * kTwoPi, kTwoPi);
            double rb = std::fmod(finish_angles[b] - sec.start_angle + 2 * kTwoPi, kTwoPi);
            return ra < rb;
        });
        if (lines_here.size() != sec.internals.size())
            throw std::logic_error("finish_set: line/sector mismatch");
        for (size_t j = 0; j < sec.internals.size(); ++j) {
            for (size_t t = 0; t < internal.size(); ++t)
                if (fs.internals[t] == sec.internals[j]) fs.corr[t] = lines_here[j];
        }
    }
    for (int c : fs.corr)
        if (c < 0) throw std::logic_error("finish_set: unmatched internal point");
    return fs;
}

}  // namespace ucf

#pragma once

// The UCF Compute function: classify the observed snapshot and dispatch to
// the matching procedure.  The observer is the point at the origin of the
// snapshot; the returned destination is in the same frame.  Compute is a
// pure function of the snapshot (obliviousness).

#include <optional>
#include <stdexcept>
#include <vector>

#include "ucf/cautious.hpp"
#include "ucf/classify.hpp"
#include "ucf/snapshot.hpp"
#include "ucf/targets.hpp"

namespace ucf {

struct ComputeResult {
    Point destination;  // equals the origin when the robot stays
    ConfigKind dispatched = ConfigKind::Invalid;
    std::vector<Point> criticals;  // cautious-move critical points, when any
};

namespace detail {

inline int find_observer(const Snapshot& s) {
    for (int i = 0; i < s.n(); ++i)
        if (s.points[i].x == 0.0 && s.points[i].y == 0.0) return i;
    for (int i = 0; i < s.n(); ++i)
        if (s.points[i].norm() <= s.tol.eps_abs) return i;
    throw std::invalid_argument("snapshot does not contain the observer at the origin");
}

inline double ray_angle_of(const Snapshot& s, int i) {
    Point u = s.points[i] - s.center();
    return std::atan2(u.y, u.x);
}

inline Point sec3_point(const Snapshot& s, double angle) {
    return s.center() + unit_dir(angle) * (s.radius() / 3.0);
}

// ----- Procedure Central -------------------------------------------------

inline Point proc_central(const Snapshot& s, int obs, int central) {
    if (obs != central) return s.points[obs];
    // Bisector of the widest angular gap between the other robots' rays,
    // projected to SEC/3: not co-radial with anyone and computable by all.
    std::vector<double> angs;
    for (int i = 0; i < s.n(); ++i)
        if (i != central) angs.push_back(ray_angle_of(s, i));
    std::sort(angs.begin(), angs.end());
    double best_gap = -1, best_dir = 0;
    for (size_t i = 0; i < angs.size(); ++i) {
        double nxt = i + 1 < angs.size() ? angs[i + 1] : angs[0] + kTwoPi;
        double gap = nxt - angs[i];
        if (gap > best_gap) {
            best_gap = gap;
            best_dir = angs[i] + gap / 2.0;
        }
    }
    return sec3_point(s, best_dir);
}

// ----- Procedure Half-disk -----------------------------------------------

inline Point proc_half_disk(const Snapshot& s, int obs, const HalfDiskInfo& hd) {
    const double R = s.radius();
    const Point stay = s.points[obs];
    const auto& r0 = hd.ray_robots[0];
    const auto& r1 = hd.ray_robots[1];

    if (hd.all_collinear && (r0.size() < 3 || r1.size() < 3) && !r0.empty() && !r1.empty()) {
        int thin = r0.size() <= r1.size() ? 0 : 1;
        const auto& other = hd.ray_robots[1 - thin];
        int r = other.front();
        if (obs != r) return stay;
        if (s.radial(r) > R / 3.0 + s.tol.eps_abs) return anti_footprint(s.sed, s.points[r]);
        double my_angle = ray_angle_of(s, r);
        return sec3_point(s, my_angle + kPi / 3.0);
    }

    // A principal ray whose SED/3 part is empty gets one robot sent to the
    // intersection of the ray with SEC/3.
    bool acted[2] = {false, false};
    for (int side = 0; side < 2; ++side) {
        const auto& ray = hd.ray_robots[side];
        bool sed3_occupied = false;
        for (int i : ray)
            if (s.radial(i) <= R / 3.0 + s.tol.eps_abs) sed3_occupied = true;
        if (sed3_occupied || ray.empty()) continue;
        acted[side] = true;
        int s_rob = ray.back();  // outermost; lies at the ray's SEC end
        int mover = -1;
        double best_ang = 1e300;
        for (int i = 0; i < s.n(); ++i) {
            if (i == s_rob) continue;
            double a = angular_distance(s.center(), s.points[i], s.points[s_rob]);
            if (a < best_ang - s.tol.ang_eps() ||
                (std::fabs(a - best_ang) <= s.tol.ang_eps() &&
                 (mover < 0 || s.radial(i) < s.radial(mover)))) {
                best_ang = std::min(a, best_ang);
                mover = i;
            }
        }
        if (obs == mover) {
            double dir = hd.line_angle + side * kPi;
            return sec3_point(s, dir);
        }
    }
    if (acted[0] || acted[1]) return stay;

    // Both principal rays reach into SED/3: their innermost robots move into
    // an empty half-plane, at angular distance pi/3, on SEC/3.
    for (int side = 0; side < 2; ++side) {
        const auto& ray = hd.ray_robots[side];
        if (ray.empty()) continue;
        int mover = ray.front();
        if (obs != mover) continue;
        double my_angle = ray_angle_of(s, mover);
        double sign = 1.0;
        if (!hd.all_collinear) {
            // aim into the empty open half-plane
            Point u = unit_dir(hd.line_angle);
            int pos = 0, neg = 0;
            for (int i = 0; i < s.n(); ++i) {
                double c = u.cross(s.points[i] - s.center());
                if (c > s.tol.eps_abs) ++pos;
                if (c < -s.tol.eps_abs) ++neg;
            }
            double want = pos == 0 ? 1.0 : -1.0;
            double have = u.cross(unit_dir(my_angle + kPi / 3.0));
            sign = (have > 0) == (want > 0) ? 1.0 : -1.0;
        }
        return sec3_point(s, my_angle + sign * kPi / 3.0);
    }
    return stay;
}

// ----- Procedure Co-radial -----------------------------------------------

inline Point proc_co_radial(const Snapshot& s, int obs) {
    const double R = s.radius();
    const Point stay = s.points[obs];
    const RayView& rv = s.rays;
    auto coradial_pt = [&](int i) { return rv.ray_points[rv.point_ray[i]].size() >= 2; };

    // 1. non-co-radial robots strictly inside SED/3 go radially to SEC/3
    bool stage1 = false;
    for (int i = 0; i < s.n(); ++i)
        if (!coradial_pt(i) && s.radial(i) < R / 3.0 - s.tol.eps_abs) stage1 = true;
    if (stage1) {
        if (!coradial_pt(obs) && s.radial(obs) < R / 3.0 - s.tol.eps_abs)
            return anti_footprint(s.sed, s.points[obs]);
        return stay;
    }
    // movers: co-radial robots closest to the center
    double rmin = 1e300;
    for (int i = 0; i < s.n(); ++i)
        if (coradial_pt(i)) rmin = std::min(rmin, s.radial(i));
    bool is_mover = coradial_pt(obs) && s.tol.len_eq(s.radial(obs), rmin);
    // 2. if they are outside SED/3 they move radially toward SEC/3
    if (rmin > R / 3.0 + s.tol.eps_abs) {
        if (is_mover) return anti_footprint(s.sed, s.points[obs]);
        return stay;
    }
    // 3. lateral unlock: one third of the smallest positive angular gap
    if (!is_mover) return stay;
    double alpha = kTwoPi;
    for (double g : rv.raw_gap)
        if (g > s.tol.ang_eps()) alpha = std::min(alpha, g);
    int r = rv.point_ray[obs];
    int m = rv.rays();
    double ccw_gap = rv.raw_gap[r];
    double cw_gap = rv.raw_gap[(r - 1 + m) % m];
    double side = ccw_gap < cw_gap - s.tol.ang_eps() ? 1.0 : -1.0;  // ties clockwise
    double my_angle = ray_angle_of(s, obs);
    return sec3_point(s, my_angle + side * alpha / 3.0);
}

// ----- Valid procedures ---------------------------------------------------

inline Point move_all_to_sec(const Snapshot& s, int obs, std::vector<Point>* crit_out) {
    const double R = s.radius();
    const Point stay = s.points[obs];
    bool interior = false;
    for (int i = 0; i < s.n(); ++i)
        if (s.radial(i) < R / 3.0 - s.tol.eps_abs) interior = true;
    if (interior) {
        if (s.radial(obs) < R / 3.0 - s.tol.eps_abs) return anti_footprint(s.sed, s.points[obs]);
        return stay;
    }
    auto part = partitions(s);
    PeriodClass pc = period_class(s);

    std::vector<int> movers;
    auto off_sec_members = [&](const std::vector<int>& cls) {
        int c = 0;
        for (int p : cls)
            if (!s.on_sec(p)) ++c;
        return c;
    };
    if (pc.kind == PeriodKind::Biangular || pc.double_biangular) {
        const auto& groups = pc.kind == PeriodKind::Biangular ? part.strong : part.analogy;
        int sec_cls = -2;
        for (int i = 0; i < s.n(); ++i) {
            if (!s.on_sec(i)) continue;
            int c = -1;
            for (size_t g = 0; g < groups.size(); ++g)
                for (int p : groups[g])
                    if (p == i) c = static_cast<int>(g);
            if (sec_cls == -2)
                sec_cls = c;
            else if (sec_cls != c)
                sec_cls = -1;
        }
        if (sec_cls >= 0 && off_sec_members(groups[sec_cls]) > 0) movers = groups[sec_cls];
    }
    if (movers.empty()) {
        // least numerous analogy class not entirely on SEC; ties by the
        // lexicographically smallest angle sequence
        std::vector<int> cands;
        size_t best = static_cast<size_t>(-1);
        for (size_t c = 0; c < part.analogy.size(); ++c) {
            if (off_sec_members(part.analogy[c]) == 0) continue;
            if (part.analogy[c].size() < best) best = part.analogy[c].size();
        }
        for (size_t c = 0; c < part.analogy.size(); ++c)
            if (off_sec_members(part.analogy[c]) > 0 && part.analogy[c].size() == best)
                cands.push_back(static_cast<int>(c));
        if (cands.empty()) return stay;  // everyone on SEC already
        int c = detail::lex_min_class(s, part.analogy, cands);
        movers = part.analogy[c];
    }
    CriticalPointSet crit = critical_points(s, movers, MoveDir::ToSec);
    if (crit_out) *crit_out = crit.points;
    auto dest = cautious_destination(s, movers, crit, MoveDir::ToSec, obs);
    return dest ? *dest : stay;
}

inline Point proc_valid_waiting(const Snapshot& s, int obs, std::vector<Point>* crit_out) {
    std::vector<int> w = walkers(s);
    auto internal = s.internal();
    bool all_walkers = true;
    for (int i : internal) {
        bool in_w = false;
        for (int x : w)
            if (x == i) in_w = true;
        if (!in_w) all_walkers = false;
    }
    if (all_walkers && !w.empty()) {
        CriticalPointSet crit = critical_points(s, w, MoveDir::ToSec3);
        if (crit_out) *crit_out = crit.points;
        auto dest = cautious_destination(s, w, crit, MoveDir::ToSec3, obs);
        return dest ? *dest : s.points[obs];
    }
    if (!all_walkers) return move_all_to_sec(s, obs, crit_out);
    return s.points[obs];
}

inline Point proc_valid_ready(const Snapshot& s, int obs, std::vector<Point>* crit_out) {
    const double R = s.radius();
    const Point stay = s.points[obs];
    bool interior = false;
    for (int i = 0; i < s.n(); ++i)
        if (s.radial(i) < R / 3.0 - s.tol.eps_abs) interior = true;
    if (interior) {
        if (s.radial(obs) < R / 3.0 - s.tol.eps_abs) return anti_footprint(s.sed, s.points[obs]);
        return stay;
    }
    FinishSet fs = finish_set(s);
    auto internal = s.internal();
    double aeps = s.tol.ang_eps() * 4;
    bool all_on_lines = true;
    for (int i : internal) {
        double d = std::fabs(std::remainder(ray_angle_of(s, i) - fs.line_of(i), kTwoPi));
        if (d > aeps) all_on_lines = false;
    }
    if (!all_on_lines) {
        // Move to Finish Line: internal observers on SEC/3 head to the
        // intersection of their finish line with SEC/3, if reachable.
        bool obs_internal = false;
        for (int i : internal)
            if (i == obs) obs_internal = true;
        if (!obs_internal || !s.on_sec3(obs)) return stay;
        double qa = fs.line_of(obs);
        double oa = ray_angle_of(s, obs);
        double sweep = std::remainder(qa - oa, kTwoPi);
        if (std::fabs(sweep) <= aeps) return stay;  // already on the line
        for (int j = 0; j < s.n(); ++j) {
            if (j == obs) continue;
            double rel = std::remainder(ray_angle_of(s, j) - oa, kTwoPi);
            bool blocked = sweep > 0 ? (rel > aeps && rel <= sweep + aeps)
                                     : (rel < -aeps && rel >= sweep - aeps);
            if (blocked) return stay;
        }
        return sec3_point(s, qa);
    }
    return proc_valid_waiting(s, obs, crit_out);
}

// ----- n = 3 ---------------------------------------------------------------

inline Point ucf3_compute(const std::vector<Point>& pts, int obs) {
    TolerancePolicy tol;
    double scale = std::max({dist(pts[0], pts[1]), dist(pts[0], pts[2]), dist(pts[1], pts[2])});
    tol.eps_abs = 1e-9 * std::max(scale, 1e-300);
    double d01 = dist(pts[0], pts[1]), d02 = dist(pts[0], pts[2]), d12 = dist(pts[1], pts[2]);
    bool e01_02 = tol.len_eq(d01, d02), e01_12 = tol.len_eq(d01, d12), e02_12 = tol.len_eq(d02, d12);
    if (e01_02 && e01_12 && e02_12) return pts[obs];  // equilateral: stay

    int apex = -1, b1 = -1, b2 = -1;
    if (e01_02) apex = 0, b1 = 1, b2 = 2;
    else if (e01_12) apex = 1, b1 = 0, b2 = 2;
    else if (e02_12) apex = 2, b1 = 0, b2 = 1;

    if (apex >= 0) {
        if (obs != apex) return pts[obs];
        Point mid = (pts[b1] + pts[b2]) * 0.5;
        Point base = pts[b2] - pts[b1];
        double bl = base.norm();
        Point nrm{-base.y / bl, base.x / bl};
        double h = std::sqrt(3.0) / 2.0 * bl;
        Point capex = pts[apex] - mid;
        double side = capex.dot(nrm) >= 0 ? 1.0 : -1.0;
        return mid + nrm * (side * h);
    }
    // scalene: the robot opposite the longest edge moves parallel to it
    // toward the edge's axis
    int la = 0, lb = 1, mover = 2;
    double best = d01;
    if (d02 > best) best = d02, la = 0, lb = 2, mover = 1;
    if (d12 > best) best = d12, la = 1, lb = 2, mover = 0;
    if (obs != mover) return pts[obs];
    Point mid = (pts[la] + pts[lb]) * 0.5;
    Point u = pts[lb] - pts[la];
    u = u * (1.0 / u.norm());
    double t = (mid - pts[mover]).dot(u);
    return pts[mover] + u * t;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline ComputeResult ucf_compute(const std::vector<Point>& snapshot_points) {
    int n = static_cast<int>(snapshot_points.size());
    if (n < 3 || n == 4) throw std::invalid_argument("unsupported swarm size");
    if (n == 3) {
        int obs = -1;
        for (int i = 0; i < 3; ++i)
            if (snapshot_points[i].x == 0.0 && snapshot_points[i].y == 0.0) obs = i;
        if (obs < 0) throw std::invalid_argument("snapshot does not contain the observer");
        ComputeResult res;
        res.dispatched = ConfigKind::Invalid;
        res.destination = detail::ucf3_compute(snapshot_points, obs);
        return res;
    }
    Snapshot s = make_snapshot(snapshot_points);
    int obs = detail::find_observer(s);
    ConfigClass cls = classify(s);
    ComputeResult res;
    res.dispatched = cls.kind;
    switch (cls.kind) {
        case ConfigKind::Regular:
            res.destination = s.points[obs];
            break;
        case ConfigKind::PreRegular:
            res.destination = cls.cert->polygon.vertex(cls.cert->matching[obs]);
            break;
        case ConfigKind::Central:
            res.destination = detail::proc_central(s, obs, *central_point(s));
            break;
        case ConfigKind::HalfDisk:
            res.destination = detail::proc_half_disk(s, obs, *cls.half_disk);
            break;
        case ConfigKind::CoRadial:
            res.destination = detail::proc_co_radial(s, obs);
            break;
        case ConfigKind::ValidReady:
            res.destination = detail::proc_valid_ready(s, obs, &res.criticals);
            break;
        case ConfigKind::ValidWaiting:
            res.destination = detail::proc_valid_waiting(s, obs, &res.criticals);
            break;
        case ConfigKind::Invalid:
            res.destination = detail::move_all_to_sec(s, obs, &res.criticals);
            break;
    }
    return res;
}

}  // namespace ucf

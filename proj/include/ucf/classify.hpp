#pragma once

// Configuration taxonomy: the class predicates of the dispatch ladder
// (Regular, Pre-regular, Central, Half-disk, Co-radial, Valid Ready/Waiting,
// Invalid) plus principal relocations and the well-occupied test.

#include <array>
#include <optional>
#include <vector>

#include "ucf/angular.hpp"
#include "ucf/preregular.hpp"
#include "ucf/snapshot.hpp"

namespace ucf {

enum class ConfigKind {
    Regular,
    PreRegular,
    Central,
    HalfDisk,
    CoRadial,
    ValidReady,
    ValidWaiting,
    Invalid,
};

inline const char* to_string(ConfigKind k) {
    switch (k) {
        case ConfigKind::Regular: return "Regular";
        case ConfigKind::PreRegular: return "PreRegular";
        case ConfigKind::Central: return "Central";
        case ConfigKind::HalfDisk: return "HalfDisk";
        case ConfigKind::CoRadial: return "CoRadial";
        case ConfigKind::ValidReady: return "ValidReady";
        case ConfigKind::ValidWaiting: return "ValidWaiting";
        case ConfigKind::Invalid: return "Invalid";
    }
    return "?";
}

struct HalfDiskInfo {
    double line_angle = 0.0;  // direction of principal ray 0; ray 1 is opposite
    bool all_collinear = false;
    std::array<std::vector<int>, 2> ray_robots;  // on-ray robots, sorted inner to outer
};

struct ConfigClass {
    ConfigKind kind = ConfigKind::Invalid;
    std::optional<PreRegularCertificate> cert;
    std::optional<HalfDiskInfo> half_disk;
};

// ---------------------------------------------------------------------------

inline bool is_regular_config(const Snapshot& s) {
    for (int i = 0; i < s.n(); ++i)
        if (!s.on_sec(i)) return false;
    if (s.rays.coradial) return false;
    for (int i = 0; i < s.n(); ++i)
        if (!s.tol.ang_eq(s.rays.gap[i], kTwoPi / s.n())) return false;
    return true;
}

inline std::optional<int> central_point(const Snapshot& s) {
    for (int i = 0; i < s.n(); ++i)
        if (s.radial(i) <= s.tol.eps_abs) return i;
    return std::nullopt;
}

inline bool is_coradial_config(const Snapshot& s) {
    return s.rays.coradial || central_point(s).has_value();
}

inline std::optional<HalfDiskInfo> half_disk_info(const Snapshot& s) {
    // Build a ray view excluding a possible central robot; a gap of pi
    // between consecutive rays bounds an empty open half-plane.
    std::vector<Point> pts;
    std::vector<int> idx;
    for (int i = 0; i < s.n(); ++i) {
        if (s.radial(i) <= s.tol.eps_abs) continue;
        pts.push_back(s.points[i]);
        idx.push_back(i);
    }
    if (pts.size() < 2) return std::nullopt;
    RayView rv = make_ray_view(pts, s.sed, s.tol);
    int m = rv.rays();
    double aeps = s.tol.ang_eps() * 8.0;
    int gap_at = -1;
    int wide = 0;
    for (int i = 0; i < m; ++i) {
        if (rv.raw_gap[i] >= kPi - aeps) {
            ++wide;
            if (gap_at < 0) gap_at = i;
        }
    }
    if (gap_at < 0) return std::nullopt;
    HalfDiskInfo info;
    info.all_collinear = (m == 2) || (wide >= 2);
    // Boundary rays of the empty half-plane; average them onto one line.
    double a0 = rv.ray_angle[(gap_at + 1) % m];
    double a1 = rv.ray_angle[gap_at] + kPi;
    double d = std::remainder(a1 - a0, kTwoPi);
    info.line_angle = a0 + d / 2.0;
    for (int side = 0; side < 2; ++side) {
        double dir = info.line_angle + side * kPi;
        for (int r = 0; r < m; ++r) {
            double dd = std::fabs(std::remainder(rv.ray_angle[r] - dir, kTwoPi));
            if (dd <= aeps * 2)
                for (int p : rv.ray_points[r]) info.ray_robots[side].push_back(idx[p]);
        }
        std::sort(info.ray_robots[side].begin(), info.ray_robots[side].end(),
                  [&](int a, int b) { return s.radial(a) < s.radial(b); });
    }
    return info;
}

// ---------------------------------------------------------------------------
// Occupied sectors and relocations.

struct OccupiedSector {
    int start_ray = 0;              // ray index (within external rays) at ccw start
    double start_angle = 0.0;
    double span = 0.0;
    std::vector<int> internals;     // internal point indices, in ccw order
};

// Main sectors of the external points holding internal points.  Requires a
// non-Co-radial snapshot with at least one external ray.
inline std::vector<OccupiedSector> occupied_sectors(const Snapshot& s) {
    require_not_coradial(s.rays);
    std::vector<int> ext = s.external();
    std::vector<double> eang;
    for (int i : ext) {
        Point u = s.points[i] - s.center();
        eang.push_back(std::atan2(u.y, u.x));
    }
    std::vector<size_t> order(ext.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return eang[a] < eang[b]; });
    int m = static_cast<int>(ext.size());
    std::vector<OccupiedSector> sectors(m);
    for (int k = 0; k < m; ++k) {
        sectors[k].start_ray = k;
        sectors[k].start_angle = eang[order[k]];
        double next = eang[order[(k + 1) % m]];
        double span = next - sectors[k].start_angle;
        if (k + 1 == m) span += kTwoPi;
        sectors[k].span = span;
    }
    for (int i : s.internal()) {
        Point u = s.points[i] - s.center();
        double a = std::atan2(u.y, u.x);
        int hit = -1;
        for (int k = 0; k < m; ++k) {
            double rel = a - sectors[k].start_angle;
            rel = std::fmod(rel, kTwoPi);
            if (rel < 0) rel += kTwoPi;
            if (rel > 0 && rel < sectors[k].span) {
                hit = k;
                break;
            }
        }
        if (hit < 0) throw std::logic_error("internal point co-radial with an external point");
        sectors[hit].internals.push_back(i);
    }
    for (auto& sec : sectors)
        std::sort(sec.internals.begin(), sec.internals.end(), [&](int a, int b) {
            Point ua = s.points[a] - s.center(), ub = s.points[b] - s.center();
            double ra = std::fmod(std::atan2(ua.y, ua.x) - sec.start_angle + kTwoPi, kTwoPi);
            double rb = std::fmod(std::atan2(ub.y, ub.x) - sec.start_angle + kTwoPi, kTwoPi);
            return ra < rb;
        });
    std::vector<OccupiedSector> occ;
    for (auto& sec : sectors)
        if (!sec.internals.empty()) occ.push_back(sec);
    return occ;
}

// The principal relocation: each internal point moved onto SEC inside its
// occupied sector so that every relocated point is a midpoint; with two
// internal points per sector the three sub-gaps are equal.
// Returns (internal point index, relocated point) pairs.
inline std::vector<std::pair<int, Point>> principal_relocation(const Snapshot& s) {
    std::vector<std::pair<int, Point>> out;
    for (const auto& sec : occupied_sectors(s)) {
        int c = static_cast<int>(sec.internals.size());
        for (int j = 0; j < c; ++j) {
            double frac = static_cast<double>(j + 1) / (c + 1);
            double ang = sec.start_angle + frac * sec.span;
            out.push_back({sec.internals[j], s.center() + unit_dir(ang) * s.radius()});
        }
    }
    return out;
}

namespace detail {

// True when the angle placements form exactly one analogy class of the set
// "external points plus placements" and none coincides with an external ray.
inline bool placements_form_class(const Snapshot& s, const std::vector<double>& angles) {
    std::vector<Point> pts;
    std::vector<int> ext = s.external();
    for (int i : ext) pts.push_back(s.points[i]);
    size_t first_new = pts.size();
    for (double a : angles) pts.push_back(s.center() + unit_dir(a) * s.radius());
    RayView rv = make_ray_view(pts, s.sed, s.tol);
    if (rv.coradial) return false;
    auto part = ray_partition(rv, static_cast<int>(pts.size()), s.tol);
    int want = -1;
    for (size_t i = first_new; i < pts.size(); ++i) {
        int cls = part.analogy_of[rv.point_ray[static_cast<int>(i)]];
        if (want < 0) want = cls;
        if (cls != want) return false;
    }
    if (want < 0) return false;
    return part.analogy[want].size() == angles.size();
}

}  // namespace detail

// Decides whether some relocation of the internal points is an analogy class
// of the external points together with the relocation.
inline bool is_well_occupied(const Snapshot& s) {
    auto internal = s.internal();
    if (internal.empty()) return false;
    auto occ = occupied_sectors(s);
    size_t per = occ.front().internals.size();
    if (per != 1 && per != 2) return false;
    for (const auto& sec : occ)
        if (sec.internals.size() != per) return false;

    // Candidate 1: the internal points' own angular positions.
    {
        std::vector<double> ang;
        for (int i : internal) {
            Point u = s.points[i] - s.center();
            ang.push_back(std::atan2(u.y, u.x));
        }
        if (detail::placements_form_class(s, ang)) return true;
    }
    // Candidate 2: the principal relocation.
    {
        std::vector<double> ang;
        for (auto& [idx, p] : principal_relocation(s)) {
            Point u = p - s.center();
            ang.push_back(std::atan2(u.y, u.x));
        }
        if (detail::placements_form_class(s, ang)) return true;
    }
    // General search: any witness relocation must be mapped slot-to-slot by
    // angular symmetries of the external set, so enumerate assignments of
    // symmetries to slots and sample the one free parameter.
    std::vector<Point> ext_pts;
    for (int i : s.external()) ext_pts.push_back(s.points[i]);
    RayView erv = make_ray_view(ext_pts, s.sed, s.tol);
    auto syms = angular_symmetries(erv, ext_pts, s.tol);
    double aeps = s.tol.ang_eps() * 8;
    struct Slot {
        double lo, span;
    };
    std::vector<Slot> slots;
    for (const auto& sec : occ)
        for (size_t j = 0; j < sec.internals.size(); ++j)
            slots.push_back({sec.start_angle, sec.span});
    size_t nslots = slots.size();
    // For every slot, symmetries mapping sector 0 onto the slot's sector.
    std::vector<std::vector<AngularSymmetry>> options(nslots);
    for (size_t t = 0; t < nslots; ++t) {
        for (const auto& g : syms) {
            double m0 = g.map_angle(slots[0].lo + slots[0].span / 2);
            double rel = std::fmod(m0 - slots[t].lo + kTwoPi * 2, kTwoPi);
            // accept when the mapped sector midpoint lands inside the slot's sector
            double lo_chk = g.map_angle(slots[0].lo);
            double hi_chk = g.map_angle(slots[0].lo + slots[0].span);
            double rl = std::fmod(lo_chk - slots[t].lo + kTwoPi * 2, kTwoPi);
            double rh = std::fmod(hi_chk - slots[t].lo + kTwoPi * 2, kTwoPi);
            bool ends_match = (rl <= aeps || rl >= kTwoPi - aeps || std::fabs(rl - slots[t].span) <= aeps) &&
                              (rh <= aeps || rh >= kTwoPi - aeps || std::fabs(rh - slots[t].span) <= aeps);
            if (rel > 0 && rel < slots[t].span && ends_match) options[t].push_back(g);
        }
        if (options[t].empty()) return false;
    }
    long combos = 1;
    for (auto& o : options) {
        combos *= static_cast<long>(o.size());
        if (combos > 4096) return false;  // desk-scale cap; never hit by algorithm flows
    }
    const double fracs[] = {0.5, 0.61803398875, 0.38196601125, 0.2790841, 0.8413092};
    std::vector<size_t> pick(nslots, 0);
    for (long c = 0; c < combos; ++c) {
        long rem = c;
        for (size_t t = 0; t < nslots; ++t) {
            pick[t] = rem % options[t].size();
            rem /= options[t].size();
        }
        for (double f : fracs) {
            double base = slots[0].lo + slots[0].span * f;
            std::vector<double> ang(nslots);
            bool ok = true;
            for (size_t t = 0; t < nslots && ok; ++t) {
                ang[t] = options[t][pick[t]].map_angle(base);
                double rel = std::fmod(ang[t] - slots[t].lo + kTwoPi * 2, kTwoPi);
                if (!(rel > aeps && rel < slots[t].span - aeps)) ok = false;
            }
            if (!ok) continue;
            // distinctness
            for (size_t a = 0; a < nslots && ok; ++a)
                for (size_t b = a + 1; b < nslots && ok; ++b) {
                    double d = std::fabs(std::remainder(ang[a] - ang[b], kTwoPi));
                    if (d <= aeps) ok = false;
                }
            if (ok && detail::placements_form_class(s, ang)) return true;
        }
    }
    return false;
}

// ---------------------------------------------------------------------------
// Valid sets.

inline bool is_valid_ready(const Snapshot& s) {
    if (s.n() < 5) return false;
    if (is_coradial_config(s)) return false;
    if (half_disk_info(s)) return false;
    bool has_internal = false;
    for (int i = 0; i < s.n(); ++i) {
        if (s.on_sec(i)) continue;
        has_internal = true;
        if (!s.in_sed3(i)) return false;
    }
    if (!has_internal) return false;
    return is_well_occupied(s);
}

inline bool is_valid_waiting(const Snapshot& s) {
    if (s.n() < 5) return false;
    if (is_coradial_config(s)) return false;
    if (half_disk_info(s)) return false;
    for (int i = 0; i < s.n(); ++i)
        if (s.interior_sed3(i)) return false;
    // all internal points analogous
    auto internal = s.internal();
    if (internal.size() <= 1) return true;
    auto part = ray_partition(s.rays, s.n(), s.tol);
    int cls = part.analogy_of[s.rays.point_ray[internal[0]]];
    for (int i : internal)
        if (part.analogy_of[s.rays.point_ray[i]] != cls) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Spec-facing wrappers keyed by point indices.

struct AngleSequence {
    std::vector<double> values;
    int origin = 0;     // point index
    bool clockwise = true;
};

inline AngleSequence angle_sequence(const Snapshot& s, int origin_point, bool clockwise) {
    int r = s.rays.point_ray[origin_point];
    AngleSequence a;
    a.values = clockwise ? seq_cw(s.rays, r) : seq_ccw(s.rays, r);
    a.origin = origin_point;
    a.clockwise = clockwise;
    return a;
}

inline AngleSequence min_sequence(const Snapshot& s) {
    auto g = global_sequences(s.rays);
    AngleSequence a;
    a.values = g.mu;
    bool cw = !seq_less(g.beta, g.alpha);
    a.clockwise = cw;
    int ray = cw ? g.alpha_origin : g.beta_origin;
    a.origin = s.rays.ray_points[ray][0];
    return a;
}

struct Partition {
    std::vector<std::vector<int>> analogy;
    std::vector<std::vector<int>> strong;
    std::vector<std::vector<int>> concordance;
};

inline Partition partitions(const Snapshot& s) {
    auto rp = ray_partition(s.rays, s.n(), s.tol);
    Partition p;
    auto lift = [&](const std::vector<std::vector<int>>& in) {
        std::vector<std::vector<int>> out;
        for (const auto& cls : in) {
            std::vector<int> c;
            for (int r : cls) c.push_back(s.rays.ray_points[r][0]);
            std::sort(c.begin(), c.end());
            out.push_back(c);
        }
        return out;
    };
    p.analogy = lift(rp.analogy);
    p.strong = lift(rp.strong);
    p.concordance = lift(rp.concordance);
    return p;
}

inline PeriodClass period_class(const Snapshot& s) {
    PeriodClass pc = period_class_of(s.rays);
    if (pc.kind == PeriodKind::BiPeriodic && pc.period == 4) {
        auto part = ray_partition(s.rays, s.n(), s.tol);
        pc.double_biangular = part.analogy.size() == 2;
    }
    return pc;
}

// ---------------------------------------------------------------------------

inline ConfigClass classify(const Snapshot& s) {
    if (s.n() == 4) throw std::invalid_argument("swarm size 4 is unsupported");
    ConfigClass out;
    if (is_regular_config(s)) {
        out.kind = ConfigKind::Regular;
        return out;
    }
    if (auto cert = is_pre_regular(s)) {
        out.kind = ConfigKind::PreRegular;
        out.cert = std::move(cert);
        return out;
    }
    if (central_point(s)) {
        out.kind = ConfigKind::Central;
        return out;
    }
    if (auto hd = half_disk_info(s)) {
        out.kind = ConfigKind::HalfDisk;
        out.half_disk = std::move(hd);
        return out;
    }
    if (is_coradial_config(s)) {
        out.kind = ConfigKind::CoRadial;
        return out;
    }
    if (is_valid_ready(s)) {
        out.kind = ConfigKind::ValidReady;
        return out;
    }
    if (is_valid_waiting(s)) {
        out.kind = ConfigKind::ValidWaiting;
        return out;
    }
    out.kind = ConfigKind::Invalid;
    return out;
}

}  // namespace ucf

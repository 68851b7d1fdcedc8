#pragma once

// Snapshot: the input to every Compute.  Holds the observed points, the
// cached smallest enclosing disk, the tolerance policy scaled to it, and the
// cyclic order of points about the center.

#include <stdexcept>
#include <utility>
#include <vector>

#include "ucf/angular.hpp"
#include "ucf/geometry.hpp"

namespace ucf {

struct Snapshot {
    std::vector<Point> points;
    Circle sed;
    TolerancePolicy tol;
    RayView rays;

    int n() const { return static_cast<int>(points.size()); }
    double radius() const { return sed.radius; }
    const Point& center() const { return sed.center; }
    Circle sec3() const { return sed_third(sed); }

    double radial(int i) const { return dist(points[i], sed.center); }
    bool on_sec(int i) const { return tol.len_eq(radial(i), sed.radius); }
    bool in_sed3(int i) const { return radial(i) <= sed.radius / 3.0 + tol.eps_abs; }
    bool interior_sed3(int i) const { return radial(i) < sed.radius / 3.0 - tol.eps_abs; }
    bool on_sec3(int i) const { return tol.len_eq(radial(i), sed.radius / 3.0); }

    std::vector<int> external() const {
        std::vector<int> out;
        for (int i = 0; i < n(); ++i)
            if (on_sec(i)) out.push_back(i);
        return out;
    }
    std::vector<int> internal() const {
        std::vector<int> out;
        for (int i = 0; i < n(); ++i)
            if (!on_sec(i)) out.push_back(i);
        return out;
    }
};

inline Snapshot make_snapshot(std::vector<Point> pts) {
    if (pts.size() < 3) throw std::invalid_argument("snapshot requires at least 3 points");
    for (const Point& p : pts)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("snapshot point not finite");
    Snapshot s;
    s.sed = smallest_enclosing_circle(pts);
    s.tol = TolerancePolicy::scaled(s.sed.radius);
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (dist(pts[i], pts[j]) <= s.tol.eps_abs)
                throw std::invalid_argument("snapshot points must be distinct");
    s.points = std::move(pts);
    s.rays = make_ray_view(s.points, s.sed, s.tol);
    return s;
}

// Rebuild of derived state after substituting point positions.
inline Snapshot resnapshot(const Snapshot& s, std::vector<Point> pts) {
    (void)s;
    return make_snapshot(std::move(pts));
}

}  // namespace ucf

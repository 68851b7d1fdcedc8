#pragma once

// Pre-regular recognition.  A set is Pre-regular when a regular n-gon (the
// supporting polygon) exists such that alternating edges carry exactly two
// points each and the other edges' relative interiors are empty.  The
// supporting polygon is unique when it exists, so recognition enumerates the
// two alternating companion matchings of the convex-position cyclic order,
// fits a polygon to each and verifies.

#include <array>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "ucf/geometry.hpp"
#include "ucf/snapshot.hpp"

namespace ucf {

struct PreRegularCertificate {
    RegularPolygon polygon;
    std::vector<int> matching;                  // point index -> vertex index
    std::vector<std::pair<int, int>> companions;  // pairs of point indices
    std::vector<int> point_edge;                // point index -> edge index
};

namespace detail {

inline std::vector<int> convex_cyclic_order(const std::vector<Point>& pts) {
    Point centroid{0, 0};
    for (const Point& p : pts) centroid = centroid + p;
    centroid = centroid * (1.0 / static_cast<double>(pts.size()));
    std::vector<int> order(pts.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        Point u = pts[a] - centroid, v = pts[b] - centroid;
        return std::atan2(u.y, u.x) < std::atan2(v.y, v.x);
    });
    return order;
}

// Fit a supporting polygon assuming pair j of the matching lies on edge 2j.
inline std::optional<RegularPolygon> fit_supporting_polygon(
    const std::vector<Point>& pts, const std::vector<int>& order, int parity, int n,
    const TolerancePolicy& tol) {
    int half = n / 2;
    auto pair_pt = [&](int j, int which) { return pts[order[(2 * j + parity + which) % n]]; };
    Line base = Line::through(pair_pt(0, 0), pair_pt(0, 1));
    double aeps = std::max(tol.ang_eps() * 64.0, 1e-8);
    for (int orient = 0; orient < 2; ++orient) {
        double phase = std::atan2(base.normal.y, base.normal.x) + (orient ? kPi : 0.0);
        PolyFit fit;
        bool ok = true;
        for (int j = 0; j < half && ok; ++j) {
            Point u = unit_dir(phase + kTwoPi * (2 * j) / n);
            Point a = pair_pt(j, 0), b = pair_pt(j, 1);
            // u must be normal to the pair's chord
            Point d = b - a;
            double dn = d.norm();
            if (dn == 0.0 || std::fabs(u.dot(d)) / dn > aeps) {
                ok = false;
                break;
            }
            fit.add(u, u.dot(a));
            fit.add(u, u.dot(b));
        }
        if (!ok) continue;
        auto sol = fit.solve();
        if (!sol) continue;
        RegularPolygon poly{Point{(*sol)[0], (*sol)[1]}, (*sol)[2], phase, n};
        if (poly.apothem <= tol.eps_abs) continue;
        double scale_eps = tol.eps_abs + 1e-9 * poly.circumradius();
        ok = true;
        for (int j = 0; j < half && ok; ++j) {
            Point u = poly.edge_normal(2 * j);
            double off = poly.edge_offset(2 * j);
            double half_len = poly.edge_length() / 2.0;
            Point tau{-u.y, u.x};
            for (int which = 0; which < 2; ++which) {
                Point p = pair_pt(j, which);
                if (std::fabs(u.dot(p) - off) > scale_eps * 8) ok = false;
                double tc = tau.dot(p - poly.center);
                if (std::fabs(tc) > half_len + scale_eps * 8) ok = false;
            }
        }
        if (ok) return poly;
    }
    return std::nullopt;
}

}  // namespace detail

inline std::optional<PreRegularCertificate> is_pre_regular(const Snapshot& s) {
    int n = s.n();
    if (n < 6 || n % 2 != 0) return std::nullopt;
    if (!strictly_convex_position(s.points, s.tol)) return std::nullopt;
    // A Regular set is handled before this test in the dispatch order; its
    // companion pairing would be degenerate, so it is not certified here.
    {
        bool regular = true;
        for (int i = 0; i < n && regular; ++i)
            if (!s.on_sec(i)) regular = false;
        if (regular) {
            if (s.rays.coradial) return std::nullopt;
            regular = true;
            for (int i = 0; i < n && regular; ++i)
                if (!s.tol.ang_eq(s.rays.gap[i], kTwoPi / n)) regular = false;
            if (regular) return std::nullopt;
        }
    }
    auto order = detail::convex_cyclic_order(s.points);
    std::vector<PreRegularCertificate> found;
    for (int parity = 0; parity < 2; ++parity) {
        auto poly = detail::fit_supporting_polygon(s.points, order, parity, n, s.tol);
        if (!poly) continue;
        PreRegularCertificate cert;
        cert.polygon = *poly;
        cert.matching.assign(n, -1);
        cert.point_edge.assign(n, -1);
        double half_len = poly->edge_length() / 2.0;
        bool ok = true;
        for (int j = 0; j < n / 2 && ok; ++j) {
            int ia = order[(2 * j + parity) % n];
            int ib = order[(2 * j + parity + 1) % n];
            int edge = -1;
            // locate the edge carrying this pair
            double best = 1e300;
            for (int e = 0; e < n; ++e) {
                double d = std::fabs(poly->edge_normal(e).dot(s.points[ia]) - poly->edge_offset(e));
                if (d < best) {
                    best = d;
                    edge = e;
                }
            }
            Point u = poly->edge_normal(edge);
            Point tau{-u.y, u.x};
            double ta = tau.dot(s.points[ia] - poly->center);
            double tb = tau.dot(s.points[ib] - poly->center);
            if (std::fabs(ta) > half_len + s.tol.eps_abs * 8 ||
                std::fabs(tb) > half_len + s.tol.eps_abs * 8) {
                ok = false;
                break;
            }
            // vertex(edge) sits at tangential +half_len, vertex(edge-1) at -half_len
            int vplus = ((edge % n) + n) % n;
            int vminus = (vplus - 1 + n) % n;
            cert.point_edge[ia] = edge;
            cert.point_edge[ib] = edge;
            if (ta <= tb) {
                cert.matching[ia] = vminus;
                cert.matching[ib] = vplus;
            } else {
                cert.matching[ia] = vplus;
                cert.matching[ib] = vminus;
            }
            cert.companions.push_back({ia, ib});
        }
        if (!ok) continue;
        // Distribution check: the n/2 occupied edges must alternate.
        std::vector<int> occ;
        for (int j = 0; j < n / 2; ++j) occ.push_back(cert.point_edge[cert.companions[j].first]);
        std::sort(occ.begin(), occ.end());
        bool alternate = true;
        for (size_t k = 0; k + 1 < occ.size(); ++k)
            if (occ[k + 1] - occ[k] != 2) alternate = false;
        if (occ.size() >= 2 && (occ.front() + n - occ.back()) != 2) alternate = false;
        if (std::unique(occ.begin(), occ.end()) != occ.end()) alternate = false;
        if (!alternate) continue;
        found.push_back(std::move(cert));
    }
    if (found.empty()) return std::nullopt;
    if (found.size() > 1) {
        // The supporting polygon is unique; two survivors must describe the
        // same polygon or the input is numerically ambiguous.
        const auto& a = found[0].polygon;
        const auto& b = found[1].polygon;
        if (dist(a.center, b.center) > s.tol.eps_abs * 16 ||
            std::fabs(a.apothem - b.apothem) > s.tol.eps_abs * 16)
            return std::nullopt;
    }
    return found[0];
}

}  // namespace ucf

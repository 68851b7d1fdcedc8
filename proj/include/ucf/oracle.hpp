#pragma once

// Definition-level brute-force oracles used by the oracle CLI command and by
// the test suites.  Everything here recomputes from first principles and
// stays independent of the algorithmic paths it cross-checks: the smallest
// enclosing circle enumerates all pair and triple circles, and the
// classification oracle works directly on angular distances.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "ucf/geometry.hpp"
#include "ucf/rng.hpp"

namespace ucf::oracle {

// Smallest enclosing circle by enumerating all diameter pairs and all
// circumcircle triples and keeping the smallest circle enclosing every point.
inline Circle sec_bruteforce(const std::vector<Point>& pts) {
    double slack = 0.0;
    for (const Point& p : pts) slack = std::max({slack, std::fabs(p.x), std::fabs(p.y)});
    slack = 1e-10 * std::max(slack, 1.0);
    auto encloses = [&](const Circle& c) {
        for (const Point& p : pts)
            if (dist(c.center, p) > c.radius + slack) return false;
        return true;
    };
    Circle best{{0, 0}, -1};
    auto consider = [&](const Circle& c) {
        if (!encloses(c)) return;
        if (best.radius < 0 || c.radius < best.radius) best = c;
    };
    size_t n = pts.size();
    if (n == 1) return {pts[0], 0.0};
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            Point c{(pts[i].x + pts[j].x) / 2, (pts[i].y + pts[j].y) / 2};
            consider({c, std::max(dist(c, pts[i]), dist(c, pts[j]))});
        }
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                auto cc = detail::circumcircle(pts[i], pts[j], pts[k]);
                if (cc) consider(*cc);
            }
    return best;
}

// ---------------------------------------------------------------------------
// Classification oracle: clockwise angle sequences straight from the
// definition, with tolerance comparisons on raw angles.

struct BruteClasses {
    int period = 0;
    bool mirror = false;  // alpha == beta
    std::vector<std::vector<int>> analogy;
    std::vector<std::vector<int>> strong;
    std::vector<std::vector<int>> concordance;
};

namespace detail2 {

inline bool seq_eq(const std::vector<double>& a, const std::vector<double>& b, double eps) {
    for (size_t i = 0; i < a.size(); ++i)
        if (std::fabs(a[i] - b[i]) > eps) return false;
    return true;
}

inline bool seq_lt(const std::vector<double>& a, const std::vector<double>& b, double eps) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i] - eps) return true;
        if (a[i] > b[i] + eps) return false;
    }
    return false;
}

inline std::vector<std::vector<int>> group(int n, const std::function<bool(int, int)>& eq) {
    std::vector<int> cls(n, -1);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < n; ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = static_cast<int>(out.size());
        out.push_back({i});
        for (int j = i + 1; j < n; ++j)
            if (cls[j] < 0 && eq(i, j)) {
                cls[j] = cls[i];
                out.back().push_back(j);
            }
    }
    return out;
}

}  // namespace detail2

inline BruteClasses classify_bruteforce(const std::vector<Point>& pts, double ang_eps = 1e-7) {
    int n = static_cast<int>(pts.size());
    Circle sec = sec_bruteforce(pts);
    Point c = sec.center;
    // cyclic order: ascending atan2
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> ang(n);
    for (int i = 0; i < n; ++i) {
        Point u = pts[i] - c;
        ang[i] = std::atan2(u.y, u.x);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) { return ang[a] < ang[b]; });
    std::vector<int> pos_of(n);
    for (int i = 0; i < n; ++i) pos_of[order[i]] = i;

    // clockwise sequence from point p: theta between consecutive points
    // walking in descending-angle order
    auto alpha_of = [&](int p) {
        std::vector<double> s(n);
        int start = pos_of[p];
        for (int i = 0; i < n; ++i) {
            int a = order[((start - i) % n + n) % n];
            int b = order[((start - i - 1) % n + n) % n];
            s[i] = angular_distance(c, pts[a], pts[b]);
        }
        return s;
    };
    auto beta_of = [&](int p) {
        auto a = alpha_of(p);
        std::vector<double> s(n);
        for (int i = 0; i < n; ++i) s[i] = a[n - 1 - i];
        return s;
    };
    auto mu_of = [&](int p) {
        auto a = alpha_of(p);
        auto b = beta_of(p);
        return detail2::seq_lt(b, a, ang_eps) ? b : a;
    };

    BruteClasses out;
    // period: number of distinct clockwise sequences
    std::vector<std::vector<double>> alphas(n);
    for (int i = 0; i < n; ++i) alphas[i] = alpha_of(i);
    std::vector<bool> counted(n, false);
    for (int i = 0; i < n; ++i) {
        if (counted[i]) continue;
        ++out.period;
        for (int j = i; j < n; ++j)
            if (detail2::seq_eq(alphas[i], alphas[j], ang_eps)) counted[j] = true;
    }
    // global alpha & beta
    std::vector<double> ga = alphas[0], gb = beta_of(0);
    for (int i = 0; i < n; ++i) {
        if (detail2::seq_lt(alphas[i], ga, ang_eps)) ga = alphas[i];
        auto b = beta_of(i);
        if (detail2::seq_lt(b, gb, ang_eps)) gb = b;
    }
    out.mirror = detail2::seq_eq(ga, gb, ang_eps);

    out.analogy = detail2::group(n, [&](int i, int j) {
        return detail2::seq_eq(mu_of(i), mu_of(j), ang_eps);
    });
    out.strong = detail2::group(n, [&](int i, int j) {
        return detail2::seq_eq(alphas[i], alphas[j], ang_eps);
    });
    // concordance straight from the definition, using explicit sector counts
    auto sector_count = [&](int i, int j) {
        // rays strictly between i and j the short way, inclusive of endpoints
        double ti = ang[i], tj = ang[j];
        double fwd = tj - ti;
        while (fwd < 0) fwd += kTwoPi;
        bool use_fwd = fwd <= kPi;
        int cnt = 2;
        for (int k = 0; k < n; ++k) {
            if (k == i || k == j) continue;
            double rel = ang[k] - ti;
            while (rel < 0) rel += kTwoPi;
            if (use_fwd ? (rel > 0 && rel < fwd) : (rel > fwd)) ++cnt;
        }
        return cnt;
    };
    auto concordant_pair = [&](int i, int j) {
        double theta = angular_distance(c, pts[i], pts[j]);
        double kf = theta * n / kTwoPi;
        int k = static_cast<int>(std::lround(kf));
        if (k < 1 || std::fabs(kf - k) > 1e-6) return false;
        if (std::fabs(theta - kPi) <= ang_eps) {
            // two sectors; both hold the same count by complement
            return sector_count(i, j) == k + 1 || (n + 2 - sector_count(i, j)) == k + 1;
        }
        return sector_count(i, j) == k + 1;
    };
    // transitive closure
    std::vector<int> root(n);
    std::iota(root.begin(), root.end(), 0);
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (concordant_pair(i, j)) root[find(i)] = find(j);
    std::vector<int> seen(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (seen[r] < 0) {
            seen[r] = static_cast<int>(out.concordance.size());
            out.concordance.push_back({});
        }
        out.concordance[seen[r]].push_back(i);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generators.

// Random points, uniform in the unit disk scaled and offset, distinct and in
// general position with probability one.
inline std::vector<Point> random_config(Rng& rng, int n, double radius = 1.0,
                                        Point center = {0, 0}) {
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
        double a = rng.uniform(0.0, kTwoPi);
        double r = radius * std::sqrt(rng.uniform());
        Point p = center + unit_dir(a) * r;
        bool ok = true;
        for (const Point& q : pts)
            if (dist(p, q) < 1e-5 * radius) ok = false;
        if (ok) pts.push_back(p);
    }
    return pts;
}

// A random Pre-regular set: a random supporting regular n-gon with exactly
// two points placed on every other edge.  Returns the points and the polygon.
struct PreRegularSample {
    std::vector<Point> points;
    RegularPolygon polygon;
};

inline PreRegularSample random_preregular(Rng& rng, int n) {
    PreRegularSample out;
    RegularPolygon poly;
    poly.n = n;
    poly.center = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    poly.apothem = rng.uniform(0.5, 2.0);
    poly.phase = rng.uniform(0.0, kTwoPi);
    out.polygon = poly;
    double L = poly.edge_length();
    for (int j = 0; j < n / 2; ++j) {
        int e = 2 * j;
        Point u = poly.edge_normal(e);
        Point tau{-u.y, u.x};
        Point mid = poly.center + u * poly.apothem;
        double t1 = rng.uniform(-0.5, 0.5) * 0.995 * L;
        double t2 = rng.uniform(-0.5, 0.5) * 0.995 * L;
        if (std::fabs(t1 - t2) < 0.02 * L) t2 = t1 + (t2 >= t1 ? 0.02 : -0.02) * L;
        double lim = 0.499 * L;
        t1 = std::clamp(t1, -lim, lim);
        t2 = std::clamp(t2, -lim, lim);
        out.points.push_back(mid + tau * t1);
        out.points.push_back(mid + tau * t2);
    }
    return out;
}

}  // namespace ucf::oracle

#include <gtest/gtest.h>

#include "ucf/classify.hpp"
#include "ucf/oracle.hpp"

using namespace ucf;

namespace {

double polygon_match_error(const RegularPolygon& a, const RegularPolygon& b) {
    double err = 0;
    for (int j = 0; j < b.n; ++j) {
        double best = 1e300;
        for (int i = 0; i < a.n; ++i) best = std::min(best, dist(a.vertex(i), b.vertex(j)));
        err = std::max(err, best);
    }
    return err;
}

}  // namespace

TEST(PreRegular, HexagonWithTwoPointsPerAlternateEdge) {
    Rng rng(42);
    auto sample = oracle::random_preregular(rng, 6);
    Snapshot s = make_snapshot(sample.points);
    auto cert = is_pre_regular(s);
    ASSERT_TRUE(cert.has_value());
    EXPECT_LT(polygon_match_error(cert->polygon, sample.polygon),
              1e-6 * sample.polygon.circumradius());
}

TEST(PreRegular, OddCountIsNever) {
    Rng rng(7);
    auto pts = oracle::random_config(rng, 7);
    Snapshot s = make_snapshot(pts);
    EXPECT_FALSE(is_pre_regular(s).has_value());
}

TEST(PreRegular, CertificateStructure) {
    Rng rng(10);
    for (int it = 0; it < 25; ++it) {
        int n = 6 + 2 * static_cast<int>(rng.below(4));
        auto sample = oracle::random_preregular(rng, n);
        Snapshot s = make_snapshot(sample.points);
        auto cert = is_pre_regular(s);
        ASSERT_TRUE(cert.has_value()) << "n=" << n << " it=" << it;
        ASSERT_EQ(cert->companions.size(), static_cast<size_t>(n / 2));
        for (auto [a, b] : cert->companions) {
            EXPECT_EQ(cert->point_edge[a], cert->point_edge[b]);
            for (int p : {a, b}) {
                int v = cert->matching[p];
                int e = cert->point_edge[p];
                auto edge = cert->polygon.edge(e);
                double dv = std::min(dist(cert->polygon.vertex(v), edge[0]),
                                     dist(cert->polygon.vertex(v), edge[1]));
                EXPECT_LT(dv, 1e-9 * cert->polygon.circumradius());
                Point mv = cert->polygon.vertex(v);
                for (int q = 0; q < n; ++q) {
                    if (q == p) continue;
                    Point u = mv - s.points[p];
                    double len = u.norm();
                    if (len < 1e-12) continue;
                    Point w = s.points[q] - s.points[p];
                    double t = w.dot(u) / (len * len);
                    if (t > 1e-6 && t < 1 - 1e-6) {
                        double off = std::fabs(u.cross(w)) / len;
                        EXPECT_GT(off, 1e-9 * cert->polygon.circumradius());
                    }
                }
            }
        }
    }
}

TEST(PreRegular, StructuralTheorems) {
    Rng rng(77);
    for (int it = 0; it < 100; ++it) {
        int n = 6 + 2 * static_cast<int>(rng.below(4));
        auto sample = oracle::random_preregular(rng, n);
        Snapshot s = make_snapshot(sample.points);
        EXPECT_FALSE(is_coradial_config(s)) << it;
        EXPECT_FALSE(half_disk_info(s).has_value()) << it;
        for (int i = 0; i < s.n(); ++i)
            EXPECT_GT(s.radial(i), s.radius() / 3.0 + s.tol.eps_abs) << it;
        EXPECT_TRUE(strictly_convex_position(s.points, s.tol)) << it;
    }
}

TEST(PreRegular, PerturbedNegatives) {
    Rng rng(123);
    for (int it = 0; it < 100; ++it) {
        int n = 6 + 2 * static_cast<int>(rng.below(4));
        auto sample = oracle::random_preregular(rng, n);
        {
            Snapshot s0 = make_snapshot(sample.points);
            ASSERT_TRUE(is_pre_regular(s0).has_value());
        }
        int k = static_cast<int>(rng.below(n));
        int e = 2 * (k / 2);  // the generator placed point k on edge 2*(k/2)
        Point u = sample.polygon.edge_normal(e);
        double nudge = 0.01 * sample.polygon.edge_length();
        auto pts = sample.points;
        pts[k] = pts[k] - u * nudge;
        Snapshot s = make_snapshot(pts);
        EXPECT_FALSE(is_pre_regular(s).has_value()) << "n=" << n << " it=" << it;
    }
}

TEST(PreRegular, BiangularOnSecIsPreRegular) {
    std::vector<Point> pts;
    double a = 0.2;
    for (int i = 0; i < 8; ++i) {
        pts.push_back(unit_dir(a));
        a += (i % 2 == 0 ? 40.0 : 50.0) * kPi / 180.0;
    }
    Snapshot s = make_snapshot(pts);
    auto cert = is_pre_regular(s);
    ASSERT_TRUE(cert.has_value());
    for (auto [x, y] : cert->companions) {
        double d = angular_distance(s.center(), s.points[x], s.points[y]);
        EXPECT_NEAR(d, 40 * kPi / 180, 1e-9);
    }
}

TEST(PreRegular, RegularSetNotCertified) {
    std::vector<Point> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(unit_dir(kTwoPi * i / 8 + 0.3));
    Snapshot s = make_snapshot(pts);
    EXPECT_FALSE(is_pre_regular(s).has_value());
    EXPECT_EQ(classify(s).kind, ConfigKind::Regular);
}

TEST(PreRegular, PerturbedAlternateVerticesOfHexagon) {
    std::vector<Point> pts;
    for (int i = 0; i < 6; ++i) {
        double r = (i % 2 == 0) ? 0.99 : 1.0;
        pts.push_back(unit_dir(kTwoPi * i / 6) * r);
    }
    Snapshot s = make_snapshot(pts);
    auto cert = is_pre_regular(s);
    if (cert.has_value()) {
        for (const Point& p : s.points) {
            double best = 1e300;
            for (int e = 0; e < 6; ++e) {
                Point u = cert->polygon.edge_normal(e);
                best = std::min(best, std::fabs(u.dot(p) - cert->polygon.edge_offset(e)));
            }
            EXPECT_LT(best, 1e-6);
        }
    }
}

TEST(PreRegular, ClassifyDispatch) {
    Rng rng(5);
    auto sample = oracle::random_preregular(rng, 8);
    Snapshot s = make_snapshot(sample.points);
    EXPECT_EQ(classify(s).kind, ConfigKind::PreRegular);
}

#include <gtest/gtest.h>

#include "ucf/geometry.hpp"
#include "ucf/oracle.hpp"

using namespace ucf;

namespace {
TolerancePolicy tol1 = TolerancePolicy::scaled(1.0);
}

TEST(Sec, TwoPointsAreAntipodal) {
    Circle c = smallest_enclosing_circle({{1, 0}, {-1, 0}});
    EXPECT_NEAR(c.center.x, 0, 1e-12);
    EXPECT_NEAR(c.center.y, 0, 1e-12);
    EXPECT_NEAR(c.radius, 1, 1e-12);
}

TEST(Sec, RegularPentagonOnUnitCircle) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(unit_dir(kTwoPi * i / 5 + 0.3));
    Circle c = smallest_enclosing_circle(pts);
    EXPECT_NEAR(c.center.norm(), 0, 1e-9);
    EXPECT_NEAR(c.radius, 1, 1e-9);
}

TEST(Sec, TriangleMatchesBruteForceValue) {
    // brute-force oracle gives center (1, 0.75), radius 1.25
    std::vector<Point> pts{{0, 0}, {2, 0}, {1, 2}};
    Circle ref = oracle::sec_bruteforce(pts);
    EXPECT_NEAR(ref.center.x, 1.0, 1e-12);
    EXPECT_NEAR(ref.center.y, 0.75, 1e-12);
    EXPECT_NEAR(ref.radius, 1.25, 1e-12);
    Circle c = smallest_enclosing_circle(pts);
    EXPECT_NEAR(c.center.x, 1.0, 1e-9);
    EXPECT_NEAR(c.center.y, 0.75, 1e-9);
    EXPECT_NEAR(c.radius, 1.25, 1e-9);
}

TEST(Sec, SingletonHasRadiusZero) {
    Circle c = smallest_enclosing_circle({{3, 4}});
    EXPECT_EQ(c.radius, 0.0);
}

TEST(Sec, OracleEquivalenceRandom) {
    Rng rng(7);
    for (int it = 0; it < 200; ++it) {
        int n = 2 + static_cast<int>(rng.below(11));
        auto pts = oracle::random_config(rng, n);
        Circle mine = smallest_enclosing_circle(pts);
        Circle ref = oracle::sec_bruteforce(pts);
        EXPECT_NEAR(mine.radius, ref.radius, 1e-9 * ref.radius) << "n=" << n << " it=" << it;
        // every point enclosed
        for (const Point& p : pts)
            EXPECT_LE(dist(mine.center, p), mine.radius * (1 + 1e-9) + 1e-12);
    }
}

TEST(SedThird, Examples) {
    Circle c = sed_third({{0, 0}, 3.0});
    EXPECT_NEAR(c.radius, 1.0, 0);
    EXPECT_EQ(sed_third({{0, 0}, 0.0}).radius, 0.0);
    Circle d = sed_third({{5, -2}, 0.9});
    EXPECT_NEAR(d.radius, 0.3, 1e-15);
    EXPECT_EQ(d.center.x, 5.0);
}

TEST(AngularDistance, Examples) {
    Point c{0, 0};
    EXPECT_NEAR(angular_distance(c, {1, 0}, {0, 1}), kPi / 2, 1e-12);
    EXPECT_NEAR(angular_distance(c, {1, 0}, {-2, 0}), kPi, 1e-12);
    EXPECT_NEAR(angular_distance(c, {1, 0}, {3, 3}), kPi / 4, 1e-12);
    EXPECT_THROW(angular_distance(c, c, {1, 1}), std::invalid_argument);
}

TEST(AngularDistance, Symmetric) {
    Rng rng(3);
    for (int it = 0; it < 100; ++it) {
        Point c{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        Point a{c.x + rng.uniform(-2, 2), c.y + rng.uniform(-2, 2)};
        Point b{c.x + rng.uniform(-2, 2), c.y + rng.uniform(-2, 2)};
        if (dist(a, c) < 1e-3 || dist(b, c) < 1e-3) continue;
        EXPECT_NEAR(angular_distance(c, a, b), angular_distance(c, b, a), 1e-14);
    }
}

TEST(Coradial, Examples) {
    Point c{0, 0};
    EXPECT_TRUE(is_coradial(c, {1, 0}, {2, 0}, tol1));
    EXPECT_TRUE(is_antipodal_on({{0, 0}, 1.0}, {1, 0}, {-1, 0}, tol1));
    EXPECT_FALSE(is_coradial(c, {1, 0}, {1, 0.001}, tol1));
}

TEST(Footprint, Examples) {
    Circle sec{{0, 0}, 3.0};
    Point f = footprint(sec, {1, 0});
    EXPECT_NEAR(f.x, 3, 1e-12);
    EXPECT_NEAR(f.y, 0, 1e-12);
    Point a = anti_footprint(sec, {1, 0});
    EXPECT_NEAR(a.x, 1, 1e-12);
    Point g = footprint(sec, {0, 2});
    EXPECT_NEAR(g.y, 3, 1e-12);
    EXPECT_THROW(footprint(sec, sec.center), std::invalid_argument);
}

TEST(Footprint, CoradialAndOnCircle) {
    Rng rng(11);
    Circle sec{{0.5, -0.25}, 2.0};
    for (int it = 0; it < 100; ++it) {
        Point p = sec.center + unit_dir(rng.uniform(0, kTwoPi)) * rng.uniform(0.01, 1.9);
        Point f = footprint(sec, p);
        Point a = anti_footprint(sec, p);
        EXPECT_TRUE(is_coradial(sec.center, p, f, tol1));
        EXPECT_TRUE(is_coradial(sec.center, p, a, tol1));
        EXPECT_NEAR(dist(f, sec.center), sec.radius, 1e-12);
        EXPECT_NEAR(dist(a, sec.center), sec.radius / 3, 1e-12);
    }
}

TEST(Sector, Examples) {
    Sector s{{0, 0}, {1, 0}, {0, 1}, std::nullopt};
    EXPECT_TRUE(sector_contains(s, {1, 1}, tol1));
    EXPECT_FALSE(sector_contains(s, {-1, 0}, tol1));
    Sector d{{0, 0}, {1, 0}, {-1, 0}, Point{0, 1}};
    EXPECT_TRUE(sector_contains(d, {0, 1}, tol1));
    EXPECT_FALSE(sector_contains(d, {0, -1}, tol1));
}

TEST(Sector, AdditivityMatchesMembership) {
    Rng rng(5);
    Point c{0, 0};
    for (int it = 0; it < 200; ++it) {
        Point a = unit_dir(rng.uniform(0, kTwoPi)) * rng.uniform(0.5, 2.0);
        Point b = unit_dir(rng.uniform(0, kTwoPi)) * rng.uniform(0.5, 2.0);
        Point x = unit_dir(rng.uniform(0, kTwoPi)) * rng.uniform(0.5, 2.0);
        if (angular_distance(c, a, b) > kPi - 1e-3) continue;
        Sector s{c, a, b, std::nullopt};
        bool member = sector_contains(s, x, tol1);
        double lhs = angular_distance(c, a, x) + angular_distance(c, x, b);
        double rhs = angular_distance(c, a, b);
        EXPECT_EQ(member, std::fabs(lhs - rhs) <= 4 * tol1.ang_eps()) << "it=" << it;
    }
}

TEST(Convexity, Examples) {
    std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    EXPECT_TRUE(strictly_convex_position(square, tol1));
    auto with_mid = square;
    with_mid.push_back({0.5, 0.0});
    EXPECT_FALSE(strictly_convex_position(with_mid, tol1));
    EXPECT_FALSE(strictly_convex_position({{0, 0}, {1, 0}, {2, 0}}, tol1));
}

TEST(RegularPolygonFromLines, HexagonRoundTrip) {
    RegularPolygon hex{{0.2, -0.1}, 1.0, 0.37, 6};
    auto rec = regular_polygon_from_lines(6, {hex.edge_line(0), hex.edge_line(2), hex.edge_line(4)}, tol1);
    ASSERT_TRUE(rec.has_value());
    EXPECT_NEAR(dist(rec->center, hex.center), 0, 1e-9);
    EXPECT_NEAR(rec->apothem, hex.apothem, 1e-9);
}

TEST(RegularPolygonFromLines, IncompatibleSlopes) {
    Line l1 = Line::through({0, 0}, {1, 0});
    Line l2 = Line::through({0, 0}, {1, 0.5});  // not a multiple of 60 degrees
    Line l3 = Line::through({0, 1}, {1, 1.8});
    EXPECT_FALSE(regular_polygon_from_lines(6, {l1, l2, l3}, tol1).has_value());
}

TEST(RegularPolygonFromLines, OctagonConsecutiveEdges) {
    RegularPolygon oct{{-0.4, 0.9}, 1.3, 1.1, 8};
    auto rec = regular_polygon_from_lines(8, {oct.edge_line(0), oct.edge_line(1), oct.edge_line(2)}, tol1);
    ASSERT_TRUE(rec.has_value());
    double err = 0;
    for (int j = 0; j < 8; ++j) {
        double best = 1e300;
        for (int i = 0; i < 8; ++i) best = std::min(best, dist(rec->vertex(i), oct.vertex(j)));
        err = std::max(err, best);
    }
    EXPECT_LT(err, 1e-9);
}

TEST(RegularPolygonFromLines, RandomExtractReconstruct) {
    Rng rng(23);
    for (int it = 0; it < 50; ++it) {
        int n = 3 + static_cast<int>(rng.below(10));
        RegularPolygon poly{{rng.uniform(-1, 1), rng.uniform(-1, 1)}, rng.uniform(0.3, 2.0),
                            rng.uniform(0, kTwoPi), n};
        int k1 = 1 + static_cast<int>(rng.below(n - 1));
        int k2 = 1 + static_cast<int>(rng.below(n - 1));
        if (k1 == k2) k2 = (k2 % (n - 1)) + 1;
        auto rec = regular_polygon_from_lines(n, {poly.edge_line(0), poly.edge_line(k1), poly.edge_line(k2)}, tol1);
        ASSERT_TRUE(rec.has_value()) << "n=" << n << " k1=" << k1 << " k2=" << k2;
        EXPECT_NEAR(dist(rec->center, poly.center), 0, 1e-8);
        EXPECT_NEAR(rec->apothem, poly.apothem, 1e-8);
    }
}

TEST(Similarity, RoundTrip) {
    Rng rng(31);
    for (int it = 0; it < 100; ++it) {
        Similarity t = Similarity::make(rng.uniform(0, kTwoPi), rng.log_uniform(0.1, 10),
                                        rng.coin(), {rng.uniform(-2, 2), rng.uniform(-2, 2)});
        Point p{rng.uniform(-3, 3), rng.uniform(-3, 3)};
        Point q = t.inverse().apply(t.apply(p));
        EXPECT_NEAR(dist(p, q), 0, 1e-12 * (1 + p.norm()));
    }
}

#include <gtest/gtest.h>

#include "ucf/algorithm.hpp"
#include "ucf/oracle.hpp"

using namespace ucf;

namespace {

std::vector<Point> at_degrees(const std::vector<double>& degs, double radius = 1.0,
                              Point center = {0, 0}) {
    std::vector<Point> pts;
    for (double d : degs) pts.push_back(center + unit_dir(d * kPi / 180.0) * radius);
    return pts;
}

// local view with observer i at the origin
std::vector<Point> local_view(const std::vector<Point>& global, int i) {
    std::vector<Point> out;
    for (const Point& p : global) out.push_back(p - global[i]);
    out[i] = {0, 0};
    return out;
}

Point global_dest(const std::vector<Point>& global, int i) {
    auto res = ucf_compute(local_view(global, i));
    return global[i] + res.destination;
}

}  // namespace

TEST(UcfCompute, RegularStays) {
    auto pts = at_degrees({10, 82, 154, 226, 298});
    for (int i = 0; i < 5; ++i) {
        auto res = ucf_compute(local_view(pts, i));
        EXPECT_EQ(res.dispatched, ConfigKind::Regular);
        EXPECT_EQ(res.destination.x, 0.0);
        EXPECT_EQ(res.destination.y, 0.0);
    }
}

TEST(UcfCompute, PreRegularMovesToMatchingVertex) {
    Rng rng(8);
    auto sample = oracle::random_preregular(rng, 6);
    Snapshot s = make_snapshot(sample.points);
    auto cert = is_pre_regular(s);
    ASSERT_TRUE(cert.has_value());
    for (int i = 0; i < 6; ++i) {
        Point want = cert->polygon.vertex(cert->matching[i]);
        Point got = global_dest(sample.points, i);
        EXPECT_NEAR(dist(want, got), 0, 1e-9);
    }
}

TEST(UcfCompute, CentralRobotMovesToClearSec3Point) {
    auto pts = at_degrees({0, 60, 120, 180, 240, 300});
    Circle sec = smallest_enclosing_circle(pts);
    pts.push_back(sec.center);
    // perturb for asymmetry so the config is not Regular-adjacent
    pts[1] = unit_dir(65 * kPi / 180.0);
    Point dest = global_dest(pts, 6);
    Snapshot s = make_snapshot(pts);
    EXPECT_NEAR(dist(dest, s.center()), s.radius() / 3.0, 1e-9);
    for (int i = 0; i < 6; ++i)
        EXPECT_FALSE(is_coradial(s.center(), dest, pts[i], s.tol));
    // everyone else stays
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(dist(global_dest(pts, i), pts[i]), 0, 1e-12);
}

TEST(UcfCompute, UnsupportedSizes) {
    EXPECT_THROW(ucf_compute({{0, 0}, {1, 0}}), std::invalid_argument);
    EXPECT_THROW(ucf_compute({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), std::invalid_argument);
}

TEST(HalfDisk, CollinearThinRayMoverRadial) {
    // all collinear; right ray has 2 robots, left ray 3; mover = innermost on
    // the left, outside SED/3: moves radially toward SEC/3
    std::vector<Point> pts{{1, 0}, {0.6, 0}, {-1, 0}, {-0.7, 0}, {-0.45, 0}};
    Snapshot s = make_snapshot(pts);
    ASSERT_EQ(classify(s).kind, ConfigKind::HalfDisk);
    Point dest = global_dest(pts, 4);  // (-0.45, 0): innermost on the full ray, outside SED/3
    EXPECT_NEAR(dest.y, 0.0, 1e-12);
    EXPECT_NEAR(dest.x, -1.0 / 3.0, 1e-9);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(dist(global_dest(pts, i), pts[i]), 0, 1e-12);
}

TEST(HalfDisk, CollinearInnerMoverLateralPiOverThree) {
    std::vector<Point> pts{{1, 0}, {0.6, 0}, {-1, 0}, {-0.6, 0}, {-0.2, 0}};
    Snapshot s = make_snapshot(pts);
    ASSERT_EQ(classify(s).kind, ConfigKind::HalfDisk);
    // mover is (-0.2, 0): inside SED/3, so it goes to SEC/3 at angular
    // distance pi/3 from its current position
    Point dest = global_dest(pts, 4);
    EXPECT_NEAR(dist(dest, s.center()), s.radius() / 3.0, 1e-9);
    EXPECT_NEAR(angular_distance(s.center(), pts[4], dest), kPi / 3, 1e-9);
}

TEST(HalfDisk, EmptyRayGetsNearestRobot) {
    // non-collinear half-disk: principal line along x, upper half occupied;
    // the ray toward +x has no robot inside SED/3
    auto pts = at_degrees({0, 40, 75, 110, 150, 180});
    Snapshot s = make_snapshot(pts);
    ASSERT_EQ(classify(s).kind, ConfigKind::HalfDisk);
    // s-robot on +x ray is pts[0]; nearest by angular distance is pts[1]
    Point dest = global_dest(pts, 1);
    EXPECT_NEAR(dist(dest, s.center()), s.radius() / 3.0, 1e-9);
    EXPECT_TRUE(is_coradial(s.center(), dest, pts[0], s.tol));
}

TEST(HalfDisk, BothRaysPopulatedMoveIntoEmptyHalfPlane) {
    std::vector<Point> pts = at_degrees({0, 40, 75, 110, 150, 180});
    pts.push_back({0.2, 0});   // on +x principal ray, inside SED/3
    pts.push_back({-0.25, 0});  // on -x principal ray, inside SED/3
    Snapshot s = make_snapshot(pts);
    ASSERT_EQ(classify(s).kind, ConfigKind::HalfDisk);
    for (int mover : {6, 7}) {
        Point dest = global_dest(pts, mover);
        EXPECT_NEAR(dist(dest, s.center()), s.radius() / 3.0, 1e-9);
        EXPECT_NEAR(angular_distance(s.center(), pts[mover], dest), kPi / 3, 1e-9);
        EXPECT_LT(dest.y, 0);  // the empty half-plane is below
    }
}

TEST(CoRadial, StageOneInteriorNonCoradialOut) {
    auto pts = at_degrees({0, 72, 144, 216, 288});
    pts.push_back({0.15 * std::cos(0.5), 0.15 * std::sin(0.5)});  // interior, not co-radial
    pts.push_back(unit_dir(72 * kPi / 180.0) * 0.6);              // co-radial with pts[1]
    Snapshot s = make_snapshot(pts);
    ASSERT_EQ(classify(s).kind, ConfigKind::CoRadial);
    Point dest = global_dest(pts, 5);
    EXPECT_NEAR(dist(dest, s.center()), s.radius() / 3.0, 1e-9);
    EXPECT_TRUE(is_coradial(s.center(), dest, pts[5], s.tol));
    // the co-radial robot waits during stage one
    EXPECT_NEAR(dist(global_dest(pts, 6), pts[6]), 0, 1e-12);
}

TEST(CoRadial, StageTwoClosestCoradialDescends) {
    auto pts = at_degrees({0, 72, 144, 216, 288});
    pts.push_back(unit_dir(72 * kPi / 180.0) * 0.6);  // co-radial, outside SED/3
    Snapshot s = make_snapshot(pts);
    ASSERT_EQ(classify(s).kind, ConfigKind::CoRadial);
    Point dest = global_dest(pts, 5);
    EXPECT_NEAR(dist(dest, s.center()), s.radius() / 3.0, 1e-9);
    EXPECT_TRUE(is_coradial(s.center(), dest, pts[5], s.tol));
}

TEST(CoRadial, StageThreeLateralByThirdOfMinGap) {
    auto pts = at_degrees({0, 72, 144, 216, 288});
    pts.push_back(unit_dir(72 * kPi / 180.0) * (1.0 / 3.0));  // co-radial, on SEC/3
    Snapshot s = make_snapshot(pts);
    ASSERT_EQ(classify(s).kind, ConfigKind::CoRadial);
    Point dest = global_dest(pts, 5);
    EXPECT_NEAR(dist(dest, s.center()), s.radius() / 3.0, 1e-9);
    // min positive angular gap is 72 degrees; lateral move of 24 degrees
    EXPECT_NEAR(angular_distance(s.center(), pts[5], dest), 24 * kPi / 180.0, 1e-9);
}

TEST(MoveToFinishLine, MovesBlocksAndStays) {
    // two internal robots in the wide sector; finish lines at 240 and 300
    auto make = [&](double a_deg, double b_deg) {
        std::vector<Point> pts = at_degrees({0, 60, 120, 180});
        pts.push_back(unit_dir(a_deg * kPi / 180.0) * (1.0 / 3.0));
        pts.push_back(unit_dir(b_deg * kPi / 180.0) * (1.0 / 3.0));
        return pts;
    };
    {
        // both off their lines, both reachable: each heads to line on SEC/3
        auto pts = make(230, 310);
        Snapshot s = make_snapshot(pts);
        ASSERT_TRUE(is_valid_ready(s));
        Point d4 = global_dest(pts, 4);
        Point d5 = global_dest(pts, 5);
        EXPECT_NEAR(dist(d4, s.center() + unit_dir(240 * kPi / 180) * (1.0 / 3.0)), 0, 1e-9);
        EXPECT_NEAR(dist(d5, s.center() + unit_dir(300 * kPi / 180) * (1.0 / 3.0)), 0, 1e-9);
    }
    {
        // robot at 230 is blocked by its neighbor at 235 on the way to 240
        auto pts = make(230, 235);
        Snapshot s = make_snapshot(pts);
        if (is_valid_ready(s)) {
            EXPECT_NEAR(dist(global_dest(pts, 4), pts[4]), 0, 1e-12);  // blocked: stay
            Point d5 = global_dest(pts, 5);
            EXPECT_NEAR(dist(d5, s.center() + unit_dir(300 * kPi / 180) * (1.0 / 3.0)), 0, 1e-9);
        }
    }
    {
        // robot already on its finish line stays while the other moves
        auto pts = make(240, 310);
        Snapshot s = make_snapshot(pts);
        ASSERT_TRUE(is_valid_ready(s));
        EXPECT_NEAR(dist(global_dest(pts, 4), pts[4]), 0, 1e-12);
        Point d5 = global_dest(pts, 5);
        EXPECT_NEAR(dist(d5, s.center() + unit_dir(300 * kPi / 180) * (1.0 / 3.0)), 0, 1e-9);
    }
}

TEST(Ucf3, ScaleneMovesParallelToLongestEdge) {
    std::vector<Point> pts{{0, 0}, {4, 0}, {1, 1}};
    Point dest = global_dest(pts, 2);
    EXPECT_NEAR(dest.x, 2.0, 1e-12);
    EXPECT_NEAR(dest.y, 1.0, 1e-12);
    EXPECT_NEAR(dist(global_dest(pts, 0), pts[0]), 0, 0);
    EXPECT_NEAR(dist(global_dest(pts, 1), pts[1]), 0, 0);
}

TEST(Ucf3, IsoscelesApexCompletesEquilateral) {
    std::vector<Point> pts{{0, 0}, {2, 0}, {1, 0.8}};
    Point dest = global_dest(pts, 2);
    EXPECT_NEAR(dest.x, 1.0, 1e-12);
    EXPECT_NEAR(dest.y, std::sqrt(3.0), 1e-12);
}

TEST(Ucf3, EquilateralStays) {
    std::vector<Point> pts{{0, 0}, {2, 0}, {1, std::sqrt(3.0)}};
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(dist(global_dest(pts, i), pts[i]), 0, 0);
}

TEST(Invariance, FrameInvarianceRandomSnapshots) {
    Rng rng(1234);
    int checked = 0;
    for (int it = 0; it < 40 && checked < 25; ++it) {
        int n_choices[] = {3, 5, 6, 7, 8};
        int n = n_choices[rng.below(5)];
        auto pts = oracle::random_config(rng, n);
        int obs = static_cast<int>(rng.below(n));
        Point base;
        try {
            base = global_dest(pts, obs);
        } catch (const std::exception&) {
            continue;
        }
        Circle sec = smallest_enclosing_circle(pts);
        for (int g = 0; g < 5; ++g) {
            Similarity t = Similarity::make(rng.uniform(0, kTwoPi), rng.log_uniform(0.1, 10),
                                            rng.coin(), {rng.uniform(-2, 2), rng.uniform(-2, 2)});
            auto tp = t.apply(pts);
            Point got = global_dest(tp, obs);
            Point want = t.apply(base);
            EXPECT_NEAR(dist(got, want), 0, 1e-8 * sec.radius * t.scale())
                << "n=" << n << " it=" << it;
        }
        ++checked;
    }
    EXPECT_GE(checked, 25);
}

TEST(Invariance, Determinism) {
    Rng rng(55);
    auto pts = oracle::random_config(rng, 8);
    Point a = global_dest(pts, 3);
    Point b = global_dest(pts, 3);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.y, b.y);
}

TEST(Invariance, RadialDestinationsForValidWaiting) {
    // destinations of the walker phase are co-radial with the observer
    auto pts = at_degrees({20, 50, 91, 146, 211, 265, 330});
    Snapshot s = make_snapshot(pts);
    ASSERT_TRUE(is_valid_waiting(s));
    auto w = walkers(s);
    ASSERT_FALSE(w.empty());
    for (int i : w) {
        Point dest = global_dest(pts, i);
        if (dist(dest, pts[i]) > 1e-12)
            EXPECT_TRUE(is_coradial(s.center(), pts[i], dest, s.tol));
    }
}

#include <gtest/gtest.h>

#include "ucf/classify.hpp"
#include "ucf/oracle.hpp"

using namespace ucf;

namespace {

std::vector<Point> on_circle(const std::vector<double>& gaps_deg, double radius = 1.0,
                             Point center = {0, 0}, double start = 0.1) {
    std::vector<Point> pts;
    double a = start;
    for (double g : gaps_deg) {
        pts.push_back(center + unit_dir(a) * radius);
        a += g * kPi / 180.0;
    }
    return pts;
}

std::vector<double> repeat(std::vector<double> block, int times) {
    std::vector<double> out;
    for (int i = 0; i < times; ++i) out.insert(out.end(), block.begin(), block.end());
    return out;
}

}  // namespace

TEST(AngleSequences, RegularHexagon) {
    Snapshot s = make_snapshot(on_circle(repeat({60}, 6)));
    for (int i = 0; i < 6; ++i) {
        auto a = angle_sequence(s, i, true);
        for (double v : a.values) EXPECT_NEAR(v, kPi / 3, 1e-9);
    }
    auto mu = min_sequence(s);
    for (double v : mu.values) EXPECT_NEAR(v, kPi / 3, 1e-9);
}

TEST(AngleSequences, BiangularOctagonMuStartsAtSmallerGap) {
    Snapshot s = make_snapshot(on_circle(repeat({40, 50}, 4)));
    auto mu = min_sequence(s);
    for (int i = 0; i < 8; ++i)
        EXPECT_NEAR(mu.values[i], (i % 2 == 0 ? 40 : 50) * kPi / 180, 1e-9) << i;
}

TEST(AngleSequences, RandomMuMatchesExhaustiveMin) {
    Rng rng(99);
    for (int it = 0; it < 20; ++it) {
        auto pts = oracle::random_config(rng, 6);
        Snapshot s = make_snapshot(pts);
        if (s.rays.coradial) continue;
        auto mu = min_sequence(s);
        std::vector<double> best;
        for (int p = 0; p < 6; ++p) {
            for (bool cw : {true, false}) {
                auto seq = angle_sequence(s, p, cw);
                if (best.empty() || seq_less(seq.values, best)) best = seq.values;
            }
        }
        EXPECT_EQ(mu.values, best);
    }
}

TEST(AngleSequences, CoradialInputThrows) {
    std::vector<Point> pts{{1, 0}, {2, 0}, {-1, 0.5}, {-1, -0.5}, {0.5, 0.8}};
    Snapshot s = make_snapshot(pts);
    ASSERT_TRUE(s.rays.coradial);
    EXPECT_THROW(angle_sequence(s, 0, true), std::logic_error);
    EXPECT_THROW(min_sequence(s), std::logic_error);
}

TEST(PeriodClassTest, Examples) {
    Snapshot pent = make_snapshot(on_circle(repeat({72}, 5)));
    auto pc = period_class(pent);
    EXPECT_EQ(pc.period, 1);
    EXPECT_EQ(pc.kind, PeriodKind::Equiangular);

    Snapshot oct = make_snapshot(on_circle(repeat({40, 50}, 4)));
    pc = period_class(oct);
    EXPECT_EQ(pc.period, 2);
    EXPECT_EQ(pc.kind, PeriodKind::Biangular);

    Snapshot nine = make_snapshot(on_circle(repeat({30, 30, 60}, 3)));
    pc = period_class(nine);
    EXPECT_EQ(pc.period, 3);
    EXPECT_EQ(pc.kind, PeriodKind::BiPeriodic);
}

TEST(PeriodClassTest, PeriodDividesN) {
    Rng rng(123);
    for (int it = 0; it < 100; ++it) {
        int n = 3 + static_cast<int>(rng.below(10));
        if (n == 4) continue;
        auto pts = oracle::random_config(rng, n);
        Snapshot s = make_snapshot(pts);
        if (s.rays.coradial) continue;
        auto pc = period_class(s);
        EXPECT_EQ(n % pc.period, 0);
    }
}

TEST(PeriodClassTest, DoubleBiangularFlag) {
    // pattern alpha, beta, gamma, beta repeated: period 4, two analogy classes
    Snapshot s = make_snapshot(on_circle(repeat({50, 30, 70, 30}, 2)));
    auto pc = period_class(s);
    EXPECT_EQ(pc.period, 4);
    EXPECT_EQ(pc.kind, PeriodKind::BiPeriodic);
    EXPECT_TRUE(pc.double_biangular);
    auto p = partitions(s);
    EXPECT_EQ(p.analogy.size(), 2u);
}

TEST(Partitions, ObservationTable) {
    Snapshot eq = make_snapshot(on_circle(repeat({45}, 8)));
    auto p = partitions(eq);
    EXPECT_EQ(p.strong.size(), 1u);
    EXPECT_EQ(p.analogy.size(), 1u);

    Snapshot bi = make_snapshot(on_circle(repeat({40, 50}, 4)));
    p = partitions(bi);
    EXPECT_EQ(p.analogy.size(), 1u);
    EXPECT_EQ(p.strong.size(), 2u);

    Snapshot ap = make_snapshot(on_circle({20, 30, 41, 55, 65, 70, 79}));
    auto pc = period_class(ap);
    ASSERT_EQ(pc.kind, PeriodKind::UniAperiodic);
    p = partitions(ap);
    EXPECT_EQ(p.analogy.size(), 7u);
}

TEST(Partitions, MuInvariantUnderSimilarity) {
    Rng rng(5);
    auto pts = on_circle({20, 30, 41, 55, 65, 70, 79});
    Snapshot s0 = make_snapshot(pts);
    auto mu0 = min_sequence(s0).values;
    for (int it = 0; it < 10; ++it) {
        Similarity g = Similarity::make(rng.uniform(0, kTwoPi), rng.log_uniform(0.1, 10),
                                        rng.coin(), {rng.uniform(-3, 3), rng.uniform(-3, 3)});
        Snapshot s1 = make_snapshot(g.apply(pts));
        auto mu1 = min_sequence(s1).values;
        ASSERT_EQ(mu0.size(), mu1.size());
        for (size_t i = 0; i < mu0.size(); ++i) EXPECT_NEAR(mu0[i], mu1[i], 1e-9);
    }
}

TEST(Partitions, AnalogyIsUnionOfStrongClasses) {
    Rng rng(17);
    for (int it = 0; it < 50; ++it) {
        int n = 5 + static_cast<int>(rng.below(6));
        auto pts = oracle::random_config(rng, n);
        Snapshot s = make_snapshot(pts);
        if (s.rays.coradial) continue;
        auto p = partitions(s);
        for (const auto& sc : p.strong) {
            bool found_owner = false;
            for (const auto& ac : p.analogy) {
                bool all_in = true;
                for (int x : sc) {
                    bool in = false;
                    for (int y : ac)
                        if (x == y) in = true;
                    if (!in) all_in = false;
                }
                if (all_in) found_owner = true;
            }
            EXPECT_TRUE(found_owner);
        }
    }
}

TEST(Partitions, MatchBruteForceOracle) {
    Rng rng(321);
    int tested = 0;
    for (int it = 0; it < 60; ++it) {
        int n = 5 + static_cast<int>(rng.below(5));
        auto pts = oracle::random_config(rng, n);
        Snapshot s = make_snapshot(pts);
        if (s.rays.coradial) continue;
        auto mine = partitions(s);
        auto pc = period_class(s);
        auto ref = oracle::classify_bruteforce(pts);
        EXPECT_EQ(pc.period, ref.period) << "it=" << it;
        EXPECT_EQ(mine.analogy.size(), ref.analogy.size()) << "it=" << it;
        EXPECT_EQ(mine.strong.size(), ref.strong.size()) << "it=" << it;
        EXPECT_EQ(mine.concordance.size(), ref.concordance.size()) << "it=" << it;
        ++tested;
    }
    EXPECT_GT(tested, 30);
}

TEST(ClassPredicates, RegularCentralHalfDiskCoradial) {
    Snapshot oct = make_snapshot(on_circle(repeat({45}, 8)));
    EXPECT_TRUE(is_regular_config(oct));

    std::vector<Point> hd{{1, 0}, {-1, 0}, {0.2, std::sqrt(1 - 0.04)}, {-0.5, std::sqrt(0.75)},
                          {0.7, std::sqrt(1 - 0.49)}};
    Snapshot shd = make_snapshot(hd);
    auto info = half_disk_info(shd);
    ASSERT_TRUE(info.has_value());
    EXPECT_NEAR(std::remainder(info->line_angle, kPi), 0.0, 1e-6);

    auto pts = on_circle(repeat({72}, 5));
    Circle sec = smallest_enclosing_circle(pts);
    pts.push_back(sec.center);
    Snapshot sc = make_snapshot(pts);
    EXPECT_TRUE(central_point(sc).has_value());
    EXPECT_TRUE(is_coradial_config(sc));  // a Central set is also Co-radial
}

TEST(PrincipalRelocation, MidpointExample) {
    std::vector<Point> pts = on_circle({60, 100, 100, 100}, 1.0, {0, 0}, 0.0);
    pts.push_back(unit_dir(0.3) * 0.5);  // inside the (0, 60deg) sector
    Snapshot s = make_snapshot(pts);
    auto rel = principal_relocation(s);
    ASSERT_EQ(rel.size(), 1u);
    Point expect = unit_dir(30 * kPi / 180);
    EXPECT_NEAR(dist(rel[0].second, expect), 0, 1e-9);
}

TEST(PrincipalRelocation, TwoPerSectorEqualThirds) {
    std::vector<Point> pts = on_circle({90, 90, 90, 90}, 1.0, {0, 0}, 0.0);
    pts.push_back(unit_dir(0.4) * 0.33);
    pts.push_back(unit_dir(1.1) * 0.33);
    Snapshot s = make_snapshot(pts);
    auto rel = principal_relocation(s);
    ASSERT_EQ(rel.size(), 2u);
    EXPECT_NEAR(dist(rel[0].second, unit_dir(kPi / 6)), 0, 1e-9);
    EXPECT_NEAR(dist(rel[1].second, unit_dir(kPi / 3)), 0, 1e-9);
}

TEST(WellOccupied, DescendedAnalogyClassIsReady) {
    auto pts = on_circle({20, 30, 41, 55, 65, 70, 79});
    Snapshot s0 = make_snapshot(pts);
    ASSERT_TRUE(is_valid_waiting(s0));
    auto moved = pts;
    moved[2] = anti_footprint(s0.sed, pts[2]);
    Snapshot s1 = make_snapshot(moved);
    EXPECT_TRUE(is_well_occupied(s1));
    EXPECT_TRUE(is_valid_ready(s1));
}

TEST(WellOccupied, ScatteredInternalsAreNot) {
    auto pts = on_circle({50, 60, 70, 40, 60, 80}, 1.0);
    Snapshot s0 = make_snapshot(pts);
    (void)s0;
    auto moved = pts;
    moved.push_back(unit_dir(0.25) * 0.31);
    moved.push_back(unit_dir(2.1) * 0.22);
    Snapshot s1 = make_snapshot(moved);
    EXPECT_FALSE(is_well_occupied(s1));
}

TEST(Classify, LadderExamples) {
    Snapshot hex = make_snapshot(on_circle(repeat({60}, 6)));
    EXPECT_EQ(classify(hex).kind, ConfigKind::Regular);

    auto pulled = on_circle(repeat({60}, 6));
    Circle sec = smallest_enclosing_circle(pulled);
    pulled[2] = sec.center;
    EXPECT_EQ(classify(make_snapshot(pulled)).kind, ConfigKind::Central);

    Snapshot ap7 = make_snapshot(on_circle({20, 30, 41, 55, 65, 70, 79}));
    EXPECT_EQ(classify(ap7).kind, ConfigKind::ValidWaiting);
}

TEST(Classify, RejectsFourRobots) {
    std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}, {1, 1}};
    Snapshot s = make_snapshot(pts);
    EXPECT_THROW(classify(s), std::invalid_argument);
}

TEST(Classify, SymmetryAxisDetected) {
    auto pts = on_circle({40, 70, 140, 70, 40}, 1.0, {0.3, -0.2}, 0.25);
    Snapshot s = make_snapshot(pts);
    auto axes = symmetry_axes(s.rays, s.points, s.tol);
    EXPECT_GE(axes.size(), 1u);
}

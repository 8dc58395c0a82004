#include <gtest/gtest.h>

#include <random>

#include "sbuc.hpp"
#include "sbuc/verify.hpp"

using namespace sbuc;

namespace {

GeneratorParams crafted_gen() {
    GeneratorParams p;
    p.cap_max = 80;
    p.cap_min = 10;
    p.ramp = 10;
    p.start_ramp = 15;
    p.min_up = 2;
    p.min_down = 1;
    return p;
}

// A feasible dispatch for each feasible schedule: C̲ when on.
FractionalPoint integer_point(const GeneratorParams& p, const Schedule& y) {
    FractionalPoint pt;
    for (int v : y) {
        pt.y.push_back(v);
        pt.x.push_back(v ? p.cap_min : 0.0);
    }
    return pt;
}

}  // namespace

TEST(ThetaPrefix, Definition) {
    EXPECT_EQ(theta_prefix({0, 1, 0, 1}), (std::vector<double>{0, 0, 1, 1, 2}));
    auto th = theta_prefix({1, 0.5, 0.5, 0});
    for (double v : th) EXPECT_EQ(v, 0);
    auto t2 = theta_prefix({0.2, 0.7, 0.7, 0.1, 0.9});
    std::vector<double> want{0, 0, 0.5, 0.5, 0.5, 1.3};
    for (std::size_t i = 0; i < want.size(); ++i) EXPECT_NEAR(t2[i], want[i], 1e-12);
}

TEST(SeparateContiguous, CraftedPointYieldsViolationSixtyFive) {
    FractionalPoint pt{{0, 80, 80}, {0, 1, 1}};
    auto c = separate_family(pt, Family::UpperBound, crafted_gen());
    ASSERT_TRUE(c.has_value());
    EXPECT_DOUBLE_EQ(c->violation, 65);
    EXPECT_EQ(c->params.t, 2);
    EXPECT_EQ(c->params.lags, std::vector<int>{0});
    EXPECT_EQ(c->params.direction, Direction::Backward);
    EXPECT_DOUBLE_EQ(evaluate_inequality(c->inequality, pt), 65);
}

TEST(SeparateContiguous, ToleranceAboveViolationGivesNothing) {
    FractionalPoint pt{{0, 80, 80}, {0, 1, 1}};
    EXPECT_FALSE(separate_family(pt, Family::UpperBound, crafted_gen(), 100).has_value());
}

TEST(SeparateFamily, IntegerFeasiblePointsAreNeverCut) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        GeneratorParams p = random_generator(rng);
        const int T = 6;
        for (const auto& y : feasible_schedules(PolytopeSpec::from(p, T))) {
            auto pt = integer_point(p, y);
            for (Family f : kDynamicFamilies) EXPECT_FALSE(separate_family(pt, f, p).has_value()) << to_string(f);
        }
    }
}

TEST(SeparateFamily, ReturnedCutReproducesItsViolation) {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        GeneratorParams p = random_generator(rng);
        FractionalPoint pt = random_point(rng, p, 8);
        for (Family f : kDynamicFamilies)
            if (auto c = separate_family(pt, f, p, kReportAll)) EXPECT_NEAR(evaluate_inequality(c->inequality, pt), c->violation, 1e-9);
    }
}

TEST(SeparateFamily, MatchesExhaustiveEnumeration) {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        GeneratorParams p = random_generator(rng);
        const int T = 3 + i % 5;
        FractionalPoint pt = random_point(rng, p, T);
        for (Family f : kDynamicFamilies) {
            auto fast = separate_family(pt, f, p, kReportAll);
            auto slow = brute_separate(pt, f, p, 2'000'000, std::nullopt, kReportAll);
            ASSERT_EQ(fast.has_value(), slow.has_value()) << to_string(f);
            if (fast) EXPECT_NEAR(fast->violation, slow->violation, 1e-9) << to_string(f) << " T=" << T;
        }
    }
}

TEST(SeparateSplit, BranchWithAdjacentIntervalsReportsDegenerateGap) {
    std::mt19937_64 rng(4);
    int seen = 0;
    for (int i = 0; i < 400 && seen < 5; ++i) {
        GeneratorParams p = random_generator(rng);
        FractionalPoint pt = random_point(rng, p, 8);
        auto c = separate_family(pt, Family::UpperBoundSplit, p, kReportAll);
        if (!c) continue;
        const auto& cp = c->inequality.params;
        ASSERT_GE(cp.alpha, 0);
        ASSERT_LT(cp.alpha, cp.beta);
        EXPECT_TRUE(cp.beta == cp.alpha + 1 || cp.s_max <= p.min_up + cp.alpha);
        ++seen;
    }
    EXPECT_GT(seen, 0);
}

TEST(SeparateTwoVar, ReversalConsistency) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 100; ++i) {
        GeneratorParams p = random_generator(rng);
        FractionalPoint pt = random_point(rng, p, 7);
        for (Family f : {Family::RampWindow, Family::RampWindowVbar}) {
            auto fwd = brute_separate(pt, f, p, 2'000'000, Direction::Forward, kReportAll);
            auto bwd = brute_separate(reverse_point(pt), f, p, 2'000'000, Direction::Backward, kReportAll);
            ASSERT_EQ(fwd.has_value(), bwd.has_value());
            if (fwd) EXPECT_NEAR(fwd->violation, bwd->violation, 1e-9);
        }
    }
}

TEST(EtaEndpoints, GridNeverBeatsTheBetterEndpoint) {
    auto r = eta_endpoint_battery(30, 5);
    EXPECT_TRUE(r.ok()) << (r.messages.empty() ? "" : r.messages.front());
}

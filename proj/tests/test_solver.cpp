#include <gtest/gtest.h>

#include <random>

#include "sbuc.hpp"

using namespace sbuc;

namespace {

UcInstance two_unit_t6(std::uint64_t seed) {
    RandomInstanceSpec s;
    s.seed = seed;
    s.generator_types = {3, 8};
    s.horizon = 6;
    s.initial = InitialPolicy::OnAtFirstLoad;
    return random_instance(s);
}

UcInstance crafted_t3() {
    UcInstance inst;
    inst.name = "crafted";
    inst.horizon = 3;
    inst.reserve.assign(3, 0);
    inst.buses.push_back({"1", {0, 12, 20}});
    GeneratorParams p;
    p.cap_max = 80;
    p.cap_min = 10;
    p.ramp = 10;
    p.start_ramp = 15;
    p.min_up = 2;
    p.min_down = 1;
    inst.generators.push_back({"g", p, CostParams{0, 1, 1, 0, 0}, "1", default_initial(p)});
    return inst;
}

}  // namespace

TEST(Igap, Arithmetic) {
    EXPECT_NEAR(igap(100, 99.55), 0.45, 1e-12);
    EXPECT_EQ(igap(100, 100), 0);
    EXPECT_NEAR(igap(200, 199), 0.5, 1e-12);
    EXPECT_THROW(igap(0, 1), std::domain_error);
}

TEST(PctReduction, Arithmetic) {
    EXPECT_NEAR(pct_reduction(0.45, 0.20), 55.5556, 1e-4);
    EXPECT_EQ(pct_reduction(0.3, 0.3), 0);
    EXPECT_EQ(pct_reduction(0.3, 0), 100);
    EXPECT_THROW(pct_reduction(0, 0.1), std::domain_error);
}

TEST(SolveConfig, DefaultGapIsOneHundredthPercent) { EXPECT_DOUBLE_EQ(SolveConfig{}.rel_gap, 1e-4); }

TEST(CutLoop, IntegralOptimumNeedsNoCuts) {
    UcInstance inst;
    inst.name = "zero";
    inst.horizon = 3;
    inst.reserve.assign(3, 0);
    inst.buses.push_back({"1", {0, 0, 0}});
    auto g = generator_type(8);
    inst.generators.push_back({"g", g.params, g.costs, "1", default_initial(g.params)});
    auto m = lp_relaxation(build_problem1(inst));
    auto r = cut_loop(m, CutPolicy{}, 50);
    EXPECT_EQ(r.cuts_added, 0);
    EXPECT_EQ(r.rounds, 1);
}

TEST(CutManager, FirstRoundCutsTheCraftedPoint) {
    auto m = lp_relaxation(build_problem1(crafted_t3()));
    std::vector<double> v(m.vars.size(), 0.0);
    const double x[3] = {0, 80, 80}, y[3] = {0, 1, 1};
    for (int t = 1; t <= 3; ++t) {
        v[m.index(VarKind::X, 0, t)] = x[t - 1];
        v[m.index(VarKind::Y, 0, t)] = y[t - 1];
    }
    CutPolicy pol;
    pol.families = {Family::UpperBound};
    pol.seed_pool = false;
    CutManager cm(m, pol, 1e-6);
    const auto before = m.rows.size();
    ASSERT_EQ(cm.round(m, v), 1);
    ASSERT_EQ(m.rows.size(), before + 1);
    double lhs = 0;
    for (auto [j, c] : m.rows.back().coeffs) lhs += c * v[j];
    EXPECT_DOUBLE_EQ(lhs - m.rows.back().hi, 65);
}

TEST(CutLoop, ObjectiveDoesNotDecrease) {
    RandomInstanceSpec s;
    s.seed = 2;
    s.generator_types = {1, 3, 8};
    s.horizon = 12;
    s.initial = InitialPolicy::OnAtFirstLoad;
    auto m = lp_relaxation(build_problem1(random_instance(s)));
    auto before = solve_lp(m);
    auto r = cut_loop(m, CutPolicy{}, 50);
    ASSERT_EQ(r.solution.status, LpStatus::Optimal);
    EXPECT_GE(r.solution.objective, before.objective - 1e-6 * std::fabs(before.objective));
}

TEST(BranchAndCut, MatchesExactOracleOnTwoUnitInstances) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        auto inst = two_unit_t6(seed);
        auto ex = solve_tiny_exact(inst);
        ASSERT_TRUE(ex.feasible) << seed;
        for (bool cuts : {false, true}) {
            SolveConfig cfg;
            if (!cuts) cfg.cut_policy = CutPolicy::none();
            auto m = build_problem1(inst);
            if (cuts) strengthen_two_period(m);
            auto r = branch_and_cut(m, cfg);
            ASSERT_EQ(r.termination, Termination::Optimal);
            const double z = ex.objective.get_d();
            EXPECT_LE(std::fabs(*r.incumbent - z), 1e-6 * std::fabs(z)) << "seed " << seed << " cuts " << cuts;
        }
    }
}

TEST(BranchAndCut, ZeroDemandIsFreeAndAllOff) {
    UcInstance inst;
    inst.name = "zero";
    inst.horizon = 4;
    inst.reserve.assign(4, 0);
    inst.buses.push_back({"1", std::vector<double>(4, 0.0)});
    for (int type : {3, 8}) {
        auto g = generator_type(type);
        inst.generators.push_back({"g", g.params, g.costs, "1", default_initial(g.params)});
    }
    auto m = build_problem1(inst);
    auto r = branch_and_cut(m);
    ASSERT_EQ(r.termination, Termination::Optimal);
    EXPECT_NEAR(*r.incumbent, 0, 1e-9);
    for (int g = 0; g < 2; ++g)
        for (int t = 1; t <= 4; ++t) EXPECT_NEAR(r.solution[m.index(VarKind::Y, g, t)], 0, 1e-9);
}

TEST(BranchAndCut, InfeasibleIsReportedDistinctly) {
    auto inst = crafted_t3();
    inst.buses[0].load = {0, 40, 60};  // beyond the start-up ramp
    auto r = branch_and_cut(build_problem1(inst));
    EXPECT_EQ(r.termination, Termination::Infeasible);
    EXPECT_FALSE(r.incumbent.has_value());
}

TEST(BranchAndCut, NodeLimitIsReported) {
    RandomInstanceSpec s;
    s.seed = 5;
    s.generator_types = {1, 2, 3, 4, 5, 6, 7, 8};
    s.horizon = 12;
    s.initial = InitialPolicy::OnAtFirstLoad;
    SolveConfig cfg;
    cfg.cut_policy = CutPolicy::none();
    cfg.node_limit = 1;
    auto r = branch_and_cut(build_problem1(random_instance(s)), cfg);
    EXPECT_TRUE(r.termination == Termination::NodeLimit || r.termination == Termination::Optimal);
    EXPECT_LE(r.nodes, 1);
}

TEST(BranchAndCut, RootBoundWithCutsIsNotWeaker) {
    RandomInstanceSpec s;
    s.seed = 7;
    s.generator_types = {1, 3, 8};
    s.horizon = 12;
    s.initial = InitialPolicy::OnAtFirstLoad;
    auto row = compare_formulations(random_instance(s));
    EXPECT_GE(row.z_lp_with, row.z_lp_without - 1e-6 * std::fabs(row.z_lp_without));
    EXPECT_LE(row.igap_with, row.igap_without + 1e-9);
    EXPECT_EQ(row.termination_without, Termination::Optimal);
    EXPECT_EQ(row.termination_with, Termination::Optimal);
}

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sbuc.hpp"
#include "sbuc/verify.hpp"

using namespace sbuc;

namespace {

GeneratorParams example_gen(int L = 5, int l = 5) {
    GeneratorParams p;
    p.cap_max = 80;
    p.cap_min = 8;
    p.ramp = 10;
    p.start_ramp = 15;
    p.min_up = L;
    p.min_down = l;
    return p;
}

std::vector<Rational> unit(int T, int t) {
    std::vector<Rational> v(T, 0);
    v[t - 1] = 1;
    return v;
}

}  // namespace

TEST(ExactLp, SmallMaximization) {
    // max 3a + 2b, a + b <= 4, a + 3b <= 6, a <= 3
    ExactLp lp;
    lp.num_vars = 2;
    lp.obj = {3, 2};
    lp.add_row({{0, 1}, {1, 1}}, ExactLp::Sense::Le, 4);
    lp.add_row({{0, 1}, {1, 3}}, ExactLp::Sense::Le, 6);
    lp.add_row({{0, 1}}, ExactLp::Sense::Le, 3);
    auto r = solve_exact_lp(lp);
    ASSERT_EQ(r.status, ExactLpResult::Status::Optimal);
    EXPECT_EQ(r.value, 11);
}

TEST(ExactLp, InfeasibleAndUnbounded) {
    ExactLp a;
    a.num_vars = 1;
    a.obj = {1};
    a.add_row({{0, 1}}, ExactLp::Sense::Le, -1);
    EXPECT_EQ(solve_exact_lp(a).status, ExactLpResult::Status::Infeasible);
    ExactLp b;
    b.num_vars = 1;
    b.obj = {1};
    b.add_row({{0, 1}}, ExactLp::Sense::Ge, 1);
    EXPECT_EQ(solve_exact_lp(b).status, ExactLpResult::Status::Unbounded);
}

TEST(FeasibleSchedules, MinUpDownTwoAtHorizonThree) {
    auto ys = feasible_schedules(PolytopeSpec::from(example_gen(2, 2), 3));
    std::set<Schedule> got(ys.begin(), ys.end());
    std::set<Schedule> want{{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}};
    EXPECT_EQ(got, want);
}

TEST(FeasibleSchedules, UnitMinimaAllowEverything) {
    EXPECT_EQ(feasible_schedules(PolytopeSpec::from(example_gen(1, 1), 5)).size(), 32u);
}

TEST(FeasibleSchedules, BudgetNamesHorizon) {
    try {
        feasible_schedules(PolytopeSpec::from(example_gen(), 25));
        FAIL() << "expected BudgetError";
    } catch (const BudgetError& e) {
        EXPECT_NE(std::string(e.what()).find("25"), std::string::npos);
    }
}

TEST(MaxLinear, SecondPeriodOutput) {
    auto spec = PolytopeSpec::from(example_gen(1, 1), 2);
    EXPECT_EQ(max_linear(spec, unit(2, 2), {0, 0}), 80);
    EXPECT_EQ(max_linear(spec, {0, 0}, {0, 0}), 0);
    // with y = (0, 1) enforced through a large penalty on y_1 the start-up ramp binds
    EXPECT_EQ(max_linear(spec, unit(2, 2), {-1000, 0}), 15);
}

TEST(CheckValid, ExampleInequalityOnShortHorizon) {
    // Example-one first inequality re-indexed to T=9, t=8
    CutParamsT<Rational> cp;
    cp.t = 8;
    cp.lags = {0, 2, 4};
    auto p = to_exact(example_gen());
    auto q = build_cut(Family::UpperBound, p, 9, cp).value();
    EXPECT_TRUE(check_valid(q, PolytopeSpec{p, 9}).valid());
}

TEST(CheckValid, WrongBoundHasPositiveViolationAtCapacity) {
    LinearInequalityT<Rational> q;
    q.add_x(2, 1);
    q.add_y(2, -8);
    auto rep = check_valid(q, PolytopeSpec::from(example_gen(1, 1), 3));
    EXPECT_FALSE(rep.valid());
    EXPECT_EQ(rep.max_violation, 72);
    EXPECT_EQ(rep.witness.x[1], 80);
}

TEST(Vertices, SinglePeriod) {
    auto v = vertices(PolytopeSpec::from(example_gen(1, 1), 1));
    std::set<ExactPoint> got(v.begin(), v.end());
    std::set<ExactPoint> want{{{0}, {0}}, {{8}, {1}}, {{80}, {1}}};
    EXPECT_EQ(got, want);
}

TEST(Vertices, SatisfyAllConstraintsAndSpanSamples) {
    std::mt19937_64 rng(2);
    GeneratorParams p = random_generator(rng, 2);
    PolytopeOracle o(PolytopeSpec::from(p, 4));
    const auto& vs = o.vertices();
    for (const auto& v : vs) EXPECT_TRUE(o.contains(v));
    // each schedule's lowest-output dispatch lies in P; every vertex's schedule is feasible
    std::set<Schedule> ys(o.schedules().begin(), o.schedules().end());
    for (const auto& v : vs) EXPECT_TRUE(ys.count(v.y));
}

TEST(FaceDimension, UpperBoundFacetAtHorizonFour) {
    CutParamsT<Rational> cp;
    cp.t = 3;
    cp.lags = {0, 1};
    auto p = to_exact(example_gen(2, 2));
    auto q = build_cut(Family::UpperBound, p, 4, cp).value();
    EXPECT_EQ(face_dimension(q, PolytopeSpec{p, 4}), 7);
}

TEST(FaceDimension, RampWindowFacetAtHorizonFour) {
    CutParamsT<Rational> cp;
    cp.t = 3;
    cp.k = 2;
    cp.m = 0;
    cp.lags = {};
    auto p = to_exact(example_gen(2, 2));
    auto q = build_cut(Family::RampWindow, p, 4, cp).value();
    ASSERT_TRUE(q.facet);
    EXPECT_EQ(face_dimension(q, PolytopeSpec{p, 4}), 7);
}

TEST(FaceDimension, SlackInequalityHasEmptyFace) {
    LinearInequalityT<Rational> q;
    q.add_x(2, 1);
    q.add_y(2, -80);
    q.rhs = 1;
    EXPECT_EQ(face_dimension(q, PolytopeSpec::from(example_gen(2, 2), 4)), -1);
}

TEST(FaceDimension, InvalidInequalityThrows) {
    LinearInequalityT<Rational> q;
    q.add_x(2, 1);
    EXPECT_THROW(face_dimension(q, PolytopeSpec::from(example_gen(2, 2), 3)), std::invalid_argument);
}

TEST(CheckHullT2, ExampleAndBuiltinTypes) {
    EXPECT_TRUE(check_hull_T2(example_gen()).ok());
    for (int i = 1; i <= 8; ++i) EXPECT_TRUE(check_hull_T2(generator_type(i).params).ok()) << "type " << i;
}

TEST(CheckHullT2, PerturbedRowProducesFractionalVertex) {
    auto p = to_exact(example_gen());
    auto sys = q2_system(p);
    bool changed = false;
    for (auto& r : sys)
        if (r.a[3] == -(p.cap_min + p.ramp)) {
            r.a[3] = -(p.cap_min + p.ramp + p.cap_max);
            changed = true;
            break;
        }
    ASSERT_TRUE(changed);
    auto rep = check_hull_T2(p, sys);
    EXPECT_FALSE(rep.ok());
    EXPECT_FALSE(rep.fractional_vertices.empty());
}

TEST(BruteSeparate, CraftedPointAndIntegerPoint) {
    GeneratorParams p = example_gen(2, 1);
    p.cap_min = 10;
    FractionalPoint pt{{0, 80, 80}, {0, 1, 1}};
    auto c = brute_separate(pt, Family::UpperBound, p);
    ASSERT_TRUE(c.has_value());
    EXPECT_DOUBLE_EQ(c->violation, 65);
    EXPECT_EQ(c->params.t, 2);
    EXPECT_EQ(c->params.lags, std::vector<int>{0});
    FractionalPoint feas{{0, 15, 25}, {0, 1, 1}};
    EXPECT_FALSE(brute_separate(feas, Family::UpperBound, p).has_value());
}

TEST(BruteSeparate, HorizonCap) {
    FractionalPoint pt{std::vector<double>(9, 0), std::vector<double>(9, 0)};
    EXPECT_THROW(brute_separate(pt, Family::UpperBound, example_gen()), BudgetError);
}

TEST(SolveTinyExact, ZeroDemandCostsNothing) {
    UcInstance inst;
    inst.name = "zero";
    inst.horizon = 4;
    inst.reserve.assign(4, 0);
    inst.buses.push_back({"1", std::vector<double>(4, 0.0)});
    auto g = generator_type(8);
    inst.generators.push_back({"g", g.params, g.costs, "1", default_initial(g.params)});
    auto r = solve_tiny_exact(inst);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.objective, 0);
    EXPECT_EQ(r.schedules[0], (Schedule{0, 0, 0, 0}));
}

TEST(SolveTinyExact, ForcedOnUnitPaysOneStartup) {
    UcInstance inst;
    inst.name = "forced";
    inst.horizon = 3;
    auto g = generator_type(8);
    inst.reserve.assign(3, 0);
    inst.buses.push_back({"1", {10, 10, 10}});
    inst.generators.push_back({"g", g.params, g.costs, "1", default_initial(g.params)});
    auto r = solve_tiny_exact(inst);
    ASSERT_TRUE(r.feasible);
    auto pc = linearize_cost(g.costs, g.params, 9);
    const double want = 3 * (g.costs.fixed_on + pc.value(10)) + g.costs.startup;
    EXPECT_NEAR(r.objective.get_d(), want, 1e-9);
}

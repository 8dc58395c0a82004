#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "sbuc.hpp"

using namespace sbuc;

TEST(GeneratorType, BuiltinParameters) {
    auto t1 = generator_type(1);
    EXPECT_EQ(t1.params.cap_min, 150);
    EXPECT_EQ(t1.params.cap_max, 455);
    EXPECT_EQ(t1.params.min_up, 8);
    EXPECT_EQ(t1.params.min_down, 8);
    EXPECT_EQ(t1.params.ramp, 91);
    EXPECT_EQ(t1.params.start_ramp, 180);
    EXPECT_EQ(t1.costs.startup, 2000);
    EXPECT_EQ(t1.costs.shutdown, 2000);
    EXPECT_DOUBLE_EQ(t1.costs.quad, 0.00048);
    EXPECT_DOUBLE_EQ(t1.costs.lin, 16.19);
    EXPECT_EQ(t1.costs.fixed_on, 1000);
    auto t8 = generator_type(8);
    EXPECT_EQ(t8.params.cap_min, 10);
    EXPECT_EQ(t8.params.cap_max, 55);
    EXPECT_EQ(t8.params.min_up, 1);
    EXPECT_EQ(t8.params.ramp, 11);
    EXPECT_EQ(t8.params.start_ramp, 15);
    EXPECT_EQ(t8.costs.startup, 60);
    EXPECT_DOUBLE_EQ(t8.costs.quad, 0.00413);
    EXPECT_DOUBLE_EQ(t8.costs.lin, 25.92);
    EXPECT_EQ(t8.costs.fixed_on, 660);
    for (int i = 1; i <= 8; ++i) EXPECT_TRUE(validate_generator(generator_type(i).params).ok()) << i;
    EXPECT_THROW(generator_type(0), std::out_of_range);
    EXPECT_THROW(generator_type(9), std::out_of_range);
}

TEST(Experiment1, InstanceOneComposition) {
    auto inst = experiment1_instance(1);
    EXPECT_EQ(inst.generators.size(), 28u);
    std::map<double, int> by_cap;
    for (const auto& g : inst.generators) ++by_cap[g.params.cap_max];
    EXPECT_EQ(inst.horizon, 24);
    EXPECT_NEAR(inst.system_load()[0], 0.71 * 10947, 1e-9);
}

TEST(Experiment1, InstanceTwentySize) {
    EXPECT_EQ(experiment1_instance(20).generators.size(), 187u);
    EXPECT_THROW(experiment1_instance(21), std::out_of_range);
}

TEST(Experiment1, AllInstancesValidate) {
    for (int i = 1; i <= 20; ++i) EXPECT_TRUE(validate_instance(experiment1_instance(i)).empty()) << i;
}

TEST(RandomInstance, Deterministic) {
    RandomInstanceSpec s;
    s.seed = 42;
    s.generator_types = {1, 2, 8};
    s.buses = 3;
    s.lines = 2;
    EXPECT_TRUE(random_instance(s) == random_instance(s));
}

TEST(RandomInstance, PeakWithinCapacityBand) {
    RandomInstanceSpec s;
    s.generator_types = {1, 4, 8};
    s.horizon = 24;
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        s.seed = seed;
        auto inst = random_instance(s);
        const auto load = inst.system_load();
        const double peak = *std::max_element(load.begin(), load.end());
        const double cap = inst.total_capacity();
        ASSERT_GE(peak, 0.5 * cap - 1e-9) << seed;
        ASSERT_LE(peak, cap + 1e-9) << seed;
    }
}

TEST(RandomInstance, LineFactorsSumToOne) {
    RandomInstanceSpec s;
    s.seed = 3;
    s.generator_types = {1, 2};
    s.buses = 4;
    s.lines = 3;
    auto inst = random_instance(s);
    ASSERT_EQ(inst.lines.size(), 3u);
    for (const auto& ln : inst.lines) {
        double sum = 0;
        for (const auto& [b, k] : ln.factors) sum += k;
        EXPECT_NEAR(sum, 1, 1e-12);
    }
    EXPECT_TRUE(validate_instance(inst).empty());
}

TEST(InstanceJson, RoundTrip) {
    RandomInstanceSpec s;
    s.seed = 9;
    s.generator_types = {2, 5};
    s.buses = 2;
    s.lines = 1;
    s.initial = InitialPolicy::OnAtFirstLoad;
    auto inst = random_instance(s);
    auto back = instance_from_json(instance_to_json(inst));
    EXPECT_TRUE(back == inst);
}

TEST(InstanceJson, FileRoundTrip) {
    auto inst = experiment1_instance(2);
    const auto path = (std::filesystem::temp_directory_path() / "sbuc_instance_roundtrip.json").string();
    write_instance(inst, path);
    EXPECT_TRUE(read_instance(path) == inst);
    std::remove(path.c_str());
}

TEST(InstanceJson, ErrorsNameTheField) {
    auto j = instance_to_json(experiment1_instance(1));
    j["generators"][3]["params"].erase("ramp");
    try {
        instance_from_json(j);
        FAIL() << "expected InstanceFormatError";
    } catch (const InstanceFormatError& e) {
        EXPECT_NE(std::string(e.what()).find("generators[3].params.ramp"), std::string::npos);
    }
    EXPECT_THROW(read_instance("/nonexistent/instance.json"), std::ios_base::failure);
}

TEST(ValidateInstance, CatchesStructuralErrors) {
    auto inst = experiment1_instance(1);
    inst.reserve.pop_back();
    inst.generators[0].bus = "nowhere";
    inst.generators[1].params.start_ramp = inst.generators[1].params.cap_min;
    auto errs = validate_instance(inst);
    EXPECT_GE(errs.size(), 3u);
}

TEST(InitialPolicy, OnAtFirstLoadSetsHistoryAndOutput) {
    auto inst = experiment1_instance(1, InitialPolicy::OnAtFirstLoad);
    for (const auto& g : inst.generators) {
        EXPECT_EQ(g.initial.y0(), 1);
        EXPECT_GE(g.initial.x0, g.params.cap_min);
        EXPECT_LE(g.initial.x0, g.params.cap_max);
        EXPECT_TRUE(check_history(g.params, g.initial).empty());
    }
}

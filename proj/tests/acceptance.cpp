// One PASS/FAIL line per acceptance criterion. Exit status is the number of failed criteria.
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "sbuc.hpp"
#include "sbuc/verify.hpp"
#include "worked_examples.hpp"

using namespace sbuc;

namespace {

constexpr double kSeparationTol = 1e-9;
constexpr double kEtaTol = 1e-9;
constexpr int kEtaGrid = 101;
constexpr double kExactRelTol = 1e-6;
constexpr double kGapSlack = 1e-9;
constexpr double kHullSeconds = 120;
constexpr double kValiditySeconds = 600;
constexpr long kValidityMinChecks = 10000;
constexpr long kFacetMinConfigs = 50;

struct Outcome {
    bool ok;
    std::string detail;
};

int failed = 0;

void report(int id, const std::string& name, const std::function<Outcome()>& run) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        o = run();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.ok) ++failed;
    std::printf("%s %2d %-28s %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), s);
    std::fflush(stdout);
}

std::string summary(const BatteryResult& r) {
    std::ostringstream os;
    os << "checks=" << r.checks << " failures=" << r.failures;
    if (!r.messages.empty()) os << " first: " << r.messages.front();
    return os.str();
}

Outcome worked_inequalities() {
    int bad = 0;
    std::string first;
    for (const auto& c : worked::cases()) {
        auto why = worked::check(c);
        if (!why.empty()) {
            ++bad;
            if (first.empty()) first = c.name + ": " + why;
        }
    }
    return {bad == 0, std::to_string(worked::cases().size()) + " inequalities, mismatches=" + std::to_string(bad) + (first.empty() ? "" : " " + first)};
}

Outcome model_sizes() {
    auto m = build_problem1(experiment1_instance(1, InitialPolicy::OnAtFirstLoad));
    const auto vars = m.vars.size();
    const auto bins = m.num_binaries();
    const auto added = strengthen_two_period(m);
    std::ostringstream os;
    os << "vars=" << vars << " binaries=" << bins << " two-period rows=" << added;
    return {vars == 3360 && bins == 672 && added == 3864, os.str()};
}

Outcome hull() {
    std::vector<GeneratorParams> gens;
    for (int i = 1; i <= 8; ++i) gens.push_back(generator_type(i).params);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) gens.push_back(random_generator(rng));
    auto r = hull_battery(gens);
    auto neg = hull_battery(gens, Corruption{true});
    return {r.ok() && !neg.ok() && r.seconds <= kHullSeconds,
            std::to_string(gens.size()) + " sets " + summary(r) + " corrupted-control-failures=" + std::to_string(neg.failures)};
}

BatteryResult mirror_result;

Outcome validity() {
    auto r = validity_battery(ValiditySettings{}, {}, &mirror_result);
    return {r.ok() && r.checks >= kValidityMinChecks && r.seconds <= kValiditySeconds, summary(r)};
}

Outcome facets() {
    auto r = facet_battery(FacetSettings{});
    return {r.ok() && r.checks >= kFacetMinConfigs, summary(r)};
}

Outcome separation() {
    SeparationSettings s;
    s.tol = kSeparationTol;
    auto r = separation_battery(s);
    return {r.ok(), summary(r)};
}

Outcome eta_endpoints() {
    auto r = eta_endpoint_battery(100, 3, kEtaGrid, kEtaTol);
    return {r.ok(), summary(r)};
}

Outcome exact_small() {
    int bad = 0, n = 0;
    double worst = 0;
    for (std::uint64_t seed = 1; n < 20; ++seed) {
        RandomInstanceSpec s;
        s.seed = seed;
        s.generator_types = {3, 8};
        s.horizon = 6;
        s.initial = InitialPolicy::OnAtFirstLoad;
        auto inst = random_instance(s);
        auto ex = solve_tiny_exact(inst);
        if (!ex.feasible) continue;
        ++n;
        const double z = ex.objective.get_d();
        auto m = build_problem1(inst);
        strengthen_two_period(m);
        auto r = branch_and_cut(m, SolveConfig{});
        const double rel = r.incumbent ? std::fabs(*r.incumbent - z) / std::max(1.0, std::fabs(z)) : 1e300;
        worst = std::max(worst, rel);
        if (r.termination != Termination::Optimal || rel > kExactRelTol) ++bad;
    }
    std::ostringstream os;
    os << n << " instances, mismatches=" << bad << " worst rel diff=" << worst;
    return {bad == 0, os.str()};
}

Outcome gap_reduction(const std::string& csv) {
    std::vector<RunReportRow> rows;
    std::vector<double> pct;
    int worse = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        RandomInstanceSpec s;
        s.seed = seed;
        s.generator_types = {1, 3, 8};
        s.horizon = 12;
        s.peak_hi = 1.0 / 1.03;
        s.initial = InitialPolicy::OnAtFirstLoad;
        auto inst = random_instance(s);
        inst.name = "r3g_t12_s" + std::to_string(seed);
        auto row = compare_formulations(inst);
        if (row.igap_with > row.igap_without + kGapSlack) ++worse;
        if (row.pct_reduction) pct.push_back(*row.pct_reduction);
        rows.push_back(RunReportRow::from(row));
    }
    std::ofstream f(csv);
    write_run_report(f, rows);
    std::sort(pct.begin(), pct.end());
    const double med = pct.empty() ? 0 : (pct.size() % 2 ? pct[pct.size() / 2] : 0.5 * (pct[pct.size() / 2 - 1] + pct[pct.size() / 2]));
    std::ostringstream os;
    os << rows.size() << " instances, worse=" << worse << " median pct=" << med << " report=" << csv;
    return {worse == 0 && med > 0, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
    const std::string csv = argc > 1 ? argv[1] : "run_report.csv";
    report(1, "worked-inequalities", worked_inequalities);
    report(2, "model-sizes", model_sizes);
    report(3, "two-period-hull", hull);
    report(4, "family-validity", validity);
    report(5, "facet-dimensions", facets);
    report(6, "separator-vs-enumeration", separation);
    report(7, "eta-endpoints", eta_endpoints);
    report(8, "exact-optimum-small", exact_small);
    report(9, "gap-reduction", [&] { return gap_reduction(csv); });
    report(10, "time-reversal-mirror", [] { return Outcome{mirror_result.ok(), summary(mirror_result)}; });
    return failed;
}

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "sbuc/cli.hpp"

using namespace sbuc;
namespace fs = std::filesystem;

namespace {

// A deliberately separate free-MPS reader: tokenizes by whitespace and rebuilds bounds per row.
struct ParsedMps {
    std::string name;
    std::string sense = "MIN";
    std::vector<std::string> row_names;
    std::map<std::string, char> row_type;
    std::vector<std::string> col_names;
    std::map<std::string, bool> integer;
    std::map<std::string, double> obj;
    std::map<std::string, std::map<std::string, double>> a;  // row -> col -> coeff
    std::map<std::string, double> rhs, range;
    std::map<std::string, double> lb, ub;
};

ParsedMps parse_mps(std::istream& in) {
    ParsedMps p;
    std::string line, section;
    bool in_int = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::vector<std::string> tok;
        for (std::string t; ss >> t;) tok.push_back(t);
        if (line[0] != ' ') {
            section = tok[0];
            if (section == "NAME" && tok.size() > 1) p.name = tok[1];
            continue;
        }
        if (section == "OBJSENSE") {
            p.sense = tok[0];
        } else if (section == "ROWS") {
            if (tok[0] == "N") continue;
            p.row_names.push_back(tok[1]);
            p.row_type[tok[1]] = tok[0][0];
        } else if (section == "COLUMNS") {
            if (tok.size() >= 3 && tok[1] == "'MARKER'") {
                in_int = tok[2] == "'INTORG'";
                continue;
            }
            if (p.col_names.empty() || p.col_names.back() != tok[0]) {
                p.col_names.push_back(tok[0]);
                p.integer[tok[0]] = in_int;
            }
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
                const double v = std::stod(tok[k + 1]);
                if (tok[k] == "obj") p.obj[tok[0]] = v;
                else p.a[tok[k]][tok[0]] = v;
            }
        } else if (section == "RHS") {
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2) p.rhs[tok[k]] = std::stod(tok[k + 1]);
        } else if (section == "RANGES") {
            for (std::size_t k = 1; k + 1 < tok.size(); k += 2) p.range[tok[k]] = std::stod(tok[k + 1]);
        } else if (section == "BOUNDS") {
            const std::string& col = tok[2];
            if (tok[0] == "LO") p.lb[col] = std::stod(tok[3]);
            else if (tok[0] == "UP") p.ub[col] = std::stod(tok[3]);
            else if (tok[0] == "MI") p.lb[col] = -kInf;
            else if (tok[0] == "FX") p.lb[col] = p.ub[col] = std::stod(tok[3]);
        }
    }
    return p;
}

struct PRow {
    std::vector<std::pair<int, double>> coeffs;
    double lo, hi;
};

// LP optimum of the parsed model.
double parsed_lp_value(const ParsedMps& p) {
    std::map<std::string, int> col;
    for (std::size_t j = 0; j < p.col_names.size(); ++j) col[p.col_names[j]] = static_cast<int>(j);
    std::vector<double> c(col.size(), 0), lb(col.size(), 0), ub(col.size(), kInf);
    for (const auto& [n, v] : p.obj) c[col.at(n)] = v;
    for (const auto& [n, v] : p.lb) lb[col.at(n)] = v;
    for (const auto& [n, v] : p.ub) ub[col.at(n)] = v;
    std::vector<PRow> rows;
    for (const auto& r : p.row_names) {
        PRow row{{}, -kInf, kInf};
        auto it = p.a.find(r);
        if (it != p.a.end())
            for (const auto& [n, v] : it->second) row.coeffs.emplace_back(col.at(n), v);
        const double b = p.rhs.count(r) ? p.rhs.at(r) : 0.0;
        const char t = p.row_type.at(r);
        if (t == 'E') row.lo = row.hi = b;
        else if (t == 'L') row.hi = b;
        else row.lo = b;
        if (p.range.count(r)) {
            if (t == 'L') row.lo = b - std::fabs(p.range.at(r));
            else if (t == 'G') row.hi = b + std::fabs(p.range.at(r));
        }
        rows.push_back(std::move(row));
    }
    auto s = solve_lp_bounded(c, lb, ub, rows);
    EXPECT_EQ(s.status, LpStatus::Optimal);
    return s.objective;
}

std::string tmp(const std::string& leaf) { return (fs::temp_directory_path() / leaf).string(); }

std::string write_text(const std::string& leaf, const std::string& text) {
    const auto path = tmp(leaf);
    std::ofstream(path) << text;
    return path;
}

const char* kToyInstance = R"({
  "name": "toy", "horizon": 3, "reserve": [0, 0, 0],
  "buses": [{"id": "1", "load": [0, 12, 20]}],
  "generators": [{"name": "g", "bus": "1",
    "params": {"cap_max": 80, "cap_min": 10, "min_up": 2, "min_down": 1, "ramp": 10, "start_ramp": 15},
    "costs": {"quad": 0, "lin": 1, "fixed_on": 1, "startup": 0, "shutdown": 0}}]
})";

}  // namespace

TEST(ParseFamilies, CodesExpand) {
    auto all = cli::parse_families("");
    EXPECT_TRUE(all.two_period);
    EXPECT_EQ(all.dynamic.size(), 8u);
    auto s = cli::parse_families("p7,q2");
    EXPECT_TRUE(s.two_period);
    EXPECT_EQ(s.dynamic, (std::set<Family>{Family::UpperBound, Family::UpperBoundEta, Family::UpperBoundShift}));
    EXPECT_EQ(cli::parse_families("p10").dynamic, std::set<Family>{Family::RampWindow});
    EXPECT_EQ(cli::parse_families("p12,p2").dynamic, (std::set<Family>{Family::RampWindowVbar, Family::UpperBoundSplit}));
    EXPECT_THROW(cli::parse_families("p13"), cli::UsageError);
}

TEST(Mps, InstanceOneColumnsAndStrengthenedRows) {
    auto inst = experiment1_instance(1, InitialPolicy::OnAtFirstLoad);
    auto m = build_problem1(inst);
    std::stringstream a;
    write_mps(m, a, "inst1");
    auto pa = parse_mps(a);
    EXPECT_EQ(pa.col_names.size(), 3360u);
    int ints = 0;
    for (const auto& [n, i] : pa.integer) ints += i;
    EXPECT_EQ(ints, 672);
    EXPECT_EQ(pa.row_names.size(), m.rows.size());
    strengthen_two_period(m);
    std::stringstream b;
    write_mps(m, b, "inst1x");
    auto pb = parse_mps(b);
    EXPECT_EQ(pb.row_names.size() - pa.row_names.size(), 3864u);
    EXPECT_EQ(pb.name, "inst1x");
    EXPECT_EQ(pb.sense, "MIN");
    for (const auto& n : pb.col_names) {
        const char k = n[0];
        EXPECT_TRUE(k == 'x' || k == 'y' || k == 'u' || k == 'v' || k == 'f') << n;
        EXPECT_EQ(pb.integer.at(n), k == 'y') << n;
    }
}

TEST(Mps, RoundTripPreservesLpOptimum) {
    RandomInstanceSpec s;
    s.seed = 6;
    s.generator_types = {1, 3, 8};
    s.horizon = 8;
    s.buses = 2;
    s.lines = 1;
    s.initial = InitialPolicy::OnAtFirstLoad;
    auto m = build_problem1(random_instance(s));
    strengthen_two_period(m);
    std::stringstream ss;
    write_mps(m, ss);
    auto p = parse_mps(ss);
    auto direct = solve_lp(lp_relaxation(m));
    ASSERT_EQ(direct.status, LpStatus::Optimal);
    EXPECT_NEAR(parsed_lp_value(p), direct.objective, 1e-6 * (1 + std::fabs(direct.objective)));
}

TEST(Mps, UnwritablePathThrows) {
    auto m = build_problem1(experiment1_instance(1, InitialPolicy::OnAtFirstLoad));
    EXPECT_THROW(write_mps(m, std::string("/nonexistent/dir/out.mps")), std::ios_base::failure);
}

TEST(RunReport, RoundTripAndRecomputedReduction) {
    RunReportRow a{"a", 0.45, 0.2, pct_reduction(0.45, 0.2), 10, 4, 120, 1.5};
    RunReportRow b{"b", 0.0, 0.0, std::nullopt, 1, 1, 0, 0.1};
    std::stringstream ss;
    write_run_report(ss, {a, b});
    auto rows = read_run_report(ss);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].igap_without, a.igap_without);
    EXPECT_EQ(rows[0].igap_with, a.igap_with);
    EXPECT_EQ(*rows[0].pct_reduction, pct_reduction(rows[0].igap_without, rows[0].igap_with));
    EXPECT_FALSE(rows[1].pct_reduction.has_value());
    EXPECT_EQ(rows[1].nodes_with, 1);
    std::stringstream bad("name,x\n");
    EXPECT_THROW(read_run_report(bad), std::invalid_argument);
}

TEST(CmdValidate, ExitCodes) {
    const auto ok = write_text("sbuc_toy.json", kToyInstance);
    std::ostringstream out;
    EXPECT_EQ(cli::cmd_validate(ok, out), cli::kExitOk);
    std::string bad_text = kToyInstance;
    bad_text.replace(bad_text.find("\"start_ramp\": 15"), 16, "\"start_ramp\": 9");
    const auto bad = write_text("sbuc_bad.json", bad_text);
    std::ostringstream out2;
    EXPECT_EQ(cli::cmd_validate(bad, out2), cli::kExitFailure);
    EXPECT_NE(out2.str().find("cap_min < start_ramp < cap_min + ramp"), std::string::npos);
    std::ostringstream out3;
    EXPECT_THROW(cli::cmd_validate("/nonexistent/x.json", out3), std::ios_base::failure);
}

TEST(CmdSeparate, CraftedPointIntegerPointAndTolerance) {
    const auto inst = write_text("sbuc_toy.json", kToyInstance);
    const auto frac = write_text("sbuc_pt.json", R"({"points": [{"x": [0, 80, 80], "y": [0, 1, 1]}]})");
    std::ostringstream out;
    ASSERT_EQ(cli::cmd_separate(inst, frac, cli::parse_families("p1"), 1e-6, out), cli::kExitOk);
    auto j = nlohmann::json::parse(out.str());
    EXPECT_EQ(j["family"], "upper_bound");
    EXPECT_EQ(j["violation"], 65.0);
    EXPECT_EQ(j["params"]["t"], 2);

    const auto integral = write_text("sbuc_int.json", R"([{"x": [0, 12, 20], "y": [0, 1, 1]}])");
    std::ostringstream out2;
    cli::cmd_separate(inst, integral, cli::parse_families("all"), 1e-6, out2);
    EXPECT_EQ(out2.str(), "");

    std::ostringstream out3;
    cli::cmd_separate(inst, frac, cli::parse_families("p1"), 100, out3);
    EXPECT_EQ(out3.str(), "");

    const auto short_pt = write_text("sbuc_short.json", R"([{"x": [0, 80], "y": [0, 1]}])");
    std::ostringstream out4;
    EXPECT_THROW(cli::cmd_separate(inst, short_pt, cli::parse_families("p1"), 1e-6, out4), InstanceFormatError);
}

TEST(CmdSolve, ToyOptimumAndReport) {
    const auto inst = write_text("sbuc_toy.json", kToyInstance);
    cli::SolveOptions o;
    o.report_path = tmp("sbuc_report.csv");
    std::ostringstream out;
    ASSERT_EQ(cli::cmd_solve(inst, o, out), cli::kExitOk);
    EXPECT_NE(out.str().find("status: optimal"), std::string::npos);
    auto ex = solve_tiny_exact(read_instance(inst));
    std::ostringstream want;
    want << "objective: " << detail::g17(ex.objective.get_d());
    EXPECT_NE(out.str().find(want.str()), std::string::npos) << out.str();
    std::ifstream f(o.report_path);
    auto rows = read_run_report(f);
    ASSERT_EQ(rows.size(), 1u);
    EXPECT_LE(rows[0].igap_with, rows[0].igap_without);
}

TEST(CmdSolve, InfeasibleIsReported) {
    std::string text = kToyInstance;
    text.replace(text.find("[0, 12, 20]"), 11, "[0, 40, 60]");
    const auto inst = write_text("sbuc_infeasible.json", text);
    std::ostringstream out;
    cli::SolveOptions o;
    o.cuts = false;
    cli::cmd_solve(inst, o, out);
    EXPECT_NE(out.str().find("status: infeasible"), std::string::npos);
}

TEST(CmdOracle, HullPassesAndCorruptionFails) {
    cli::OracleOptions o;
    o.random_sets = 5;
    std::ostringstream out;
    EXPECT_EQ(cli::cmd_oracle("hull2", o, out), cli::kExitOk);
    setenv("SBUC_ORACLE_CORRUPT", "1", 1);
    std::ostringstream out2;
    EXPECT_EQ(cli::cmd_oracle("hull2", o, out2), cli::kExitFailure);
    unsetenv("SBUC_ORACLE_CORRUPT");
    std::ostringstream out3;
    EXPECT_THROW(cli::cmd_oracle("nonsense", o, out3), cli::UsageError);
}

TEST(CmdOracle, ValidityAtHorizonFive) {
    cli::OracleOptions o;
    o.horizons = {5};
    std::ostringstream out;
    EXPECT_EQ(cli::cmd_oracle("validity", o, out), cli::kExitOk) << out.str();
}

TEST(CmdOracle, OversizedHorizonNamesIt) {
    cli::OracleOptions o;
    o.horizons = {30};
    std::ostringstream out;
    try {
        cli::cmd_oracle("validity", o, out);
        FAIL() << "expected BudgetError";
    } catch (const BudgetError& e) {
        EXPECT_NE(std::string(e.what()).find("30"), std::string::npos);
    }
}

TEST(CmdExportMps, WritesFile) {
    const auto inst = write_text("sbuc_toy.json", kToyInstance);
    const auto path = tmp("sbuc_toy.mps");
    std::ostringstream out;
    ASSERT_EQ(cli::cmd_export_mps(inst, path, true, 9, out), cli::kExitOk);
    std::ifstream f(path);
    auto p = parse_mps(f);
    EXPECT_EQ(p.col_names.size(), 15u);
}

TEST(CmdGenerate, DeterministicUnderSeed) {
    cli::GenerateOptions o;
    o.types = {1, 8};
    o.seed = 5;
    const auto a = tmp("sbuc_gen_a.json"), b = tmp("sbuc_gen_b.json");
    std::ostringstream out;
    cli::cmd_generate(o, a, out);
    cli::cmd_generate(o, b, out);
    EXPECT_TRUE(read_instance(a) == read_instance(b));
    cli::GenerateOptions none;
    EXPECT_THROW(cli::cmd_generate(none, a, out), cli::UsageError);
}

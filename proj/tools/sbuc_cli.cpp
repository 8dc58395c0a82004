#include <iostream>

#include <CLI11.hpp>

#include "sbuc/cli.hpp"

using namespace sbuc;
using namespace sbuc::cli;

int main(int argc, char** argv) {
    CLI::App app{"Single-binary unit commitment: cuts, separation, branch-and-cut and polyhedral checks"};
    app.require_subcommand(1);

    std::string instance, points, out_path, families = "all", check, cuts = "on", report;
    double tol = kDefaultViolationTol;
    std::uint64_t seed = 0;
    SolveOptions so;
    OracleOptions oo;
    GenerateOptions go;
    bool strengthen = false;
    int segments = 9;

    auto* validate = app.add_subcommand("validate", "Check generator parameters and instance structure");
    validate->add_option("instance", instance, "Instance JSON")->required();

    auto* separate = app.add_subcommand("separate", "Print the most violated cut per generator and family (JSON lines)");
    separate->add_option("instance", instance, "Instance JSON")->required();
    separate->add_option("points", points, "Point file {\"points\": [{\"x\": [...], \"y\": [...]}, ...]}")->required();
    separate->add_option("--families", families, "Comma list of p1..p12, q2 (default all)");
    separate->add_option("--tol", tol, "Relative violation tolerance");

    auto* solve = app.add_subcommand("solve", "Branch-and-cut on the single-binary model");
    solve->add_option("instance", instance, "Instance JSON")->required();
    solve->add_option("--cuts", cuts, "on: two-period rows plus separated families; off: plain model")
        ->check(CLI::IsMember({"on", "off"}));
    solve->add_option("--families", families, "Comma list of p1..p12, q2 (default all)");
    solve->add_option("--tol", tol, "Relative violation tolerance");
    solve->add_option("--seed", seed, "Accepted for uniformity; the solver is deterministic");
    solve->add_option("--time-limit", so.time_limit, "Seconds");
    solve->add_option("--node-limit", so.node_limit, "Nodes");
    solve->add_option("--segments", segments, "Piecewise cost segments");
    solve->add_option("--report", report, "Run both formulations and write a RunReport CSV here");

    auto* oracle = app.add_subcommand("oracle", "Exact polyhedral verification batteries (SBUC_ORACLE_CORRUPT=1 perturbs them)");
    oracle->add_option("check", check, "hull2 | validity | facets | separation")
        ->required()
        ->check(CLI::IsMember({"hull2", "validity", "facets", "separation"}));
    oracle->add_option("--instance", oo.instance_path, "hull2: use this instance's generators");
    oracle->add_option("--horizon", oo.horizons, "Horizons to enumerate (repeatable)");
    oracle->add_option("--seed", seed, "Generator seed");

    auto* mps = app.add_subcommand("export-mps", "Write the model in free MPS format");
    mps->add_option("instance", instance, "Instance JSON")->required();
    mps->add_option("path", out_path, "Output file")->required();
    mps->add_flag("--strengthen", strengthen, "Add the two-period rows");
    mps->add_option("--segments", segments, "Piecewise cost segments");

    auto* gen = app.add_subcommand("generate", "Write an instance JSON");
    gen->add_option("path", out_path, "Output file")->required();
    gen->add_option("--experiment1", go.experiment1, "Fixed composition 1..20 (T=24)")->check(CLI::Range(1, 20));
    gen->add_option("--types", go.types, "Generator type per unit, 1..8")->delimiter(',');
    gen->add_option("--horizon", go.horizon, "Periods");
    gen->add_option("--buses", go.buses, "Buses");
    gen->add_option("--lines", go.lines, "Lines");
    gen->add_option("--seed", go.seed, "Random seed");
    gen->add_option("--reserve", go.reserve, "Reserve fraction of load");
    gen->add_flag("--on-at-start", go.on_at_start, "Units start on, sharing the first-period load");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*validate) return cmd_validate(instance, std::cout);
        if (*separate) return cmd_separate(instance, points, parse_families(families), tol, std::cout);
        if (*solve) {
            so.cuts = cuts == "on";
            so.families = parse_families(families);
            so.tol = tol;
            so.segments = segments;
            so.report_path = report;
            return cmd_solve(instance, so, std::cout);
        }
        if (*oracle) {
            oo.seed = seed;
            return cmd_oracle(check, oo, std::cout);
        }
        if (*mps) return cmd_export_mps(instance, out_path, strengthen, segments, std::cout);
        if (*gen) return cmd_generate(go, out_path, std::cout);
    } catch (const BudgetError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InstanceFormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitUsage;
}

// Command implementations behind the sbuc executable. Each returns a process exit code.
#ifndef SBUC_CLI_HPP
#define SBUC_CLI_HPP

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbuc.hpp"
#include "sbuc/verify.hpp"

namespace sbuc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct FamilySelection {
    std::set<Family> dynamic;
    bool two_period = false;

    static FamilySelection all() {
        FamilySelection s;
        s.dynamic.insert(std::begin(kDynamicFamilies), std::end(kDynamicFamilies));
        s.two_period = true;
        return s;
    }
};

// p1..p6: the upper-bound families (odd contiguous, even split); p7/p8 name their separators and
// expand to those families; p9/p10 and p11/p12 likewise for the ramp-window families; q2 the two-period rows.
inline FamilySelection parse_families(const std::string& list) {
    if (list.empty() || list == "all") return FamilySelection::all();
    FamilySelection s;
    std::stringstream ss(list);
    std::string code;
    while (std::getline(ss, code, ',')) {
        if (code.empty()) continue;
        if (code == "q2") s.two_period = true;
        else if (code == "p1") s.dynamic.insert(Family::UpperBound);
        else if (code == "p2") s.dynamic.insert(Family::UpperBoundSplit);
        else if (code == "p3") s.dynamic.insert(Family::UpperBoundEta);
        else if (code == "p4") s.dynamic.insert(Family::UpperBoundEtaSplit);
        else if (code == "p5") s.dynamic.insert(Family::UpperBoundShift);
        else if (code == "p6") s.dynamic.insert(Family::UpperBoundShiftSplit);
        else if (code == "p7") s.dynamic.insert({Family::UpperBound, Family::UpperBoundEta, Family::UpperBoundShift});
        else if (code == "p8") s.dynamic.insert({Family::UpperBoundSplit, Family::UpperBoundEtaSplit, Family::UpperBoundShiftSplit});
        else if (code == "p9" || code == "p10") s.dynamic.insert(Family::RampWindow);
        else if (code == "p11" || code == "p12") s.dynamic.insert(Family::RampWindowVbar);
        else throw UsageError("unknown family code '" + code + "' (expected p1..p12 or q2)");
    }
    return s;
}

// Point file: {"points": [{"x": [...], "y": [...]}, ...]} with one entry per generator, or the bare array.
inline std::vector<FractionalPoint> read_points(std::istream& in) {
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw InstanceFormatError(std::string("point file: ") + e.what());
    }
    const nlohmann::json& arr = j.is_object() && j.contains("points") ? j["points"] : j;
    if (!arr.is_array()) throw InstanceFormatError("point file: expected an array of {x, y} objects");
    std::vector<FractionalPoint> pts;
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = "points[" + std::to_string(i) + "]";
        FractionalPoint pt;
        pt.x = detail::numbers(detail::field(arr[i], "x", p), p + ".x");
        pt.y = detail::numbers(detail::field(arr[i], "y", p), p + ".y");
        pts.push_back(std::move(pt));
    }
    return pts;
}

inline std::vector<FractionalPoint> read_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open point file: " + path);
    return read_points(in);
}

inline nlohmann::json cut_json(int g, const LinearInequality& q, double violation) {
    nlohmann::json x = nlohmann::json::object(), y = nlohmann::json::object();
    for (const auto& [t, c] : q.x_coeffs) x[std::to_string(t)] = c;
    for (const auto& [t, c] : q.y_coeffs) y[std::to_string(t)] = c;
    const auto& cp = q.params;
    return {{"generator", g},
            {"family", to_string(q.family)},
            {"direction", to_string(cp.direction)},
            {"violation", violation},
            {"params", {{"t", cp.t}, {"lags", cp.lags}, {"eta", cp.eta}, {"k", cp.k}, {"m", cp.m}}},
            {"x", x},
            {"y", y},
            {"rhs", q.rhs}};
}

inline int cmd_validate(const std::string& path, std::ostream& out) {
    UcInstance inst = read_instance(path);
    int bad = 0;
    for (const auto& e : validate_instance(inst)) {
        out << e << "\n";
        ++bad;
    }
    out << (bad ? "invalid" : "valid") << ": " << inst.generators.size() << " generators, T=" << inst.horizon << "\n";
    return bad ? kExitFailure : kExitOk;
}

// Best violated cut per generator and selected family, one JSON object per line.
inline int cmd_separate(const std::string& instance_path, const std::string& point_path, const FamilySelection& fams, double tol,
                        std::ostream& out) {
    UcInstance inst = read_instance(instance_path);
    auto pts = read_points(point_path);
    if (pts.size() != inst.generators.size())
        throw InstanceFormatError("point file has " + std::to_string(pts.size()) + " entries for " +
                                  std::to_string(inst.generators.size()) + " generators");
    for (std::size_t g = 0; g < pts.size(); ++g)
        if (pts[g].horizon() != inst.horizon || static_cast<int>(pts[g].x.size()) != inst.horizon)
            throw InstanceFormatError("points[" + std::to_string(g) + "]: dimension does not match horizon " +
                                      std::to_string(inst.horizon));
    for (std::size_t g = 0; g < pts.size(); ++g) {
        const auto& p = inst.generators[g].params;
        const auto& pt = pts[g];
        if (fams.two_period && inst.horizon >= 2) {
            std::optional<std::pair<LinearInequality, double>> best;
            for (const auto& q : two_period_cuts(p, inst.horizon)) {
                const double v = evaluate_inequality(q, pt);
                if (is_violated(v, q.rhs, tol) && (!best || v > best->second)) best.emplace(q, v);
            }
            if (best) out << cut_json(static_cast<int>(g), best->first, best->second).dump() << "\n";
        }
        for (Family f : fams.dynamic)
            if (auto c = separate_family(pt, f, p, tol)) out << cut_json(static_cast<int>(g), c->inequality, c->violation).dump() << "\n";
    }
    return kExitOk;
}

struct SolveOptions {
    bool cuts = true;
    FamilySelection families = FamilySelection::all();
    double tol = kDefaultViolationTol;
    double time_limit = 3600;
    long node_limit = 1'000'000;
    int segments = 9;
    std::string report_path;
};

inline SolveConfig solve_config(const SolveOptions& o) {
    SolveConfig cfg;
    cfg.violation_tol = o.tol;
    cfg.time_limit = o.time_limit;
    cfg.node_limit = o.node_limit;
    if (!o.cuts) {
        cfg.cut_policy = CutPolicy::none();
    } else {
        cfg.cut_policy.families.assign(o.families.dynamic.begin(), o.families.dynamic.end());
        cfg.cut_policy.enabled = !cfg.cut_policy.families.empty();
    }
    return cfg;
}

inline int cmd_solve(const std::string& path, const SolveOptions& o, std::ostream& out) {
    UcInstance inst = read_instance(path);
    for (const auto& e : validate_instance(inst)) throw InstanceFormatError(e);
    const SolveConfig cfg = solve_config(o);
    MilpModel m = build_problem1(inst, o.segments);
    std::size_t static_rows = 0;
    if (o.cuts && o.families.two_period) static_rows = strengthen_two_period(m);
    SolveReport r = branch_and_cut(m, cfg);
    out << "instance: " << inst.name << "\n";
    out << "status: " << to_string(r.termination) << "\n";
    if (r.incumbent) out << "objective: " << detail::g17(*r.incumbent) << "\n";
    else out << "objective: none\n";
    out << "bound: " << detail::g17(r.bound) << "\n";
    if (auto g = r.gap()) out << "gap: " << detail::g17(*g) << "\n";
    out << "root_lp: " << detail::g17(r.root_lp) << "\n";
    out << "root_lp_cuts: " << detail::g17(r.root_lp_cuts) << "\n";
    out << "nodes: " << r.nodes << "\n";
    out << "static_rows: " << static_rows << "\n";
    out << "cuts_added: " << r.cuts_added << "\n";
    for (const auto& [f, n] : r.cuts_by_family) out << "cuts." << to_string(f) << ": " << n << "\n";
    out << "wall_time: " << detail::g17(r.wall_time) << "\n";
    if (!o.report_path.empty()) {
        ComparisonRow row = compare_formulations(inst, cfg, o.segments);
        std::ofstream f(o.report_path);
        if (!f) throw std::ios_base::failure("cannot write report: " + o.report_path);
        write_run_report(f, {RunReportRow::from(row)});
        out << "report: " << o.report_path << "\n";
    }
    return kExitOk;
}

struct OracleOptions {
    std::string instance_path;
    std::vector<int> horizons;
    std::uint64_t seed = 0;  // 0 keeps each battery's default seed
    int random_sets = 100;
};

inline bool corruption_requested() {
    const char* v = std::getenv("SBUC_ORACLE_CORRUPT");
    return v && *v && std::string(v) != "0";
}

inline void print_battery(const BatteryResult& r, std::ostream& out) {
    out << (r.ok() ? "PASS " : "FAIL ") << r.name << " checks=" << r.checks << " failures=" << r.failures << " seconds=" << r.seconds << "\n";
    for (const auto& [k, v] : r.counts) out << "  " << k << "=" << v << "\n";
    for (const auto& m : r.messages) out << "  ! " << m << "\n";
}

inline int cmd_oracle(const std::string& check, const OracleOptions& o, std::ostream& out) {
    const Corruption corrupt{corruption_requested()};
    if (corrupt.enabled) out << "note: SBUC_ORACLE_CORRUPT set, coefficients are deliberately perturbed\n";
    std::vector<BatteryResult> results;
    if (check == "hull2") {
        std::vector<GeneratorParams> gens;
        if (!o.instance_path.empty()) {
            for (const auto& u : read_instance(o.instance_path).generators) gens.push_back(u.params);
        } else {
            for (int i = 1; i <= 8; ++i) gens.push_back(generator_type(i).params);
            std::mt19937_64 rng(o.seed ? o.seed : 5);
            for (int i = 0; i < o.random_sets; ++i) gens.push_back(random_generator(rng));
        }
        results.push_back(hull_battery(gens, corrupt));
    } else if (check == "validity") {
        ValiditySettings s;
        if (!o.horizons.empty()) s.horizons = o.horizons;
        if (o.seed) s.seed = o.seed;
        BatteryResult mirror;
        results.push_back(validity_battery(s, corrupt, &mirror));
        results.push_back(mirror);
    } else if (check == "facets") {
        FacetSettings s;
        if (!o.horizons.empty()) s.horizons = o.horizons;
        if (o.seed) s.seed = o.seed;
        results.push_back(facet_battery(s, corrupt));
    } else if (check == "separation") {
        SeparationSettings s;
        if (!o.horizons.empty()) s.horizons = o.horizons;
        if (o.seed) s.seed = o.seed;
        results.push_back(separation_battery(s, corrupt));
    } else {
        throw UsageError("unknown check '" + check + "' (expected hull2, validity, facets or separation)");
    }
    bool ok = true;
    for (const auto& r : results) {
        print_battery(r, out);
        ok = ok && r.ok();
    }
    return ok ? kExitOk : kExitFailure;
}

inline int cmd_export_mps(const std::string& instance_path, const std::string& out_path, bool strengthen, int segments,
                          std::ostream& out) {
    UcInstance inst = read_instance(instance_path);
    for (const auto& e : validate_instance(inst)) throw InstanceFormatError(e);
    MilpModel m = build_problem1(inst, segments);
    std::size_t added = strengthen ? strengthen_two_period(m) : 0;
    write_mps(m, out_path, inst.name.empty() ? "SBUC" : inst.name);
    out << "wrote " << out_path << ": " << m.vars.size() << " columns, " << m.rows.size() << " rows";
    if (strengthen) out << " (" << added << " two-period rows)";
    out << "\n";
    return kExitOk;
}

struct GenerateOptions {
    int experiment1 = 0;  // 1..20 selects a fixed composition
    std::vector<int> types;
    int horizon = 24;
    int buses = 1;
    int lines = 0;
    std::uint64_t seed = 1;
    double reserve = kDefaultReserve;
    bool on_at_start = false;
};

inline int cmd_generate(const GenerateOptions& o, const std::string& out_path, std::ostream& out) {
    const InitialPolicy pol = o.on_at_start ? InitialPolicy::OnAtFirstLoad : InitialPolicy::AllOff;
    UcInstance inst;
    if (o.experiment1) {
        inst = experiment1_instance(o.experiment1, pol);
    } else {
        if (o.types.empty()) throw UsageError("generate: give --experiment1 or --types");
        RandomInstanceSpec s;
        s.seed = o.seed;
        s.generator_types = o.types;
        s.horizon = o.horizon;
        s.buses = o.buses;
        s.lines = o.lines;
        s.reserve = o.reserve;
        s.initial = pol;
        inst = random_instance(s);
    }
    write_instance(inst, out_path);
    out << "wrote " << out_path << ": " << inst.generators.size() << " generators, T=" << inst.horizon << "\n";
    return kExitOk;
}

}  // namespace sbuc::cli

#endif

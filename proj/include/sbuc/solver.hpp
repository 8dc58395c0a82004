#ifndef SBUC_SOLVER_HPP
#define SBUC_SOLVER_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sbuc/core.hpp"
#include "sbuc/cuts.hpp"
#include "sbuc/formulation.hpp"
#include "sbuc/lp.hpp"
#include "sbuc/separation.hpp"

namespace sbuc {

struct CutPolicy {
    bool enabled = true;
    bool seed_pool = true;    // seed-policy enumeration of each family, checked against the LP point
    bool separators = true;   // fast most-violated separation
    std::vector<Family> families{std::begin(kDynamicFamilies), std::end(kDynamicFamilies)};

    static CutPolicy none() {
        CutPolicy p;
        p.enabled = false;
        p.families.clear();
        return p;
    }
};

struct SolveConfig {
    double rel_gap = 1e-4;
    double violation_tol = kDefaultViolationTol;
    int max_cut_rounds_root = 50;
    int cut_depth_limit = 5;
    int max_cut_rounds_node = 5;
    long node_limit = 1'000'000;
    double time_limit = 3600;  // seconds
    double int_tol = 1e-6;
    CutPolicy cut_policy;
    LpOptions lp;
};

inline LpSolution solve_lp(const MilpModel& m, const LpBasis* warm = nullptr, const LpOptions& opt = {}) {
    std::vector<double> c(m.vars.size()), lb(m.vars.size()), ub(m.vars.size());
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
        c[j] = m.vars[j].obj;
        lb[j] = m.vars[j].lb;
        ub[j] = m.vars[j].ub;
    }
    return solve_lp_bounded(c, lb, ub, m.rows, warm, opt);
}

// (x_g, y_g) of one generator from a full solution vector.
inline FractionalPoint generator_point(const MilpModel& m, int g, const std::vector<double>& values) {
    FractionalPoint pt;
    for (int t = 1; t <= m.horizon; ++t) {
        pt.x.push_back(std::max(0.0, values[m.index(VarKind::X, g, t)]));
        pt.y.push_back(std::clamp(values[m.index(VarKind::Y, g, t)], 0.0, 1.0));
    }
    return pt;
}

// Adds the most violated cut per (generator, family) to a model; tracks what has been added.
class CutManager {
  public:
    CutManager(const MilpModel& m, CutPolicy policy, double tol) : policy_(std::move(policy)), tol_(tol), seen_(m.num_gens) {
        if (!policy_.enabled || !policy_.seed_pool) return;
        pool_.resize(m.num_gens);
        for (int g = 0; g < m.num_gens; ++g)
            for (Family f : policy_.families) {
                auto en = admissible_params(f, m.generators[g], m.horizon, EnumerationPolicy::seed());
                for (const auto& cp : en.params) {
                    auto r = build_cut(f, m.generators[g], m.horizon, cp);
                    if (r.ok() && r.value().family == f) pool_[g][f].push_back(r.value());
                }
            }
    }

    // One separation round at the given LP solution; returns the number of rows appended.
    int round(MilpModel& m, const std::vector<double>& values) {
        if (!policy_.enabled) return 0;
        int added = 0;
        for (int g = 0; g < m.num_gens; ++g) {
            const FractionalPoint pt = generator_point(m, g, values);
            const auto& p = m.generators[g];
            for (Family f : policy_.families) {
                std::optional<LinearInequality> best;
                double best_v = 0;
                auto offer = [&](const LinearInequality& q, double v) {
                    if (!is_violated(v, q.rhs, tol_)) return;
                    if (!best || v > best_v) {
                        best = q;
                        best_v = v;
                    }
                };
                if (policy_.separators)
                    if (auto c = separate_family(pt, f, p, tol_)) offer(c->inequality, c->violation);
                if (policy_.seed_pool && g < static_cast<int>(pool_.size())) {
                    auto it = pool_[g].find(f);
                    if (it != pool_[g].end())
                        for (const auto& q : it->second) offer(q, evaluate_inequality(q, pt));
                }
                if (!best) continue;
                if (!seen_[g].insert(key(*best)).second) continue;
                add_generator_row(m, g, *best, RowTag::Cut);
                ++by_family_[f];
                ++added;
            }
        }
        total_ += added;
        return added;
    }

    long total() const { return total_; }
    const std::map<Family, long>& by_family() const { return by_family_; }

  private:
    static std::vector<double> key(const LinearInequality& q) {
        std::vector<double> k;
        for (const auto& [t, c] : q.x_coeffs) k.insert(k.end(), {0.0, double(t), c});
        for (const auto& [t, c] : q.y_coeffs) k.insert(k.end(), {1.0, double(t), c});
        k.push_back(q.rhs);
        return k;
    }

    CutPolicy policy_;
    double tol_;
    std::vector<std::map<Family, std::vector<LinearInequality>>> pool_;
    std::vector<std::set<std::vector<double>>> seen_;
    std::map<Family, long> by_family_;
    long total_ = 0;
};

struct CutLoopResult {
    LpSolution solution;
    long cuts_added = 0;
    int rounds = 0;
};

// Solve, separate, add rows, repeat until nothing is violated or the round limit is reached.
inline CutLoopResult cut_loop(MilpModel& m, CutManager& cuts, int max_rounds, const LpOptions& opt = {},
                              const std::vector<double>* lb = nullptr, const std::vector<double>* ub = nullptr,
                              const LpBasis* warm = nullptr) {
    std::vector<double> c(m.vars.size()), l(m.vars.size()), u(m.vars.size());
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
        c[j] = m.vars[j].obj;
        l[j] = lb ? (*lb)[j] : m.vars[j].lb;
        u[j] = ub ? (*ub)[j] : m.vars[j].ub;
    }
    CutLoopResult res;
    LpBasis basis = warm ? *warm : LpBasis{};
    for (;;) {
        res.solution = solve_lp_bounded(c, l, u, m.rows, basis.empty() ? nullptr : &basis, opt);
        ++res.rounds;
        if (res.solution.status != LpStatus::Optimal) return res;
        basis = res.solution.basis;
        if (res.rounds > max_rounds) return res;
        int added = cuts.round(m, res.solution.values);
        res.cuts_added += added;
        if (added == 0) return res;
    }
}

inline CutLoopResult cut_loop(MilpModel& m, const CutPolicy& policy, int max_rounds = 50, double tol = kDefaultViolationTol) {
    CutManager cuts(m, policy, tol);
    return cut_loop(m, cuts, max_rounds);
}

enum class Termination { Optimal, Infeasible, NodeLimit, TimeLimit, LpFailure };

inline const char* to_string(Termination t) {
    switch (t) {
        case Termination::Optimal: return "optimal";
        case Termination::Infeasible: return "infeasible";
        case Termination::NodeLimit: return "node-limit";
        case Termination::TimeLimit: return "time-limit";
        case Termination::LpFailure: return "lp-failure";
    }
    return "?";
}

struct SolveReport {
    Termination termination = Termination::Infeasible;
    std::optional<double> incumbent;
    std::vector<double> solution;
    double bound = -kInf;
    double root_lp = 0;       // LP relaxation before any dynamic cut
    double root_lp_cuts = 0;  // after the root cut loop
    long nodes = 0;
    long cuts_added = 0;
    std::map<Family, long> cuts_by_family;
    double wall_time = 0;
    long lp_iterations = 0;

    std::optional<double> gap() const {
        if (!incumbent || *incumbent == 0) return std::nullopt;
        return std::fabs(*incumbent - bound) / std::fabs(*incumbent);
    }
};

inline double igap(double z_star, double z_lp) {
    if (z_star == 0) throw std::domain_error("igap: undefined for a zero optimum");
    return std::fabs(z_star - z_lp) / z_star * 100.0;
}

inline double pct_reduction(double igap_without, double igap_with) {
    if (igap_without == 0) throw std::domain_error("pct_reduction: undefined when the gap without cuts is zero");
    return (igap_without - igap_with) / igap_without * 100.0;
}

// Best-bound branch-and-cut over the binary columns of `model` (which is copied and grows with cuts).
inline SolveReport branch_and_cut(const MilpModel& model, const SolveConfig& cfg = {}) {
    const auto t0 = std::chrono::steady_clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); };
    SolveReport rep;
    MilpModel m = lp_relaxation(model);
    std::vector<int> binaries;
    for (std::size_t j = 0; j < model.vars.size(); ++j)
        if (model.vars[j].integer) binaries.push_back(static_cast<int>(j));
    CutManager cuts(m, cfg.cut_policy, cfg.violation_tol);

    struct Node {
        double bound;
        long id;
        int depth;
        std::vector<std::pair<int, double>> fix;  // (column, value) on binaries
        LpBasis basis;
    };
    struct Worse {
        bool operator()(const Node& a, const Node& b) const { return a.bound > b.bound || (a.bound == b.bound && a.id > b.id); }
    };
    std::priority_queue<Node, std::vector<Node>, Worse> open;
    long next_id = 0;
    open.push({-kInf, next_id++, 0, {}, {}});
    std::vector<double> base_lb(m.vars.size()), base_ub(m.vars.size());
    for (std::size_t j = 0; j < m.vars.size(); ++j) {
        base_lb[j] = m.vars[j].lb;
        base_ub[j] = m.vars[j].ub;
    }
    auto close_enough = [&](double bound) {
        if (!rep.incumbent) return false;
        return bound >= *rep.incumbent - cfg.rel_gap * std::max(1e-9, std::fabs(*rep.incumbent));
    };
    bool limit_hit = false;
    while (!open.empty()) {
        if (close_enough(open.top().bound)) break;
        if (rep.nodes >= cfg.node_limit) {
            rep.termination = Termination::NodeLimit;
            limit_hit = true;
            break;
        }
        if (elapsed() > cfg.time_limit) {
            rep.termination = Termination::TimeLimit;
            limit_hit = true;
            break;
        }
        Node node = open.top();
        open.pop();
        ++rep.nodes;
        std::vector<double> lb = base_lb, ub = base_ub;
        for (auto [j, v] : node.fix) lb[j] = ub[j] = v;
        const int rounds = node.depth == 0 ? cfg.max_cut_rounds_root : (node.depth <= cfg.cut_depth_limit ? cfg.max_cut_rounds_node : 0);
        CutLoopResult cl;
        if (node.depth == 0) {
            // record the plain relaxation before separating
            cl = cut_loop(m, cuts, 0, cfg.lp, &lb, &ub, nullptr);
            if (cl.solution.status == LpStatus::Optimal) {
                rep.root_lp = cl.solution.objective;
                LpBasis b = cl.solution.basis;
                if (cfg.cut_policy.enabled) cl = cut_loop(m, cuts, rounds, cfg.lp, &lb, &ub, &b);
                rep.root_lp_cuts = cl.solution.objective;
            }
        } else {
            cl = cut_loop(m, cuts, rounds, cfg.lp, &lb, &ub, node.basis.empty() ? nullptr : &node.basis);
        }
        rep.lp_iterations += cl.solution.iterations;
        if (cl.solution.status == LpStatus::Infeasible) continue;
        if (cl.solution.status != LpStatus::Optimal) {
            rep.termination = Termination::LpFailure;
            limit_hit = true;
            break;
        }
        const double z = cl.solution.objective;
        if (close_enough(z)) continue;
        int branch = -1;
        double most = -1;
        for (int j : binaries) {
            const double v = cl.solution.values[j];
            const double frac = std::fabs(v - std::round(v));
            if (frac <= cfg.int_tol) continue;
            const double score = 0.5 - std::fabs(v - std::floor(v) - 0.5);
            if (score > most) {
                most = score;
                branch = j;
            }
        }
        if (branch < 0) {
            if (!rep.incumbent || z < *rep.incumbent) {
                rep.incumbent = z;
                rep.solution = cl.solution.values;
                for (int j : binaries) rep.solution[j] = std::round(rep.solution[j]);
            }
            continue;
        }
        for (double v : {0.0, 1.0}) {
            Node child{z, next_id++, node.depth + 1, node.fix, cl.solution.basis};
            child.fix.emplace_back(branch, v);
            open.push(std::move(child));
        }
    }
    if (!limit_hit) rep.termination = rep.incumbent ? Termination::Optimal : Termination::Infeasible;
    if (open.empty()) rep.bound = rep.incumbent ? *rep.incumbent : kInf;
    else rep.bound = rep.incumbent ? std::min(open.top().bound, *rep.incumbent) : open.top().bound;
    rep.cuts_added = cuts.total();
    rep.cuts_by_family = cuts.by_family();
    rep.wall_time = elapsed();
    return rep;
}

// F1 (no cuts) against F1-X (two-period rows plus separated families) on one instance.
struct ComparisonRow {
    std::string name;
    double igap_without = 0, igap_with = 0;
    std::optional<double> pct_reduction;
    long nodes_without = 0, nodes_with = 0;
    long cuts_added = 0;
    double wall_time = 0;
    double z_star = 0, z_lp_without = 0, z_lp_with = 0;
    Termination termination_without = Termination::Optimal, termination_with = Termination::Optimal;
};

inline ComparisonRow compare_formulations(const UcInstance& inst, const SolveConfig& cfg = {}, int segments = 9) {
    const auto t0 = std::chrono::steady_clock::now();
    ComparisonRow row;
    row.name = inst.name;
    MilpModel f1 = build_problem1(inst, segments);
    SolveConfig off = cfg;
    off.cut_policy = CutPolicy::none();
    SolveReport without = branch_and_cut(f1, off);
    MilpModel f1x = f1;
    std::size_t static_rows = strengthen_two_period(f1x);
    SolveReport with = branch_and_cut(f1x, cfg);
    if (!without.incumbent || !with.incumbent) throw std::runtime_error("compare_formulations: no feasible solution for " + inst.name);
    // both runs bound the same optimum; the better incumbent is the best known Z*
    row.z_star = std::min(*without.incumbent, *with.incumbent);
    row.z_lp_without = without.root_lp;
    row.z_lp_with = with.root_lp_cuts;
    row.igap_without = igap(row.z_star, row.z_lp_without);
    row.igap_with = igap(row.z_star, row.z_lp_with);
    if (row.igap_without > 0) row.pct_reduction = pct_reduction(row.igap_without, row.igap_with);
    row.nodes_without = without.nodes;
    row.nodes_with = with.nodes;
    row.cuts_added = with.cuts_added + static_cast<long>(static_rows);
    row.termination_without = without.termination;
    row.termination_with = with.termination;
    row.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

}  // namespace sbuc

#endif

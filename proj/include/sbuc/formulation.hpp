#ifndef SBUC_FORMULATION_HPP
#define SBUC_FORMULATION_HPP

#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sbuc/core.hpp"
#include "sbuc/cuts.hpp"
#include "sbuc/instance.hpp"

namespace sbuc {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VarKind { X = 0, Y = 1, U = 2, V = 3, F = 4 };

inline const char* to_string(VarKind k) {
    static const char* names[] = {"x", "y", "u", "v", "f"};
    return names[static_cast<int>(k)];
}

enum class RowTag {
    MinUp,
    MinDown,
    CapacityLower,
    CapacityUpper,
    RampUp,
    RampDown,
    StartupCost,
    ShutdownCost,
    LoadBalance,
    Reserve,
    Transmission,
    TwoPeriod,
    Epigraph,
    Cut,
};

inline const char* to_string(RowTag t) {
    switch (t) {
        case RowTag::MinUp: return "min_up";
        case RowTag::MinDown: return "min_down";
        case RowTag::CapacityLower: return "cap_lo";
        case RowTag::CapacityUpper: return "cap_hi";
        case RowTag::RampUp: return "ramp_up";
        case RowTag::RampDown: return "ramp_down";
        case RowTag::StartupCost: return "startup";
        case RowTag::ShutdownCost: return "shutdown";
        case RowTag::LoadBalance: return "load";
        case RowTag::Reserve: return "reserve";
        case RowTag::Transmission: return "line";
        case RowTag::TwoPeriod: return "pair";
        case RowTag::Epigraph: return "epi";
        case RowTag::Cut: return "cut";
    }
    return "?";
}

struct Variable {
    VarKind kind;
    int gen;
    int period;  // 1-based
    double lb = 0, ub = kInf;
    bool integer = false;
    double obj = 0;
    std::string name;
};

// lo <= coeffs . x <= hi
struct Row {
    std::vector<std::pair<int, double>> coeffs;
    double lo = -kInf, hi = kInf;
    RowTag tag = RowTag::Cut;
    int gen = -1;  // -1 for system rows
    int period = 0;
    std::string name;
};

struct MilpModel {
    int num_gens = 0;
    int horizon = 0;
    std::vector<Variable> vars;
    std::vector<Row> rows;
    std::vector<GeneratorParams> generators;
    bool strengthened = false;

    int index(VarKind k, int g, int t) const { return (static_cast<int>(k) * num_gens + g) * horizon + (t - 1); }
    int num_binaries() const {
        int n = 0;
        for (const auto& v : vars) n += v.integer;
        return n;
    }
    std::size_t count_rows(RowTag tag) const {
        std::size_t n = 0;
        for (const auto& r : rows) n += r.tag == tag;
        return n;
    }
    double objective(const std::vector<double>& x) const {
        double s = 0;
        for (std::size_t j = 0; j < vars.size(); ++j) s += vars[j].obj * x[j];
        return s;
    }
};

namespace detail {

// Linear expression over one generator's x and y with history entries folded into a constant.
struct GenExpr {
    const MilpModel& m;
    int g;
    const InitialState& init;
    std::map<int, double> coeffs;
    double constant = 0;

    void y(int t, double c) {
        if (t >= 1) coeffs[m.index(VarKind::Y, g, t)] += c;
        else constant += c * init.y_at(t);
    }
    void x(int t, double c) {
        if (t >= 1) coeffs[m.index(VarKind::X, g, t)] += c;
        else constant += c * init.x0;
    }
    void var(int j, double c) { coeffs[j] += c; }
};

// Appends lo <= e <= hi. Rows without variables must hold; rows implied by the variable bounds are dropped.
inline void emit(MilpModel& m, const GenExpr& e, double lo, double hi, RowTag tag, int period, const std::string& who) {
    Row r;
    double amin = 0, amax = 0;
    for (const auto& [j, c] : e.coeffs) {
        if (c == 0) continue;
        r.coeffs.emplace_back(j, c);
        const auto& v = m.vars[j];
        amin += c > 0 ? c * v.lb : c * v.ub;
        amax += c > 0 ? c * v.ub : c * v.lb;
    }
    lo -= e.constant;
    hi -= e.constant;
    const double eps = 1e-9;
    if (r.coeffs.empty()) {
        if (lo > eps || hi < -eps) throw std::invalid_argument(who + ": initial history violates " + to_string(tag));
        return;
    }
    if (amin >= lo - eps && amax <= hi + eps) return;
    r.lo = lo;
    r.hi = hi;
    r.tag = tag;
    r.gen = e.g;
    r.period = period;
    r.name = std::string(to_string(tag)) + "_" + std::to_string(e.g) + "_" + std::to_string(period) + "_" + std::to_string(m.rows.size());
    m.rows.push_back(std::move(r));
}

}  // namespace detail

// Single-binary UC model: min-up/down, capacity, ramping, start/shut costs, load, reserve, lines,
// and a piecewise-linear epigraph f >= slope x + intercept y per segment.
inline MilpModel build_problem1(const UcInstance& inst, int segments = 9) {
    const int T = inst.horizon;
    const int G = static_cast<int>(inst.generators.size());
    if (T < 1) throw std::invalid_argument("build_problem1: horizon must be >= 1");
    if (static_cast<int>(inst.reserve.size()) != T) throw std::invalid_argument("build_problem1: reserve length must equal horizon");
    MilpModel m;
    m.num_gens = G;
    m.horizon = T;
    for (int g = 0; g < G; ++g) {
        const auto& gen = inst.generators[g];
        const std::string who = "generator " + std::to_string(g) + " (" + gen.name + ")";
        auto v = validate_generator(gen.params);
        if (!v.ok()) throw std::invalid_argument(who + ": " + v.violations.front());
        auto h = check_history(gen.params, gen.initial);
        if (!h.empty()) throw std::invalid_argument(who + ": " + h);
        m.generators.push_back(gen.params);
    }
    m.vars.resize(static_cast<std::size_t>(5) * G * T);
    for (int k = 0; k < 5; ++k)
        for (int g = 0; g < G; ++g)
            for (int t = 1; t <= T; ++t) {
                const VarKind kind = static_cast<VarKind>(k);
                const auto& gen = inst.generators[g];
                Variable var{kind, g, t, 0.0, kInf, false, 0.0,
                             std::string(to_string(kind)) + "_" + std::to_string(g) + "_" + std::to_string(t)};
                switch (kind) {
                    case VarKind::X: var.ub = gen.params.cap_max; break;
                    case VarKind::Y:
                        var.ub = 1;
                        var.integer = true;
                        var.obj = gen.costs.fixed_on;
                        break;
                    default: var.obj = 1; break;
                }
                m.vars[m.index(kind, g, t)] = std::move(var);
            }

    for (int g = 0; g < G; ++g) {
        const auto& gen = inst.generators[g];
        const auto& p = gen.params;
        const auto& c = gen.costs;
        const auto& init = gen.initial;
        const std::string who = "generator " + std::to_string(g) + " (" + gen.name + ")";
        auto expr = [&] { return detail::GenExpr{m, g, init, {}, 0.0}; };

        // y_t - y_{t-1} <= y_k, k in [t, t+L-1]
        for (int t = 2 - p.min_up; t <= T; ++t)
            for (int k = std::max(t, 1); k <= std::min(T, t + p.min_up - 1); ++k) {
                auto e = expr();
                e.y(t, 1);
                e.y(t - 1, -1);
                e.y(k, -1);
                detail::emit(m, e, -kInf, 0, RowTag::MinUp, t, who);
            }
        // y_{t-1} - y_t <= 1 - y_k, k in [t, t+l-1]
        for (int t = 2 - p.min_down; t <= T; ++t)
            for (int k = std::max(t, 1); k <= std::min(T, t + p.min_down - 1); ++k) {
                auto e = expr();
                e.y(t - 1, 1);
                e.y(t, -1);
                e.y(k, 1);
                detail::emit(m, e, -kInf, 1, RowTag::MinDown, t, who);
            }
        for (int t = 1; t <= T; ++t) {
            {
                auto e = expr();
                e.x(t, 1);
                e.y(t, -p.cap_min);
                detail::emit(m, e, 0, kInf, RowTag::CapacityLower, t, who);
            }
            {
                auto e = expr();
                e.x(t, 1);
                e.y(t, -p.cap_max);
                detail::emit(m, e, -kInf, 0, RowTag::CapacityUpper, t, who);
            }
            // x_t - x_{t-1} <= V y_{t-1} + V̄ (1 - y_{t-1})
            {
                auto e = expr();
                e.x(t, 1);
                e.x(t - 1, -1);
                e.y(t - 1, -(p.ramp - p.start_ramp));
                detail::emit(m, e, -kInf, p.start_ramp, RowTag::RampUp, t, who);
            }
            // x_{t-1} - x_t <= V y_t + V̄ (1 - y_t)
            {
                auto e = expr();
                e.x(t - 1, 1);
                e.x(t, -1);
                e.y(t, -(p.ramp - p.start_ramp));
                detail::emit(m, e, -kInf, p.start_ramp, RowTag::RampDown, t, who);
            }
            // u_t >= phi (y_t - y_{t-1}),  v_t >= psi (y_{t-1} - y_t)
            {
                auto e = expr();
                e.var(m.index(VarKind::U, g, t), 1);
                e.y(t, -c.startup);
                e.y(t - 1, c.startup);
                detail::emit(m, e, 0, kInf, RowTag::StartupCost, t, who);
            }
            {
                auto e = expr();
                e.var(m.index(VarKind::V, g, t), 1);
                e.y(t - 1, -c.shutdown);
                e.y(t, c.shutdown);
                detail::emit(m, e, 0, kInf, RowTag::ShutdownCost, t, who);
            }
        }
        auto pc = linearize_cost(c, p, segments);
        for (int t = 1; t <= T; ++t)
            for (std::size_t i = 0; i < pc.segments(); ++i) {
                auto e = expr();
                e.var(m.index(VarKind::F, g, t), 1);
                e.x(t, -pc.slopes[i]);
                e.y(t, -pc.intercepts[i]);
                detail::emit(m, e, 0, kInf, RowTag::Epigraph, t, who);
            }
    }

    const auto D = inst.system_load();
    for (int t = 1; t <= T; ++t) {
        Row load, res;
        for (int g = 0; g < G; ++g) {
            load.coeffs.emplace_back(m.index(VarKind::X, g, t), 1.0);
            res.coeffs.emplace_back(m.index(VarKind::Y, g, t), inst.generators[g].params.cap_max);
        }
        load.lo = load.hi = D[t - 1];
        load.tag = RowTag::LoadBalance;
        load.period = t;
        load.name = "load_" + std::to_string(t);
        res.lo = (1 + inst.reserve[t - 1]) * D[t - 1];
        res.tag = RowTag::Reserve;
        res.period = t;
        res.name = "reserve_" + std::to_string(t);
        m.rows.push_back(std::move(load));
        m.rows.push_back(std::move(res));
    }

    std::map<std::string, int> bus_index;
    for (std::size_t b = 0; b < inst.buses.size(); ++b) bus_index[inst.buses[b].id] = static_cast<int>(b);
    for (std::size_t e = 0; e < inst.lines.size(); ++e) {
        const auto& ln = inst.lines[e];
        for (int t = 1; t <= T; ++t) {
            // -C_e <= sum_b K_eb (sum_{g at b} x_gt - d_bt) <= C_e
            Row r;
            double fixed = 0;
            for (const auto& [bus, k] : ln.factors) fixed += k * inst.buses.at(bus_index.at(bus)).load[t - 1];
            for (int g = 0; g < G; ++g) {
                auto it = ln.factors.find(inst.generators[g].bus);
                if (it != ln.factors.end() && it->second != 0) r.coeffs.emplace_back(m.index(VarKind::X, g, t), it->second);
            }
            r.lo = fixed - ln.capacity;
            r.hi = fixed + ln.capacity;
            r.tag = RowTag::Transmission;
            r.period = t;
            r.name = "line_" + ln.id + "_" + std::to_string(t);
            if (r.coeffs.empty()) {
                if (r.lo > 1e-9 || r.hi < -1e-9) throw std::invalid_argument("line " + ln.id + ": load flow alone exceeds capacity");
                continue;
            }
            m.rows.push_back(std::move(r));
        }
    }
    return m;
}

// Appends one generator's inequality a.x + b.y <= rhs as a model row.
inline void add_generator_row(MilpModel& m, int g, const LinearInequality& q, RowTag tag) {
    Row r;
    for (const auto& [t, c] : q.x_coeffs) r.coeffs.emplace_back(m.index(VarKind::X, g, t), c);
    for (const auto& [t, c] : q.y_coeffs) r.coeffs.emplace_back(m.index(VarKind::Y, g, t), c);
    r.hi = q.rhs;
    r.tag = tag;
    r.gen = g;
    r.period = q.params.t;
    r.name = std::string(to_string(tag)) + "_" + std::to_string(g) + "_" + std::to_string(q.params.t) + "_" + std::to_string(m.rows.size());
    m.rows.push_back(std::move(r));
}

// Adds the two-period hull rows of every generator; returns the number added.
inline std::size_t strengthen_two_period(MilpModel& m) {
    if (m.strengthened) throw std::logic_error("strengthen_two_period: model already strengthened");
    if (m.horizon < 2) throw std::invalid_argument("strengthen_two_period: horizon must be >= 2");
    std::size_t added = 0;
    for (int g = 0; g < m.num_gens; ++g)
        for (const auto& q : two_period_cuts(m.generators[g], m.horizon)) {
            add_generator_row(m, g, q, RowTag::TwoPeriod);
            ++added;
        }
    m.strengthened = true;
    return added;
}

inline MilpModel lp_relaxation(MilpModel m) {
    for (auto& v : m.vars) v.integer = false;
    return m;
}

}  // namespace sbuc

#endif

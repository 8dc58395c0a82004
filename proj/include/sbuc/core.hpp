#ifndef SBUC_CORE_HPP
#define SBUC_CORE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sbuc {

// Arithmetic hooks so the same builders run in double and in exact rationals.
template <class Scalar>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static long floor_int(double v) { return static_cast<long>(std::floor(v + 1e-12 * std::max(1.0, std::fabs(v)))); }
    static double to_double(double v) { return v; }
    static double from_double(double v) { return v; }
    static bool is_zero(double v) { return v == 0.0; }
};

template <class Scalar>
long floor_int(const Scalar& v) { return scalar_traits<Scalar>::floor_int(v); }

template <class Scalar>
struct GeneratorParamsT {
    Scalar cap_max{};     // C-bar
    Scalar cap_min{};     // C-underbar
    int min_up = 1;       // L
    int min_down = 1;     // l
    Scalar ramp{};        // V
    Scalar start_ramp{};  // V-bar

    // floor((C̄ - V̄) / V), the largest lag with a nonnegative lag coefficient
    long lag_cap() const { return floor_int<Scalar>(Scalar(cap_max - start_ramp) / ramp); }
    Scalar eta_ratio() const { return Scalar(cap_max - start_ramp) / ramp; }
};
using GeneratorParams = GeneratorParamsT<double>;

template <class Scalar>
struct CostParamsT {
    Scalar quad{};      // a
    Scalar lin{};       // b
    Scalar fixed_on{};  // c
    Scalar startup{};   // phi
    Scalar shutdown{};  // psi
};
using CostParams = CostParamsT<double>;

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

template <class Scalar>
ValidationReport validate_generator(const GeneratorParamsT<Scalar>& p) {
    ValidationReport r;
    auto need = [&](bool cond, const char* name) {
        if (!cond) r.violations.emplace_back(name);
    };
    need(p.cap_max > p.cap_min, "cap_max > cap_min");
    need(p.cap_min > 0, "cap_min > 0");
    need(p.ramp > 0, "ramp > 0");
    need(p.min_up >= 1, "min_up >= 1");
    need(p.min_down >= 1, "min_down >= 1");
    need(p.start_ramp + p.ramp <= p.cap_max, "start_ramp + ramp <= cap_max");
    need(p.cap_min < p.start_ramp && p.start_ramp < p.cap_min + p.ramp, "cap_min < start_ramp < cap_min + ramp");
    return r;
}

template <class Scalar>
ValidationReport validate_costs(const CostParamsT<Scalar>& c, const GeneratorParamsT<Scalar>& p) {
    ValidationReport r;
    auto need = [&](bool cond, const char* name) {
        if (!cond) r.violations.emplace_back(name);
    };
    need(c.quad >= 0, "quad >= 0");
    need(c.fixed_on >= 0, "fixed_on >= 0");
    need(c.startup >= 0, "startup >= 0");
    need(c.shutdown >= 0, "shutdown >= 0");
    need(2 * c.quad * p.cap_min + c.lin >= 0, "cost non-decreasing on [cap_min, cap_max]");
    return r;
}

// max_i (slope_i * x + intercept_i); intercepts multiply the on/off status in the model.
template <class Scalar>
struct PiecewiseCostT {
    std::vector<Scalar> breakpoints;
    std::vector<Scalar> slopes;
    std::vector<Scalar> intercepts;

    std::size_t segments() const { return slopes.size(); }
    Scalar value(const Scalar& x) const {
        Scalar best = slopes.at(0) * x + intercepts.at(0);
        for (std::size_t i = 1; i < slopes.size(); ++i) {
            Scalar v = slopes[i] * x + intercepts[i];
            if (v > best) best = v;
        }
        return best;
    }
};
using PiecewiseCost = PiecewiseCostT<double>;

template <class Scalar>
PiecewiseCostT<Scalar> linearize_cost(const CostParamsT<Scalar>& c, const GeneratorParamsT<Scalar>& p, int segments = 9) {
    if (segments < 1) throw std::invalid_argument("linearize_cost: segments must be >= 1");
    PiecewiseCostT<Scalar> pc;
    Scalar width = Scalar(p.cap_max - p.cap_min) / Scalar(segments);
    for (int i = 0; i <= segments; ++i) pc.breakpoints.push_back(i == segments ? p.cap_max : Scalar(p.cap_min + width * i));
    for (int i = 0; i < segments; ++i) {
        const Scalar& b0 = pc.breakpoints[i];
        const Scalar& b1 = pc.breakpoints[i + 1];
        Scalar slope = c.quad * (b0 + b1) + c.lin;
        pc.slopes.push_back(slope);
        pc.intercepts.push_back(Scalar(-(c.quad * b0 * b1)));
    }
    return pc;
}

enum class Direction { Backward, Forward };

inline Direction flip(Direction d) { return d == Direction::Backward ? Direction::Forward : Direction::Backward; }
inline const char* to_string(Direction d) { return d == Direction::Backward ? "backward" : "forward"; }

enum class Family {
    CapacityPair,       // x_t <= (C̄-V̄) y_{t-1} + V̄ y_t   and its mirror
    RampPair,           // x_t - x_{t-1} <= (C̲+V) y_t - C̲ y_{t-1}
    RampVbarPair,       // x_t - x_{t-1} <= V̄ y_t - (V̄-V) y_{t-1}
    MultiRamp,          // x_t - x_{t-k} <= (C̲+kV) y_t - C̲ y_{t-k}
    UpperBound,         // x_t <= C̄ y_t - sum_S (C̄-V̄-sV)(y_{t-s}-y_{t-s-1})
    UpperBoundSplit,    //   same, S = [0,a] u [b,s_max]
    UpperBoundEta,      // x_t <= (C̄-eta V) y_t + eta V y_{t+1} - ...
    UpperBoundEtaSplit,
    UpperBoundShift,    // x_t <= (V̄+eta V) y_t + (C̄-V̄-eta V) y_{t-1} - ...
    UpperBoundShiftSplit,
    RampWindow,         // x_t - x_{t-k} with a V-window of m leads
    RampWindowVbar,     //   same with the V̄ pattern on y_{t+m+1}
};

inline constexpr Family kDynamicFamilies[] = {
    Family::UpperBound,      Family::UpperBoundSplit, Family::UpperBoundEta,        Family::UpperBoundEtaSplit,
    Family::UpperBoundShift, Family::UpperBoundShiftSplit, Family::RampWindow, Family::RampWindowVbar,
};

inline const char* to_string(Family f) {
    switch (f) {
        case Family::CapacityPair: return "capacity_pair";
        case Family::RampPair: return "ramp_pair";
        case Family::RampVbarPair: return "ramp_vbar_pair";
        case Family::MultiRamp: return "multi_ramp";
        case Family::UpperBound: return "upper_bound";
        case Family::UpperBoundSplit: return "upper_bound_split";
        case Family::UpperBoundEta: return "upper_bound_eta";
        case Family::UpperBoundEtaSplit: return "upper_bound_eta_split";
        case Family::UpperBoundShift: return "upper_bound_shift";
        case Family::UpperBoundShiftSplit: return "upper_bound_shift_split";
        case Family::RampWindow: return "ramp_window";
        case Family::RampWindowVbar: return "ramp_window_vbar";
    }
    return "?";
}

template <class Scalar>
struct CutParamsT {
    int t = 0;
    std::vector<int> lags;  // S
    Scalar eta{};
    int k = 0;
    int m = 0;
    int alpha = -1;
    int beta = -1;
    int s_max = -1;
    Direction direction = Direction::Backward;

    bool operator==(const CutParamsT&) const = default;
};
using CutParams = CutParamsT<double>;

// sum x_coeffs[t] x_t + sum y_coeffs[t] y_t <= rhs
template <class Scalar>
struct LinearInequalityT {
    std::map<int, Scalar> x_coeffs;
    std::map<int, Scalar> y_coeffs;
    Scalar rhs{};
    Family family = Family::UpperBound;
    CutParamsT<Scalar> params;
    int horizon = 0;
    bool facet = false;

    void add_x(int t, const Scalar& c) { accumulate(x_coeffs, t, c); }
    void add_y(int t, const Scalar& c) { accumulate(y_coeffs, t, c); }

    int max_period() const {
        int m = 0;
        if (!x_coeffs.empty()) m = std::max(m, x_coeffs.rbegin()->first);
        if (!y_coeffs.empty()) m = std::max(m, y_coeffs.rbegin()->first);
        return m;
    }
    int min_period() const {
        int m = horizon + 1;
        if (!x_coeffs.empty()) m = std::min(m, x_coeffs.begin()->first);
        if (!y_coeffs.empty()) m = std::min(m, y_coeffs.begin()->first);
        return m;
    }
    bool same_coefficients(const LinearInequalityT& o) const {
        return x_coeffs == o.x_coeffs && y_coeffs == o.y_coeffs && rhs == o.rhs;
    }

  private:
    static void accumulate(std::map<int, Scalar>& m, int t, const Scalar& c) {
        if (c == 0) return;
        auto it = m.find(t);
        if (it == m.end()) {
            m.emplace(t, c);
            return;
        }
        it->second += c;
        if (it->second == 0) m.erase(it);
    }
};
using LinearInequality = LinearInequalityT<double>;

struct FractionalPoint {
    std::vector<double> x;
    std::vector<double> y;

    int horizon() const { return static_cast<int>(y.size()); }
    double x_at(int t) const { return (t >= 1 && t <= horizon()) ? x[t - 1] : 0.0; }
    double y_at(int t) const { return (t >= 1 && t <= horizon()) ? y[t - 1] : 0.0; }
};

template <class Scalar, class Vec>
Scalar evaluate_inequality(const LinearInequalityT<Scalar>& q, const Vec& x, const Vec& y) {
    const int T = static_cast<int>(y.size());
    if (static_cast<int>(x.size()) != T) throw std::invalid_argument("evaluate_inequality: x and y lengths differ");
    if (q.max_period() > T || q.min_period() < 1)
        throw std::invalid_argument("evaluate_inequality: inequality references periods outside the point's horizon");
    Scalar lhs = 0;
    for (const auto& [t, c] : q.x_coeffs) lhs += c * x[t - 1];
    for (const auto& [t, c] : q.y_coeffs) lhs += c * y[t - 1];
    return Scalar(lhs - q.rhs);
}

inline double evaluate_inequality(const LinearInequality& q, const FractionalPoint& pt) {
    return evaluate_inequality<double>(q, pt.x, pt.y);
}

// Index reversal t -> T-t+1. P is invariant under it, so it maps valid cuts to valid cuts.
template <class Scalar>
LinearInequalityT<Scalar> mirror(const LinearInequalityT<Scalar>& q, int T) {
    LinearInequalityT<Scalar> r;
    for (const auto& [t, c] : q.x_coeffs) r.x_coeffs.emplace(T - t + 1, c);
    for (const auto& [t, c] : q.y_coeffs) r.y_coeffs.emplace(T - t + 1, c);
    r.rhs = q.rhs;
    r.family = q.family;
    r.params = q.params;
    r.params.t = T - q.params.t + 1;
    r.params.direction = flip(q.params.direction);
    r.horizon = T;
    r.facet = q.facet;
    return r;
}

inline FractionalPoint reverse_point(const FractionalPoint& pt) {
    FractionalPoint r{std::vector<double>(pt.x.rbegin(), pt.x.rend()), std::vector<double>(pt.y.rbegin(), pt.y.rend())};
    return r;
}

// Relative violation threshold shared by separators and the cut loop.
inline bool is_violated(double violation, double rhs, double tol) { return violation > tol * std::max(1.0, std::fabs(rhs)); }

}  // namespace sbuc

#endif

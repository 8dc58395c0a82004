#ifndef SBUC_SEPARATION_HPP
#define SBUC_SEPARATION_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "sbuc/core.hpp"
#include "sbuc/cuts.hpp"

namespace sbuc {

inline constexpr double kDefaultViolationTol = 1e-6;
// Passing this as tolerance makes a separator report its best value even when nothing is violated.
inline constexpr double kReportAll = -std::numeric_limits<double>::infinity();

// x_t <= (a1+a2 eta) y_{t-1} + (a3+a4 eta) y_t + (a5+a6 eta) y_{t+1} - sum_{s in S} (C̄-V̄-sV)(y_{t-s}-y_{t-s-1})
struct GenericSingleVarFamily {
    Family family = Family::UpperBound;
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0;
    double eta_max = 0;
    int s_lo = 0, s_hi = 0;
    int t_lo = 1, t_hi = 1;
    int horizon = 0;
};

struct SplitFamily {
    Family family = Family::UpperBoundSplit;
    double a1 = 0, a2 = 0, a3 = 0, a4 = 0, a5 = 0, a6 = 0;
    double eta_max = 0;
    int s_lo = 0;
    int s_max_lo = 0, s_max_hi = -1;
    int t_hi = 1;
    int horizon = 0;
    int min_up = 1;
};

struct CutCandidate {
    LinearInequality inequality;
    double violation = 0;
    CutParams params;
};

// theta[t] for t = 0..T (theta[0] = theta[1] = 0).
inline std::vector<double> theta_prefix(const std::vector<double>& y) {
    const int T = static_cast<int>(y.size());
    std::vector<double> th(T + 1, 0.0);
    for (int t = 2; t <= T; ++t) th[t] = th[t - 1] + std::max(y[t - 1] - y[t - 2], 0.0);
    return th;
}

namespace detail {

struct Theta {
    std::vector<double> v;
    double operator()(int t) const { return (t <= 1 || t >= static_cast<int>(v.size())) ? (t <= 1 ? 0.0 : v.back()) : v[t]; }
};

inline void set_t_range(GenericSingleVarFamily& g, int T) {
    g.t_lo = (g.a1 == 0 && g.a2 == 0) ? 1 : 2;
    g.t_hi = (g.a5 == 0 && g.a6 == 0) ? T : T - 1;
}

inline double clamp_min(double a, double b) { return a < b ? a : b; }

}  // namespace detail

inline GenericSingleVarFamily contiguous_spec(Family f, const GeneratorParams& p, int T) {
    GenericSingleVarFamily g;
    g.family = f;
    g.horizon = T;
    const long cap = p.lag_cap();
    const double ratio = p.eta_ratio();
    switch (f) {
        case Family::UpperBound:
            g.a3 = p.cap_max;
            g.s_lo = 0;
            g.s_hi = static_cast<int>(std::min<long>({p.min_up - 1L, T - 2L, cap}));
            break;
        case Family::UpperBoundEta:
            g.a3 = p.cap_max;
            g.a4 = -p.ramp;
            g.a6 = p.ramp;
            g.eta_max = detail::clamp_min(p.min_up - 1.0, ratio);
            g.s_lo = 0;
            g.s_hi = static_cast<int>(std::min<long>({p.min_up - 1L, T - 3L, cap}));
            break;
        case Family::UpperBoundShift:
            g.a1 = p.cap_max - p.start_ramp;
            g.a2 = -p.ramp;
            g.a3 = p.start_ramp;
            g.a4 = p.ramp;
            g.eta_max = detail::clamp_min(static_cast<double>(p.min_up), ratio);
            g.s_lo = 1;
            g.s_hi = static_cast<int>(std::min<long>({p.min_up + 0L, T - 2L, cap}));
            break;
        default: throw std::invalid_argument("contiguous_spec: family has no contiguous separator");
    }
    detail::set_t_range(g, T);
    return g;
}

inline SplitFamily split_spec(Family f, const GeneratorParams& p, int T) {
    SplitFamily s;
    s.family = f;
    s.horizon = T;
    s.min_up = p.min_up;
    const long cap = p.lag_cap();
    const double ratio = p.eta_ratio();
    switch (f) {
        case Family::UpperBoundSplit:
            s.a3 = p.cap_max;
            s.s_lo = 0;
            s.s_max_lo = p.min_up;
            s.s_max_hi = static_cast<int>(std::min<long>(T - 2L, cap));
            s.t_hi = T;
            break;
        case Family::UpperBoundEtaSplit:
            s.a3 = p.cap_max;
            s.a4 = -p.ramp;
            s.a6 = p.ramp;
            s.eta_max = detail::clamp_min(p.min_up - 1.0, ratio);
            s.s_lo = 0;
            s.s_max_lo = p.min_up;
            s.s_max_hi = static_cast<int>(std::min<long>(T - 3L, cap));
            s.t_hi = T - 1;
            break;
        case Family::UpperBoundShiftSplit:
            s.a1 = p.cap_max - p.start_ramp;
            s.a2 = -p.ramp;
            s.a3 = p.start_ramp;
            s.a4 = p.ramp;
            s.eta_max = detail::clamp_min(static_cast<double>(p.min_up), ratio);
            s.s_lo = 1;
            s.s_max_lo = p.min_up + 1;
            s.s_max_hi = static_cast<int>(std::min<long>(T - 2L, cap));
            s.t_hi = T;
            break;
        default: throw std::invalid_argument("split_spec: family has no split separator");
    }
    return s;
}

using FamilySpec = std::variant<GenericSingleVarFamily, SplitFamily>;

// Direction does not change the encoding; forward cuts come from separating the reversed point.
inline FamilySpec family_spec(Family f, const GeneratorParams& p, int T) {
    switch (f) {
        case Family::UpperBound:
        case Family::UpperBoundEta:
        case Family::UpperBoundShift: return contiguous_spec(f, p, T);
        case Family::UpperBoundSplit:
        case Family::UpperBoundEtaSplit:
        case Family::UpperBoundShiftSplit: return split_spec(f, p, T);
        default: throw std::invalid_argument(std::string("family_spec: no single-variable encoding for ") + to_string(f));
    }
}

// v(eta, t) for t in [t_lo, t_hi]: the best violation at t over S, by the O(T) recursion. Other entries are NaN.
inline std::vector<double> contiguous_values(const FractionalPoint& pt, const GenericSingleVarFamily& g, const GeneratorParams& p,
                                             double eta) {
    const int T = pt.horizon();
    std::vector<double> v(T + 2, std::numeric_limits<double>::quiet_NaN());
    if (g.t_hi < g.t_lo || T < 1) return v;
    detail::Theta th{theta_prefix(pt.y)};
    auto y = [&](int t) { return pt.y_at(t); };
    auto x = [&](int t) { return pt.x_at(t); };
    const double A1 = g.a1 + g.a2 * eta, A3 = g.a3 + g.a4 * eta, A5 = g.a5 + g.a6 * eta;
    const double D = p.cap_max - p.start_ramp, V = p.ramp;
    const int sl = g.s_lo, sh = g.s_hi;

    int t = g.t_lo;
    double cur;
    if (t == 1) {
        cur = x(1) - A3 * y(1) - A5 * y(2);
    } else {
        cur = x(2) - A1 * y(1) - A3 * y(2) - A5 * y(3);
        if (sl == 0 && sh >= 0) cur += D * std::max(y(2) - y(1), 0.0);
    }
    v[t] = cur;
    for (t = g.t_lo + 1; t <= g.t_hi; ++t) {
        cur += (x(t) - x(t - 1)) - A1 * (y(t - 1) - y(t - 2)) - A3 * (y(t) - y(t - 1)) - A5 * (y(t + 1) - y(t));
        cur += D * (th(t - sl) - th(t - sh - 1) - th(t - sl - 1) + th(t - sh - 2));
        cur -= V * (sl * th(t - sl) - (sl - 1) * th(t - sl - 1) - (sh + 1) * th(t - sh - 1) + sh * th(t - sh - 2));
        v[t] = cur;
    }
    return v;
}

namespace detail {

inline CutResult<double> build_single(Family f, const GeneratorParams& p, int T, const CutParams& cp) {
    switch (f) {
        case Family::UpperBound:
        case Family::UpperBoundSplit: return single_var_cut(p, T, cp);
        case Family::UpperBoundEta:
        case Family::UpperBoundEtaSplit: return single_var_eta_cut(p, T, cp);
        default: return single_var_eta_shift_cut(p, T, cp);
    }
}

// Wraps a winner found on the (possibly reversed) point into a candidate on the original point.
inline std::optional<CutCandidate> make_candidate(Family f, const GeneratorParams& p, const FractionalPoint& pt, int tb,
                                                  std::vector<int> lags, double eta, int k, int m, Direction dir, double tol) {
    const int T = pt.horizon();
    CutParams cp;
    cp.t = dir == Direction::Backward ? tb : T - tb + 1;
    cp.lags = std::move(lags);
    cp.eta = eta;
    cp.k = k;
    cp.m = m;
    cp.direction = dir;
    CutResult<double> r = (f == Family::RampWindow)       ? two_var_cut(p, T, cp)
                          : (f == Family::RampWindowVbar) ? two_var_vbar_cut(p, T, cp)
                                                          : build_single(f, p, T, cp);
    const LinearInequality& q = r.value();
    CutCandidate c{q, evaluate_inequality(q, pt), q.params};
    if (!is_violated(c.violation, q.rhs, tol)) return std::nullopt;
    return c;
}

}  // namespace detail

inline std::optional<CutCandidate> separate_contiguous(const FractionalPoint& pt, const GenericSingleVarFamily& g,
                                                       const GeneratorParams& p, Direction dir = Direction::Backward,
                                                       double tol = kDefaultViolationTol) {
    const FractionalPoint work = dir == Direction::Backward ? pt : reverse_point(pt);
    const int T = work.horizon();
    if (T < 1 || g.t_hi < g.t_lo) return std::nullopt;
    std::vector<double> etas{0.0};
    if (g.eta_max > 0) etas.push_back(g.eta_max);
    std::vector<std::vector<double>> vals;
    for (double e : etas) vals.push_back(contiguous_values(work, g, p, e));
    double best = -std::numeric_limits<double>::infinity();
    int bt = -1;
    double beta = 0;
    for (int t = g.t_lo; t <= g.t_hi; ++t)
        for (std::size_t i = 0; i < etas.size(); ++i)
            if (vals[i][t] > best) {
                best = vals[i][t];
                bt = t;
                beta = etas[i];
            }
    if (bt < 0) return std::nullopt;
    std::vector<int> S;
    for (int s = g.s_lo; s <= std::min(g.s_hi, bt - 2); ++s)
        if (work.y_at(bt - s) - work.y_at(bt - s - 1) > 0) S.push_back(s);
    return detail::make_candidate(g.family, p, pt, bt, std::move(S), beta, 0, 0, dir, tol);
}

inline std::optional<CutCandidate> separate_split(const FractionalPoint& pt, const SplitFamily& sf, const GeneratorParams& p,
                                                  Direction dir = Direction::Backward, double tol = kDefaultViolationTol) {
    const FractionalPoint work = dir == Direction::Backward ? pt : reverse_point(pt);
    const int T = work.horizon();
    if (sf.s_max_hi < sf.s_max_lo) return std::nullopt;
    auto y = [&](int t) { return work.y_at(t); };
    const double D = p.cap_max - p.start_ramp, V = p.ramp;
    const int sl = sf.s_lo, L = sf.min_up;

    double best = -std::numeric_limits<double>::infinity();
    int bt = -1, b_alpha = -1, b_beta = -1, b_smax = -1;
    double b_eta = 0;
    for (int smax = sf.s_max_lo; smax <= sf.s_max_hi; ++smax) {
        for (int t = smax + 2; t <= std::min(sf.t_hi, T); ++t) {
            const double g = sf.a2 * y(t - 1) + sf.a4 * y(t) + sf.a6 * y(t + 1);
            const double eta = g >= 0 ? 0.0 : sf.eta_max;
            const double base =
                work.x_at(t) - (sf.a1 + sf.a2 * eta) * y(t - 1) - (sf.a3 + sf.a4 * eta) * y(t) - (sf.a5 + sf.a6 * eta) * y(t + 1);
            auto term = [&](int s) { return (D - s * V) * (y(t - s) - y(t - s - 1)); };
            // v1[i]: base plus lags sl..i; v2[j]: lags j..smax; hat/arg: suffix max of v2, ties to the larger index
            std::vector<double> v1(smax + 2, 0.0), v2(smax + 2, 0.0), hat(smax + 2, 0.0);
            std::vector<int> arg(smax + 2, smax);
            double acc = base;
            for (int i = sl; i <= smax; ++i) {
                acc += term(i);
                v1[i] = acc;
            }
            double suf = 0;
            for (int j = smax; j >= sl + 1; --j) {
                suf += term(j);
                v2[j] = suf;
                if (j == smax || v2[j] > hat[j + 1]) {
                    hat[j] = v2[j];
                    arg[j] = j;
                } else {
                    hat[j] = hat[j + 1];
                    arg[j] = arg[j + 1];
                }
            }
            if (v1[smax] > best) {
                best = v1[smax];
                bt = t;
                b_alpha = smax - 1;
                b_beta = smax;
                b_smax = smax;
                b_eta = eta;
            }
            for (int a = std::max(sl, smax - L); a <= smax - 1; ++a) {
                double val = v1[a] + hat[a + 1];
                if (val > best) {
                    best = val;
                    bt = t;
                    b_alpha = a;
                    b_beta = arg[a + 1];
                    b_smax = smax;
                    b_eta = eta;
                }
            }
        }
    }
    if (bt < 0) return std::nullopt;
    std::vector<int> S = detail::interval(sl, b_alpha);
    for (int s = b_beta; s <= b_smax; ++s) S.push_back(s);
    return detail::make_candidate(sf.family, p, pt, bt, std::move(S), b_eta, 0, 0, dir, tol);
}

namespace detail {

struct TwoVarBest {
    double value = -std::numeric_limits<double>::infinity();
    int t = -1, k = 0, m = 0;
};

// Backward scan of the two-variable families on one point; vbar selects the V̄-pattern family.
inline TwoVarBest scan_two_var(const FractionalPoint& pt, const GeneratorParams& p, bool vbar) {
    const int T = pt.horizon();
    TwoVarBest best;
    Theta th{theta_prefix(pt.y)};
    std::vector<double> ysum(T + 2, 0.0);  // ysum[i] = y_1 + ... + y_i
    for (int i = 1; i <= T + 1; ++i) ysum[i] = ysum[i - 1] + pt.y_at(i);
    auto window = [&](int from, int to) {  // y_from + ... + y_to within [1, T]
        from = std::max(from, 1);
        to = std::min(to, T);
        return to < from ? 0.0 : ysum[to] - ysum[from - 1];
    };
    auto y = [&](int t) { return pt.y_at(t); };
    const double Cmin = p.cap_min, V = p.ramp, Vb = p.start_ramp;
    for (int k = 1; k <= T - 1; ++k) {
        if (!(p.cap_max - p.cap_min - k * V > 0)) break;
        for (int m = 0; m <= k - 1; ++m) {
            const int sh = std::min(k - 1, p.min_up - m - (vbar ? 2 : 1));
            const int t_hi = T - m - (vbar ? 1 : 0);
            auto fixed = [&](int t) {
                double v = pt.x_at(t) - pt.x_at(t - k) - V * window(t + 1, t + m) + Cmin * y(t - k);
                if (vbar) v -= (Cmin + (k - m) * V - Vb) * y(t + m + 1) + Vb * y(t);
                else v -= (Cmin + (k - m) * V) * y(t);
                return v;
            };
            double gamma = 0;
            for (int t = k + 1; t <= t_hi; ++t) {
                if (t == k + 1) {
                    gamma = 0;
                    for (int s = 0; s <= sh; ++s) gamma += (Cmin + (k - s) * V - Vb) * std::max(y(t - s) - y(t - s - 1), 0.0);
                } else if (sh >= 0) {
                    gamma += (Cmin + k * V - Vb) * (th(t) - th(t - sh - 1) - th(t - 1) + th(t - sh - 2));
                    gamma -= V * (th(t - 1) - (sh + 1) * th(t - sh - 1) + sh * th(t - sh - 2));
                }
                double val = fixed(t) + gamma;
                if (val > best.value) best = {val, t, k, m};
            }
        }
    }
    return best;
}

inline std::optional<CutCandidate> separate_two_var_impl(const FractionalPoint& pt, const GeneratorParams& p, bool vbar,
                                                         double tol) {
    const FractionalPoint rev = reverse_point(pt);
    TwoVarBest b = scan_two_var(pt, p, vbar);
    TwoVarBest f = scan_two_var(rev, p, vbar);
    Direction dir = Direction::Backward;
    const FractionalPoint* work = &pt;
    if (f.value > b.value) {
        b = f;
        dir = Direction::Forward;
        work = &rev;
    }
    if (b.t < 0) return std::nullopt;
    const int sh = std::min(b.k - 1, p.min_up - b.m - (vbar ? 2 : 1));
    std::vector<int> S;
    for (int s = 0; s <= sh; ++s)
        if (work->y_at(b.t - s) - work->y_at(b.t - s - 1) > 0) S.push_back(s);
    return make_candidate(vbar ? Family::RampWindowVbar : Family::RampWindow, p, pt, b.t, std::move(S), 0.0, b.k, b.m, dir, tol);
}

}  // namespace detail

inline std::optional<CutCandidate> separate_two_var(const FractionalPoint& pt, const GeneratorParams& p,
                                                    double tol = kDefaultViolationTol) {
    return detail::separate_two_var_impl(pt, p, false, tol);
}

inline std::optional<CutCandidate> separate_two_var_vbar(const FractionalPoint& pt, const GeneratorParams& p,
                                                         double tol = kDefaultViolationTol) {
    return detail::separate_two_var_impl(pt, p, true, tol);
}

// Most violated member of a dynamic family over both directions.
inline std::optional<CutCandidate> separate_family(const FractionalPoint& pt, Family f, const GeneratorParams& p,
                                                   double tol = kDefaultViolationTol) {
    const int T = pt.horizon();
    switch (f) {
        case Family::RampWindow: return separate_two_var(pt, p, tol);
        case Family::RampWindowVbar: return separate_two_var_vbar(pt, p, tol);
        default: break;
    }
    FamilySpec spec = family_spec(f, p, T);
    std::optional<CutCandidate> best;
    for (Direction d : {Direction::Backward, Direction::Forward}) {
        std::optional<CutCandidate> c = std::holds_alternative<GenericSingleVarFamily>(spec)
                                            ? separate_contiguous(pt, std::get<GenericSingleVarFamily>(spec), p, d, tol)
                                            : separate_split(pt, std::get<SplitFamily>(spec), p, d, tol);
        if (c && (!best || c->violation > best->violation)) best = std::move(c);
    }
    return best;
}

}  // namespace sbuc

#endif

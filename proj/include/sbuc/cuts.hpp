#ifndef SBUC_CUTS_HPP
#define SBUC_CUTS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sbuc/core.hpp"

namespace sbuc {

// Either a cut or the name of the first hypothesis the parameters failed.
template <class Scalar>
class CutResult {
  public:
    CutResult(LinearInequalityT<Scalar> q) : cut_(std::move(q)) {}
    static CutResult reject(std::string why) {
        CutResult r;
        r.failed_ = std::move(why);
        return r;
    }
    bool ok() const { return cut_.has_value(); }
    explicit operator bool() const { return ok(); }
    const LinearInequalityT<Scalar>& value() const {
        if (!cut_) throw std::invalid_argument("rejected cut parameters: " + failed_);
        return *cut_;
    }
    const std::string& failed_hypothesis() const { return failed_; }

  private:
    CutResult() = default;
    std::optional<LinearInequalityT<Scalar>> cut_;
    std::string failed_;
};

namespace detail {

inline bool sorted_unique(const std::vector<int>& s) {
    for (std::size_t i = 1; i < s.size(); ++i)
        if (s[i] <= s[i - 1]) return false;
    return true;
}

struct SplitShape {
    int alpha, beta, s_max;
};

// S = [lo, alpha] u [beta, s_max]; a gapless S is reported with beta = alpha + 1.
inline std::optional<SplitShape> split_shape(const std::vector<int>& s, int lo) {
    if (s.empty() || s.front() != lo) return std::nullopt;
    int gaps = 0;
    SplitShape sh{s.back() - 1, s.back(), s.back()};
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s[i] != s[i - 1] + 1) {
            ++gaps;
            sh.alpha = s[i - 1];
            sh.beta = s[i];
        }
    }
    if (gaps > 1) return std::nullopt;
    return sh;
}

inline std::vector<int> interval(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i <= hi; ++i) v.push_back(i);
    return v;
}

// Adds coef_s * (y_{t-s} - y_{t-s-1}) for each lag on the left-hand side.
template <class Scalar, class CoefFn>
void add_lag_terms(LinearInequalityT<Scalar>& q, int t, const std::vector<int>& lags, CoefFn coef) {
    for (int s : lags) {
        Scalar c = coef(s);
        q.add_y(t - s, c);
        q.add_y(t - s - 1, Scalar(-c));
    }
}

template <class Scalar>
LinearInequalityT<Scalar> finish(LinearInequalityT<Scalar> q, Family f, CutParamsT<Scalar> cp, int T, bool facet,
                                 Direction dir) {
    q.family = f;
    cp.direction = Direction::Backward;
    q.params = std::move(cp);
    q.horizon = T;
    q.facet = facet;
    q.rhs = 0;
    if (dir == Direction::Forward) return mirror(q, T);
    return q;
}

// Backward-equivalent period for a cut requested in the given direction.
inline int backward_t(int t, int T, Direction d) { return d == Direction::Backward ? t : T - t + 1; }

}  // namespace detail

// Two-period rows for one family pair at period t. Backward forms:
//   CapacityPair: x_t <= (C̄-V̄) y_{t-1} + V̄ y_t,  t in [2,T]
//   RampPair:     x_t - x_{t-1} <= (C̲+V) y_t - C̲ y_{t-1}
//   RampVbarPair: x_t - x_{t-1} <= V̄ y_t - (V̄-V) y_{t-1}
template <class Scalar>
LinearInequalityT<Scalar> two_period_cut(Family f, const GeneratorParamsT<Scalar>& p, int T, int t, Direction dir) {
    if (T < 2) throw std::invalid_argument("two_period_cut: T must be >= 2");
    const int tb = detail::backward_t(t, T, dir);
    if (tb < 2 || tb > T) throw std::invalid_argument("two_period_cut: period out of range");
    LinearInequalityT<Scalar> q;
    switch (f) {
        case Family::CapacityPair:
            q.add_x(tb, Scalar(1));
            q.add_y(tb - 1, Scalar(-(p.cap_max - p.start_ramp)));
            q.add_y(tb, Scalar(-p.start_ramp));
            break;
        case Family::RampPair:
            q.add_x(tb, Scalar(1));
            q.add_x(tb - 1, Scalar(-1));
            q.add_y(tb, Scalar(-(p.cap_min + p.ramp)));
            q.add_y(tb - 1, p.cap_min);
            break;
        case Family::RampVbarPair:
            q.add_x(tb, Scalar(1));
            q.add_x(tb - 1, Scalar(-1));
            q.add_y(tb, Scalar(-p.start_ramp));
            q.add_y(tb - 1, Scalar(p.start_ramp - p.ramp));
            break;
        default: throw std::invalid_argument("two_period_cut: not a two-period family");
    }
    CutParamsT<Scalar> cp;
    cp.t = tb;
    cp.k = 1;
    return detail::finish(std::move(q), f, std::move(cp), T, false, dir);
}

// All 6(T-1) two-period rows: upper-bound pair, ramp pair, V̄-ramp pair, each in both directions.
template <class Scalar>
std::vector<LinearInequalityT<Scalar>> two_period_cuts(const GeneratorParamsT<Scalar>& p, int T) {
    if (T < 2) throw std::invalid_argument("two_period_cuts: T must be >= 2");
    std::vector<LinearInequalityT<Scalar>> out;
    out.reserve(6 * (T - 1));
    for (int t = 1; t <= T - 1; ++t) out.push_back(two_period_cut(Family::CapacityPair, p, T, t, Direction::Forward));
    for (Family f : {Family::CapacityPair, Family::RampPair, Family::RampVbarPair})
        for (int t = 2; t <= T; ++t) out.push_back(two_period_cut(f, p, T, t, Direction::Backward));
    for (Family f : {Family::RampPair, Family::RampVbarPair})
        for (int t = 1; t <= T - 1; ++t) out.push_back(two_period_cut(f, p, T, t, Direction::Forward));
    return out;
}

// x_t - x_{t-k} <= (C̲+kV) y_t - C̲ y_{t-k}
template <class Scalar>
LinearInequalityT<Scalar> ramp_k_cut(const GeneratorParamsT<Scalar>& p, int T, int t, int k, Direction dir) {
    if (k < 1 || k > T - 1) throw std::invalid_argument("ramp_k_cut: k outside [1, T-1]");
    const int tb = detail::backward_t(t, T, dir);
    if (tb < k + 1 || tb > T) throw std::invalid_argument("ramp_k_cut: t outside its range");
    LinearInequalityT<Scalar> q;
    q.add_x(tb, Scalar(1));
    q.add_x(tb - k, Scalar(-1));
    q.add_y(tb, Scalar(-(p.cap_min + p.ramp * k)));
    q.add_y(tb - k, p.cap_min);
    CutParamsT<Scalar> cp;
    cp.t = tb;
    cp.k = k;
    bool facet = p.cap_max - p.cap_min - p.ramp * k > 0;
    return detail::finish(std::move(q), Family::MultiRamp, std::move(cp), T, facet, dir);
}

namespace detail {

// Shared shape checks for the three single-variable builders.
struct SingleVarRule {
    int s_lo;        // smallest admissible lag (0 or 1)
    int plain_hi;    // upper end of the plain lag domain
    int split_lo;    // smallest s_max for the split shape
    int split_hi;    // largest s_max for the split shape
    int t_lo, t_hi;  // backward period window before the lag condition
    int L;
};

struct ShapeVerdict {
    bool split = false;
    SplitShape shape{-1, -1, -1};
    std::string failed;
};

inline ShapeVerdict classify_lags(const std::vector<int>& S, int tb, const SingleVarRule& r) {
    ShapeVerdict v;
    if (!sorted_unique(S)) {
        v.failed = "S sorted ascending without duplicates";
        return v;
    }
    const bool plain = S.empty() || (S.front() >= r.s_lo && S.back() <= r.plain_hi);
    if (plain) {
        int smax = S.empty() ? -1 : S.back();
        if (tb < r.t_lo || tb > r.t_hi) v.failed = "t within its period range";
        else if (!S.empty() && tb < smax + 2) v.failed = "t >= s + 2 for every s in S";
        return v;
    }
    if (!S.empty() && S.front() < r.s_lo) {
        v.failed = r.s_lo == 0 ? "S within [0, ...]" : "S within [1, ...] (0 not admissible)";
        return v;
    }
    auto sh = split_shape(S, r.s_lo);
    if (!sh) {
        v.failed = "S within the plain lag domain or of the form [lo, alpha] u [beta, s_max]";
        return v;
    }
    v.split = true;
    v.shape = *sh;
    if (sh->s_max < r.split_lo) v.failed = "s_max >= lower split bound";
    else if (sh->s_max > r.split_hi) v.failed = "s_max <= min{horizon bound, floor((cap_max - start_ramp)/ramp)}";
    else if (!(sh->alpha >= r.s_lo && sh->alpha < sh->beta && sh->beta <= sh->s_max)) v.failed = "lo <= alpha < beta <= s_max";
    else if (!(sh->beta == sh->alpha + 1 || sh->s_max <= r.L + sh->alpha)) v.failed = "beta = alpha + 1 or s_max <= L + alpha";
    else if (tb < std::max(r.t_lo, sh->s_max + 2) || tb > r.t_hi) v.failed = "t within [s_max + 2, upper period bound]";
    return v;
}

template <class Scalar>
CutParamsT<Scalar> with_shape(CutParamsT<Scalar> cp, int tb, const ShapeVerdict& v) {
    cp.t = tb;
    if (v.split) {
        cp.alpha = v.shape.alpha;
        cp.beta = v.shape.beta;
        cp.s_max = v.shape.s_max;
    } else {
        cp.alpha = cp.beta = -1;
        cp.s_max = cp.lags.empty() ? -1 : cp.lags.back();
    }
    return cp;
}

template <class Scalar>
bool eta_facet(const Scalar& eta, const GeneratorParamsT<Scalar>& p, int special, const std::vector<int>& S) {
    if (eta == 0 || eta == p.eta_ratio()) return true;
    return eta == Scalar(special) && std::binary_search(S.begin(), S.end(), special);
}

}  // namespace detail

// x_t <= C̄ y_t - sum_{s in S} (C̄ - V̄ - sV)(y_{t-s} - y_{t-s-1})
template <class Scalar>
CutResult<Scalar> single_var_cut(const GeneratorParamsT<Scalar>& p, int T, const CutParamsT<Scalar>& cp) {
    if (T < 1) return CutResult<Scalar>::reject("T >= 1");
    const long cap = p.lag_cap();
    const int tb = detail::backward_t(cp.t, T, cp.direction);
    detail::SingleVarRule rule{0, static_cast<int>(std::min<long>({p.min_up - 1L, T - 2L, cap})), p.min_up,
                               static_cast<int>(std::min<long>(T - 2L, cap)), 1, T, p.min_up};
    auto v = detail::classify_lags(cp.lags, tb, rule);
    if (!v.failed.empty()) return CutResult<Scalar>::reject(v.failed);
    LinearInequalityT<Scalar> q;
    q.add_x(tb, Scalar(1));
    q.add_y(tb, Scalar(-p.cap_max));
    detail::add_lag_terms(q, tb, cp.lags, [&](int s) { return Scalar(p.cap_max - p.start_ramp - p.ramp * s); });
    return detail::finish(std::move(q), v.split ? Family::UpperBoundSplit : Family::UpperBound,
                          detail::with_shape(cp, tb, v), T, true, cp.direction);
}

// x_t <= (C̄ - eta V) y_t + eta V y_{t+1} - sum_S (C̄ - V̄ - sV)(y_{t-s} - y_{t-s-1})
template <class Scalar>
CutResult<Scalar> single_var_eta_cut(const GeneratorParamsT<Scalar>& p, int T, const CutParamsT<Scalar>& cp) {
    if (T < 2) return CutResult<Scalar>::reject("T >= 2");
    const long cap = p.lag_cap();
    Scalar eta_hi = p.eta_ratio();
    if (Scalar(p.min_up - 1) < eta_hi) eta_hi = Scalar(p.min_up - 1);
    if (cp.eta < 0 || cp.eta > eta_hi) return CutResult<Scalar>::reject("0 <= eta <= min{L-1, (cap_max-start_ramp)/ramp}");
    const int tb = detail::backward_t(cp.t, T, cp.direction);
    detail::SingleVarRule rule{0, static_cast<int>(std::min<long>({p.min_up - 1L, T - 3L, cap})), p.min_up,
                               static_cast<int>(std::min<long>(T - 3L, cap)), 1, T - 1, p.min_up};
    auto v = detail::classify_lags(cp.lags, tb, rule);
    if (!v.failed.empty()) return CutResult<Scalar>::reject(v.failed);
    LinearInequalityT<Scalar> q;
    q.add_x(tb, Scalar(1));
    q.add_y(tb, Scalar(-(p.cap_max - cp.eta * p.ramp)));
    q.add_y(tb + 1, Scalar(-(cp.eta * p.ramp)));
    detail::add_lag_terms(q, tb, cp.lags, [&](int s) { return Scalar(p.cap_max - p.start_ramp - p.ramp * s); });
    bool facet = detail::eta_facet(cp.eta, p, p.min_up - 1, cp.lags);
    return detail::finish(std::move(q), v.split ? Family::UpperBoundEtaSplit : Family::UpperBoundEta,
                          detail::with_shape(cp, tb, v), T, facet, cp.direction);
}

// x_t <= (V̄ + eta V) y_t + (C̄ - V̄ - eta V) y_{t-1} - sum_S (C̄ - V̄ - sV)(y_{t-s} - y_{t-s-1})
template <class Scalar>
CutResult<Scalar> single_var_eta_shift_cut(const GeneratorParamsT<Scalar>& p, int T, const CutParamsT<Scalar>& cp) {
    if (T < 2) return CutResult<Scalar>::reject("T >= 2");
    const long cap = p.lag_cap();
    Scalar eta_hi = p.eta_ratio();
    if (Scalar(p.min_up) < eta_hi) eta_hi = Scalar(p.min_up);
    if (cp.eta < 0 || cp.eta > eta_hi) return CutResult<Scalar>::reject("0 <= eta <= min{L, (cap_max-start_ramp)/ramp}");
    const int tb = detail::backward_t(cp.t, T, cp.direction);
    detail::SingleVarRule rule{1, static_cast<int>(std::min<long>({p.min_up + 0L, T - 2L, cap})), p.min_up + 1,
                               static_cast<int>(std::min<long>(T - 2L, cap)), 2, T, p.min_up};
    auto v = detail::classify_lags(cp.lags, tb, rule);
    if (!v.failed.empty()) return CutResult<Scalar>::reject(v.failed);
    LinearInequalityT<Scalar> q;
    q.add_x(tb, Scalar(1));
    q.add_y(tb, Scalar(-(p.start_ramp + cp.eta * p.ramp)));
    q.add_y(tb - 1, Scalar(-(p.cap_max - p.start_ramp - cp.eta * p.ramp)));
    detail::add_lag_terms(q, tb, cp.lags, [&](int s) { return Scalar(p.cap_max - p.start_ramp - p.ramp * s); });
    bool facet = detail::eta_facet(cp.eta, p, p.min_up, cp.lags);
    return detail::finish(std::move(q), v.split ? Family::UpperBoundShiftSplit : Family::UpperBoundShift,
                          detail::with_shape(cp, tb, v), T, facet, cp.direction);
}

namespace detail {

template <class Scalar>
std::string two_var_precheck(const GeneratorParamsT<Scalar>& p, int T, const CutParamsT<Scalar>& cp, int lag_hi, int t_hi,
                             int tb) {
    if (cp.k < 1 || cp.k > T - 1) return "k within [1, T-1]";
    if (!(p.cap_max - p.cap_min - p.ramp * cp.k > 0)) return "cap_max - cap_min - k*ramp > 0";
    if (cp.m < 0 || cp.m > cp.k - 1) return "m within [0, k-1]";
    if (!sorted_unique(cp.lags)) return "S sorted ascending without duplicates";
    if (!cp.lags.empty() && (cp.lags.front() < 0 || cp.lags.back() > lag_hi)) return "S within [0, lag bound]";
    if (tb < cp.k + 1 || tb > t_hi) return "t within its period range";
    return {};
}

}  // namespace detail

// x_t - x_{t-k} <= (C̲+(k-m)V) y_t + V sum_{i=1..m} y_{t+i} - C̲ y_{t-k} - sum_S (C̲+(k-s)V-V̄)(y_{t-s}-y_{t-s-1})
template <class Scalar>
CutResult<Scalar> two_var_cut(const GeneratorParamsT<Scalar>& p, int T, const CutParamsT<Scalar>& cp) {
    const int tb = detail::backward_t(cp.t, T, cp.direction);
    auto why = detail::two_var_precheck(p, T, cp, std::min(cp.k - 1, p.min_up - cp.m - 1), T - cp.m, tb);
    if (!why.empty()) return CutResult<Scalar>::reject(why);
    LinearInequalityT<Scalar> q;
    q.add_x(tb, Scalar(1));
    q.add_x(tb - cp.k, Scalar(-1));
    q.add_y(tb, Scalar(-(p.cap_min + p.ramp * (cp.k - cp.m))));
    for (int i = 1; i <= cp.m; ++i) q.add_y(tb + i, Scalar(-p.ramp));
    q.add_y(tb - cp.k, p.cap_min);
    detail::add_lag_terms(q, tb, cp.lags, [&](int s) { return Scalar(p.cap_min + p.ramp * (cp.k - s) - p.start_ramp); });
    bool facet = cp.m == 0;
    for (int s : cp.lags) facet = facet && s >= std::min(cp.k - 1, 1);
    CutParamsT<Scalar> out = cp;
    out.t = tb;
    return detail::finish(std::move(q), Family::RampWindow, std::move(out), T, facet, cp.direction);
}

// x_t - x_{t-k} <= (C̲+(k-m)V-V̄) y_{t+m+1} + V sum_{i=1..m} y_{t+i} + V̄ y_t - C̲ y_{t-k} - sum_S (...)
template <class Scalar>
CutResult<Scalar> two_var_vbar_cut(const GeneratorParamsT<Scalar>& p, int T, const CutParamsT<Scalar>& cp) {
    const int tb = detail::backward_t(cp.t, T, cp.direction);
    auto why = detail::two_var_precheck(p, T, cp, std::min(cp.k - 1, p.min_up - cp.m - 2), T - cp.m - 1, tb);
    if (!why.empty()) return CutResult<Scalar>::reject(why);
    LinearInequalityT<Scalar> q;
    q.add_x(tb, Scalar(1));
    q.add_x(tb - cp.k, Scalar(-1));
    q.add_y(tb + cp.m + 1, Scalar(-(p.cap_min + p.ramp * (cp.k - cp.m) - p.start_ramp)));
    for (int i = 1; i <= cp.m; ++i) q.add_y(tb + i, Scalar(-p.ramp));
    q.add_y(tb, Scalar(-p.start_ramp));
    q.add_y(tb - cp.k, p.cap_min);
    detail::add_lag_terms(q, tb, cp.lags, [&](int s) { return Scalar(p.cap_min + p.ramp * (cp.k - s) - p.start_ramp); });
    CutParamsT<Scalar> out = cp;
    out.t = tb;
    return detail::finish(std::move(q), Family::RampWindowVbar, std::move(out), T, true, cp.direction);
}

// Routes a family tag to its builder. Split tags share the builder of their plain sibling.
template <class Scalar>
CutResult<Scalar> build_cut(Family f, const GeneratorParamsT<Scalar>& p, int T, const CutParamsT<Scalar>& cp) {
    switch (f) {
        case Family::CapacityPair:
        case Family::RampPair:
        case Family::RampVbarPair: {
            const int tb = detail::backward_t(cp.t, T, cp.direction);
            if (T < 2 || tb < 2 || tb > T) return CutResult<Scalar>::reject("t within its period range");
            return two_period_cut(f, p, T, cp.t, cp.direction);
        }
        case Family::MultiRamp: {
            const int tb = detail::backward_t(cp.t, T, cp.direction);
            if (cp.k < 1 || cp.k > T - 1) return CutResult<Scalar>::reject("k within [1, T-1]");
            if (tb < cp.k + 1 || tb > T) return CutResult<Scalar>::reject("t within its period range");
            return ramp_k_cut(p, T, cp.t, cp.k, cp.direction);
        }
        case Family::UpperBound:
        case Family::UpperBoundSplit: return single_var_cut(p, T, cp);
        case Family::UpperBoundEta:
        case Family::UpperBoundEtaSplit: return single_var_eta_cut(p, T, cp);
        case Family::UpperBoundShift:
        case Family::UpperBoundShiftSplit: return single_var_eta_shift_cut(p, T, cp);
        case Family::RampWindow: return two_var_cut(p, T, cp);
        case Family::RampWindowVbar: return two_var_vbar_cut(p, T, cp);
    }
    return CutResult<Scalar>::reject("unknown family");
}

struct EnumerationPolicy {
    enum class Kind { Seed, Exhaustive } kind = Kind::Exhaustive;
    std::size_t budget = 1'000'000;
    int eta_divisions = 1;  // exhaustive mode: eta also at j/eta_divisions of its interval, j = 1..eta_divisions-1

    static EnumerationPolicy seed() { return {Kind::Seed, 1'000'000, 1}; }
    static EnumerationPolicy exhaustive(std::size_t budget = 1'000'000, int eta_divisions = 1) {
        return {Kind::Exhaustive, budget, eta_divisions};
    }
};

template <class Scalar>
struct ParamEnumeration {
    std::vector<CutParamsT<Scalar>> params;
    bool truncated = false;
};

namespace detail {

inline void subsets_of(int lo, int hi, std::vector<std::vector<int>>& out) {
    out.clear();
    if (hi < lo) {
        out.push_back({});
        return;
    }
    const int n = hi - lo + 1;
    // lexicographic order over sorted vectors
    std::vector<std::vector<int>> all;
    for (long mask = 0; mask < (1L << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1L << i)) s.push_back(lo + i);
        all.push_back(std::move(s));
    }
    std::sort(all.begin(), all.end());
    out = std::move(all);
}

template <class Scalar>
struct Emitter {
    ParamEnumeration<Scalar>& out;
    std::size_t budget;
    bool push(CutParamsT<Scalar> cp) {
        if (out.params.size() >= budget) {
            out.truncated = true;
            return false;
        }
        out.params.push_back(std::move(cp));
        return true;
    }
};

template <class Scalar>
std::vector<Scalar> eta_grid(const Scalar& eta_hi, int divisions) {
    std::vector<Scalar> g{Scalar(0)};
    if (eta_hi > 0)
        for (int j = 1; j < divisions; ++j) g.push_back(Scalar(eta_hi * j / divisions));
    if (eta_hi > 0) g.push_back(eta_hi);
    return g;
}

template <class Scalar>
void push_unique(std::vector<Scalar>& v, const Scalar& x) {
    for (const auto& e : v)
        if (e == x) return;
    v.push_back(x);
}

}  // namespace detail

// Parameter tuples accepted by the family's builder. Exhaustive mode walks every tuple (eta restricted to
// its endpoints unless eta_divisions > 1); seed mode keeps S in {empty, full range} and enforces facet conditions.
template <class Scalar>
ParamEnumeration<Scalar> admissible_params(Family f, const GeneratorParamsT<Scalar>& p, int T, EnumerationPolicy policy) {
    ParamEnumeration<Scalar> result;
    detail::Emitter<Scalar> em{result, policy.budget};
    const bool seed = policy.kind == EnumerationPolicy::Kind::Seed;
    const long cap = p.lag_cap();
    const int L = p.min_up;
    std::vector<std::vector<int>> subsets;

    auto make = [](int t, Direction d) {
        CutParamsT<Scalar> cp;
        cp.t = t;
        cp.direction = d;
        return cp;
    };
    // t in the requested direction's own indexing, ascending
    auto own_t = [T](int tb, Direction d) { return d == Direction::Backward ? tb : T - tb + 1; };
    auto for_t = [&](int tb_lo, int tb_hi, Direction d, auto&& body) {
        std::vector<int> ts;
        for (int tb = tb_lo; tb <= tb_hi; ++tb) ts.push_back(own_t(tb, d));
        std::sort(ts.begin(), ts.end());
        for (int t : ts)
            if (!body(t, detail::backward_t(t, T, d))) return false;
        return true;
    };

    auto plain_family = [&](int s_lo, int s_hi, int tb_lo, int tb_hi, const std::vector<Scalar>& etas, int special) {
        for (Direction d : {Direction::Backward, Direction::Forward}) {
            bool go = for_t(tb_lo, tb_hi, d, [&](int t, int tb) {
                int hi = std::min(s_hi, tb - 2);
                std::vector<std::vector<int>> lagsets;
                if (seed) {
                    lagsets.push_back({});
                    if (hi >= s_lo && hi == s_hi) lagsets.push_back(detail::interval(s_lo, s_hi));
                } else {
                    detail::subsets_of(s_lo, hi, lagsets);
                }
                for (const Scalar& eta : etas) {
                    for (const auto& S : lagsets) {
                        if (seed && special >= 0) {
                            // eta at the special value only when that value sits in S
                            bool is_end = eta == 0 || eta == p.eta_ratio();
                            if (!is_end && !(eta == Scalar(special) && std::binary_search(S.begin(), S.end(), special)))
                                continue;
                        }
                        auto cp = make(t, d);
                        cp.lags = S;
                        cp.eta = eta;
                        if (!em.push(std::move(cp))) return false;
                    }
                }
                return true;
            });
            if (!go) return;
        }
    };

    auto split_family = [&](int s_lo, int smax_lo, int smax_hi, int t_hi, const std::vector<Scalar>& etas) {
        for (Direction d : {Direction::Backward, Direction::Forward}) {
            for (int smax = smax_lo; smax <= smax_hi; ++smax) {
                if (seed && smax != smax_hi) continue;
                std::vector<std::vector<int>> lagsets;
                for (int a = s_lo; a <= smax - 1; ++a)
                    for (int b = a + 1; b <= smax; ++b) {
                        if (b == a + 1 && a != smax - 1) continue;  // gapless S listed once
                        if (!(b == a + 1 || smax <= L + a)) continue;
                        if (seed && b != a + 1) continue;
                        std::vector<int> S = detail::interval(s_lo, a);
                        for (int s = b; s <= smax; ++s) S.push_back(s);
                        lagsets.push_back(std::move(S));
                    }
                std::sort(lagsets.begin(), lagsets.end());
                bool go = for_t(smax + 2, t_hi, d, [&](int t, int) {
                    for (const Scalar& eta : etas)
                        for (const auto& S : lagsets) {
                            auto cp = make(t, d);
                            cp.lags = S;
                            cp.eta = eta;
                            if (!em.push(std::move(cp))) return false;
                        }
                    return true;
                });
                if (!go) return;
            }
        }
    };

    auto etas_for = [&](Scalar eta_hi, int special) {
        if (!seed) return detail::eta_grid(eta_hi, policy.eta_divisions);
        std::vector<Scalar> g{Scalar(0)};
        if (p.eta_ratio() <= eta_hi) detail::push_unique(g, p.eta_ratio());
        if (Scalar(special) <= eta_hi) detail::push_unique(g, Scalar(special));
        return g;
    };

    switch (f) {
        case Family::CapacityPair:
        case Family::RampPair:
        case Family::RampVbarPair:
            if (T < 2) break;
            for (Direction d : {Direction::Backward, Direction::Forward})
                if (!for_t(2, T, d, [&](int t, int) { return em.push(make(t, d)); })) break;
            break;
        case Family::MultiRamp:
            for (Direction d : {Direction::Backward, Direction::Forward})
                for (int k = 1; k <= T - 1; ++k)
                    for_t(k + 1, T, d, [&](int t, int) {
                        auto cp = make(t, d);
                        cp.k = k;
                        return em.push(std::move(cp));
                    });
            break;
        case Family::UpperBound:
            if (T < 1) break;
            plain_family(0, static_cast<int>(std::min<long>({L - 1L, T - 2L, cap})), 1, T, {Scalar(0)}, -1);
            break;
        case Family::UpperBoundSplit:
            split_family(0, L, static_cast<int>(std::min<long>(T - 2L, cap)), T, {Scalar(0)});
            break;
        case Family::UpperBoundEta: {
            if (T < 2) break;
            Scalar hi = p.eta_ratio();
            if (Scalar(L - 1) < hi) hi = Scalar(L - 1);
            plain_family(0, static_cast<int>(std::min<long>({L - 1L, T - 3L, cap})), 1, T - 1, etas_for(hi, L - 1), L - 1);
            break;
        }
        case Family::UpperBoundEtaSplit: {
            if (T < 2) break;
            Scalar hi = p.eta_ratio();
            if (Scalar(L - 1) < hi) hi = Scalar(L - 1);
            split_family(0, L, static_cast<int>(std::min<long>(T - 3L, cap)), T - 1, etas_for(hi, L - 1));
            break;
        }
        case Family::UpperBoundShift: {
            if (T < 2) break;
            Scalar hi = p.eta_ratio();
            if (Scalar(L) < hi) hi = Scalar(L);
            plain_family(1, static_cast<int>(std::min<long>({L + 0L, T - 2L, cap})), 2, T, etas_for(hi, L), L);
            break;
        }
        case Family::UpperBoundShiftSplit: {
            if (T < 2) break;
            Scalar hi = p.eta_ratio();
            if (Scalar(L) < hi) hi = Scalar(L);
            split_family(1, L + 1, static_cast<int>(std::min<long>(T - 2L, cap)), T, etas_for(hi, L));
            break;
        }
        case Family::RampWindow:
        case Family::RampWindowVbar: {
            const bool vbar = f == Family::RampWindowVbar;
            for (Direction d : {Direction::Backward, Direction::Forward})
                for (int k = 1; k <= T - 1; ++k) {
                    if (!(p.cap_max - p.cap_min - p.ramp * k > 0)) break;
                    for (int m = 0; m <= k - 1; ++m) {
                        if (seed && !vbar && m != 0) continue;
                        int s_hi = std::min(k - 1, L - m - (vbar ? 2 : 1));
                        std::vector<std::vector<int>> lagsets;
                        if (seed) {
                            lagsets.push_back({});
                            if (s_hi >= 0) {
                                auto full = detail::interval(0, s_hi);
                                bool keep = vbar;
                                if (!vbar) {
                                    keep = true;
                                    for (int s : full) keep = keep && s >= std::min(k - 1, 1);
                                }
                                if (keep) lagsets.push_back(full);
                            }
                        } else {
                            detail::subsets_of(0, s_hi, lagsets);
                        }
                        for_t(k + 1, T - m - (vbar ? 1 : 0), d, [&](int t, int) {
                            for (const auto& S : lagsets) {
                                auto cp = make(t, d);
                                cp.k = k;
                                cp.m = m;
                                cp.lags = S;
                                if (!em.push(std::move(cp))) return false;
                            }
                            return true;
                        });
                    }
                }
            break;
        }
    }
    return result;
}

}  // namespace sbuc

#endif

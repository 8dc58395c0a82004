#ifndef SBUC_RATIONAL_HPP
#define SBUC_RATIONAL_HPP

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>
#include <system_error>

#include "sbuc/core.hpp"

namespace sbuc {

using Rational = mpq_class;

// The shortest decimal string that round-trips to v, read back as an exact fraction. Data such as 32.4 or
// 0.00048 thus become 162/5 and 3/6250 rather than the nearest binary fraction.
inline Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("rational_from_double: non-finite value");
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    if (res.ec != std::errc()) throw std::runtime_error("rational_from_double: formatting failed");
    std::string s(buf, res.ptr);
    bool neg = false;
    std::size_t i = 0;
    if (s[i] == '-') {
        neg = true;
        ++i;
    }
    std::string digits;
    long exp10 = 0;
    bool frac = false;
    for (; i < s.size(); ++i) {
        char c = s[i];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            if (frac) --exp10;
        } else if (c == '.') {
            frac = true;
        } else if (c == 'e' || c == 'E') {
            exp10 += std::stol(s.substr(i + 1));
            break;
        }
    }
    mpz_class num(digits.empty() ? std::string("0") : digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
    Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
    r.canonicalize();
    return neg ? Rational(-r) : r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

template <>
struct scalar_traits<Rational> {
    static long floor_int(const Rational& v) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
        return q.get_si();
    }
    static double to_double(const Rational& v) { return v.get_d(); }
    static Rational from_double(double v) { return rational_from_double(v); }
    static bool is_zero(const Rational& v) { return sgn(v) == 0; }
};

inline GeneratorParamsT<Rational> to_exact(const GeneratorParams& p) {
    return {rational_from_double(p.cap_max), rational_from_double(p.cap_min), p.min_up, p.min_down,
            rational_from_double(p.ramp),    rational_from_double(p.start_ramp)};
}

inline CostParamsT<Rational> to_exact(const CostParams& c) {
    return {rational_from_double(c.quad), rational_from_double(c.lin), rational_from_double(c.fixed_on),
            rational_from_double(c.startup), rational_from_double(c.shutdown)};
}

inline CutParamsT<Rational> to_exact(const CutParams& cp) {
    CutParamsT<Rational> r;
    r.t = cp.t;
    r.lags = cp.lags;
    r.eta = rational_from_double(cp.eta);
    r.k = cp.k;
    r.m = cp.m;
    r.alpha = cp.alpha;
    r.beta = cp.beta;
    r.s_max = cp.s_max;
    r.direction = cp.direction;
    return r;
}

// Coefficient-wise conversion; exact for cuts whose coefficients are short decimals.
inline LinearInequalityT<Rational> to_exact(const LinearInequality& q) {
    LinearInequalityT<Rational> r;
    for (const auto& [t, c] : q.x_coeffs) r.x_coeffs.emplace(t, rational_from_double(c));
    for (const auto& [t, c] : q.y_coeffs) r.y_coeffs.emplace(t, rational_from_double(c));
    r.rhs = rational_from_double(q.rhs);
    r.family = q.family;
    r.params = to_exact(q.params);
    r.horizon = q.horizon;
    r.facet = q.facet;
    return r;
}

}  // namespace sbuc

#endif

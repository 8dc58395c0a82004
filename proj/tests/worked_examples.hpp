// The six published inequalities on the C̄=80, C̲=8, V=10, V̄=15, L=ℓ=5, T=16 generator,
// written as x_8 <= sum c_t y_t. Shared by the unit tests and the acceptance binary.
#ifndef SBUC_TESTS_WORKED_EXAMPLES_HPP
#define SBUC_TESTS_WORKED_EXAMPLES_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sbuc.hpp"

namespace worked {

struct Case {
    std::string name;
    sbuc::Family builder;
    std::vector<int> lags;
    sbuc::Rational eta;
    sbuc::Direction direction;
    std::map<int, sbuc::Rational> rhs_y;  // x_8 <= sum rhs_y[t] y_t
};

inline sbuc::GeneratorParamsT<sbuc::Rational> generator() {
    sbuc::GeneratorParamsT<sbuc::Rational> p;
    p.cap_max = 80;
    p.cap_min = 8;
    p.ramp = 10;
    p.start_ramp = 15;
    p.min_up = 5;
    p.min_down = 5;
    return p;
}

inline constexpr int kHorizon = 16;
inline constexpr int kPeriod = 8;

inline std::vector<Case> cases() {
    using sbuc::Direction;
    using sbuc::Family;
    const sbuc::Rational half5(5, 2);
    return {
        {"upper_bound S={0,2,4} backward", Family::UpperBound, {0, 2, 4}, 0, Direction::Backward,
         {{3, 25}, {4, -25}, {5, 45}, {6, -45}, {7, 65}, {8, 15}}},
        {"upper_bound S={0,1,2,5,6} backward", Family::UpperBound, {0, 1, 2, 5, 6}, 0, Direction::Backward,
         {{1, 5}, {2, 10}, {3, -15}, {5, 45}, {6, 10}, {7, 10}, {8, 15}}},
        {"upper_bound_eta eta=2.5 S={0,2,4} backward", Family::UpperBoundEta, {0, 2, 4}, half5, Direction::Backward,
         {{3, 25}, {4, -25}, {5, 45}, {6, -45}, {7, 65}, {8, -10}, {9, 25}}},
        {"upper_bound_eta eta=2.5 S={0,1,2,5,6} forward", Family::UpperBoundEta, {0, 1, 2, 5, 6}, half5, Direction::Forward,
         {{7, 25}, {8, -10}, {9, 10}, {10, 10}, {11, 45}, {13, -15}, {14, 10}, {15, 5}}},
        {"upper_bound_shift eta=2.5 S={1,3,5} backward", Family::UpperBoundShift, {1, 3, 5}, half5, Direction::Backward,
         {{2, 15}, {3, -15}, {4, 35}, {5, -35}, {6, 55}, {7, -15}, {8, 40}}},
        {"upper_bound_shift eta=2.5 S={1,2,5,6} forward", Family::UpperBoundShift, {1, 2, 5, 6}, half5, Direction::Forward,
         {{8, 40}, {9, -15}, {10, 10}, {11, 45}, {13, -15}, {14, 10}, {15, 5}}},
    };
}

// Empty string when the builder reproduces the case exactly, else a description of the difference.
inline std::string check(const Case& c) {
    sbuc::CutParamsT<sbuc::Rational> cp;
    cp.t = kPeriod;
    cp.lags = c.lags;
    cp.eta = c.eta;
    cp.direction = c.direction;
    auto r = sbuc::build_cut(c.builder, generator(), kHorizon, cp);
    if (!r.ok()) return "rejected: " + r.failed_hypothesis();
    const auto& q = r.value();
    std::map<int, sbuc::Rational> want_x{{kPeriod, 1}};
    std::map<int, sbuc::Rational> want_y;
    for (const auto& [t, v] : c.rhs_y) want_y[t] = -v;
    std::ostringstream os;
    if (q.x_coeffs != want_x) os << "x coefficients differ; ";
    if (q.y_coeffs != want_y) {
        os << "y coefficients differ: got";
        for (const auto& [t, v] : q.y_coeffs) os << " y" << t << ":" << v.get_str();
        os << "; ";
    }
    if (q.rhs != 0) os << "rhs " << q.rhs.get_str() << " != 0";
    return os.str();
}

}  // namespace worked

#endif

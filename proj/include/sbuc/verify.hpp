#ifndef SBUC_VERIFY_HPP
#define SBUC_VERIFY_HPP

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sbuc/core.hpp"
#include "sbuc/cuts.hpp"
#include "sbuc/oracle.hpp"
#include "sbuc/rational.hpp"
#include "sbuc/separation.hpp"

namespace sbuc {

struct BatteryResult {
    std::string name;
    long checks = 0;
    long failures = 0;
    std::vector<std::string> messages;  // first few failures
    std::map<std::string, long> counts;
    double seconds = 0;

    explicit BatteryResult(std::string n = {}) : name(std::move(n)) {}
    bool ok() const { return failures == 0 && checks > 0; }
    void fail(std::string msg) {
        ++failures;
        if (messages.size() < 10) messages.push_back(std::move(msg));
    }
};

// Deliberate damage applied to objects under test, for negative controls.
struct Corruption {
    bool enabled = false;
};

// Integer-valued generator satisfying both ramp assumptions. Ramp rates are chosen so (C̄-V̄)/V is a
// terminating decimal, which keeps double-built cuts exactly representable for the oracle.
inline GeneratorParams random_generator(std::mt19937_64& rng, int max_min_updown = 4) {
    static const int ramps[] = {4, 5, 8, 10, 16, 20, 25};
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    GeneratorParams p;
    p.cap_min = uni(5, 40);
    p.ramp = ramps[uni(0, 6)];
    p.start_ramp = p.cap_min + uni(1, static_cast<int>(p.ramp) - 1);
    p.cap_max = p.start_ramp + p.ramp + uni(0, 3 * static_cast<int>(p.ramp));
    p.min_up = uni(1, max_min_updown);
    p.min_down = uni(1, max_min_updown);
    return p;
}

inline FractionalPoint random_point(std::mt19937_64& rng, const GeneratorParams& p, int T) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    FractionalPoint pt;
    for (int t = 0; t < T; ++t) {
        double r = u(rng);
        double y = r < 0.15 ? 0.0 : (r > 0.85 ? 1.0 : u(rng));
        pt.y.push_back(y);
        pt.x.push_back(y * (p.cap_min + u(rng) * (p.cap_max - p.cap_min)));
    }
    return pt;
}

inline std::string describe(const GeneratorParams& p) {
    std::ostringstream os;
    os << "{C=" << p.cap_max << ", c=" << p.cap_min << ", L=" << p.min_up << ", l=" << p.min_down << ", V=" << p.ramp
       << ", Vbar=" << p.start_ramp << "}";
    return os.str();
}

inline std::string describe(const CutParamsT<Rational>& cp) {
    std::ostringstream os;
    os << "t=" << cp.t << " S={";
    for (std::size_t i = 0; i < cp.lags.size(); ++i) os << (i ? "," : "") << cp.lags[i];
    os << "} eta=" << cp.eta.get_str() << " k=" << cp.k << " m=" << cp.m << " " << to_string(cp.direction);
    return os.str();
}

inline constexpr Family kAllFamilies[] = {
    Family::CapacityPair,       Family::RampPair,        Family::RampVbarPair,         Family::MultiRamp,
    Family::UpperBound,         Family::UpperBoundSplit, Family::UpperBoundEta,        Family::UpperBoundEtaSplit,
    Family::UpperBoundShift,    Family::UpperBoundShiftSplit, Family::RampWindow,      Family::RampWindowVbar,
};

namespace detail {
struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(); }
};
}  // namespace detail

// Both inclusions of the two-period hull description for each parameter set.
inline BatteryResult hull_battery(const std::vector<GeneratorParams>& gens, Corruption corrupt = {}) {
    detail::Stopwatch sw;
    BatteryResult r{"hull2"};
    for (const auto& p : gens) {
        auto ep = to_exact(p);
        auto sys = q2_system(ep);
        if (corrupt.enabled)
            for (auto& row : sys)
                if (row.a[3] == -(ep.cap_min + ep.ramp)) row.a[3] = -(ep.cap_min + ep.ramp + ep.cap_max);
        auto rep = check_hull_T2(ep, sys);
        ++r.checks;
        if (!rep.ok()) r.fail(describe(p) + ": " + (rep.failures.empty() ? std::string("hull check failed") : rep.failures.front()));
    }
    r.seconds = sw.seconds();
    return r;
}

// Exact validity of every enumerated member of every family, plus the mirror identity for backward members.
struct ValiditySettings {
    std::vector<int> horizons{3, 4, 5, 6};
    int gens_per_horizon = 5;
    std::uint64_t seed = 1;
    std::size_t budget_per_family = 20000;
    int max_min_updown = 6;
    int eta_divisions = 16;
    bool check_mirror = true;
};

inline BatteryResult validity_battery(const ValiditySettings& s, Corruption corrupt = {}, BatteryResult* mirror_out = nullptr) {
    detail::Stopwatch sw;
    BatteryResult r{"validity"};
    BatteryResult mr{"mirror"};
    std::mt19937_64 rng(s.seed);
    for (int T : s.horizons)
        for (int gi = 0; gi < s.gens_per_horizon; ++gi) {
            const GeneratorParams p = random_generator(rng, s.max_min_updown);
            const auto ep = to_exact(p);
            PolytopeOracle oracle(PolytopeSpec{ep, T});
            for (Family f : kAllFamilies) {
                auto en = admissible_params(f, ep, T, EnumerationPolicy::exhaustive(s.budget_per_family, s.eta_divisions));
                if (en.truncated) ++r.counts["truncated_enumerations"];
                for (const auto& cp : en.params) {
                    auto built = build_cut(f, ep, T, cp);
                    if (!built.ok()) {
                        r.fail(std::string(to_string(f)) + " rejected enumerated params " + describe(cp) + ": " + built.failed_hypothesis());
                        continue;
                    }
                    LinearInequalityT<Rational> q = built.value();
                    if (corrupt.enabled) q.rhs -= 1;
                    auto rep = oracle.check_valid(q);
                    ++r.checks;
                    ++r.counts[to_string(q.family)];
                    if (!rep.valid())
                        r.fail(std::string(to_string(q.family)) + " " + describe(cp) + " T=" + std::to_string(T) + " " + describe(p) +
                               ": max violation " + rep.max_violation.get_str());
                    if (s.check_mirror && cp.direction == Direction::Backward) {
                        auto m = mirror(built.value(), T);
                        auto fwd = build_cut(f, ep, T, m.params);
                        ++mr.checks;
                        if (!fwd.ok())
                            mr.fail(std::string(to_string(f)) + " forward builder rejects mirrored " + describe(m.params));
                        else if (!fwd.value().same_coefficients(m) || !(fwd.value().params == m.params) || fwd.value().family != m.family)
                            mr.fail(std::string(to_string(f)) + " mirror mismatch at " + describe(cp));
                    }
                }
            }
            if (s.check_mirror && T <= 6) {
                // reversal maps P onto itself
                const auto& ys = oracle.schedules();
                std::set<Schedule> all(ys.begin(), ys.end());
                for (const auto& y : ys) {
                    ++mr.checks;
                    Schedule rev(y.rbegin(), y.rend());
                    if (!all.count(rev)) mr.fail("reversed schedule infeasible T=" + std::to_string(T));
                }
                if (T <= 5)
                    for (const auto& v : oracle.vertices()) {
                        ++mr.checks;
                        FractionalPoint fp;
                        for (int t = 0; t < T; ++t) {
                            fp.x.push_back(v.x[t].get_d());
                            fp.y.push_back(v.y[t]);
                        }
                        const FractionalPoint rp = reverse_point(fp);
                        ExactPoint rv;
                        for (int t = 0; t < T; ++t) {
                            rv.x.push_back(rational_from_double(rp.x[t]));
                            rv.y.push_back(static_cast<int>(rp.y[t]));
                        }
                        if (!oracle.contains(rv)) mr.fail("reversed vertex outside P at T=" + std::to_string(T));
                    }
            }
        }
    r.seconds = sw.seconds();
    mr.seconds = r.seconds;
    if (mirror_out) *mirror_out = mr;
    return r;
}

// Face dimension 2T-1 for members flagged facet-defining in the listed families.
struct FacetSettings {
    std::vector<int> horizons{4, 5};
    int gens_per_horizon = 4;
    std::uint64_t seed = 7;
    std::vector<Family> families{Family::UpperBound, Family::UpperBoundEta, Family::UpperBoundShift, Family::RampWindow,
                                 Family::RampWindowVbar};
    std::size_t max_per_family = 200;
};

inline BatteryResult facet_battery(const FacetSettings& s, Corruption corrupt = {}) {
    detail::Stopwatch sw;
    BatteryResult r{"facets"};
    std::mt19937_64 rng(s.seed);
    for (int T : s.horizons)
        for (int gi = 0; gi < s.gens_per_horizon; ++gi) {
            const GeneratorParams p = random_generator(rng, 3);
            const auto ep = to_exact(p);
            PolytopeOracle oracle(PolytopeSpec{ep, T});
            for (Family f : s.families) {
                auto en = admissible_params(f, ep, T, EnumerationPolicy::exhaustive(100000));
                std::size_t used = 0;
                for (const auto& cp : en.params) {
                    if (used >= s.max_per_family) break;
                    auto built = build_cut(f, ep, T, cp);
                    if (!built.ok() || !built.value().facet || built.value().family != f) continue;
                    ++used;
                    auto q = built.value();
                    if (corrupt.enabled) q.rhs += 1;
                    ++r.checks;
                    ++r.counts[to_string(f)];
                    int dim;
                    try {
                        dim = oracle.face_dimension(q);
                    } catch (const std::exception& e) {
                        r.fail(std::string(to_string(f)) + " " + describe(cp) + ": " + e.what());
                        continue;
                    }
                    if (dim != 2 * T - 1)
                        r.fail(std::string(to_string(f)) + " " + describe(cp) + " T=" + std::to_string(T) + " " + describe(p) +
                               ": face dimension " + std::to_string(dim));
                }
            }
        }
    r.seconds = sw.seconds();
    return r;
}

// Fast separators against exhaustive enumeration on random fractional points.
struct SeparationSettings {
    std::vector<int> horizons{3, 4, 5, 6, 7};
    int points_per_family = 200;
    int gens_per_horizon = 5;
    std::uint64_t seed = 11;
    double tol = 1e-9;
};

inline BatteryResult separation_battery(const SeparationSettings& s, Corruption corrupt = {}) {
    detail::Stopwatch sw;
    BatteryResult r{"separation"};
    std::mt19937_64 rng(s.seed);
    for (int T : s.horizons) {
        std::vector<GeneratorParams> gens;
        for (int i = 0; i < s.gens_per_horizon; ++i) gens.push_back(random_generator(rng));
        for (Family f : kDynamicFamilies)
            for (int i = 0; i < s.points_per_family; ++i) {
                const auto& p = gens[i % gens.size()];
                FractionalPoint pt = random_point(rng, p, T);
                auto fast = separate_family(pt, f, p, kReportAll);
                auto slow = brute_separate(pt, f, p, 2'000'000, std::nullopt, kReportAll);
                ++r.checks;
                ++r.counts[to_string(f)];
                if (fast && corrupt.enabled) fast->violation += 1e-3;
                const std::string where = std::string(to_string(f)) + " T=" + std::to_string(T) + " " + describe(p);
                if (fast.has_value() != slow.has_value()) {
                    r.fail(where + ": one side found no admissible inequality");
                    continue;
                }
                if (!fast) {
                    ++r.counts["empty"];
                    continue;
                }
                if (std::fabs(fast->violation - slow->violation) > s.tol)
                    r.fail(where + ": fast " + std::to_string(fast->violation) + " vs exhaustive " + std::to_string(slow->violation));
                if (std::fabs(evaluate_inequality(fast->inequality, pt) - fast->violation) > s.tol)
                    r.fail(where + ": returned cut does not reproduce its violation");
            }
    }
    r.seconds = sw.seconds();
    return r;
}

// For the eta families, no eta on a fine grid beats the better endpoint at any t.
inline BatteryResult eta_endpoint_battery(int points, std::uint64_t seed, int grid = 101, double tol = 1e-9) {
    detail::Stopwatch sw;
    BatteryResult r{"eta-endpoints"};
    std::mt19937_64 rng(seed);
    for (int i = 0; i < points; ++i) {
        const GeneratorParams p = random_generator(rng);
        const int T = std::uniform_int_distribution<int>(3, 12)(rng);
        FractionalPoint pt = random_point(rng, p, T);
        for (Family f : {Family::UpperBoundEta, Family::UpperBoundShift}) {
            auto g = contiguous_spec(f, p, T);
            if (g.t_hi < g.t_lo) continue;
            auto v0 = contiguous_values(pt, g, p, 0.0);
            auto v1 = contiguous_values(pt, g, p, g.eta_max);
            for (int k = 0; k < grid; ++k) {
                const double eta = g.eta_max * k / (grid - 1);
                auto v = contiguous_values(pt, g, p, eta);
                for (int t = g.t_lo; t <= g.t_hi; ++t) {
                    ++r.checks;
                    if (v[t] > std::max(v0[t], v1[t]) + tol)
                        r.fail(std::string(to_string(f)) + " t=" + std::to_string(t) + " eta=" + std::to_string(eta) + " exceeds endpoints by " +
                               std::to_string(v[t] - std::max(v0[t], v1[t])));
                }
            }
        }
    }
    r.seconds = sw.seconds();
    return r;
}

}  // namespace sbuc

#endif

#ifndef SBUC_ORACLE_HPP
#define SBUC_ORACLE_HPP

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "sbuc/core.hpp"
#include "sbuc/cuts.hpp"
#include "sbuc/exact_lp.hpp"
#include "sbuc/instance.hpp"
#include "sbuc/rational.hpp"
#include "sbuc/separation.hpp"

namespace sbuc {

class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct PolytopeSpec {
    GeneratorParamsT<Rational> generator;
    int horizon = 0;

    static PolytopeSpec from(const GeneratorParams& p, int T) { return {to_exact(p), T}; }
};

using Schedule = std::vector<int>;

struct ExactPoint {
    std::vector<Rational> x;
    Schedule y;

    bool operator<(const ExactPoint& o) const { return std::tie(y, x) < std::tie(o.y, o.x); }
    bool operator==(const ExactPoint& o) const { return y == o.y && x == o.x; }
};

struct ValidityReport {
    Rational max_violation;
    ExactPoint witness;
    bool valid() const { return sgn(max_violation) <= 0; }
};

namespace detail {

inline bool min_up_down_ok(const Schedule& y, int L, int l) {
    const int T = static_cast<int>(y.size());
    for (int t = 2; t <= T; ++t) {
        const int a = y[t - 2], b = y[t - 1];
        for (int k = t; k <= std::min(T, t + L - 1); ++k)
            if (-a + b - y[k - 1] > 0) return false;
        for (int k = t; k <= std::min(T, t + l - 1); ++k)
            if (a - b + y[k - 1] > 1) return false;
    }
    return true;
}

}  // namespace detail

// All y in {0,1}^T meeting min-up and min-down, no initial conditions. Ordered by the binary value read y_1 first.
inline std::vector<Schedule> feasible_schedules(const PolytopeSpec& spec) {
    const int T = spec.horizon;
    if (T > 20) throw BudgetError("feasible_schedules: horizon " + std::to_string(T) + " exceeds 20");
    if (T < 1) return {};
    std::vector<Schedule> out;
    for (long mask = 0; mask < (1L << T); ++mask) {
        Schedule y(T);
        for (int t = 0; t < T; ++t) y[t] = (mask >> (T - 1 - t)) & 1;
        if (detail::min_up_down_ok(y, spec.generator.min_up, spec.generator.min_down)) out.push_back(std::move(y));
    }
    return out;
}

// Exact computations over P for one generator and horizon; results of the per-run LPs and vertex lists are cached.
class PolytopeOracle {
  public:
    explicit PolytopeOracle(PolytopeSpec spec) : spec_(std::move(spec)), schedules_(feasible_schedules(spec_)) {}

    const PolytopeSpec& spec() const { return spec_; }
    const std::vector<Schedule>& schedules() const { return schedules_; }

    // max over P of y_obj.y + x_obj.x, with a maximizer
    std::pair<Rational, ExactPoint> max_linear(const std::vector<Rational>& x_obj, const std::vector<Rational>& y_obj) {
        const int T = spec_.horizon;
        if (T > 12) throw BudgetError("max_linear: horizon " + std::to_string(T) + " exceeds 12");
        bool have = false;
        Rational best;
        ExactPoint arg;
        for (const auto& y : schedules_) {
            Rational val = 0;
            std::vector<Rational> x(T);
            for (int t = 0; t < T; ++t)
                if (y[t]) val += y_obj[t];
            for (auto [a, b] : runs(y)) {
                std::vector<Rational> c(x_obj.begin() + (a - 1), x_obj.begin() + b);
                bool any = false;
                for (const auto& v : c) any = any || sgn(v) != 0;
                const auto& r = any ? run_max(a, b, c) : run_feasible(a, b);
                val += r.first;
                for (int t = a; t <= b; ++t) x[t - 1] = r.second[t - a];
            }
            if (!have || val > best) {
                have = true;
                best = val;
                arg = {std::move(x), y};
            }
        }
        if (!have) throw std::logic_error("max_linear: P is empty");
        return {best, arg};
    }

    ValidityReport check_valid(const LinearInequalityT<Rational>& q) {
        const int T = spec_.horizon;
        if (T > 10) throw BudgetError("check_valid: horizon " + std::to_string(T) + " exceeds 10");
        std::vector<Rational> xo(T), yo(T);
        for (const auto& [t, c] : q.x_coeffs) at(xo, t) = c;
        for (const auto& [t, c] : q.y_coeffs) at(yo, t) = c;
        auto [v, w] = max_linear(xo, yo);
        return {Rational(v - q.rhs), std::move(w)};
    }

    // Vertices of Q(y) for every feasible y, assembled from per-run basis enumeration.
    const std::vector<ExactPoint>& vertices() {
        const int T = spec_.horizon;
        if (T > 5) throw BudgetError("vertices: horizon " + std::to_string(T) + " exceeds 5");
        if (vertices_) return *vertices_;
        std::set<ExactPoint> all;
        for (const auto& y : schedules_) {
            std::vector<std::vector<std::vector<Rational>>> parts;
            auto rs = runs(y);
            for (auto [a, b] : rs) parts.push_back(run_vertices(a, b));
            std::vector<std::size_t> idx(parts.size(), 0);
            for (;;) {
                ExactPoint pnt{std::vector<Rational>(T, Rational(0)), y};
                for (std::size_t r = 0; r < parts.size(); ++r)
                    for (int t = rs[r].first; t <= rs[r].second; ++t) pnt.x[t - 1] = parts[r][idx[r]][t - rs[r].first];
                all.insert(std::move(pnt));
                std::size_t r = 0;
                while (r < parts.size() && ++idx[r] == parts[r].size()) idx[r++] = 0;
                if (r == parts.size()) break;
            }
        }
        vertices_ = std::make_unique<std::vector<ExactPoint>>(all.begin(), all.end());
        return *vertices_;
    }

    // Affine dimension of the face {q tight} of conv(P); -1 when no point is tight.
    int face_dimension(const LinearInequalityT<Rational>& q) {
        auto rep = check_valid(q);
        if (!rep.valid()) throw std::invalid_argument("face_dimension: inequality is not valid for conv(P)");
        const int T = spec_.horizon;
        std::optional<std::vector<Rational>> base;
        ExactRank rank(2 * T);
        for (const auto& v : vertices()) {
            if (sgn(lhs(q, v) - q.rhs) != 0) continue;
            std::vector<Rational> p = flatten(v);
            if (!base) {
                base = p;
                continue;
            }
            for (int i = 0; i < 2 * T; ++i) p[i] -= (*base)[i];
            rank.add(std::move(p));
            if (rank.rank() == 2 * T) break;
        }
        return base ? rank.rank() : -1;
    }

    // Membership of an exact point in P.
    bool contains(const ExactPoint& pt) const {
        const int T = spec_.horizon;
        const auto& p = spec_.generator;
        if (static_cast<int>(pt.y.size()) != T || static_cast<int>(pt.x.size()) != T) return false;
        for (int v : pt.y)
            if (v != 0 && v != 1) return false;
        if (!detail::min_up_down_ok(pt.y, p.min_up, p.min_down)) return false;
        for (int t = 1; t <= T; ++t) {
            const Rational& x = pt.x[t - 1];
            if (x < p.cap_min * pt.y[t - 1] || x > p.cap_max * pt.y[t - 1]) return false;
            if (t >= 2) {
                const Rational& xp = pt.x[t - 2];
                const int yp = pt.y[t - 2], yc = pt.y[t - 1];
                if (x - xp > p.ramp * yp + p.start_ramp * (1 - yp)) return false;
                if (xp - x > p.ramp * yc + p.start_ramp * (1 - yc)) return false;
            }
        }
        return true;
    }

    static Rational lhs(const LinearInequalityT<Rational>& q, const ExactPoint& v) {
        Rational s = 0;
        for (const auto& [t, c] : q.x_coeffs) s += c * v.x.at(t - 1);
        for (const auto& [t, c] : q.y_coeffs) s += c * v.y.at(t - 1);
        return s;
    }

  private:
    using RunResult = std::pair<Rational, std::vector<Rational>>;

    static Rational& at(std::vector<Rational>& v, int t) {
        if (t < 1 || t > static_cast<int>(v.size())) throw std::invalid_argument("inequality references a period outside the horizon");
        return v[t - 1];
    }

    static std::vector<Rational> flatten(const ExactPoint& v) {
        std::vector<Rational> p(v.x);
        for (int b : v.y) p.emplace_back(b);
        return p;
    }

    static std::vector<std::pair<int, int>> runs(const Schedule& y) {
        std::vector<std::pair<int, int>> r;
        const int T = static_cast<int>(y.size());
        for (int t = 1; t <= T; ++t) {
            if (!y[t - 1]) continue;
            int s = t;
            while (t < T && y[t]) ++t;
            r.emplace_back(s, t);
        }
        return r;
    }

    // Rows of Q(y) on an on-run [a,b], written in z = x - C̲ >= 0:  sum coeffs z <= rhs.
    struct RunRow {
        std::vector<Rational> a;
        Rational b;
    };
    std::vector<RunRow> run_rows(int a, int b, bool with_nonneg) const {
        const auto& p = spec_.generator;
        const int n = b - a + 1;
        const Rational width = p.cap_max - p.cap_min;
        std::vector<RunRow> rows;
        auto unit = [n](int i, int s) {
            std::vector<Rational> v(n);
            v[i] = s;
            return v;
        };
        if (with_nonneg)
            for (int i = 0; i < n; ++i) rows.push_back({unit(i, -1), Rational(0)});
        for (int i = 0; i < n; ++i) rows.push_back({unit(i, 1), width});
        for (int i = 0; i + 1 < n; ++i) {
            auto up = unit(i + 1, 1);
            up[i] = -1;
            rows.push_back({up, p.ramp});
            auto dn = unit(i, 1);
            dn[i + 1] = -1;
            rows.push_back({dn, p.ramp});
        }
        // start-up period after an off period, and the period before a shutdown
        if (a > 1) rows.push_back({unit(0, 1), Rational(p.start_ramp - p.cap_min)});
        if (b < spec_.horizon) rows.push_back({unit(n - 1, 1), Rational(p.start_ramp - p.cap_min)});
        return rows;
    }

    const RunResult& run_max(int a, int b, const std::vector<Rational>& c) {
        auto key = std::make_tuple(a, b, c);
        auto it = lp_cache_.find(key);
        if (it != lp_cache_.end()) return it->second;
        const auto& p = spec_.generator;
        const int n = b - a + 1;
        ExactLp lp;
        lp.num_vars = n;
        lp.obj = c;
        for (auto& r : run_rows(a, b, false)) {
            std::vector<std::pair<int, Rational>> co;
            for (int i = 0; i < n; ++i)
                if (sgn(r.a[i]) != 0) co.emplace_back(i, r.a[i]);
            lp.add_row(std::move(co), ExactLp::Sense::Le, r.b);
        }
        auto res = solve_exact_lp(lp);
        if (res.status != ExactLpResult::Status::Optimal) throw std::logic_error("run LP not optimal");
        RunResult out{res.value, {}};
        for (int i = 0; i < n; ++i) {
            out.first += c[i] * p.cap_min;
            out.second.push_back(res.z[i] + p.cap_min);
        }
        return lp_cache_.emplace(key, std::move(out)).first->second;
    }

    const RunResult& run_feasible(int a, int b) {
        static thread_local RunResult r;
        r.first = 0;
        r.second.assign(b - a + 1, spec_.generator.cap_min);
        return r;
    }

    const std::vector<std::vector<Rational>>& run_vertices(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = vertex_cache_.find(key);
        if (it != vertex_cache_.end()) return it->second;
        const int n = b - a + 1;
        auto rows = run_rows(a, b, true);
        const int R = static_cast<int>(rows.size());
        std::set<std::vector<Rational>> found;
        std::vector<int> pick(n);
        for (int i = 0; i < n; ++i) pick[i] = i;
        for (;;) {
            std::vector<std::vector<Rational>> A;
            std::vector<Rational> rhs;
            for (int i : pick) {
                A.push_back(rows[i].a);
                rhs.push_back(rows[i].b);
            }
            std::vector<Rational> z;
            if (solve_square(A, rhs, z)) {
                bool feas = true;
                for (const auto& r : rows) {
                    Rational s = 0;
                    for (int i = 0; i < n; ++i)
                        if (sgn(r.a[i]) != 0) s += r.a[i] * z[i];
                    if (s > r.b) {
                        feas = false;
                        break;
                    }
                }
                if (feas) {
                    for (auto& v : z) v += spec_.generator.cap_min;
                    found.insert(std::move(z));
                }
            }
            int i = n - 1;
            while (i >= 0 && pick[i] == R - n + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
        }
        return vertex_cache_.emplace(key, std::vector<std::vector<Rational>>(found.begin(), found.end())).first->second;
    }

    PolytopeSpec spec_;
    std::vector<Schedule> schedules_;
    std::map<std::tuple<int, int, std::vector<Rational>>, RunResult> lp_cache_;
    std::map<std::pair<int, int>, std::vector<std::vector<Rational>>> vertex_cache_;
    std::unique_ptr<std::vector<ExactPoint>> vertices_;
};

inline Rational max_linear(const PolytopeSpec& spec, const std::vector<Rational>& x_obj, const std::vector<Rational>& y_obj) {
    PolytopeOracle o(spec);
    return o.max_linear(x_obj, y_obj).first;
}

inline ValidityReport check_valid(const LinearInequalityT<Rational>& q, const PolytopeSpec& spec) {
    PolytopeOracle o(spec);
    return o.check_valid(q);
}

inline std::vector<ExactPoint> vertices(const PolytopeSpec& spec) {
    PolytopeOracle o(spec);
    return o.vertices();
}

inline int face_dimension(const LinearInequalityT<Rational>& q, const PolytopeSpec& spec) {
    PolytopeOracle o(spec);
    return o.face_dimension(q);
}

// ---- two-period hull ----

// a . (x1, x2, y1, y2) <= b
struct HullRow {
    std::array<Rational, 4> a;
    Rational b;
    std::string name;
};

inline std::vector<HullRow> q2_system(const GeneratorParamsT<Rational>& p) {
    const Rational C = p.cap_max, c = p.cap_min, V = p.ramp, Vb = p.start_ramp;
    return {
        {{0, 0, 1, 0}, 1, "y1 <= 1"},
        {{0, 0, 0, 1}, 1, "y2 <= 1"},
        {{-1, 0, c, 0}, 0, "cap_min y1 <= x1"},
        {{0, -1, 0, c}, 0, "cap_min y2 <= x2"},
        {{1, 0, -C, 0}, 0, "x1 <= cap_max y1"},
        {{0, 1, 0, -C}, 0, "x2 <= cap_max y2"},
        {{1, 0, -Vb, Rational(-(C - Vb))}, 0, "x1 <= Vbar y1 + (C - Vbar) y2"},
        {{0, 1, Rational(-(C - Vb)), -Vb}, 0, "x2 <= (C - Vbar) y1 + Vbar y2"},
        {{-1, 1, c, Rational(-(c + V))}, 0, "x2 - x1 <= (cmin + V) y2 - cmin y1"},
        {{-1, 1, Rational(Vb - V), -Vb}, 0, "x2 - x1 <= Vbar y2 - (Vbar - V) y1"},
        {{1, -1, Rational(-(c + V)), c}, 0, "x1 - x2 <= (cmin + V) y1 - cmin y2"},
        {{1, -1, -Vb, Rational(Vb - V)}, 0, "x1 - x2 <= Vbar y1 - (Vbar - V) y2"},
    };
}

struct HullReport {
    bool rows_valid = true;       // every row holds on P2
    bool bounded = true;
    bool vertices_in_p2 = true;   // every vertex of the row system is integral in y and lies in P2
    std::vector<std::string> failures;
    std::vector<std::array<Rational, 4>> fractional_vertices;
    bool ok() const { return rows_valid && bounded && vertices_in_p2; }
};

namespace detail {

// Vertices of {z in R^4 : rows} by enumerating 4-row bases.
inline std::vector<std::array<Rational, 4>> vertices4(const std::vector<std::pair<std::array<Rational, 4>, Rational>>& rows) {
    std::vector<std::array<Rational, 4>> out;
    std::set<std::array<Rational, 4>> seen;
    const int R = static_cast<int>(rows.size());
    for (int i = 0; i < R; ++i)
        for (int j = i + 1; j < R; ++j)
            for (int k = j + 1; k < R; ++k)
                for (int l = k + 1; l < R; ++l) {
                    std::vector<std::vector<Rational>> A;
                    std::vector<Rational> b;
                    for (int r : {i, j, k, l}) {
                        A.emplace_back(rows[r].first.begin(), rows[r].first.end());
                        b.push_back(rows[r].second);
                    }
                    std::vector<Rational> z;
                    if (!solve_square(A, b, z)) continue;
                    bool feas = true;
                    for (const auto& [a, rb] : rows) {
                        Rational s = a[0] * z[0] + a[1] * z[1] + a[2] * z[2] + a[3] * z[3];
                        if (s > rb) {
                            feas = false;
                            break;
                        }
                    }
                    if (!feas) continue;
                    std::array<Rational, 4> v{z[0], z[1], z[2], z[3]};
                    if (seen.insert(v).second) out.push_back(v);
                }
    return out;
}

}  // namespace detail

inline HullReport check_hull_T2(const GeneratorParamsT<Rational>& p, const std::vector<HullRow>& system) {
    HullReport rep;
    PolytopeOracle o(PolytopeSpec{p, 2});
    // (a) every row is valid over P2
    for (const auto& r : system) {
        Rational worst;
        bool first = true;
        for (const auto& v : o.vertices()) {
            Rational s = r.a[0] * v.x[0] + r.a[1] * v.x[1] + r.a[2] * v.y[0] + r.a[3] * v.y[1] - r.b;
            if (first || s > worst) worst = s;
            first = false;
        }
        if (sgn(worst) > 0) {
            rep.rows_valid = false;
            rep.failures.push_back("row not valid on P2: " + r.name);
        }
    }
    // boundedness: the recession cone {d : a.d <= 0} intersected with the unit box has only the origin as vertex
    std::vector<std::pair<std::array<Rational, 4>, Rational>> cone;
    for (const auto& r : system) cone.push_back({r.a, Rational(0)});
    for (int i = 0; i < 4; ++i) {
        std::array<Rational, 4> e{0, 0, 0, 0};
        e[i] = 1;
        cone.push_back({e, Rational(1)});
        e[i] = -1;
        cone.push_back({e, Rational(1)});
    }
    for (const auto& d : detail::vertices4(cone))
        if (sgn(d[0]) || sgn(d[1]) || sgn(d[2]) || sgn(d[3])) {
            rep.bounded = false;
            rep.failures.push_back("row system is unbounded");
            break;
        }
    // (b) every vertex of the row system lies in P2
    std::vector<std::pair<std::array<Rational, 4>, Rational>> rows;
    for (const auto& r : system) rows.push_back({r.a, r.b});
    for (const auto& v : detail::vertices4(rows)) {
        bool integral = (v[2] == 0 || v[2] == 1) && (v[3] == 0 || v[3] == 1);
        bool inside = false;
        if (integral) {
            ExactPoint pt{{v[0], v[1]}, {static_cast<int>(v[2].get_d()), static_cast<int>(v[3].get_d())}};
            inside = o.contains(pt);
        }
        if (!inside) {
            rep.vertices_in_p2 = false;
            rep.fractional_vertices.push_back(v);
            rep.failures.push_back("vertex outside P2: (" + v[0].get_str() + ", " + v[1].get_str() + ", " + v[2].get_str() + ", " +
                                   v[3].get_str() + ")");
        }
    }
    return rep;
}

inline HullReport check_hull_T2(const GeneratorParamsT<Rational>& p) { return check_hull_T2(p, q2_system(p)); }
inline HullReport check_hull_T2(const GeneratorParams& p) { return check_hull_T2(to_exact(p)); }

// ---- exhaustive separation ----

inline std::optional<CutCandidate> brute_separate(const FractionalPoint& pt, Family f, const GeneratorParams& p,
                                                  std::size_t budget = 2'000'000,
                                                  std::optional<Direction> only = std::nullopt,
                                                  double tol = kDefaultViolationTol) {
    const int T = pt.horizon();
    if (T > 8) throw BudgetError("brute_separate: horizon " + std::to_string(T) + " exceeds 8");
    auto en = admissible_params<double>(f, p, T, EnumerationPolicy::exhaustive(budget));
    if (en.truncated) throw BudgetError("brute_separate: parameter space exceeds budget at T=" + std::to_string(T));
    std::optional<CutCandidate> best;
    for (const auto& cp : en.params) {
        if (only && cp.direction != *only) continue;
        auto r = build_cut(f, p, T, cp);
        if (!r.ok()) continue;
        // split enumerations also contain the plain family only through shapes the builder tags as split
        if (r.value().family != f) continue;
        double v = evaluate_inequality(r.value(), pt);
        if (!best || v > best->violation) best = CutCandidate{r.value(), v, r.value().params};
    }
    if (best && !is_violated(best->violation, best->inequality.rhs, tol)) return std::nullopt;
    return best;
}

// ---- tiny exact unit commitment ----

struct ExactSolveResult {
    bool feasible = false;
    Rational objective;
    std::vector<Schedule> schedules;           // per generator
    std::vector<std::vector<Rational>> dispatch;  // per generator, per period
    long joint_schedules = 0;
    long lps_solved = 0;
};

namespace detail {

inline std::vector<Schedule> schedules_with_history(const GeneratorParams& p, const InitialState& init, int T) {
    if (T > 20) throw BudgetError("schedules: horizon too large");
    std::vector<Schedule> out;
    auto yv = [&](const Schedule& y, int t) { return t >= 1 ? y[t - 1] : init.y_at(t); };
    for (long mask = 0; mask < (1L << T); ++mask) {
        Schedule y(T);
        for (int t = 0; t < T; ++t) y[t] = (mask >> (T - 1 - t)) & 1;
        bool ok = true;
        for (int t = -p.min_up + 2; t <= T && ok; ++t)
            for (int k = std::max(t, 1); k <= std::min(T, t + p.min_up - 1) && ok; ++k)
                if (-yv(y, t - 1) + yv(y, t) - yv(y, k) > 0) ok = false;
        for (int t = -p.min_down + 2; t <= T && ok; ++t)
            for (int k = std::max(t, 1); k <= std::min(T, t + p.min_down - 1) && ok; ++k)
                if (yv(y, t - 1) - yv(y, t) + yv(y, k) > 1) ok = false;
        if (ok) out.push_back(std::move(y));
    }
    return out;
}

}  // namespace detail

inline ExactSolveResult solve_tiny_exact(const UcInstance& inst, int segments = 9, long budget = 1'000'000) {
    const int T = inst.horizon;
    const int G = static_cast<int>(inst.generators.size());
    struct Unit {
        GeneratorParamsT<Rational> p;
        CostParamsT<Rational> c;
        PiecewiseCostT<Rational> f;
        Rational f_min;  // cost at cap_min
        int y0;
        Rational x0;
        int bus;
    };
    std::vector<Unit> units;
    std::map<std::string, int> bus_index;
    for (std::size_t b = 0; b < inst.buses.size(); ++b) bus_index[inst.buses[b].id] = static_cast<int>(b);
    for (const auto& g : inst.generators) {
        Unit u{to_exact(g.params), to_exact(g.costs), {}, 0, g.initial.y0(), rational_from_double(g.initial.x0), bus_index.at(g.bus)};
        u.f = linearize_cost(u.c, u.p, segments);
        u.f_min = u.f.value(u.p.cap_min);
        units.push_back(std::move(u));
    }
    const int B = static_cast<int>(inst.buses.size());
    std::vector<std::vector<Rational>> load(B, std::vector<Rational>(T));
    std::vector<Rational> D(T), R(T);
    for (int b = 0; b < B; ++b)
        for (int t = 0; t < T; ++t) {
            load[b][t] = rational_from_double(inst.buses[b].load[t]);
            D[t] += load[b][t];
        }
    for (int t = 0; t < T; ++t) R[t] = (1 + rational_from_double(inst.reserve[t])) * D[t];
    struct ExactLine {
        Rational cap;
        std::vector<Rational> k;  // per bus
    };
    std::vector<ExactLine> lines;
    for (const auto& ln : inst.lines) {
        ExactLine el{rational_from_double(ln.capacity), std::vector<Rational>(B)};
        for (const auto& [b, k] : ln.factors) el.k[bus_index.at(b)] = rational_from_double(k);
        lines.push_back(std::move(el));
    }

    std::vector<std::vector<Schedule>> cand(G);
    long total = 1;
    for (int g = 0; g < G; ++g) {
        cand[g] = detail::schedules_with_history(inst.generators[g].params, inst.generators[g].initial, T);
        total *= static_cast<long>(cand[g].size());
        if (total > budget) throw BudgetError("solve_tiny_exact: joint schedule count exceeds budget");
    }

    ExactSolveResult best;
    if (G == 0) {
        bool zero = true;
        for (const auto& d : D) zero = zero && sgn(d) == 0;
        best.feasible = zero;
        best.objective = 0;
        return best;
    }

    // merit-order dispatch for one period: exact optimum of the ramp-free single-period problem
    auto greedy = [&](const std::vector<int>& on, const Rational& demand, std::vector<Rational>& x) -> std::optional<Rational> {
        Rational rest = demand, cost = 0;
        struct Seg {
            Rational slope, width;
            int unit;
        };
        std::vector<Seg> segs;
        for (int g : on) {
            const auto& u = units[g];
            x[g] = u.p.cap_min;
            rest -= u.p.cap_min;
            cost += u.f_min;
            for (std::size_t i = 0; i < u.f.segments(); ++i)
                segs.push_back({u.f.slopes[i], Rational(u.f.breakpoints[i + 1] - u.f.breakpoints[i]), g});
        }
        if (sgn(rest) < 0) return std::nullopt;
        std::stable_sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.slope < b.slope; });
        for (const auto& s : segs) {
            if (sgn(rest) == 0) break;
            Rational take = rest < s.width ? rest : s.width;
            x[s.unit] += take;
            cost += take * s.slope;
            rest -= take;
        }
        if (sgn(rest) > 0) return std::nullopt;
        return cost;
    };

    auto ramps_ok = [&](const std::vector<const Schedule*>& ys, const std::vector<std::vector<Rational>>& x) {
        for (int g = 0; g < G; ++g) {
            const auto& u = units[g];
            for (int t = 1; t <= T; ++t) {
                int yp = t == 1 ? u.y0 : (*ys[g])[t - 2];
                int yc = (*ys[g])[t - 1];
                Rational xp = t == 1 ? u.x0 : x[g][t - 2];
                const Rational& xc = x[g][t - 1];
                if (xc - xp > u.p.ramp * yp + u.p.start_ramp * (1 - yp)) return false;
                if (xp - xc > u.p.ramp * yc + u.p.start_ramp * (1 - yc)) return false;
            }
        }
        return true;
    };

    // exact dispatch LP for a fixed joint schedule; z = x - C̲ on on-periods, w = f - f(C̲)
    auto dispatch_lp = [&](const std::vector<const Schedule*>& ys, std::vector<std::vector<Rational>>& x) -> std::optional<Rational> {
        std::vector<std::vector<int>> zi(G, std::vector<int>(T, -1)), wi(G, std::vector<int>(T, -1));
        ExactLp lp;
        int n = 0;
        for (int g = 0; g < G; ++g)
            for (int t = 0; t < T; ++t)
                if ((*ys[g])[t]) {
                    zi[g][t] = n++;
                    wi[g][t] = n++;
                }
        lp.num_vars = n;
        lp.obj.assign(n, Rational(0));
        Rational constant = 0;
        for (int g = 0; g < G; ++g)
            for (int t = 0; t < T; ++t) {
                if (zi[g][t] < 0) continue;
                const auto& u = units[g];
                lp.obj[wi[g][t]] = -1;
                constant += u.f_min;
                lp.add_row({{zi[g][t], Rational(1)}}, ExactLp::Sense::Le, Rational(u.p.cap_max - u.p.cap_min));
                for (std::size_t i = 0; i < u.f.segments(); ++i)  // w >= slope (z + C̲) + intercept - f(C̲)
                    lp.add_row({{wi[g][t], Rational(1)}, {zi[g][t], Rational(-u.f.slopes[i])}}, ExactLp::Sense::Ge,
                               Rational(u.f.slopes[i] * u.p.cap_min + u.f.intercepts[i] - u.f_min));
            }
        auto xterm = [&](int g, int t, std::vector<std::pair<int, Rational>>& co, Rational& rhs, const Rational& sgnv) {
            // adds sgnv * x_{g,t} (t is 1-based, t = 0 is the initial state) to a row with constant moved to rhs
            if (t == 0) {
                rhs -= sgnv * units[g].x0;
                return;
            }
            if (zi[g][t - 1] < 0) return;
            co.emplace_back(zi[g][t - 1], sgnv);
            rhs -= sgnv * units[g].p.cap_min;
        };
        for (int t = 1; t <= T; ++t) {
            std::vector<std::pair<int, Rational>> co;
            Rational rhs = D[t - 1];
            for (int g = 0; g < G; ++g) xterm(g, t, co, rhs, Rational(1));
            lp.add_row(std::move(co), ExactLp::Sense::Eq, rhs);
        }
        for (int g = 0; g < G; ++g) {
            const auto& u = units[g];
            for (int t = 1; t <= T; ++t) {
                int yp = t == 1 ? u.y0 : (*ys[g])[t - 2];
                int yc = (*ys[g])[t - 1];
                {
                    std::vector<std::pair<int, Rational>> co;
                    Rational rhs = u.p.ramp * yp + u.p.start_ramp * (1 - yp);
                    xterm(g, t, co, rhs, Rational(1));
                    xterm(g, t - 1, co, rhs, Rational(-1));
                    if (!co.empty()) lp.add_row(std::move(co), ExactLp::Sense::Le, rhs);
                    else if (sgn(rhs) < 0) return std::nullopt;
                }
                {
                    std::vector<std::pair<int, Rational>> co;
                    Rational rhs = u.p.ramp * yc + u.p.start_ramp * (1 - yc);
                    xterm(g, t - 1, co, rhs, Rational(1));
                    xterm(g, t, co, rhs, Rational(-1));
                    if (!co.empty()) lp.add_row(std::move(co), ExactLp::Sense::Le, rhs);
                    else if (sgn(rhs) < 0) return std::nullopt;
                }
            }
        }
        for (const auto& ln : lines)
            for (int t = 1; t <= T; ++t) {
                std::vector<std::pair<int, Rational>> co;
                Rational rhs = 0;
                for (int b = 0; b < B; ++b) rhs += ln.k[b] * load[b][t - 1];
                for (int g = 0; g < G; ++g) xterm(g, t, co, rhs, ln.k[units[g].bus]);
                // flow = sum K x - sum K d  must lie in [-cap, cap]
                lp.add_row(co, ExactLp::Sense::Le, Rational(ln.cap + rhs));
                lp.add_row(std::move(co), ExactLp::Sense::Ge, Rational(rhs - ln.cap));
            }
        auto res = solve_exact_lp(lp);
        if (res.status != ExactLpResult::Status::Optimal) return std::nullopt;
        for (int g = 0; g < G; ++g)
            for (int t = 0; t < T; ++t) x[g][t] = zi[g][t] < 0 ? Rational(0) : Rational(res.z[zi[g][t]] + units[g].p.cap_min);
        return Rational(constant - res.value);
    };

    std::vector<std::size_t> idx(G, 0);
    std::vector<const Schedule*> ys(G);
    std::vector<std::vector<Rational>> x(G, std::vector<Rational>(T));
    std::vector<Rational> xt(G);
    for (;;) {
        ++best.joint_schedules;
        for (int g = 0; g < G; ++g) ys[g] = &cand[g][idx[g]];
        bool ok = true;
        Rational fixed = 0;
        for (int t = 0; t < T && ok; ++t) {
            Rational cap = 0, low = 0;
            for (int g = 0; g < G; ++g)
                if ((*ys[g])[t]) {
                    cap += units[g].p.cap_max;
                    low += units[g].p.cap_min;
                }
            ok = cap >= R[t] && low <= D[t] && cap >= D[t];
        }
        if (ok) {
            for (int g = 0; g < G; ++g) {
                const auto& u = units[g];
                for (int t = 0; t < T; ++t) {
                    int yc = (*ys[g])[t], yp = t == 0 ? u.y0 : (*ys[g])[t - 1];
                    if (yc) fixed += u.c.fixed_on;
                    if (yc > yp) fixed += u.c.startup;
                    if (yp > yc) fixed += u.c.shutdown;
                }
            }
            Rational lb = fixed;
            for (int t = 0; t < T && ok; ++t) {
                std::vector<int> on;
                for (int g = 0; g < G; ++g)
                    if ((*ys[g])[t]) on.push_back(g);
                auto c = greedy(on, D[t], xt);
                if (!c) ok = false;
                else {
                    lb += *c;
                    for (int g = 0; g < G; ++g) x[g][t] = (*ys[g])[t] ? xt[g] : Rational(0);
                }
            }
            if (ok && (!best.feasible || lb < best.objective)) {
                std::optional<Rational> total_cost;
                if (lines.empty() && ramps_ok(ys, x)) {
                    total_cost = lb;
                } else {
                    ++best.lps_solved;
                    auto c = dispatch_lp(ys, x);
                    if (c) total_cost = fixed + *c;
                }
                if (total_cost && (!best.feasible || *total_cost < best.objective)) {
                    best.feasible = true;
                    best.objective = *total_cost;
                    best.schedules.clear();
                    for (int g = 0; g < G; ++g) best.schedules.push_back(*ys[g]);
                    best.dispatch = x;
                }
            }
        }
        int g = 0;
        while (g < G && ++idx[g] == cand[g].size()) idx[g++] = 0;
        if (g == G) break;
    }
    return best;
}

}  // namespace sbuc

#endif

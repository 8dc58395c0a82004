#ifndef SBUC_LP_HPP
#define SBUC_LP_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sbuc {

// Active constraint of a vertex: constraint id (bounds are 0..n-1, rows n..n+m-1) and which side is tight.
struct ActiveConstraint {
    int id;
    bool upper;
    bool operator==(const ActiveConstraint& o) const { return id == o.id && upper == o.upper; }
};

using LpBasis = std::vector<ActiveConstraint>;

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

struct LpOptions {
    long max_iterations = 200000;
    double feas_tol = 1e-9;
    double opt_tol = 1e-9;
    double pivot_tol = 1e-9;
    int refactor_every = 100;
    int degenerate_before_bland = 1000;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    std::vector<double> values;  // empty unless optimal
    double objective = 0;
    LpBasis basis;
    long iterations = 0;
};

namespace detail {

// Primal simplex over a vertex's set of n active constraints (x-space). The inverse of the active matrix is
// updated by rank-one corrections and refactored periodically.
class ActiveSetSimplex {
  public:
    struct Con {
        const std::pair<int, double>* a = nullptr;
        int nnz = 0;
        int unit = -1;     // a = e_unit when >= 0
        double tau = 0;    // coefficient of the auxiliary column (phase 1)
        double lo = -std::numeric_limits<double>::infinity();
        double hi = std::numeric_limits<double>::infinity();
    };

    ActiveSetSimplex(int dim, std::vector<Con> cons, std::vector<double> cost, const LpOptions& opt)
        : N_(dim), cons_(std::move(cons)), c_(std::move(cost)), opt_(opt) {}

    enum class Result { Optimal, Unbounded, IterationLimit, Singular };

    // Installs an active set; false when its matrix is singular.
    bool install(const std::vector<ActiveConstraint>& w) {
        W_ = w;
        in_w_.assign(cons_.size(), -1);
        for (int p = 0; p < N_; ++p) in_w_[W_[p].id] = p;
        return refactor();
    }

    Result run(long& iterations, long max_iterations) {
        int degenerate = 0;
        int since_refactor = 0;
        std::vector<double> lambda(N_), d(N_), ad(cons_.size()), r(N_);
        const double cscale = std::max(1.0, max_abs(c_));
        for (;;) {
            if (iterations >= max_iterations) return Result::IterationLimit;
            if (since_refactor >= opt_.refactor_every) {
                if (!refactor()) return Result::Singular;
                since_refactor = 0;
            }
            const bool bland = degenerate >= opt_.degenerate_before_bland;
            // multipliers: W^T lambda = c
            std::fill(lambda.begin(), lambda.end(), 0.0);
            for (int i = 0; i < N_; ++i) {
                if (c_[i] == 0) continue;
                const double* row = &inv_[static_cast<std::size_t>(i) * N_];
                for (int p = 0; p < N_; ++p) lambda[p] += c_[i] * row[p];
            }
            int leave = -1;
            double best = 0;
            for (int p = 0; p < N_; ++p) {
                const Con& k = cons_[W_[p].id];
                if (k.lo == k.hi) continue;
                const double l = lambda[p];
                const bool improving = W_[p].upper ? l > opt_.opt_tol * cscale : l < -opt_.opt_tol * cscale;
                if (!improving) continue;
                if (bland) {
                    if (leave < 0 || W_[p].id < W_[leave].id) leave = p;
                } else if (std::fabs(l) > best) {
                    best = std::fabs(l);
                    leave = p;
                }
            }
            if (leave < 0) return Result::Optimal;
            const double sigma = W_[leave].upper ? -1.0 : 1.0;
            for (int i = 0; i < N_; ++i) d[i] = sigma * inv_[static_cast<std::size_t>(i) * N_ + leave];

            // ratio test; the released constraint may also reach its opposite side
            const Con& rel = cons_[W_[leave].id];
            double step = std::isfinite(rel.hi - rel.lo) ? rel.hi - rel.lo : std::numeric_limits<double>::infinity();
            int enter = -1;
            bool enter_upper = false;
            double enter_mag = 0;
            for (std::size_t k = 0; k < cons_.size(); ++k) {
                if (in_w_[k] >= 0) continue;
                const double g = dot(cons_[k], d);
                ad[k] = g;
                const double scale = std::max(1.0, norm_inf(cons_[k]));
                if (std::fabs(g) <= opt_.pivot_tol * scale) continue;
                const double act = activity(cons_[k]);
                double room;
                bool up;
                if (g > 0) {
                    if (!std::isfinite(cons_[k].hi)) continue;
                    room = cons_[k].hi - act;
                    up = true;
                } else {
                    if (!std::isfinite(cons_[k].lo)) continue;
                    room = act - cons_[k].lo;
                    up = false;
                }
                const double s = std::max(0.0, room) / std::fabs(g);
                bool take;
                if (enter < 0 && !(s < step)) take = false;
                else if (enter < 0) take = true;
                else if (s < step - 1e-12 * std::max(1.0, step)) take = true;
                else if (s <= step + 1e-12 * std::max(1.0, step))
                    take = bland ? static_cast<int>(k) < enter : std::fabs(g) / scale > enter_mag;
                else take = false;
                if (take) {
                    step = s;
                    enter = static_cast<int>(k);
                    enter_upper = up;
                    enter_mag = std::fabs(g) / scale;
                }
            }
            if (!std::isfinite(step)) return Result::Unbounded;
            ++iterations;
            ++since_refactor;
            if (step <= 1e-12) ++degenerate;
            else degenerate = 0;
            for (int i = 0; i < N_; ++i) x_[i] += step * d[i];
            if (enter < 0) {  // bound flip of the released constraint
                W_[leave].upper = !W_[leave].upper;
                continue;
            }
            // replace row `leave` of W by a_enter
            const Con& ek = cons_[enter];
            std::fill(r.begin(), r.end(), 0.0);
            add_row_times_inverse(ek, r);
            const double denom = r[leave];
            if (std::fabs(denom) < 1e-11) {
                // numerically unsafe update: rebuild from scratch
                in_w_[W_[leave].id] = -1;
                W_[leave] = {enter, enter_upper};
                in_w_[enter] = leave;
                if (!refactor()) return Result::Singular;
                since_refactor = 0;
                continue;
            }
            r[leave] -= 1.0;
            std::vector<double> col(N_);
            for (int i = 0; i < N_; ++i) col[i] = inv_[static_cast<std::size_t>(i) * N_ + leave];
            for (int i = 0; i < N_; ++i) {
                const double f = col[i] / denom;
                if (f == 0) continue;
                double* row = &inv_[static_cast<std::size_t>(i) * N_];
                for (int p = 0; p < N_; ++p)
                    if (r[p] != 0) row[p] -= f * r[p];
            }
            in_w_[W_[leave].id] = -1;
            W_[leave] = {enter, enter_upper};
            in_w_[enter] = leave;
        }
    }

    // Gauss-Jordan inverse of the active matrix; recomputes x from the active bounds.
    bool refactor() {
        std::vector<double> A(static_cast<std::size_t>(N_) * N_, 0.0);
        for (int p = 0; p < N_; ++p) {
            const Con& k = cons_[W_[p].id];
            double* row = &A[static_cast<std::size_t>(p) * N_];
            if (k.unit >= 0) row[k.unit] = 1;
            for (int q = 0; q < k.nnz; ++q) row[k.a[q].first] += k.a[q].second;
            if (k.tau != 0) row[N_ - 1] += k.tau;
        }
        inv_.assign(static_cast<std::size_t>(N_) * N_, 0.0);
        for (int i = 0; i < N_; ++i) inv_[static_cast<std::size_t>(i) * N_ + i] = 1;
        std::vector<int> perm(N_);
        for (int c = 0; c < N_; ++c) {
            int piv = -1;
            double best = 0;
            for (int r = c; r < N_; ++r) {
                double v = std::fabs(A[static_cast<std::size_t>(r) * N_ + c]);
                if (v > best) {
                    best = v;
                    piv = r;
                }
            }
            if (piv < 0 || best < 1e-12) return false;
            if (piv != c) {
                for (int j = 0; j < N_; ++j) {
                    std::swap(A[static_cast<std::size_t>(piv) * N_ + j], A[static_cast<std::size_t>(c) * N_ + j]);
                    std::swap(inv_[static_cast<std::size_t>(piv) * N_ + j], inv_[static_cast<std::size_t>(c) * N_ + j]);
                }
            }
            double* prow = &A[static_cast<std::size_t>(c) * N_];
            double* pinv = &inv_[static_cast<std::size_t>(c) * N_];
            const double f = 1.0 / prow[c];
            for (int j = 0; j < N_; ++j) {
                prow[j] *= f;
                pinv[j] *= f;
            }
            for (int r = 0; r < N_; ++r) {
                if (r == c) continue;
                double* arow = &A[static_cast<std::size_t>(r) * N_];
                const double g = arow[c];
                if (g == 0) continue;
                double* irow = &inv_[static_cast<std::size_t>(r) * N_];
                for (int j = c; j < N_; ++j)
                    if (prow[j] != 0) arow[j] -= g * prow[j];
                for (int j = 0; j < N_; ++j)
                    if (pinv[j] != 0) irow[j] -= g * pinv[j];
            }
        }
        // Gauss-Jordan on [A | I] with row swaps yields A^-1 directly (row swaps act on both sides)
        x_.assign(N_, 0.0);
        for (int i = 0; i < N_; ++i) {
            const double* row = &inv_[static_cast<std::size_t>(i) * N_];
            double s = 0;
            for (int p = 0; p < N_; ++p) {
                if (row[p] == 0) continue;
                const Con& k = cons_[W_[p].id];
                s += row[p] * (W_[p].upper ? k.hi : k.lo);
            }
            x_[i] = s;
        }
        return true;
    }

    double activity(const Con& k) const { return dot(k, x_); }

    double dot(const Con& k, const std::vector<double>& v) const {
        double s = k.unit >= 0 ? v[k.unit] : 0.0;
        for (int q = 0; q < k.nnz; ++q) s += k.a[q].second * v[k.a[q].first];
        if (k.tau != 0) s += k.tau * v[N_ - 1];
        return s;
    }

    static double norm_inf(const Con& k) {
        double m = k.unit >= 0 ? 1.0 : 0.0;
        for (int q = 0; q < k.nnz; ++q) m = std::max(m, std::fabs(k.a[q].second));
        return std::max(m, std::fabs(k.tau));
    }

    static double max_abs(const std::vector<double>& v) {
        double m = 0;
        for (double a : v) m = std::max(m, std::fabs(a));
        return m;
    }

    void add_row_times_inverse(const Con& k, std::vector<double>& r) const {
        auto add = [&](int i, double c) {
            const double* row = &inv_[static_cast<std::size_t>(i) * N_];
            for (int p = 0; p < N_; ++p) r[p] += c * row[p];
        };
        if (k.unit >= 0) add(k.unit, 1.0);
        for (int q = 0; q < k.nnz; ++q) add(k.a[q].first, k.a[q].second);
        if (k.tau != 0) add(N_ - 1, k.tau);
    }

    int dim() const { return N_; }
    const std::vector<double>& x() const { return x_; }
    const std::vector<ActiveConstraint>& active() const { return W_; }
    const std::vector<Con>& cons() const { return cons_; }
    const std::vector<double>& inverse() const { return inv_; }

  private:
    int N_;
    std::vector<Con> cons_;
    std::vector<double> c_;
    LpOptions opt_;
    std::vector<ActiveConstraint> W_;
    std::vector<int> in_w_;
    std::vector<double> inv_;
    std::vector<double> x_;
};

}  // namespace detail

// min c.x  s.t.  lb <= x <= ub,  rows[i].lo <= rows[i].coeffs . x <= rows[i].hi.
// RowRange elements expose `coeffs` (vector of (column, value)), `lo` and `hi`.
// `warm` is an active set from an earlier solve of a problem with the same columns and a prefix of these rows.
template <class RowRange>
LpSolution solve_lp_bounded(const std::vector<double>& c, const std::vector<double>& lb, const std::vector<double>& ub,
                            const RowRange& rows, const LpBasis* warm = nullptr, const LpOptions& opt = {}) {
    using Con = detail::ActiveSetSimplex::Con;
    const int n = static_cast<int>(c.size());
    const int m = static_cast<int>(rows.size());
    LpSolution sol;
    if (n == 0) {
        for (const auto& r : rows)
            if (r.lo > opt.feas_tol * std::max(1.0, std::fabs(r.lo)) || r.hi < -opt.feas_tol * std::max(1.0, std::fabs(r.hi))) return sol;
        sol.status = LpStatus::Optimal;
        return sol;
    }
    std::vector<Con> cons(n + m);
    for (int j = 0; j < n; ++j) {
        if (lb[j] > ub[j]) return sol;
        cons[j].unit = j;
        cons[j].lo = lb[j];
        cons[j].hi = ub[j];
    }
    for (int i = 0; i < m; ++i) {
        const auto& r = rows[i];
        cons[n + i].a = r.coeffs.data();
        cons[n + i].nnz = static_cast<int>(r.coeffs.size());
        cons[n + i].lo = r.lo;
        cons[n + i].hi = r.hi;
        if (r.lo > r.hi) return sol;
    }
    auto viol_tol = [&](double bound) { return opt.feas_tol * std::max(1.0, std::fabs(bound)); };

    LpBasis start;
    bool ok = false;
    if (warm && static_cast<int>(warm->size()) == n) {
        start = *warm;
        for (auto& w : start) {
            if (w.id >= n + m) {
                start.clear();
                break;
            }
            const Con& k = cons[w.id];
            if (w.upper && !std::isfinite(k.hi)) w.upper = false;
            if (!w.upper && !std::isfinite(k.lo)) w.upper = true;
            if (!std::isfinite(w.upper ? k.hi : k.lo)) {
                start.clear();
                break;
            }
        }
        ok = !start.empty();
    }
    auto cold = [&] {
        start.clear();
        for (int j = 0; j < n; ++j) {
            if (std::isfinite(lb[j])) start.push_back({j, false});
            else if (std::isfinite(ub[j])) start.push_back({j, true});
            else throw std::invalid_argument("solve_lp: free columns are not supported");
        }
    };
    if (!ok) cold();

    detail::ActiveSetSimplex phase2(n, cons, c, opt);
    if (!phase2.install(start)) {
        cold();
        phase2.install(start);
    }

    for (int attempt = 0; attempt < 4; ++attempt) {
        // most violated constraint at the current vertex
        const std::vector<double>& x0 = phase2.x();
        std::vector<int> state(n + m, 0);  // +1 above hi, -1 below lo
        double worst = 0;
        int worst_k = -1;
        for (int k = 0; k < n + m; ++k) {
            const double a = phase2.dot(cons[k], x0);
            double v = 0;
            if (a > cons[k].hi + viol_tol(cons[k].hi)) {
                state[k] = 1;
                v = a - cons[k].hi;
            } else if (a < cons[k].lo - viol_tol(cons[k].lo)) {
                state[k] = -1;
                v = cons[k].lo - a;
            }
            if (v > worst) {
                worst = v;
                worst_k = k;
            }
        }
        if (worst_k >= 0) {
            // auxiliary column tau >= 0 relaxes each violated side; the other side is kept as its own constraint
            std::vector<Con> aux;
            std::vector<std::pair<int, bool>> origin;  // original id, side this copy enforces (true = upper)
            std::vector<int> plain_id(n + m, -1), relaxed_id(n + m, -1);
            for (int k = 0; k < n + m; ++k) {
                Con ck = cons[k];
                if (state[k] == 0) {
                    plain_id[k] = static_cast<int>(aux.size());
                    aux.push_back(ck);
                    origin.push_back({k, false});
                    continue;
                }
                Con relaxed = ck, other = ck;
                if (state[k] > 0) {
                    relaxed.tau = -1;
                    relaxed.lo = -std::numeric_limits<double>::infinity();
                    other.hi = std::numeric_limits<double>::infinity();
                } else {
                    relaxed.tau = 1;
                    relaxed.hi = std::numeric_limits<double>::infinity();
                    other.lo = -std::numeric_limits<double>::infinity();
                }
                relaxed_id[k] = static_cast<int>(aux.size());
                aux.push_back(relaxed);
                origin.push_back({k, state[k] > 0});
                if (std::isfinite(state[k] > 0 ? other.lo : other.hi)) {
                    aux.push_back(other);
                    origin.push_back({k, state[k] < 0});
                }
            }
            const int tau_id = static_cast<int>(aux.size());
            Con tb;
            tb.unit = n;
            tb.lo = 0;
            aux.push_back(tb);
            origin.push_back({-1, false});
            std::vector<double> c1(n + 1, 0.0);
            c1[n] = 1;
            std::vector<ActiveConstraint> w1;
            for (const auto& w : phase2.active()) w1.push_back({plain_id[w.id], w.upper});
            w1.push_back({relaxed_id[worst_k], state[worst_k] > 0});
            detail::ActiveSetSimplex phase1(n + 1, aux, c1, opt);
            if (!phase1.install(w1)) throw std::logic_error("solve_lp: singular phase-1 start");
            auto r1 = phase1.run(sol.iterations, opt.max_iterations);
            if (r1 == detail::ActiveSetSimplex::Result::IterationLimit) {
                sol.status = LpStatus::IterationLimit;
                return sol;
            }
            if (r1 == detail::ActiveSetSimplex::Result::Singular) phase1.refactor();
            phase1.refactor();
            if (phase1.x()[n] > opt.feas_tol * std::max(1.0, worst) && phase1.x()[n] > opt.feas_tol) {
                sol.status = LpStatus::Infeasible;
                return sol;
            }
            // bring tau >= 0 into the active set, then drop the auxiliary column
            std::vector<ActiveConstraint> w = phase1.active();
            int tau_pos = -1;
            for (int p = 0; p <= n; ++p)
                if (w[p].id == tau_id) tau_pos = p;
            if (tau_pos < 0) {
                const auto& inv = phase1.inverse();
                double best = -1;
                for (int p = 0; p <= n; ++p) {
                    const double v = std::fabs(inv[static_cast<std::size_t>(n) * (n + 1) + p]);
                    if (v > best) {
                        best = v;
                        tau_pos = p;
                    }
                }
                w[tau_pos] = {tau_id, false};
            }
            start.clear();
            for (int p = 0; p <= n; ++p) {
                if (p == tau_pos) continue;
                const auto [k, side] = origin[w[p].id];
                const bool relaxed_copy = relaxed_id[k] == w[p].id;
                const bool upper = state[k] == 0 ? w[p].upper : (relaxed_copy ? state[k] > 0 : side);
                start.push_back({k, upper});
            }
            if (!phase2.install(start)) {
                // degenerate exit from phase 1; restart cold from this point's neighbourhood
                cold();
                phase2.install(start);
                continue;
            }
        }
        auto r2 = phase2.run(sol.iterations, opt.max_iterations);
        if (r2 == detail::ActiveSetSimplex::Result::IterationLimit) {
            sol.status = LpStatus::IterationLimit;
            return sol;
        }
        if (r2 == detail::ActiveSetSimplex::Result::Unbounded) {
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        if (r2 == detail::ActiveSetSimplex::Result::Singular) {
            cold();
            phase2.install(start);
            continue;
        }
        phase2.refactor();
        // accept when the refreshed vertex is feasible; otherwise repeat phase 1 from it
        bool feasible = true;
        for (int k = 0; k < n + m && feasible; ++k) {
            const double a = phase2.dot(cons[k], phase2.x());
            if (a > cons[k].hi + 1e-7 * std::max(1.0, std::fabs(cons[k].hi)) || a < cons[k].lo - 1e-7 * std::max(1.0, std::fabs(cons[k].lo)))
                feasible = false;
        }
        if (!feasible) continue;
        sol.status = LpStatus::Optimal;
        sol.values = phase2.x();
        for (int j = 0; j < n; ++j) sol.values[j] = std::clamp(sol.values[j], lb[j], ub[j]);
        sol.objective = 0;
        for (int j = 0; j < n; ++j) sol.objective += c[j] * sol.values[j];
        sol.basis = phase2.active();
        return sol;
    }
    sol.status = LpStatus::IterationLimit;
    return sol;
}

}  // namespace sbuc

#endif

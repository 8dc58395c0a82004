#ifndef SBUC_EXACT_LP_HPP
#define SBUC_EXACT_LP_HPP

#include <utility>
#include <vector>

#include "sbuc/rational.hpp"

namespace sbuc {

// Dense two-phase tableau simplex over exact rationals with Bland's rule.
// maximize obj . z  subject to  rows,  z >= 0.
struct ExactLp {
    enum class Sense { Le, Eq, Ge };
    struct Row {
        std::vector<std::pair<int, Rational>> coeffs;
        Sense sense = Sense::Le;
        Rational rhs;
    };

    int num_vars = 0;
    std::vector<Rational> obj;
    std::vector<Row> rows;

    void add_row(std::vector<std::pair<int, Rational>> coeffs, Sense s, Rational rhs) {
        rows.push_back({std::move(coeffs), s, std::move(rhs)});
    }
};

struct ExactLpResult {
    enum class Status { Optimal, Infeasible, Unbounded } status = Status::Infeasible;
    Rational value;
    std::vector<Rational> z;
};

inline ExactLpResult solve_exact_lp(const ExactLp& lp) {
    const int n = lp.num_vars;
    const int m = static_cast<int>(lp.rows.size());
    // columns: structurals [0,n), one slack/surplus per inequality row, one artificial per row needing it
    std::vector<int> slack_col(m, -1), art_col(m, -1);
    int ncols = n;
    std::vector<int> sign(m, 1);
    for (int i = 0; i < m; ++i) {
        const auto& r = lp.rows[i];
        if (r.rhs < 0) sign[i] = -1;
        ExactLp::Sense s = r.sense;
        if (sign[i] < 0 && s != ExactLp::Sense::Eq) s = (s == ExactLp::Sense::Le) ? ExactLp::Sense::Ge : ExactLp::Sense::Le;
        if (s != ExactLp::Sense::Eq) slack_col[i] = ncols++;
        if (s != ExactLp::Sense::Le) art_col[i] = -2;  // placeholder
    }
    const int first_art = ncols;
    for (int i = 0; i < m; ++i)
        if (art_col[i] == -2) art_col[i] = ncols++;

    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(ncols + 1));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        const auto& r = lp.rows[i];
        for (const auto& [j, c] : r.coeffs) tab[i][j] += sign[i] > 0 ? c : Rational(-c);
        tab[i][ncols] = sign[i] > 0 ? r.rhs : Rational(-r.rhs);
        ExactLp::Sense s = r.sense;
        if (sign[i] < 0 && s != ExactLp::Sense::Eq) s = (s == ExactLp::Sense::Le) ? ExactLp::Sense::Ge : ExactLp::Sense::Le;
        if (slack_col[i] >= 0) tab[i][slack_col[i]] = (s == ExactLp::Sense::Le) ? 1 : -1;
        if (art_col[i] >= 0) {
            tab[i][art_col[i]] = 1;
            basis[i] = art_col[i];
        } else {
            basis[i] = slack_col[i];
        }
    }

    std::vector<bool> banned(ncols, false);
    // reduced-cost row for "maximize c.z": d_j = c_j - c_B B^-1 A_j; entering needs d_j > 0
    auto run = [&](const std::vector<Rational>& cost) -> bool {
        std::vector<Rational> d(ncols + 1);
        for (int j = 0; j <= ncols; ++j) {
            Rational v = j < ncols ? cost[j] : Rational(0);
            for (int i = 0; i < m; ++i)
                if (sgn(tab[i][j]) != 0 && sgn(cost[basis[i]]) != 0) v -= cost[basis[i]] * tab[i][j];
            d[j] = v;
        }
        for (;;) {
            int enter = -1;
            for (int j = 0; j < ncols; ++j)
                if (!banned[j] && sgn(d[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < m; ++i) {
                if (sgn(tab[i][enter]) <= 0) continue;
                Rational ratio = tab[i][ncols] / tab[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            Rational piv = tab[leave][enter];
            for (int j = 0; j <= ncols; ++j)
                if (sgn(tab[leave][j]) != 0) tab[leave][j] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave || sgn(tab[i][enter]) == 0) continue;
                Rational f = tab[i][enter];
                for (int j = 0; j <= ncols; ++j)
                    if (sgn(tab[leave][j]) != 0) tab[i][j] -= f * tab[leave][j];
            }
            if (sgn(d[enter]) != 0) {
                Rational f = d[enter];
                for (int j = 0; j <= ncols; ++j)
                    if (sgn(tab[leave][j]) != 0) d[j] -= f * tab[leave][j];
            }
            basis[leave] = enter;
        }
    };

    ExactLpResult res;
    if (first_art < ncols) {
        std::vector<Rational> c1(ncols);
        for (int j = first_art; j < ncols; ++j) c1[j] = -1;
        run(c1);
        Rational infeas = 0;
        for (int i = 0; i < m; ++i)
            if (basis[i] >= first_art) infeas += tab[i][ncols];
        if (sgn(infeas) > 0) {
            res.status = ExactLpResult::Status::Infeasible;
            return res;
        }
        // drive zero-valued artificials out where possible, then forbid artificials
        for (int i = 0; i < m; ++i) {
            if (basis[i] < first_art) continue;
            int enter = -1;
            for (int j = 0; j < first_art; ++j)
                if (sgn(tab[i][j]) != 0) {
                    enter = j;
                    break;
                }
            if (enter < 0) continue;  // redundant row
            Rational piv = tab[i][enter];
            for (int j = 0; j <= ncols; ++j)
                if (sgn(tab[i][j]) != 0) tab[i][j] /= piv;
            for (int r = 0; r < m; ++r) {
                if (r == i || sgn(tab[r][enter]) == 0) continue;
                Rational f = tab[r][enter];
                for (int j = 0; j <= ncols; ++j)
                    if (sgn(tab[i][j]) != 0) tab[r][j] -= f * tab[i][j];
            }
            basis[i] = enter;
        }
        for (int j = first_art; j < ncols; ++j) banned[j] = true;
    }
    std::vector<Rational> c2(ncols);
    for (int j = 0; j < n && j < static_cast<int>(lp.obj.size()); ++j) c2[j] = lp.obj[j];
    if (!run(c2)) {
        res.status = ExactLpResult::Status::Unbounded;
        return res;
    }
    res.status = ExactLpResult::Status::Optimal;
    res.z.assign(n, Rational(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.z[basis[i]] = tab[i][ncols];
    res.value = 0;
    for (int j = 0; j < n && j < static_cast<int>(lp.obj.size()); ++j) res.value += lp.obj[j] * res.z[j];
    return res;
}

// Solves A z = b for square A by exact Gaussian elimination; false when singular.
inline bool solve_square(std::vector<std::vector<Rational>> A, std::vector<Rational> b, std::vector<Rational>& z) {
    const int n = static_cast<int>(A.size());
    for (int c = 0; c < n; ++c) {
        int piv = -1;
        for (int r = c; r < n; ++r)
            if (sgn(A[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return false;
        std::swap(A[piv], A[c]);
        std::swap(b[piv], b[c]);
        for (int r = c + 1; r < n; ++r) {
            if (sgn(A[r][c]) == 0) continue;
            Rational f = A[r][c] / A[c][c];
            for (int j = c; j < n; ++j)
                if (sgn(A[c][j]) != 0) A[r][j] -= f * A[c][j];
            b[r] -= f * b[c];
        }
    }
    z.assign(n, Rational(0));
    for (int r = n - 1; r >= 0; --r) {
        Rational v = b[r];
        for (int j = r + 1; j < n; ++j)
            if (sgn(A[r][j]) != 0) v -= A[r][j] * z[j];
        z[r] = v / A[r][r];
    }
    return true;
}

// Incremental rank of a set of exact vectors (row echelon form kept reduced).
class ExactRank {
  public:
    explicit ExactRank(int dim) : dim_(dim) {}
    // returns true when v increased the rank
    bool add(std::vector<Rational> v) {
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            int c = pivots_[r];
            if (sgn(v[c]) == 0) continue;
            Rational f = v[c] / rows_[r][c];
            for (int j = 0; j < dim_; ++j)
                if (sgn(rows_[r][j]) != 0) v[j] -= f * rows_[r][j];
        }
        for (int j = 0; j < dim_; ++j)
            if (sgn(v[j]) != 0) {
                rows_.push_back(std::move(v));
                pivots_.push_back(j);
                return true;
            }
        return false;
    }
    int rank() const { return static_cast<int>(rows_.size()); }

  private:
    int dim_;
    std::vector<std::vector<Rational>> rows_;
    std::vector<int> pivots_;
};

}  // namespace sbuc

#endif

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "sre/linalg.hpp"

namespace sre {

// Small dense linear program, maximized:
//   max  objective . x
//   s.t. eq_lhs x == eq_rhs
//        ineq_lhs x <= ineq_rhs
//        lower <= x <= upper   (+-infinity allowed)
struct LinearProgram {
    Vec objective;
    Mat eq_lhs;
    Vec eq_rhs;
    Mat ineq_lhs;
    Vec ineq_rhs;
    Vec lower;
    Vec upper;

    static LinearProgram with_vars(std::size_t n) {
        LinearProgram lp;
        lp.objective.assign(n, 0.0);
        lp.lower.assign(n, -std::numeric_limits<double>::infinity());
        lp.upper.assign(n, std::numeric_limits<double>::infinity());
        return lp;
    }

    std::size_t num_vars() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

inline const char* to_string(LpStatus s) {
    switch (s) {
        case LpStatus::Optimal: return "optimal";
        case LpStatus::Infeasible: return "infeasible";
        case LpStatus::Unbounded: return "unbounded";
        case LpStatus::NumericalFailure: return "numerical-failure";
    }
    return "?";
}

struct LpOptions {
    double pivot_tol = 1e-10;
    double feas_tol = 1e-9;
    int max_iterations = 20000;
};

struct LpSolution {
    LpStatus status = LpStatus::NumericalFailure;
    double value = 0.0;
    Vec point;
    int iterations = 0;
};

namespace lp_detail {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct VarMap {
    enum Kind { Shifted, Mirrored, Split } kind = Shifted;
    std::size_t u1 = 0, u2 = 0;
    double base = 0.0;  // shift constant (lower bound or mirrored upper bound)
};

// Bland's rule on a dense tableau. Row `m` is the objective row holding
// reduced costs; column `cols` is the right-hand side. Maximization:
// enter the lowest-index allowed column with positive reduced cost, leave
// by minimum ratio with lowest basis index on ties. Bland's rule cannot
// cycle, so termination is guaranteed up to the iteration cap.
inline bool run_simplex(Mat& t, std::vector<std::size_t>& basis, std::size_t allowed_cols, const LpOptions& opt,
                        int& iterations, bool& hit_cap) {
    const std::size_t m = basis.size();
    const std::size_t rhs = t[0].size() - 1;
    for (;;) {
        if (iterations >= opt.max_iterations) {
            hit_cap = true;
            return false;
        }
        std::size_t enter = allowed_cols;
        for (std::size_t j = 0; j < allowed_cols; ++j) {
            if (t[m][j] > opt.pivot_tol) {
                enter = j;
                break;
            }
        }
        if (enter == allowed_cols) return true;  // optimal

        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= opt.pivot_tol) continue;
            const double ratio = t[i][rhs] / t[i][enter];
            if (leave == m || ratio < best_ratio - 1e-15 ||
                (std::fabs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == m) return false;  // unbounded direction

        const double inv = 1.0 / t[leave][enter];
        for (double& v : t[leave]) v *= inv;
        t[leave][enter] = 1.0;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave) continue;
            const double f = t[i][enter];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k <= rhs; ++k) t[i][k] -= f * t[leave][k];
            t[i][enter] = 0.0;
        }
        basis[leave] = enter;
        ++iterations;
    }
}

}  // namespace lp_detail

// Two-phase dense tableau simplex. Every returned Optimal point is
// re-checked against the original constraints; violations are reported as
// NumericalFailure rather than as a wrong answer.
inline LpSolution solve(const LinearProgram& lp, const LpOptions& opt = {}) {
    using namespace lp_detail;
    const std::size_t n = lp.num_vars();
    if (n == 0) throw std::invalid_argument("linear program has no variables");
    if (lp.lower.size() != n || lp.upper.size() != n)
        throw std::invalid_argument("bounds do not match variable count");
    if (lp.eq_lhs.size() != lp.eq_rhs.size() || lp.ineq_lhs.size() != lp.ineq_rhs.size())
        throw std::invalid_argument("constraint rows do not match right-hand sides");
    for (const Vec& row : lp.eq_lhs)
        if (row.size() != n) throw std::invalid_argument("equality row has wrong length");
    for (const Vec& row : lp.ineq_lhs)
        if (row.size() != n) throw std::invalid_argument("inequality row has wrong length");
    for (std::size_t j = 0; j < n; ++j)
        if (lp.lower[j] > lp.upper[j]) throw std::invalid_argument("variable has lower > upper");

    // Map every variable to nonnegative standard-form variables.
    std::vector<VarMap> vmap(n);
    std::size_t n_std = 0;
    std::vector<std::pair<std::size_t, double>> upper_rows;  // (std var, range)
    for (std::size_t j = 0; j < n; ++j) {
        const double lo = lp.lower[j], hi = lp.upper[j];
        if (lo > -kInf) {
            vmap[j] = {VarMap::Shifted, n_std++, 0, lo};
            if (hi < kInf) upper_rows.emplace_back(vmap[j].u1, hi - lo);
        } else if (hi < kInf) {
            vmap[j] = {VarMap::Mirrored, n_std++, 0, hi};
        } else {
            vmap[j] = {VarMap::Split, n_std, n_std + 1, 0.0};
            n_std += 2;
        }
    }

    const std::size_t m_eq = lp.eq_lhs.size();
    const std::size_t m_ineq = lp.ineq_lhs.size();
    const std::size_t m = m_eq + m_ineq + upper_rows.size();
    const std::size_t n_slack = m_ineq + upper_rows.size();
    const std::size_t n_cols = n_std + n_slack;   // structural + slack
    const std::size_t total = n_cols + m;         // + artificial
    const std::size_t rhs_col = total;

    Mat t(m + 1, Vec(total + 1, 0.0));
    auto emit_row = [&](std::size_t r, const Vec& row, double rhs) {
        for (std::size_t j = 0; j < n; ++j) {
            const double c = row[j];
            if (c == 0.0) continue;
            switch (vmap[j].kind) {
                case VarMap::Shifted:
                    t[r][vmap[j].u1] += c;
                    rhs -= c * vmap[j].base;
                    break;
                case VarMap::Mirrored:
                    t[r][vmap[j].u1] -= c;
                    rhs -= c * vmap[j].base;
                    break;
                case VarMap::Split:
                    t[r][vmap[j].u1] += c;
                    t[r][vmap[j].u2] -= c;
                    break;
            }
        }
        t[r][rhs_col] = rhs;
    };

    std::size_t r = 0;
    for (std::size_t i = 0; i < m_eq; ++i, ++r) emit_row(r, lp.eq_lhs[i], lp.eq_rhs[i]);
    for (std::size_t i = 0; i < m_ineq; ++i, ++r) {
        emit_row(r, lp.ineq_lhs[i], lp.ineq_rhs[i]);
        t[r][n_std + i] = 1.0;  // slack
    }
    for (std::size_t i = 0; i < upper_rows.size(); ++i, ++r) {
        t[r][upper_rows[i].first] = 1.0;
        t[r][n_std + m_ineq + i] = 1.0;
        t[r][rhs_col] = upper_rows[i].second;
    }

    for (std::size_t i = 0; i < m; ++i)
        if (t[i][rhs_col] < 0.0)
            for (double& v : t[i]) v = -v;

    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        t[i][n_cols + i] = 1.0;
        basis[i] = n_cols + i;
    }

    // Phase 1: maximize -(sum of artificials); feasible iff the optimum is 0.
    for (std::size_t j = 0; j < n_cols; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += t[i][j];
        t[m][j] = s;
    }
    {
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += t[i][rhs_col];
        t[m][rhs_col] = s;
    }

    LpSolution sol;
    bool hit_cap = false;
    run_simplex(t, basis, n_cols, opt, sol.iterations, hit_cap);
    if (hit_cap) {
        sol.status = LpStatus::NumericalFailure;
        return sol;
    }
    if (t[m][rhs_col] > opt.feas_tol) {  // residual infeasibility (= sum of artificials)
        sol.status = LpStatus::Infeasible;
        return sol;
    }

    // Drive artificials out of the basis where a structural pivot exists.
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n_cols) continue;
        std::size_t piv = n_cols;
        for (std::size_t j = 0; j < n_cols; ++j)
            if (std::fabs(t[i][j]) > opt.pivot_tol) {
                piv = j;
                break;
            }
        if (piv == n_cols) continue;  // redundant row; artificial stays basic at zero
        const double inv = 1.0 / t[i][piv];
        for (double& v : t[i]) v *= inv;
        t[i][piv] = 1.0;
        for (std::size_t ii = 0; ii <= m; ++ii) {
            if (ii == i) continue;
            const double f = t[ii][piv];
            if (f == 0.0) continue;
            for (std::size_t k = 0; k <= rhs_col; ++k) t[ii][k] -= f * t[i][k];
            t[ii][piv] = 0.0;
        }
        basis[i] = piv;
    }

    // Phase 2 objective in standard-form variables.
    for (double& v : t[m]) v = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double c = lp.objective[j];
        if (c == 0.0) continue;
        switch (vmap[j].kind) {
            case VarMap::Shifted: t[m][vmap[j].u1] += c; break;
            case VarMap::Mirrored: t[m][vmap[j].u1] -= c; break;
            case VarMap::Split:
                t[m][vmap[j].u1] += c;
                t[m][vmap[j].u2] -= c;
                break;
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double c = t[m][basis[i]];
        if (c == 0.0) continue;
        for (std::size_t k = 0; k <= rhs_col; ++k) t[m][k] -= c * t[i][k];
    }

    const bool optimal = run_simplex(t, basis, n_cols, opt, sol.iterations, hit_cap);
    if (hit_cap) {
        sol.status = LpStatus::NumericalFailure;
        return sol;
    }
    if (!optimal) {
        sol.status = LpStatus::Unbounded;
        return sol;
    }

    Vec u(n_cols, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n_cols) u[basis[i]] = t[i][rhs_col];
    sol.point.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        switch (vmap[j].kind) {
            case VarMap::Shifted: sol.point[j] = vmap[j].base + u[vmap[j].u1]; break;
            case VarMap::Mirrored: sol.point[j] = vmap[j].base - u[vmap[j].u1]; break;
            case VarMap::Split: sol.point[j] = u[vmap[j].u1] - u[vmap[j].u2]; break;
        }
    }
    sol.value = dot(lp.objective, sol.point);

    // Independent feasibility re-check on the original data.
    const double check_tol = 1e-8;
    for (std::size_t i = 0; i < m_eq; ++i)
        if (std::fabs(dot(lp.eq_lhs[i], sol.point) - lp.eq_rhs[i]) > check_tol) {
            sol.status = LpStatus::NumericalFailure;
            return sol;
        }
    for (std::size_t i = 0; i < m_ineq; ++i)
        if (dot(lp.ineq_lhs[i], sol.point) > lp.ineq_rhs[i] + check_tol) {
            sol.status = LpStatus::NumericalFailure;
            return sol;
        }
    for (std::size_t j = 0; j < n; ++j)
        if (sol.point[j] < lp.lower[j] - check_tol || sol.point[j] > lp.upper[j] + check_tol) {
            sol.status = LpStatus::NumericalFailure;
            return sol;
        }

    sol.status = LpStatus::Optimal;
    return sol;
}

}  // namespace sre

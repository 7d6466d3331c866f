#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

namespace sre {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
    return s;
}

inline double inf_norm(const Vec& v) {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::fabs(x));
    return s;
}

inline double inf_distance(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::fabs(a[k] - b[k]));
    return s;
}

// Gaussian elimination with partial pivoting. Returns nullopt when the
// matrix is singular relative to its own scale.
inline std::optional<Vec> solve_square(Mat a, Vec b, double rel_tol = 1e-12) {
    const std::size_t n = a.size();
    double scale = 0.0;
    for (const Vec& row : a) scale = std::max(scale, inf_norm(row));
    const double tol = rel_tol * std::max(1.0, scale);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        if (std::fabs(a[pivot][col]) <= tol) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(b[pivot], b[col]);
        const double inv = 1.0 / a[col][col];
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] * inv;
            if (f == 0.0) continue;
            for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
            b[r] -= f * b[col];
        }
    }
    Vec x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = b[k] / a[k][k];
    return x;
}

enum class SystemRank { Inconsistent, Unique, Deficient };

struct AffineSolveResult {
    SystemRank kind = SystemRank::Inconsistent;
    Vec point;  // minimal-norm solution when consistent
    std::size_t rank = 0;
};

// Solves a (possibly rank-deficient) square or rectangular system a x = b.
// Consistent deficient systems return the minimal-norm point of the
// solution set, computed from a particular solution and a nullspace basis.
inline AffineSolveResult solve_affine_min_norm(Mat a, Vec b, double rel_tol = 1e-9) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    double scale = 0.0;
    for (const Vec& row : a) scale = std::max(scale, inf_norm(row));
    for (double v : b) scale = std::max(scale, std::fabs(v));
    const double tol = rel_tol * std::max(1.0, scale);

    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = r;
        for (std::size_t rr = r + 1; rr < rows; ++rr)
            if (std::fabs(a[rr][c]) > std::fabs(a[best][c])) best = rr;
        if (std::fabs(a[best][c]) <= tol) continue;
        std::swap(a[best], a[r]);
        std::swap(b[best], b[r]);
        const double inv = 1.0 / a[r][c];
        for (std::size_t k = c; k < cols; ++k) a[r][k] *= inv;
        b[r] *= inv;
        for (std::size_t rr = 0; rr < rows; ++rr) {
            if (rr == r) continue;
            const double f = a[rr][c];
            if (f == 0.0) continue;
            for (std::size_t k = c; k < cols; ++k) a[rr][k] -= f * a[r][k];
            b[rr] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t rr = r; rr < rows; ++rr)
        if (std::fabs(b[rr]) > tol) return {SystemRank::Inconsistent, {}, r};

    std::vector<bool> is_pivot(cols, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;

    Vec particular(cols, 0.0);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) particular[pivot_col[i]] = b[i];

    if (r == cols) return {SystemRank::Unique, particular, r};

    // Nullspace basis: one vector per free column.
    Mat basis;
    for (std::size_t c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        Vec v(cols, 0.0);
        v[c] = 1.0;
        for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -a[i][c];
        basis.push_back(std::move(v));
    }
    // Minimize ||particular + B^T t||: solve (B B^T) t = -B particular.
    const std::size_t k = basis.size();
    Mat gram(k, Vec(k, 0.0));
    Vec rhs(k, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
        rhs[i] = -dot(basis[i], particular);
    }
    Vec point = particular;
    if (auto t = solve_square(gram, rhs)) {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t c = 0; c < cols; ++c) point[c] += (*t)[i] * basis[i][c];
    }
    return {SystemRank::Deficient, point, r};
}

}  // namespace sre

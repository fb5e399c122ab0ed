#pragma once

// Small exact rational linear algebra for the polyhedral code: rank, linear
// solve, and integer null vectors of (n-1)-row systems.

#include "rational.hpp"

#include <numeric>
#include <optional>
#include <vector>

namespace igusa {

using RatMatrix = std::vector<std::vector<Rat>>;

inline int rank(RatMatrix m) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size();
    int r = 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
        std::size_t piv = static_cast<std::size_t>(r);
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[static_cast<std::size_t>(r)], m[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == static_cast<std::size_t>(r) || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[static_cast<std::size_t>(r)][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[static_cast<std::size_t>(r)][j];
        }
        ++r;
    }
    return r;
}

inline int rank_of_longs(const std::vector<std::vector<long>>& rows) {
    RatMatrix m;
    for (auto& r : rows) {
        std::vector<Rat> row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    return rank(m);
}

/// Solve A x = b exactly; nullopt if inconsistent. Requires unique solution
/// on the column space (columns of A linearly independent).
inline std::optional<std::vector<Rat>> solve_unique(RatMatrix A, std::vector<Rat> b) {
    std::size_t rows = A.size();
    std::size_t cols = rows ? A[0].size() : 0;
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && A[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(A[r], A[piv]);
        std::swap(b[r], b[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || A[i][c] == 0) continue;
            Rat f = A[i][c] / A[r][c];
            for (std::size_t j = c; j < cols; ++j) A[i][j] -= f * A[r][j];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    if (pivot_col.size() != cols) return std::nullopt; // not full column rank
    for (std::size_t i = r; i < rows; ++i)
        if (b[i] != 0) return std::nullopt;
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = b[k] / A[k][pivot_col[k]];
    return x;
}

/// A primitive integer vector spanning the null space of the given rows,
/// when that null space is one-dimensional; nullopt otherwise.
inline std::optional<std::vector<long>> primitive_null_vector(
    const std::vector<std::vector<long>>& rows, std::size_t dim) {
    RatMatrix m;
    for (auto& r : rows) {
        std::vector<Rat> row;
        for (long v : r) row.emplace_back(v);
        m.push_back(std::move(row));
    }
    // Reduce and read off the single free column.
    std::size_t nrows = m.size();
    std::vector<int> pivot_of_col(dim, -1);
    std::size_t r = 0;
    for (std::size_t c = 0; c < dim && r < nrows; ++c) {
        std::size_t piv = r;
        while (piv < nrows && m[piv][c] == 0) ++piv;
        if (piv == nrows) continue;
        std::swap(m[r], m[piv]);
        for (std::size_t i = 0; i < nrows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c] / m[r][c];
            for (std::size_t j = c; j < dim; ++j) m[i][j] -= f * m[r][j];
        }
        pivot_of_col[c] = static_cast<int>(r);
        ++r;
    }
    if (r + 1 != dim) return std::nullopt;
    std::size_t free_col = 0;
    while (free_col < dim && pivot_of_col[free_col] >= 0) ++free_col;
    std::vector<Rat> v(dim, Rat(0));
    v[free_col] = 1;
    for (std::size_t c = 0; c < dim; ++c) {
        int pr = pivot_of_col[c];
        if (pr < 0) continue;
        v[c] = -m[static_cast<std::size_t>(pr)][free_col] / m[static_cast<std::size_t>(pr)][c];
    }
    // Clear denominators, divide by gcd.
    Int lcm = 1;
    for (auto& x : v) lcm = lcm / gcd(lcm, Int(x.get_den())) * Int(x.get_den());
    std::vector<Int> w;
    for (auto& x : v) w.push_back(Int(x.get_num()) * (lcm / Int(x.get_den())));
    Int g = 0;
    for (auto& x : w) g = gcd(g, x);
    if (g == 0) return std::nullopt;
    std::vector<long> out;
    for (auto& x : w) out.push_back(static_cast<long>(Int(x / g).get_si()));
    return out;
}

} // namespace igusa

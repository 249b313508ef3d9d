#pragma once

#include <cstdint>
#include <vector>

#include "postulab/field.hpp"

namespace postulab {

// Dense row-major matrix over F_p. Slice dimensions at desk scale stay in
// the hundreds, so plain Gaussian elimination is enough.
struct fp_matrix {
    std::size_t ncols = 0;
    std::vector<std::vector<std::uint32_t>> rows;

    void add_row(std::vector<std::uint32_t> r) { rows.push_back(std::move(r)); }
};

// In-place reduction to row echelon form; returns the pivot columns.
inline std::vector<std::size_t> echelonize(const prime_field& F, fp_matrix& M,
                                           bool reduced = false) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < M.ncols && r < M.rows.size(); ++c) {
        std::size_t sel = r;
        while (sel < M.rows.size() && M.rows[sel][c] == 0) ++sel;
        if (sel == M.rows.size()) continue;
        std::swap(M.rows[r], M.rows[sel]);
        const std::uint32_t inv = F.inv(M.rows[r][c]);
        auto& prow = M.rows[r];
        for (std::size_t j = c; j < M.ncols; ++j) prow[j] = F.mul(prow[j], inv);
        const std::size_t lo = reduced ? 0 : r + 1;
        for (std::size_t i = lo; i < M.rows.size(); ++i) {
            if (i == r) continue;
            const std::uint32_t f = M.rows[i][c];
            if (f == 0) continue;
            auto& row = M.rows[i];
            for (std::size_t j = c; j < M.ncols; ++j)
                row[j] = F.sub(row[j], F.mul(f, prow[j]));
        }
        pivots.push_back(c);
        ++r;
    }
    M.rows.resize(r);
    return pivots;
}

inline std::size_t rank(const prime_field& F, fp_matrix M) {
    return echelonize(F, M).size();
}

// Basis of the right null space {v : M v = 0}.
inline std::vector<std::vector<std::uint32_t>> null_space(const prime_field& F,
                                                          fp_matrix M) {
    const std::size_t n = M.ncols;
    auto pivots = echelonize(F, M, /*reduced=*/true);
    std::vector<char> is_pivot(n, 0);
    for (auto c : pivots) is_pivot[c] = 1;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free_c = 0; free_c < n; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<std::uint32_t> v(n, 0);
        v[free_c] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = F.neg(M.rows[i][free_c]);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace postulab

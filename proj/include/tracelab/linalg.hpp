#pragma once

// Dense linear algebra over a Field.

#include <cstddef>
#include <vector>

#include "field.hpp"

namespace tracelab {

using Matrix = std::vector<std::vector<elem>>;

/// In-place reduced row echelon form; returns the pivot columns. Zero rows are dropped.
inline std::vector<std::size_t> rref(const Field &F, Matrix &m, std::size_t ncols)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
        std::size_t sel = row;
        while (sel < m.size() && m[sel][col] == 0) ++sel;
        if (sel == m.size()) continue;
        std::swap(m[row], m[sel]);
        const elem li = F.inv(m[row][col]);
        for (auto &v : m[row]) v = F.mul(v, li);
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || m[r][col] == 0) continue;
            const elem c = m[r][col];
            for (std::size_t j = 0; j < ncols; ++j) {
                if (m[row][j]) m[r][j] = F.sub(m[r][j], F.mul(c, m[row][j]));
            }
        }
        pivots.push_back(col);
        ++row;
    }
    m.resize(row);
    return pivots;
}

/// Basis of {v : m v = 0}, one vector per free column, in increasing free-column order.
inline Matrix nullspace(const Field &F, Matrix m, std::size_t ncols)
{
    auto pivots = rref(F, m, ncols);
    std::vector<bool> is_pivot(ncols, false);
    for (auto c : pivots) is_pivot[c] = true;
    Matrix out;
    for (std::size_t free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<elem> v(ncols, 0);
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(m[r][free]);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace tracelab

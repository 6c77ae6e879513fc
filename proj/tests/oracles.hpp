#pragma once

// Test-only reference implementations, deliberately independent of the
// elimination code under test: determinants by cofactor expansion and rank
// as the largest order of a nonzero minor.

#include <blocktrans/matrix.hpp>

namespace blocktrans::testing {

inline Scalar cofactor_determinant(const ExactMatrix& m) {
    if (m.n_rows() != m.n_cols()) throw NotSquareError("cofactor oracle needs a square matrix");
    const std::size_t n = m.n_rows();
    if (n == 0) return Scalar::one(m.field());
    if (n == 1) return m.at(0, 0);
    Scalar total = Scalar::zero(m.field());
    IndexSet rows;
    for (std::size_t r = 1; r < n; ++r) rows.push_back(r);
    for (std::size_t c = 0; c < n; ++c) {
        IndexSet cols;
        for (std::size_t k = 0; k < n; ++k) {
            if (k != c) cols.push_back(k);
        }
        const Scalar minor = cofactor_determinant(m.submatrix(rows, cols));
        const Scalar term = m.at(0, c) * minor;
        total = c % 2 == 0 ? total + term : total - term;
    }
    return total;
}

namespace detail {

inline bool any_nonzero_minor(const ExactMatrix& m, std::size_t order) {
    std::vector<std::size_t> rows(order), cols(order);
    for (std::size_t i = 0; i < order; ++i) rows[i] = i;
    auto next_combination = [](std::vector<std::size_t>& c, std::size_t n) {
        std::size_t i = c.size();
        while (i > 0) {
            --i;
            if (c[i] + (c.size() - i) <= n - 1) {
                ++c[i];
                for (std::size_t j = i + 1; j < c.size(); ++j) c[j] = c[j - 1] + 1;
                return true;
            }
        }
        return false;
    };
    do {
        for (std::size_t i = 0; i < order; ++i) cols[i] = i;
        do {
            if (!cofactor_determinant(m.submatrix(rows, cols)).is_zero()) return true;
        } while (next_combination(cols, m.n_cols()));
    } while (next_combination(rows, m.n_rows()));
    return false;
}

}  // namespace detail

/// Rank as the largest k with some nonzero k x k minor. Exponential; keep
/// inputs at 6x6 or smaller.
inline std::size_t minor_rank(const ExactMatrix& m) {
    std::size_t best = 0;
    const std::size_t cap = std::min(m.n_rows(), m.n_cols());
    for (std::size_t order = 1; order <= cap; ++order) {
        if (detail::any_nonzero_minor(m, order)) best = order;
    }
    return best;
}

}  // namespace blocktrans::testing

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <blocktrans/field.hpp>

namespace blocktrans {

/// An index set over rows or columns: ascending, duplicate-free.
using IndexSet = std::vector<std::size_t>;

/// Dense matrix over a FieldSpec field, stored row-major. Rows are indexed
/// 0..n_rows-1 and columns 0..n_cols-1; 0xk and kx0 shapes are valid and
/// have rank 0.
class ExactMatrix {
public:
    /// Zero-filled matrix of the given shape.
    ExactMatrix(FieldSpec field, std::size_t n_rows, std::size_t n_cols);

    static ExactMatrix identity(const FieldSpec& field, std::size_t n);

    /// Builds from integer literals, reducing mod p for prime fields.
    /// All rows must have equal length.
    static ExactMatrix from_integers(const FieldSpec& field,
                                     const std::vector<std::vector<long long>>& rows);

    const FieldSpec& field() const { return field_; }
    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_cols() const { return n_cols_; }

    const Scalar& at(std::size_t row, std::size_t col) const;
    void set(std::size_t row, std::size_t col, Scalar value);

    /// The intersection of the given rows and columns. Index sets must be
    /// ascending and duplicate-free; extraction preserves that order.
    /// Empty selections yield 0xk / kx0 / 0x0 matrices.
    ExactMatrix submatrix(std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols) const;

    ExactMatrix transpose() const;

    /// Exact rank: Gaussian elimination over GF(p), Bareiss fraction-free
    /// elimination over the rationals.
    std::size_t rank() const;

    /// Exact determinant; the 0x0 matrix has determinant one. Throws
    /// NotSquareError otherwise.
    Scalar determinant() const;

    /// True iff square and determinant nonzero; the 0x0 matrix counts as
    /// nonsingular.
    bool is_nonsingular() const;

    bool operator==(const ExactMatrix& rhs) const;

private:
    std::size_t offset(std::size_t row, std::size_t col) const { return row * n_cols_ + col; }
    void check_indices(std::size_t row, std::size_t col) const;

    FieldSpec field_;
    std::size_t n_rows_;
    std::size_t n_cols_;
    std::vector<Scalar> entries_;
};

}  // namespace blocktrans

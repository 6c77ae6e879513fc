#include <blocktrans/matrix.hpp>

#include <algorithm>
#include <utility>

namespace blocktrans {

namespace {

// -- prime-field elimination ----------------------------------------------

struct PrimeGrid {
    std::size_t rows, cols;
    std::uint32_t p;
    std::vector<std::uint32_t> a;  // row-major residues

    std::uint32_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

std::uint32_t inverse_mod(std::uint32_t value, std::uint32_t p) {
    std::int64_t x0 = 0, x1 = 1, r0 = p, r1 = value;
    while (r1 != 0) {
        std::int64_t q = r0 / r1;
        std::int64_t tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
        tmp = x0 - q * x1;
        x0 = x1;
        x1 = tmp;
    }
    std::int64_t inv = x0 % p;
    if (inv < 0) inv += p;
    return static_cast<std::uint32_t>(inv);
}

// Row echelon reduction with first-nonzero pivoting. Returns the rank; when
// det_out is non-null the grid must be square and the signed pivot product
// (the determinant) is stored there.
std::size_t eliminate_prime(PrimeGrid& g, std::uint32_t* det_out) {
    const std::uint64_t p = g.p;
    std::size_t pivot_row = 0;
    int sign = 1;
    std::uint64_t pivot_product = 1 % p;
    for (std::size_t col = 0; col < g.cols && pivot_row < g.rows; ++col) {
        std::size_t src = pivot_row;
        while (src < g.rows && g.at(src, col) == 0) ++src;
        if (src == g.rows) {
            if (det_out != nullptr) {
                *det_out = 0;
                return pivot_row;
            }
            continue;
        }
        if (src != pivot_row) {
            for (std::size_t c = col; c < g.cols; ++c) std::swap(g.at(src, c), g.at(pivot_row, c));
            sign = -sign;
        }
        const std::uint64_t pivot = g.at(pivot_row, col);
        pivot_product = (pivot_product * pivot) % p;
        const std::uint64_t inv = inverse_mod(static_cast<std::uint32_t>(pivot), g.p);
        for (std::size_t r = pivot_row + 1; r < g.rows; ++r) {
            const std::uint64_t lead = g.at(r, col);
            if (lead == 0) continue;
            const std::uint64_t factor = (lead * inv) % p;
            for (std::size_t c = col; c < g.cols; ++c) {
                const std::uint64_t sub = (factor * g.at(pivot_row, c)) % p;
                g.at(r, c) = static_cast<std::uint32_t>((g.at(r, c) + p - sub) % p);
            }
        }
        ++pivot_row;
    }
    if (det_out != nullptr) {
        if (pivot_row < g.rows) {
            *det_out = 0;
        } else if (sign == 1 || pivot_product == 0) {
            *det_out = static_cast<std::uint32_t>(pivot_product);
        } else {
            *det_out = static_cast<std::uint32_t>(p - pivot_product);
        }
    }
    return pivot_row;
}

// -- fraction-free elimination over the integers ---------------------------

struct IntegerGrid {
    std::size_t rows, cols;
    std::vector<mpz_class> a;

    mpz_class& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
};

struct BareissOutcome {
    std::size_t rank = 0;
    int sign = 1;
    mpz_class last_pivot = 0;  // determinant of the permuted leading minor
};

// Bareiss fraction-free elimination with row and column exchanges so that
// rank-deficient input is handled; every division is exact.
BareissOutcome eliminate_bareiss(IntegerGrid& g) {
    BareissOutcome out;
    const std::size_t steps = std::min(g.rows, g.cols);
    mpz_class prev = 1;
    for (std::size_t k = 0; k < steps; ++k) {
        std::size_t pr = g.rows, pc = 0;
        for (std::size_t r = k; r < g.rows && pr == g.rows; ++r) {
            for (std::size_t c = k; c < g.cols; ++c) {
                if (g.at(r, c) != 0) {
                    pr = r;
                    pc = c;
                    break;
                }
            }
        }
        if (pr == g.rows) break;  // remaining block is zero
        if (pr != k) {
            for (std::size_t c = 0; c < g.cols; ++c) std::swap(g.at(pr, c), g.at(k, c));
            out.sign = -out.sign;
        }
        if (pc != k) {
            for (std::size_t r = 0; r < g.rows; ++r) std::swap(g.at(r, pc), g.at(r, k));
            out.sign = -out.sign;
        }
        for (std::size_t r = k + 1; r < g.rows; ++r) {
            for (std::size_t c = k + 1; c < g.cols; ++c) {
                g.at(r, c) = (g.at(r, c) * g.at(k, k) - g.at(r, k) * g.at(k, c)) / prev;
            }
            g.at(r, k) = 0;
        }
        prev = g.at(k, k);
        out.rank = k + 1;
        out.last_pivot = prev;
    }
    return out;
}

// Scales every row of a rational matrix to integers. Returns the product of
// the row scale factors (all positive).
mpz_class clear_denominators(const ExactMatrix& m, IntegerGrid& g) {
    g.rows = m.n_rows();
    g.cols = m.n_cols();
    g.a.assign(g.rows * g.cols, mpz_class(0));
    mpz_class total_scale = 1;
    for (std::size_t r = 0; r < g.rows; ++r) {
        mpz_class scale = 1;
        for (std::size_t c = 0; c < g.cols; ++c) {
            mpz_class den = m.at(r, c).fraction().get_den();
            mpz_class gcd;
            mpz_gcd(gcd.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
            scale *= den / gcd;
        }
        for (std::size_t c = 0; c < g.cols; ++c) {
            const mpq_class& q = m.at(r, c).fraction();
            g.at(r, c) = q.get_num() * (scale / q.get_den());
        }
        total_scale *= scale;
    }
    return total_scale;
}

void check_index_set(std::span<const std::size_t> set, std::size_t bound, const char* what) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] >= bound) {
            throw IndexOutOfRangeError(std::string(what) + " index " + std::to_string(set[i]) +
                                       " out of range (dimension " + std::to_string(bound) + ")");
        }
        if (i > 0 && set[i] <= set[i - 1]) {
            throw Error(std::string(what) + " index set must be strictly ascending");
        }
    }
}

}  // namespace

ExactMatrix::ExactMatrix(FieldSpec field, std::size_t n_rows, std::size_t n_cols)
    : field_(field),
      n_rows_(n_rows),
      n_cols_(n_cols),
      entries_(n_rows * n_cols, Scalar::zero(field)) {}

ExactMatrix ExactMatrix::identity(const FieldSpec& field, std::size_t n) {
    ExactMatrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, Scalar::one(field));
    return m;
}

ExactMatrix ExactMatrix::from_integers(const FieldSpec& field,
                                       const std::vector<std::vector<long long>>& rows) {
    const std::size_t n_rows = rows.size();
    const std::size_t n_cols = n_rows == 0 ? 0 : rows.front().size();
    ExactMatrix m(field, n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (rows[r].size() != n_cols) throw Error("ragged row lengths in matrix literal");
        for (std::size_t c = 0; c < n_cols; ++c) {
            m.set(r, c, Scalar::from_integer(field, rows[r][c]));
        }
    }
    return m;
}

void ExactMatrix::check_indices(std::size_t row, std::size_t col) const {
    if (row >= n_rows_ || col >= n_cols_) {
        throw IndexOutOfRangeError("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                                   ") out of range for " + std::to_string(n_rows_) + "x" +
                                   std::to_string(n_cols_) + " matrix");
    }
}

const Scalar& ExactMatrix::at(std::size_t row, std::size_t col) const {
    check_indices(row, col);
    return entries_[offset(row, col)];
}

void ExactMatrix::set(std::size_t row, std::size_t col, Scalar value) {
    check_indices(row, col);
    if (value.field() != field_) throw FieldMismatchError("entry field differs from matrix field");
    entries_[offset(row, col)] = std::move(value);
}

ExactMatrix ExactMatrix::submatrix(std::span<const std::size_t> rows,
                                   std::span<const std::size_t> cols) const {
    check_index_set(rows, n_rows_, "row");
    check_index_set(cols, n_cols_, "column");
    ExactMatrix out(field_, rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            out.entries_[out.offset(r, c)] = entries_[offset(rows[r], cols[c])];
        }
    }
    return out;
}

ExactMatrix ExactMatrix::transpose() const {
    ExactMatrix out(field_, n_cols_, n_rows_);
    for (std::size_t r = 0; r < n_rows_; ++r) {
        for (std::size_t c = 0; c < n_cols_; ++c) {
            out.entries_[out.offset(c, r)] = entries_[offset(r, c)];
        }
    }
    return out;
}

std::size_t ExactMatrix::rank() const {
    if (n_rows_ == 0 || n_cols_ == 0) return 0;
    if (field_.kind == FieldKind::prime) {
        PrimeGrid g{n_rows_, n_cols_, field_.modulus, {}};
        g.a.resize(n_rows_ * n_cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) g.a[i] = entries_[i].residue();
        return eliminate_prime(g, nullptr);
    }
    IntegerGrid g;
    clear_denominators(*this, g);
    return eliminate_bareiss(g).rank;
}

Scalar ExactMatrix::determinant() const {
    if (n_rows_ != n_cols_) {
        throw NotSquareError("determinant of " + std::to_string(n_rows_) + "x" +
                             std::to_string(n_cols_) + " matrix");
    }
    if (n_rows_ == 0) return Scalar::one(field_);
    if (field_.kind == FieldKind::prime) {
        PrimeGrid g{n_rows_, n_cols_, field_.modulus, {}};
        g.a.resize(n_rows_ * n_cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) g.a[i] = entries_[i].residue();
        std::uint32_t det = 0;
        eliminate_prime(g, &det);
        return Scalar::from_integer(field_, det);
    }
    IntegerGrid g;
    mpz_class scale = clear_denominators(*this, g);
    BareissOutcome out = eliminate_bareiss(g);
    if (out.rank < n_rows_) return Scalar::zero(field_);
    mpq_class det(out.sign < 0 ? mpz_class(-out.last_pivot) : out.last_pivot, scale);
    return Scalar::from_fraction(std::move(det));
}

bool ExactMatrix::is_nonsingular() const {
    if (n_rows_ != n_cols_) {
        throw NotSquareError("nonsingularity of " + std::to_string(n_rows_) + "x" +
                             std::to_string(n_cols_) + " matrix");
    }
    return rank() == n_rows_;
}

bool ExactMatrix::operator==(const ExactMatrix& rhs) const {
    if (field_ != rhs.field_ || n_rows_ != rhs.n_rows_ || n_cols_ != rhs.n_cols_) return false;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] != rhs.entries_[i]) return false;
    }
    return true;
}

}  // namespace blocktrans

#include <doctest.h>

#include <random>

#include <blocktrans/matrix.hpp>

#include "oracles.hpp"

using namespace blocktrans;
using blocktrans::testing::cofactor_determinant;
using blocktrans::testing::minor_rank;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, const FieldSpec& field, std::size_t n_rows,
                          std::size_t n_cols) {
    ExactMatrix m(field, n_rows, n_cols);
    for (std::size_t r = 0; r < n_rows; ++r) {
        for (std::size_t c = 0; c < n_cols; ++c) {
            long long v;
            if (field.kind == FieldKind::prime) {
                v = static_cast<long long>(rng() % field.modulus);
            } else {
                v = static_cast<long long>(rng() % 11) - 5;
            }
            m.set(r, c, Scalar::from_integer(field, v));
        }
    }
    return m;
}

const std::vector<std::vector<long long>> kGf5Sample = {{1, 2, 0}, {2, 4, 1}, {0, 1, 3}};

}  // namespace

TEST_CASE("submatrix extraction") {
    const ExactMatrix id2 = ExactMatrix::identity(make_field("gf 2"), 2);
    const IndexSet r0 = {0}, c1 = {1};
    const ExactMatrix cell = id2.submatrix(r0, c1);
    CHECK(cell.n_rows() == 1);
    CHECK(cell.n_cols() == 1);
    CHECK(cell.at(0, 0).is_zero());

    const ExactMatrix empty = id2.submatrix(IndexSet{}, IndexSet{});
    CHECK(empty.n_rows() == 0);
    CHECK(empty.n_cols() == 0);
    CHECK(empty.rank() == 0);

    CHECK_THROWS_AS(id2.submatrix(IndexSet{2}, IndexSet{0}), IndexOutOfRangeError);
    CHECK_THROWS_AS(id2.submatrix(IndexSet{1, 0}, IndexSet{}), Error);
    CHECK_THROWS_AS(id2.submatrix(IndexSet{0, 0}, IndexSet{}), Error);
}

TEST_CASE("rank on worked examples") {
    CHECK(ExactMatrix::identity(make_field("gf 2"), 3).rank() == 3);

    const ExactMatrix ones =
        ExactMatrix::from_integers(FieldSpec::rationals(), {{1, 1}, {1, 1}});
    CHECK(ones.rank() == 1);

    const ExactMatrix gf5 = ExactMatrix::from_integers(make_field("gf 5"), kGf5Sample);
    CHECK(gf5.rank() == 3);
    CHECK(minor_rank(gf5) == 3);

    CHECK(ExactMatrix(FieldSpec::rationals(), 0, 4).rank() == 0);
    CHECK(ExactMatrix(FieldSpec::rationals(), 4, 0).rank() == 0);
    CHECK(ExactMatrix(make_field("gf 3"), 2, 3).rank() == 0);  // all zeros
}

TEST_CASE("determinant on worked examples") {
    CHECK(ExactMatrix(FieldSpec::rationals(), 0, 0).determinant() ==
          Scalar::one(FieldSpec::rationals()));

    const ExactMatrix ones =
        ExactMatrix::from_integers(FieldSpec::rationals(), {{1, 1}, {1, 1}});
    CHECK(ones.determinant().is_zero());

    const FieldSpec gf5 = make_field("gf 5");
    const ExactMatrix sample = ExactMatrix::from_integers(gf5, kGf5Sample);
    CHECK(sample.determinant() == Scalar::from_integer(gf5, 4));
    CHECK(cofactor_determinant(sample) == Scalar::from_integer(gf5, 4));

    CHECK_THROWS_AS(ExactMatrix(gf5, 2, 3).determinant(), NotSquareError);
}

TEST_CASE("nonsingularity on worked examples") {
    CHECK(ExactMatrix(FieldSpec::rationals(), 0, 0).is_nonsingular());
    CHECK(ExactMatrix::identity(make_field("gf 2"), 2).is_nonsingular());
    CHECK_FALSE(
        ExactMatrix::from_integers(FieldSpec::rationals(), {{1, 1}, {1, 1}}).is_nonsingular());
    CHECK_THROWS_AS(ExactMatrix(FieldSpec::rationals(), 1, 2).is_nonsingular(), NotSquareError);
}

TEST_CASE("rational determinants with fractional entries") {
    const FieldSpec q = FieldSpec::rationals();
    ExactMatrix m(q, 2, 2);
    m.set(0, 0, Scalar::parse(q, "1/2"));
    m.set(0, 1, Scalar::parse(q, "1/3"));
    m.set(1, 0, Scalar::parse(q, "1/5"));
    m.set(1, 1, Scalar::parse(q, "1/7"));
    // 1/14 - 1/15 = 1/210
    CHECK(m.determinant().to_string() == "1/210");
    CHECK(m.determinant() == cofactor_determinant(m));
    CHECK(m.rank() == 2);
}

TEST_CASE("elimination agrees with minor oracles on random matrices") {
    std::mt19937_64 rng(7);
    const FieldSpec fields[] = {make_field("gf 2"), make_field("gf 5"), FieldSpec::rationals()};
    for (const FieldSpec& f : fields) {
        for (int trial = 0; trial < 60; ++trial) {
            const std::size_t n_rows = 1 + rng() % 4;
            const std::size_t n_cols = 1 + rng() % 4;
            const ExactMatrix m = random_matrix(rng, f, n_rows, n_cols);
            CHECK(m.rank() == minor_rank(m));
            if (n_rows == n_cols) CHECK(m.determinant() == cofactor_determinant(m));
        }
    }
}

TEST_CASE("determinant identities on matrices past the oracle's reach") {
    const FieldSpec q = FieldSpec::rationals();
    std::mt19937_64 rng(77);
    auto fraction = [&rng, &q](long long num_range, long long den_range) {
        const long long num = static_cast<long long>(rng() % (2 * num_range + 1)) - num_range;
        const long long den = 1 + static_cast<long long>(rng() % den_range);
        return Scalar::from_integer(q, num) / Scalar::from_integer(q, den);
    };

    // triangular: the determinant is the diagonal product
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 12;
        ExactMatrix m(q, n, n);
        Scalar expected = Scalar::one(q);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = r; c < n; ++c) {
                const Scalar v = fraction(99, 50);
                m.set(r, c, v);
                if (r == c) expected = expected * v;
            }
        }
        CHECK(m.determinant() == expected);
    }

    // swapping two rows flips the sign; duplicating a row forces zero
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t n = 9;
        ExactMatrix m(q, n, n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) m.set(r, c, fraction(20, 12));
        }
        ExactMatrix swapped = m;
        for (std::size_t c = 0; c < n; ++c) {
            const Scalar tmp = swapped.at(2, c);
            swapped.set(2, c, swapped.at(5, c));
            swapped.set(5, c, tmp);
        }
        CHECK(m.determinant() == -swapped.determinant());

        ExactMatrix doubled = m;
        for (std::size_t c = 0; c < n; ++c) doubled.set(4, c, doubled.at(7, c));
        CHECK(doubled.determinant().is_zero());
        CHECK(doubled.rank() == doubled.transpose().rank());
    }
}

TEST_CASE("rank invariants under randomized inputs") {
    std::mt19937_64 rng(99);
    const FieldSpec fields[] = {make_field("gf 3"), FieldSpec::rationals()};
    for (const FieldSpec& f : fields) {
        for (int trial = 0; trial < 80; ++trial) {
            const std::size_t n_rows = 1 + rng() % 5;
            const std::size_t n_cols = 1 + rng() % 5;
            const ExactMatrix m = random_matrix(rng, f, n_rows, n_cols);
            const std::size_t r = m.rank();

            CHECK(r <= std::min(n_rows, n_cols));
            CHECK(m.transpose().rank() == r);

            // random submatrix never exceeds the full rank
            IndexSet rows, cols;
            for (std::size_t i = 0; i < n_rows; ++i) {
                if (rng() % 2 == 0) rows.push_back(i);
            }
            for (std::size_t j = 0; j < n_cols; ++j) {
                if (rng() % 2 == 0) cols.push_back(j);
            }
            CHECK(m.submatrix(rows, cols).rank() <= r);

            // removing one column changes the rank by at most one
            const std::size_t dropped = rng() % n_cols;
            IndexSet kept_cols, all_rows;
            for (std::size_t i = 0; i < n_rows; ++i) all_rows.push_back(i);
            for (std::size_t j = 0; j < n_cols; ++j) {
                if (j != dropped) kept_cols.push_back(j);
            }
            const std::size_t reduced = m.submatrix(all_rows, kept_cols).rank();
            CHECK(r - reduced <= 1);
            CHECK(reduced <= r);

            if (n_rows == n_cols) {
                const bool nonsingular = m.is_nonsingular();
                CHECK(nonsingular == (r == n_rows));
                CHECK(nonsingular == !m.determinant().is_zero());
            }
        }
    }
}

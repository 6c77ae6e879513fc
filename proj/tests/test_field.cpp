#include <doctest.h>

#include <random>

#include <blocktrans/field.hpp>

using namespace blocktrans;

TEST_CASE("make_field accepts primes and rational") {
    const FieldSpec gf5 = make_field("gf 5");
    CHECK(gf5.kind == FieldKind::prime);
    CHECK(gf5.modulus == 5);
    CHECK(gf5.to_string() == "gf 5");

    const FieldSpec q = make_field("rational");
    CHECK(q.kind == FieldKind::rational);
    CHECK(q.to_string() == "rational");

    CHECK(make_field("gf 2147483647").modulus == 2147483647u);  // 2^31 - 1 is prime
}

TEST_CASE("make_field rejects bad descriptors") {
    CHECK_THROWS_AS(make_field("gf 4"), NotPrimeError);
    CHECK_THROWS_AS(make_field("gf 1"), NotPrimeError);
    CHECK_THROWS_AS(make_field("gf 0"), NotPrimeError);
    CHECK_THROWS_AS(make_field("gf 2147483648"), OutOfRangeError);  // 2^31
    CHECK_THROWS_AS(make_field("gf 99999999999999999999999"), OutOfRangeError);
    CHECK_THROWS_AS(make_field("gf"), Error);
    CHECK_THROWS_AS(make_field("gf -7"), Error);
    CHECK_THROWS_AS(make_field("real"), Error);
    CHECK_THROWS_AS(make_field(""), Error);
}

TEST_CASE("is_prime spot values") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(2147483647));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(4));
    CHECK_FALSE(is_prime(2147483649ULL));  // 3 * 715827883
    CHECK_FALSE(is_prime(1093 * 1093ULL));
}

TEST_CASE("prime field arithmetic") {
    const FieldSpec f = make_field("gf 7");
    const Scalar a = Scalar::from_integer(f, 5);
    const Scalar b = Scalar::from_integer(f, 4);
    CHECK((a + b).residue() == 2);
    CHECK((a - b).residue() == 1);
    CHECK((a * b).residue() == 6);
    CHECK((a / b).residue() == 3);  // 4 * 3 = 12 = 5
    CHECK((-a).residue() == 2);
    CHECK(Scalar::from_integer(f, -1).residue() == 6);
    CHECK(Scalar::from_integer(f, 21).is_zero());
    CHECK(a.inverse().residue() == 3);  // 5 * 3 = 15 = 1
    CHECK_THROWS_AS(Scalar::zero(f).inverse(), DivisionByZeroError);
    CHECK_THROWS_AS(a / Scalar::zero(f), DivisionByZeroError);
}

TEST_CASE("rational arithmetic stays in lowest terms") {
    const FieldSpec q = FieldSpec::rationals();
    const Scalar half = Scalar::parse(q, "1/2");
    const Scalar third = Scalar::parse(q, "2/6");
    CHECK(third.to_string() == "1/3");
    CHECK((half + third).to_string() == "5/6");
    CHECK((half - third).to_string() == "1/6");
    CHECK((half * third).to_string() == "1/6");
    CHECK((half / third).to_string() == "3/2");
    CHECK((-half).to_string() == "-1/2");
    CHECK(Scalar::parse(q, "-4/6").to_string() == "-2/3");
    CHECK(Scalar::parse(q, "3/-6").to_string() == "-1/2");  // denominator sign normalized
    CHECK(Scalar::parse(q, "8/4").to_string() == "2");
    CHECK_THROWS_AS(Scalar::parse(q, "1/0"), DivisionByZeroError);
    CHECK_THROWS_AS(Scalar::parse(q, "x"), Error);
    CHECK_THROWS_AS(Scalar::parse(q, "1/2/3"), Error);
}

TEST_CASE("prime field parsing reduces decimal residues") {
    const FieldSpec f = make_field("gf 5");
    CHECK(Scalar::parse(f, "3").residue() == 3);
    CHECK(Scalar::parse(f, "7").residue() == 2);
    CHECK(Scalar::parse(f, "-1").residue() == 4);
    CHECK(Scalar::parse(f, "123456789123456789123456789").residue() == 4);
    CHECK_THROWS_AS(Scalar::parse(f, "1/2"), Error);
}

TEST_CASE("cross-field arithmetic is rejected") {
    const Scalar a = Scalar::from_integer(make_field("gf 5"), 2);
    const Scalar b = Scalar::from_integer(make_field("gf 7"), 2);
    const Scalar c = Scalar::from_integer(FieldSpec::rationals(), 2);
    CHECK_THROWS_AS(a + b, FieldMismatchError);
    CHECK_THROWS_AS(a * c, FieldMismatchError);
    CHECK(a != b);
    CHECK(a != c);
}

TEST_CASE("field axioms hold under randomized inputs") {
    std::mt19937_64 rng(20240311);
    const FieldSpec fields[] = {make_field("gf 2"), make_field("gf 5"), make_field("gf 97"),
                                FieldSpec::rationals()};
    for (const FieldSpec& f : fields) {
        const Scalar one = Scalar::one(f);
        for (int trial = 0; trial < 200; ++trial) {
            auto draw = [&]() {
                const long long v = static_cast<long long>(rng() % 41) - 20;
                return Scalar::from_integer(f, v);
            };
            const Scalar a = draw(), b = draw(), c = draw();
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK((a + b) + c == a + (b + c));
            if (!a.is_zero()) CHECK(a * a.inverse() == one);
            if (f.kind == FieldKind::rational) {
                const Scalar product = a * b;
                const mpz_class num = product.fraction().get_num();
                const mpz_class den = product.fraction().get_den();
                mpz_class g;
                mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                CHECK(g == 1);
                CHECK(den > 0);
            }
        }
    }
}

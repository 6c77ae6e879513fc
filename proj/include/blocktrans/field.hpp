#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

#include <gmpxx.h>

#include <blocktrans/errors.hpp>

namespace blocktrans {

enum class FieldKind { prime, rational };

/// Coefficient field for all exact arithmetic: GF(p) for a prime
/// 2 <= p < 2^31, or the field of rational numbers.
struct FieldSpec {
    FieldKind kind = FieldKind::rational;
    std::uint32_t modulus = 0;  // prime kind only

    /// Validated prime field. Throws NotPrimeError / OutOfRangeError.
    static FieldSpec gf(std::uint64_t p);
    static FieldSpec rationals();

    bool operator==(const FieldSpec&) const = default;

    /// "gf <p>" or "rational"; the inverse of make_field.
    std::string to_string() const;
};

/// Parses a textual field descriptor, "gf <p>" or "rational".
FieldSpec make_field(std::string_view descriptor);

/// Deterministic Miller-Rabin with bases 2, 3, 5, 7; exact for all
/// n < 3215031751, which covers every modulus this library accepts.
bool is_prime(std::uint64_t n);

/// Immutable field element. Prime-field values are canonical residues in
/// [0, p); rationals are reduced fractions with positive denominator.
/// Arithmetic between elements of different fields throws FieldMismatchError.
class Scalar {
public:
    static Scalar zero(const FieldSpec& field);
    static Scalar one(const FieldSpec& field);
    static Scalar from_integer(const FieldSpec& field, long long value);

    /// Rational-field scalar from a fraction; canonicalized on entry.
    static Scalar from_fraction(mpq_class value);

    /// Parses the textual form: a decimal integer (reduced mod p for prime
    /// fields) or "a/b" for rationals. The sign may sit on either part;
    /// the stored denominator is always positive.
    static Scalar parse(const FieldSpec& field, std::string_view text);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;

    Scalar operator+(const Scalar& rhs) const;
    Scalar operator-(const Scalar& rhs) const;
    Scalar operator*(const Scalar& rhs) const;
    Scalar operator/(const Scalar& rhs) const;
    Scalar operator-() const;
    Scalar inverse() const;

    bool operator==(const Scalar& rhs) const;
    bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

    /// Decimal residue for prime fields, "a" or "a/b" for rationals.
    std::string to_string() const;

    /// Canonical residue; prime fields only.
    std::uint32_t residue() const;

    /// Reduced fraction; rational field only.
    const mpq_class& fraction() const;

private:
    Scalar(FieldSpec field, std::uint32_t residue);
    Scalar(FieldSpec field, mpq_class fraction);

    void require_same_field(const Scalar& rhs) const;

    FieldSpec field_;
    std::variant<std::uint32_t, mpq_class> value_;
};

}  // namespace blocktrans

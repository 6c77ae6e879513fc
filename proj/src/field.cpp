#include <blocktrans/field.hpp>

#include <cctype>
#include <utility>

namespace blocktrans {

namespace {

// Operands stay below 2^32, so the product fits in 64 bits.
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a * b) % m;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    // Bases 2, 3, 5, 7 are a deterministic witness set below 3,215,031,751.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL}) {
        std::uint64_t x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldSpec FieldSpec::gf(std::uint64_t p) {
    if (p >= (1ULL << 31)) {
        throw OutOfRangeError("prime field modulus must be below 2^31, got " + std::to_string(p));
    }
    if (!is_prime(p)) {
        throw NotPrimeError(std::to_string(p) + " is not prime");
    }
    FieldSpec spec;
    spec.kind = FieldKind::prime;
    spec.modulus = static_cast<std::uint32_t>(p);
    return spec;
}

FieldSpec FieldSpec::rationals() {
    return FieldSpec{FieldKind::rational, 0};
}

std::string FieldSpec::to_string() const {
    if (kind == FieldKind::prime) return "gf " + std::to_string(modulus);
    return "rational";
}

FieldSpec make_field(std::string_view descriptor) {
    std::string_view s = trim(descriptor);
    if (s == "rational") return FieldSpec::rationals();
    if (s.substr(0, 2) == "gf") {
        std::string_view num = trim(s.substr(2));
        if (!num.empty() && is_integer_literal(num) && num.front() != '+' && num.front() != '-') {
            // Reject literals too long for uint64 before converting.
            if (num.size() > 19) {
                throw OutOfRangeError("prime field modulus must be below 2^31");
            }
            return FieldSpec::gf(std::stoull(std::string(num)));
        }
    }
    throw Error("unrecognized field descriptor \"" + std::string(descriptor) +
                "\" (expected \"gf <p>\" or \"rational\")");
}

Scalar::Scalar(FieldSpec field, std::uint32_t residue)
    : field_(field), value_(residue) {}

Scalar::Scalar(FieldSpec field, mpq_class fraction)
    : field_(field), value_(std::move(fraction)) {}

Scalar Scalar::zero(const FieldSpec& field) {
    if (field.kind == FieldKind::prime) return Scalar(field, std::uint32_t{0});
    return Scalar(field, mpq_class(0));
}

Scalar Scalar::one(const FieldSpec& field) {
    if (field.kind == FieldKind::prime) return Scalar(field, std::uint32_t{1 % field.modulus});
    return Scalar(field, mpq_class(1));
}

Scalar Scalar::from_integer(const FieldSpec& field, long long value) {
    if (field.kind == FieldKind::prime) {
        const long long p = field.modulus;
        long long r = value % p;
        if (r < 0) r += p;
        return Scalar(field, static_cast<std::uint32_t>(r));
    }
    mpq_class q(static_cast<long>(value));
    return Scalar(field, std::move(q));
}

Scalar Scalar::from_fraction(mpq_class value) {
    value.canonicalize();
    return Scalar(FieldSpec::rationals(), std::move(value));
}

Scalar Scalar::parse(const FieldSpec& field, std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw Error("empty scalar literal");
    const auto slash = s.find('/');
    std::string_view num_part = slash == std::string_view::npos ? s : trim(s.substr(0, slash));
    std::string_view den_part = slash == std::string_view::npos
                                    ? std::string_view{}
                                    : trim(s.substr(slash + 1));
    if (!is_integer_literal(num_part) ||
        (slash != std::string_view::npos && !is_integer_literal(den_part))) {
        throw Error("invalid scalar literal \"" + std::string(text) + "\"");
    }
    if (field.kind == FieldKind::prime) {
        if (slash != std::string_view::npos) {
            throw Error("fraction literal \"" + std::string(text) +
                        "\" is not valid in a prime field");
        }
        mpz_class v{std::string(num_part)};
        mpz_class r = v % field.modulus;
        if (r < 0) r += field.modulus;
        return Scalar(field, static_cast<std::uint32_t>(r.get_ui()));
    }
    mpz_class num{std::string(num_part)};
    mpz_class den =
        slash == std::string_view::npos ? mpz_class(1) : mpz_class{std::string(den_part)};
    if (den == 0) throw DivisionByZeroError("zero denominator in \"" + std::string(text) + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(field, std::move(q));
}

bool Scalar::is_zero() const {
    if (field_.kind == FieldKind::prime) return std::get<std::uint32_t>(value_) == 0;
    return std::get<mpq_class>(value_) == 0;
}

void Scalar::require_same_field(const Scalar& rhs) const {
    if (field_ != rhs.field_) {
        throw FieldMismatchError("operands live in different fields: " + field_.to_string() +
                                 " vs " + rhs.field_.to_string());
    }
}

Scalar Scalar::operator+(const Scalar& rhs) const {
    require_same_field(rhs);
    if (field_.kind == FieldKind::prime) {
        std::uint64_t s = std::uint64_t{residue()} + rhs.residue();
        return Scalar(field_, static_cast<std::uint32_t>(s % field_.modulus));
    }
    return Scalar(field_, mpq_class(fraction() + rhs.fraction()));
}

Scalar Scalar::operator-(const Scalar& rhs) const {
    require_same_field(rhs);
    if (field_.kind == FieldKind::prime) {
        std::uint64_t s = std::uint64_t{residue()} + field_.modulus - rhs.residue();
        return Scalar(field_, static_cast<std::uint32_t>(s % field_.modulus));
    }
    return Scalar(field_, mpq_class(fraction() - rhs.fraction()));
}

Scalar Scalar::operator*(const Scalar& rhs) const {
    require_same_field(rhs);
    if (field_.kind == FieldKind::prime) {
        std::uint64_t prod = std::uint64_t{residue()} * rhs.residue();
        return Scalar(field_, static_cast<std::uint32_t>(prod % field_.modulus));
    }
    return Scalar(field_, mpq_class(fraction() * rhs.fraction()));
}

Scalar Scalar::operator/(const Scalar& rhs) const {
    require_same_field(rhs);
    return *this * rhs.inverse();
}

Scalar Scalar::operator-() const {
    if (field_.kind == FieldKind::prime) {
        std::uint32_t r = residue();
        return Scalar(field_, r == 0 ? 0 : field_.modulus - r);
    }
    return Scalar(field_, mpq_class(-fraction()));
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZeroError("inverse of zero");
    if (field_.kind == FieldKind::prime) {
        // Extended Euclid on (residue, p).
        std::int64_t a = residue(), m = field_.modulus;
        std::int64_t x0 = 0, x1 = 1, r0 = m, r1 = a;
        while (r1 != 0) {
            std::int64_t q = r0 / r1;
            std::int64_t tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
            tmp = x0 - q * x1;
            x0 = x1;
            x1 = tmp;
        }
        std::int64_t inv = x0 % m;
        if (inv < 0) inv += m;
        return Scalar(field_, static_cast<std::uint32_t>(inv));
    }
    return Scalar(field_, mpq_class(1 / fraction()));
}

bool Scalar::operator==(const Scalar& rhs) const {
    if (field_ != rhs.field_) return false;
    if (field_.kind == FieldKind::prime) return residue() == rhs.residue();
    return fraction() == rhs.fraction();
}

std::string Scalar::to_string() const {
    if (field_.kind == FieldKind::prime) return std::to_string(residue());
    const mpq_class& q = fraction();
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::uint32_t Scalar::residue() const {
    if (field_.kind != FieldKind::prime) throw FieldMismatchError("residue() on a rational scalar");
    return std::get<std::uint32_t>(value_);
}

const mpq_class& Scalar::fraction() const {
    if (field_.kind != FieldKind::rational) {
        throw FieldMismatchError("fraction() on a prime-field scalar");
    }
    return std::get<mpq_class>(value_);
}

}  // namespace blocktrans

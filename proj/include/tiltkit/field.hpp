#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tiltkit {

// Base field of every computation: Q or F_p with p prime, p < 2^31.
// All arithmetic in the library is exact; there is no floating point anywhere.
struct FieldSpec {
    enum class Kind { rational, prime };

    Kind kind = Kind::rational;
    std::int64_t p = 0;  // modulus, prime case only

    static FieldSpec rationals() { return FieldSpec{Kind::rational, 0}; }
    static FieldSpec prime(std::int64_t p);

    bool is_rational() const { return kind == Kind::rational; }
    bool operator==(const FieldSpec&) const = default;

    std::string str() const;
};

bool is_prime_i64(std::int64_t n);

// Residue arithmetic mod p. Residues are canonical representatives in [0, p).
// p < 2^31 keeps every product inside int64.
inline std::int64_t fp_normalize(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}
inline std::int64_t fp_add(std::int64_t a, std::int64_t b, std::int64_t p) {
    std::int64_t s = a + b;
    return s >= p ? s - p : s;
}
inline std::int64_t fp_sub(std::int64_t a, std::int64_t b, std::int64_t p) {
    std::int64_t s = a - b;
    return s < 0 ? s + p : s;
}
inline std::int64_t fp_mul(std::int64_t a, std::int64_t b, std::int64_t p) {
    return (a * b) % p;
}
inline std::int64_t fp_neg(std::int64_t a, std::int64_t p) { return a == 0 ? 0 : p - a; }
std::int64_t fp_pow(std::int64_t a, std::int64_t e, std::int64_t p);
std::int64_t fp_inv(std::int64_t a, std::int64_t p);

// Canonical scalar I/O. Rationals print as "n" or "n/d"; residues as bare integers.
mpq_class parse_scalar(const FieldSpec& field, const std::string& text);
std::string scalar_str(const mpq_class& value);

// Reduce an arbitrary rational into the field: identity over Q, residue over F_p.
// Over F_p the denominator must be invertible mod p.
mpq_class reduce_into(const FieldSpec& field, const mpq_class& value);

}  // namespace tiltkit

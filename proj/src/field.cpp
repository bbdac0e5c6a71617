#include "tiltkit/field.hpp"

namespace tiltkit {

bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
    if (p <= 0 || p >= (std::int64_t(1) << 31))
        throw std::invalid_argument("prime field modulus out of range (need 0 < p < 2^31)");
    if (!is_prime_i64(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
    return FieldSpec{Kind::prime, p};
}

std::string FieldSpec::str() const {
    return is_rational() ? std::string("Q") : "F" + std::to_string(p);
}

std::int64_t fp_pow(std::int64_t a, std::int64_t e, std::int64_t p) {
    a = fp_normalize(a, p);
    std::int64_t r = 1 % p;
    while (e > 0) {
        if (e & 1) r = fp_mul(r, a, p);
        a = fp_mul(a, a, p);
        e >>= 1;
    }
    return r;
}

std::int64_t fp_inv(std::int64_t a, std::int64_t p) {
    a = fp_normalize(a, p);
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p));
    // extended Euclid
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return fp_normalize(t, p);
}

mpq_class parse_scalar(const FieldSpec& field, const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty scalar literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed scalar literal '" + text + "'");
    q.canonicalize();
    return reduce_into(field, q);
}

std::string scalar_str(const mpq_class& value) { return value.get_str(); }

mpq_class reduce_into(const FieldSpec& field, const mpq_class& value) {
    if (field.is_rational()) {
        mpq_class v = value;
        v.canonicalize();
        return v;
    }
    mpz_class p(static_cast<long>(field.p));
    mpz_class num = value.get_num() % p;
    mpz_class den = value.get_den() % p;
    std::int64_t n = fp_normalize(num.get_si(), field.p);
    std::int64_t d = fp_normalize(den.get_si(), field.p);
    if (d == 0)
        throw std::domain_error("denominator of " + value.get_str() + " not invertible mod " +
                                std::to_string(field.p));
    return mpq_class(static_cast<long>(fp_mul(n, fp_inv(d, field.p), field.p)));
}

}  // namespace tiltkit

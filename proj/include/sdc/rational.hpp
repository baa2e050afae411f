#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "sdc/errors.hpp"

namespace sdc {

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw DivisionByZero();
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) throw ParseError("not a rational number: '" + text + "'");
    if (q.get_den() == 0) throw DivisionByZero();
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::size_t hash_integer(const Integer& z) {
    std::size_t h = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 7);
    const std::size_t limbs = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < limbs; ++i) {
        h ^= static_cast<std::size_t>(mpz_getlimbn(z.get_mpz_t(), i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

inline std::size_t hash_rational(const Rational& q) {
    std::size_t h = hash_integer(q.get_num());
    return h ^ (hash_integer(q.get_den()) * 0x100000001b3ULL + (h << 7));
}

namespace arith {

inline std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }
inline std::int64_t lcm(std::int64_t a, std::int64_t b) { return a / std::gcd(a, b) * b; }

inline std::int64_t mod(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// Prime factorization as (prime, exponent) pairs in increasing order.
inline std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> out;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        if (n % p != 0) continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t p = 2; p * p <= n; ++p)
        if (n % p == 0) return false;
    return true;
}

inline std::int64_t euler_phi(std::int64_t n) {
    std::int64_t phi = n;
    for (auto [p, e] : factor(n)) phi = phi / p * (p - 1);
    return phi;
}

/// Divisors of n in increasing order.
inline std::vector<std::int64_t> divisors(std::int64_t n) {
    std::vector<std::int64_t> small, large;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

inline int mobius(std::int64_t n) {
    int mu = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

}  // namespace arith
}  // namespace sdc

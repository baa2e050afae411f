#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "sdc/errors.hpp"
#include "sdc/rational.hpp"

namespace sdc {

namespace detail {

/// Per-conductor data: the cyclotomic polynomial and what is needed to test
/// whether a value descends to Q(zeta_{L/p}) for each prime p | L.
struct CyclotomicTable {
    struct Descent {
        std::int64_t prime = 2;
        bool square = false;     // p^2 | L
        std::int64_t crt_p = 0;  // zeta_L^k = zeta_p^{crt_p k} zeta_m^{crt_m k}, m = L/p
        std::int64_t crt_m = 0;
    };

    std::int64_t conductor = 1;
    std::int64_t degree = 1;                 // phi(L)
    std::vector<std::int64_t> minimal_poly;  // monic, low degree first
    std::vector<std::int64_t> galois;        // residues coprime to L
    std::vector<Descent> descents;
};

using IntPoly = std::vector<std::int64_t>;

inline IntPoly int_poly_mul(const IntPoly& a, const IntPoly& b) {
    IntPoly out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// Exact division by a divisor with leading coefficient 1.
inline IntPoly int_poly_div(IntPoly num, const IntPoly& den) {
    const std::size_t dn = den.size() - 1;
    IntPoly q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        const std::int64_t c = num[i];
        q[i - dn] = c;
        for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return q;
}

/// Phi_n via the Moebius product of (x^d - 1)^{mu(n/d)}.
inline IntPoly cyclotomic_polynomial(std::int64_t n) {
    IntPoly num{1}, den{1};
    for (std::int64_t d : arith::divisors(n)) {
        const int mu = arith::mobius(n / d);
        if (mu == 0) continue;
        IntPoly f(static_cast<std::size_t>(d) + 1, 0);
        f[0] = -1;
        f[static_cast<std::size_t>(d)] = 1;
        if (mu > 0)
            num = int_poly_mul(num, f);
        else
            den = int_poly_mul(den, f);
    }
    return int_poly_div(num, den);
}

inline std::unique_ptr<CyclotomicTable> build_table(std::int64_t L) {
    auto t = std::make_unique<CyclotomicTable>();
    t->conductor = L;
    t->minimal_poly = cyclotomic_polynomial(L);
    t->degree = static_cast<std::int64_t>(t->minimal_poly.size()) - 1;
    for (std::int64_t j = 1; j <= L; ++j)
        if (std::gcd(j, L) == 1) t->galois.push_back(j % L);
    for (auto [p, e] : arith::factor(L)) {
        CyclotomicTable::Descent d;
        d.prime = p;
        d.square = e > 1;
        if (!d.square) {
            // crt_p * m + crt_m * p = 1
            const std::int64_t m = L / p;
            for (std::int64_t a = 0; a < p; ++a)
                if ((a * m) % p == 1) {
                    d.crt_p = a;
                    d.crt_m = (1 - a * m) / p;
                    break;
                }
        }
        t->descents.push_back(d);
    }
    return t;
}

/// Memoized, thread-safe, write-once per conductor.
inline const CyclotomicTable& cyclotomic_table(std::int64_t L) {
    static std::mutex mutex;
    static std::map<std::int64_t, std::unique_ptr<CyclotomicTable>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(L);
    if (it == cache.end()) it = cache.emplace(L, build_table(L)).first;
    return *it->second;
}

/// Reduces sum raw[k] x^k modulo Phi_L, in place; result has length phi(L).
inline void reduce_mod_phi(const CyclotomicTable& t, std::vector<Rational>& raw) {
    const std::size_t deg = static_cast<std::size_t>(t.degree);
    if (raw.size() < deg) raw.resize(deg);
    Rational c;
    for (std::size_t i = raw.size(); i-- > deg;) {
        if (raw[i] == 0) continue;
        c = raw[i];
        for (std::size_t j = 0; j < deg; ++j)
            if (t.minimal_poly[j] != 0) raw[i - deg + j] -= c * t.minimal_poly[j];
        raw[i] = 0;
    }
    raw.resize(deg);
}

}  // namespace detail

/// Exact element of Q(zeta_L), stored in the power basis of Q[x]/(Phi_L) with
/// L the smallest conductor containing the value (never 2 mod 4). Two values
/// are equal iff their conductors and coefficient vectors agree.
class Cyclotomic {
public:
    Cyclotomic() : coeffs_(1) {}
    Cyclotomic(long n) : coeffs_{Rational(n)} {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(int n) : coeffs_{Rational(n)} {}   // NOLINT(google-explicit-constructor)
    Cyclotomic(const Rational& q) : coeffs_{q} {}  // NOLINT(google-explicit-constructor)

    /// Element sum_k coeffs[k] * zeta_L^k; exponents may run past phi(L).
    static Cyclotomic from_powers(std::int64_t L, const std::vector<Rational>& coeffs) {
        if (L < 1) throw ParseError("conductor must be positive");
        const auto& t = detail::cyclotomic_table(L);
        std::vector<Rational> c(std::min(coeffs.size(), static_cast<std::size_t>(L)));
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            if (coeffs[k] != 0) c[k % static_cast<std::size_t>(L)] += coeffs[k];
        detail::reduce_mod_phi(t, c);
        return Cyclotomic(L, std::move(c));
    }

    /// Raw constructor for a coefficient vector already reduced modulo Phi_L.
    Cyclotomic(std::int64_t L, std::vector<Rational> reduced) : L_(L), coeffs_(std::move(reduced)) {
        canonicalize();
    }

    [[nodiscard]] std::int64_t conductor() const noexcept { return L_; }
    /// Dense power-basis coefficients, length phi(conductor()).
    [[nodiscard]] const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    /// Nonzero (exponent, coefficient) pairs.
    [[nodiscard]] std::vector<std::pair<std::int64_t, Rational>> terms() const {
        std::vector<std::pair<std::int64_t, Rational>> out;
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) out.emplace_back(static_cast<std::int64_t>(k), coeffs_[k]);
        return out;
    }

    [[nodiscard]] bool is_zero() const noexcept { return L_ == 1 && coeffs_[0] == 0; }
    [[nodiscard]] bool is_rational() const noexcept { return L_ == 1; }
    [[nodiscard]] bool is_one() const noexcept { return L_ == 1 && coeffs_[0] == 1; }

    [[nodiscard]] const Rational& rational() const {
        if (L_ != 1) throw Error("cyclotomic value is not rational: " + to_string());
        return coeffs_[0];
    }

    /// Coefficients of this value in the power basis of a multiple of its conductor.
    [[nodiscard]] std::vector<Rational> lifted(std::int64_t L) const {
        if (L % L_ != 0) throw Error("lift target is not a multiple of the conductor");
        if (L == L_) return coeffs_;
        const auto& t = detail::cyclotomic_table(L);
        const std::size_t step = static_cast<std::size_t>(L / L_);
        std::vector<Rational> out(coeffs_.size() * step);
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) out[k * step] = coeffs_[k];
        detail::reduce_mod_phi(t, out);
        return out;
    }

    Cyclotomic operator-() const {
        Cyclotomic r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.L_ == 1 && b.L_ == 1) return Cyclotomic(Rational(a.coeffs_[0] + b.coeffs_[0]));
        const std::int64_t L = arith::lcm(a.L_, b.L_);
        std::vector<Rational> x = a.lifted(L);
        const std::vector<Rational> y = b.L_ == L ? b.coeffs_ : b.lifted(L);
        for (std::size_t i = 0; i < x.size(); ++i) x[i] += y[i];
        return Cyclotomic(L, std::move(x));
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        if (a.L_ == 1) return b.scaled(a.coeffs_[0]);
        if (b.L_ == 1) return a.scaled(b.coeffs_[0]);
        const std::int64_t L = arith::lcm(a.L_, b.L_);
        const auto& t = detail::cyclotomic_table(L);
        const std::vector<Rational> x = a.L_ == L ? a.coeffs_ : a.lifted(L);
        const std::vector<Rational> y = b.L_ == L ? b.coeffs_ : b.lifted(L);
        std::vector<Rational> out(2 * x.size() - 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) continue;
            for (std::size_t j = 0; j < y.size(); ++j)
                if (y[j] != 0) out[i + j] += x[i] * y[j];
        }
        detail::reduce_mod_phi(t, out);
        return Cyclotomic(L, std::move(out));
    }

    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

    Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
    Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

    [[nodiscard]] Cyclotomic scaled(const Rational& q) const {
        if (q == 0) return Cyclotomic();
        Cyclotomic r = *this;
        for (auto& c : r.coeffs_) c *= q;
        return r;
    }

    /// Image under zeta -> zeta^j, j coprime to the conductor.
    [[nodiscard]] Cyclotomic galois(std::int64_t j) const {
        if (L_ == 1) return *this;
        j = arith::mod(j, L_);
        if (std::gcd(j, L_) != 1) throw Error("galois exponent must be coprime to the conductor");
        std::vector<Rational> raw(static_cast<std::size_t>(L_));
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) raw[static_cast<std::size_t>(static_cast<std::int64_t>(k) * j % L_)] += coeffs_[k];
        return from_powers(L_, raw);
    }

    /// Complex conjugate: zeta^k -> zeta^{-k}.
    [[nodiscard]] Cyclotomic conj() const { return L_ == 1 ? *this : galois(L_ - 1); }

    [[nodiscard]] Cyclotomic inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (L_ == 1) return Cyclotomic(Rational(1 / coeffs_[0]));
        // a^{-1} = (prod of the other conjugates) / norm(a)
        const auto& t = detail::cyclotomic_table(L_);
        Cyclotomic others(1);
        for (std::int64_t j : t.galois)
            if (j != 1) others = others * galois(j);
        const Cyclotomic norm = *this * others;
        return others.scaled(1 / norm.rational());
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.L_ == b.L_ && a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h = std::hash<std::int64_t>{}(L_);
        for (const auto& c : coeffs_) h = h * 1000003ULL ^ hash_rational(c);
        return h;
    }

    /// Value under the standard embedding zeta_L -> exp(2 pi i / L). Debug only.
    [[nodiscard]] std::complex<double> to_complex() const {
        std::complex<double> z = 0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L_);
            z += coeffs_[k].get_d() * std::polar(1.0, ang);
        }
        return z;
    }

    /// Human-readable form, e.g. "-1/2", "z8 - z8^3".
    [[nodiscard]] std::string to_string() const {
        if (L_ == 1) return coeffs_[0].get_str();
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            const Rational& c = coeffs_[k];
            if (c == 0) continue;
            const bool neg = c < 0;
            const Rational mag = neg ? Rational(-c) : c;
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            std::string root = k == 0 ? "" : "z" + std::to_string(L_) + (k == 1 ? "" : "^" + std::to_string(k));
            if (k == 0)
                os << mag.get_str();
            else if (mag == 1)
                os << root;
            else
                os << mag.get_str() << "*" << root;
            first = false;
        }
        return os.str();
    }

private:
    void canonicalize() {
        // Descend one prime at a time; the minimal conductor divides every
        // conductor whose field contains the value, so greedy descent reaches it.
        bool moved = true;
        while (moved && L_ > 1) {
            moved = false;
            bool rational = true;
            for (std::size_t k = 1; k < coeffs_.size(); ++k)
                if (coeffs_[k] != 0) {
                    rational = false;
                    break;
                }
            if (rational) {
                coeffs_.resize(1);
                L_ = 1;
                return;
            }
            const auto& t = detail::cyclotomic_table(L_);
            for (const auto& d : t.descents)
                if (try_descend(t, d)) {
                    moved = true;
                    break;
                }
        }
    }

    bool try_descend(const detail::CyclotomicTable& t, const detail::CyclotomicTable::Descent& d) {
        const std::int64_t p = d.prime, m = L_ / p;
        if (d.square) {
            // Phi_L(x) = Phi_m(x^p): the power basis splits as zeta_m^a zeta_L^b, b < p
            for (std::size_t k = 0; k < coeffs_.size(); ++k)
                if (k % static_cast<std::size_t>(p) != 0 && coeffs_[k] != 0) return false;
            std::vector<Rational> y(coeffs_.size() / static_cast<std::size_t>(p));
            for (std::size_t a = 0; a < y.size(); ++a) y[a] = coeffs_[a * static_cast<std::size_t>(p)];
            L_ = m;
            coeffs_ = std::move(y);
            return true;
        }
        // relative trace to Q(zeta_m), divided by the relative degree p - 1
        const auto& tm = detail::cyclotomic_table(m);
        std::vector<Rational> y(static_cast<std::size_t>(m));
        for (std::size_t k = 0; k < coeffs_.size(); ++k) {
            if (coeffs_[k] == 0) continue;
            const std::int64_t kk = static_cast<std::int64_t>(k);
            const bool trivial = arith::mod(d.crt_p * kk, p) == 0;
            auto& slot = y[static_cast<std::size_t>(arith::mod(d.crt_m * kk, m))];
            if (trivial)
                slot += coeffs_[k] * (p - 1);
            else
                slot -= coeffs_[k];
        }
        detail::reduce_mod_phi(tm, y);
        const Rational rel(p - 1);
        for (auto& c : y) c /= rel;
        if (p != 2) {
            std::vector<Rational> back(y.size() * static_cast<std::size_t>(p));
            for (std::size_t a = 0; a < y.size(); ++a) back[a * static_cast<std::size_t>(p)] = y[a];
            detail::reduce_mod_phi(t, back);
            if (back != coeffs_) return false;
        }
        L_ = m;
        coeffs_ = std::move(y);
        return true;
    }

    std::int64_t L_ = 1;
    std::vector<Rational> coeffs_;
};

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

struct CyclotomicHash {
    std::size_t operator()(const Cyclotomic& c) const { return c.hash(); }
};

/// zeta_L^k.
inline Cyclotomic root_of_unity(std::int64_t L, std::int64_t k) {
    if (L < 1) throw ParseError("root_of_unity: conductor must be positive");
    k = arith::mod(k, L);
    std::vector<Rational> c(static_cast<std::size_t>(k) + 1);
    c[static_cast<std::size_t>(k)] = 1;
    return Cyclotomic::from_powers(L, c);
}

/// exp(2 pi i q) for a rational q.
inline Cyclotomic phase(const Rational& q) {
    const Integer& den = q.get_den();
    Integer num = q.get_num() % den;
    if (num < 0) num += den;
    return root_of_unity(den.get_si(), num.get_si());
}

/// Positive square root of n inside a cyclotomic field, built from quadratic
/// Gauss sums: sqrt(p) lies in Q(zeta_4p).
inline Cyclotomic sqrt_nat(std::int64_t n) {
    if (n < 1) throw ParseError("sqrt_nat: argument must be positive");
    Cyclotomic out(1);
    for (auto [p, e] : arith::factor(n)) {
        for (int i = 0; i < e / 2; ++i) out = out * Cyclotomic(static_cast<long>(p));
        if (e % 2 == 0) continue;
        Cyclotomic root;
        if (p == 2) {
            root = root_of_unity(8, 1) + root_of_unity(8, 7);
        } else {
            // g = sum_a (a/p) zeta_p^a; g = sqrt(p) if p = 1 mod 4, i*sqrt(p) otherwise
            std::vector<Rational> c(static_cast<std::size_t>(p));
            std::vector<bool> square(static_cast<std::size_t>(p), false);
            for (std::int64_t a = 1; a < p; ++a) square[static_cast<std::size_t>(a * a % p)] = true;
            for (std::int64_t a = 1; a < p; ++a) c[static_cast<std::size_t>(a)] = square[static_cast<std::size_t>(a)] ? 1 : -1;
            Cyclotomic g = Cyclotomic::from_powers(p, c);
            root = p % 4 == 1 ? g : -(root_of_unity(4, 1) * g);
        }
        out = out * root;
    }
    return out;
}

}  // namespace sdc

template <>
struct std::hash<sdc::Cyclotomic> {
    std::size_t operator()(const sdc::Cyclotomic& c) const { return c.hash(); }
};

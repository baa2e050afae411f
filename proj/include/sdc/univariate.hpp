#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sdc/errors.hpp"
#include "sdc/rational.hpp"

namespace sdc {

/// Polynomial in t with rational coefficients, stored lowest degree first
/// without trailing zeros.
class UPoly {
public:
    UPoly() = default;
    UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }
    UPoly(long constant) : c_{Rational(constant)} { trim(); }

    /// c t^k
    static UPoly monomial(std::size_t k, const Rational& c = 1) {
        std::vector<Rational> v(k + 1);
        v[k] = c;
        return UPoly(std::move(v));
    }
    /// 1 - t^k
    static UPoly one_minus_t_pow(std::size_t k) { return UPoly(1) - monomial(k); }
    /// The d-th cyclotomic polynomial.
    static UPoly cyclotomic(std::int64_t d) {
        UPoly out = monomial(static_cast<std::size_t>(d)) - UPoly(1);
        for (std::int64_t e = 1; e < d; ++e)
            if (d % e == 0) out = out.exact_div(cyclotomic(e));
        return out;
    }

    [[nodiscard]] const std::vector<Rational>& coefficients() const { return c_; }
    [[nodiscard]] bool is_zero() const { return c_.empty(); }
    /// -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(c_.size()) - 1; }
    [[nodiscard]] Rational operator[](std::size_t k) const { return k < c_.size() ? c_[k] : Rational(0); }
    [[nodiscard]] Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

    [[nodiscard]] Rational eval(const Rational& t) const {
        Rational r = 0;
        for (std::size_t k = c_.size(); k-- > 0;) r = r * t + c_[k];
        return r;
    }

    /// Coefficients below degree n.
    [[nodiscard]] UPoly truncated(std::size_t n) const {
        return UPoly(std::vector<Rational>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(std::min(n, c_.size()))));
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
        for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
        return UPoly(std::move(c));
    }
    UPoly operator-() const {
        UPoly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        }
        return UPoly(std::move(c));
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    [[nodiscard]] UPoly pow(unsigned e) const {
        UPoly r(1), b = *this;
        for (; e; e >>= 1, b = b * b)
            if (e & 1) r = r * b;
        return r;
    }

    /// Quotient and remainder.
    [[nodiscard]] std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
        if (d.is_zero()) throw DivisionByZero("polynomial division by zero");
        std::vector<Rational> r = c_;
        if (r.size() < d.c_.size()) return {UPoly(), *this};
        std::vector<Rational> q(r.size() - d.c_.size() + 1);
        const Rational lead = d.c_.back();
        for (std::size_t k = q.size(); k-- > 0;) {
            const Rational f = r[k + d.c_.size() - 1] / lead;
            q[k] = f;
            if (f == 0) continue;
            for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
        }
        return {UPoly(std::move(q)), UPoly(std::move(r))};
    }
    /// Quotient of a division known to be exact; throws otherwise.
    [[nodiscard]] UPoly exact_div(const UPoly& d) const {
        auto [q, r] = divmod(d);
        if (!r.is_zero()) throw Error("polynomial division is not exact");
        return q;
    }

    /// Ascending terms, e.g. "1 + 3t^4 - t^6".
    [[nodiscard]] std::string to_string(const std::string& var = "t") const {
        if (c_.empty()) return "0";
        std::string out;
        for (std::size_t k = 0; k < c_.size(); ++k) {
            Rational c = c_[k];
            if (c == 0) continue;
            if (out.empty()) {
                if (c < 0) out += "-";
            } else {
                out += c < 0 ? " - " : " + ";
            }
            if (c < 0) c = -c;
            if (k == 0 || c != 1) out += c.get_str();
            if (k > 0) out += var;
            if (k > 1) out += "^" + std::to_string(k);
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Rational> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UPoly& p) { return os << p.to_string(); }

/// Power series coefficients of n / d up to degree D (d(0) must be nonzero).
inline std::vector<Rational> series_expand(const UPoly& n, const UPoly& d, std::size_t D) {
    if (d[0] == 0) throw DivisionByZero("series_expand: denominator vanishes at 0");
    std::vector<Rational> out(D + 1);
    const Rational d0 = d[0];
    for (std::size_t k = 0; k <= D; ++k) {
        Rational s = n[k];
        for (std::size_t j = 1; j <= k && j < d.coefficients().size(); ++j) s -= d.coefficients()[j] * out[k - j];
        out[k] = s / d0;
    }
    return out;
}

/// Quotient num / den of univariate polynomials; den(0) = 1 after normalization.
/// Equality is by cross-multiplication, so the presentation does not matter.
class RationalFunction {
public:
    RationalFunction() : num_(0), den_(1) {}
    RationalFunction(UPoly num, UPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
        if (den_[0] == 0) throw ParseError("denominator must have a nonzero constant term");
        const Rational c = den_[0];
        if (c != 1) {
            std::vector<Rational> n = num_.coefficients(), d = den_.coefficients();
            for (auto& x : n) x /= c;
            for (auto& x : d) x /= c;
            num_ = UPoly(std::move(n));
            den_ = UPoly(std::move(d));
        }
    }

    /// num / prod (1 - t^k) over the listed exponents.
    static RationalFunction over_products(UPoly num, const std::vector<std::size_t>& exponents) {
        UPoly d(1);
        for (auto k : exponents) d = d * UPoly::one_minus_t_pow(k);
        return {std::move(num), std::move(d)};
    }

    [[nodiscard]] const UPoly& numerator() const { return num_; }
    [[nodiscard]] const UPoly& denominator() const { return den_; }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }

    [[nodiscard]] std::vector<Rational> series(std::size_t D) const { return series_expand(num_, den_, D); }

    /// Numerator when the function is written over the given denominator;
    /// throws when the denominator is not a multiple of ours.
    [[nodiscard]] UPoly numerator_over(const UPoly& denominator) const {
        auto [q, r] = denominator.divmod(den_);
        if (!r.is_zero()) throw Error("requested denominator is not a multiple of the reduced denominator");
        return num_ * q;
    }

    /// lim_{t -> 1} (1 - t)^n f(t). For the Molien series of an n-dimensional
    /// finite group this is 1/|G|.
    [[nodiscard]] Rational pole_coefficient_at_one(unsigned n) const {
        const UPoly rest = den_.exact_div(UPoly::one_minus_t_pow(1).pow(n));
        const Rational d = rest.eval(1);
        if (d == 0) throw Error("pole at t = 1 has order above " + std::to_string(n));
        return num_.eval(1) / d;
    }

    /// The denominator as a product of factors (1 - t^k), largest k first, chosen
    /// greedily from the cyclotomic factorization. Returns the exponents; the
    /// matching numerator is numerator_over(product).
    [[nodiscard]] std::vector<std::size_t> product_exponents() const {
        std::map<std::int64_t, int, std::greater<>> mult;  // d -> multiplicity of Phi_d
        UPoly rest = den_;
        for (std::int64_t d = 1; rest.degree() > 0; ++d) {
            if (d > 100000) throw Error("denominator is not a product of cyclotomic polynomials");
            const UPoly phi = UPoly::cyclotomic(d);
            while (rest.degree() >= phi.degree()) {
                auto [q, r] = rest.divmod(phi);
                if (!r.is_zero()) break;
                rest = q;
                ++mult[d];
            }
        }
        std::vector<std::size_t> out;
        while (!mult.empty()) {
            const std::int64_t k = mult.begin()->first;
            out.push_back(static_cast<std::size_t>(k));
            for (std::int64_t d = 1; d <= k; ++d)
                if (k % d == 0) {
                    auto it = mult.find(d);
                    if (it != mult.end() && --it->second == 0) mult.erase(it);
                }
        }
        return out;
    }

    /// "(num)/((1 - t^a)(1 - t^b)...)" using product_exponents.
    [[nodiscard]] std::string to_string() const {
        const auto ks = product_exponents();
        UPoly d(1);
        for (auto k : ks) d = d * UPoly::one_minus_t_pow(k);
        const UPoly n = numerator_over(d);
        std::string ns = n.to_string();
        if (ks.empty()) return ns;
        if (n.coefficients().size() > 1 && ns.find(' ') != std::string::npos) ns = "(" + ns + ")";
        std::string ds;
        std::map<std::size_t, int> count;
        for (auto k : ks) ++count[k];
        for (const auto& [k, e] : count) {
            ds += "(1 - t" + (k > 1 ? "^" + std::to_string(k) : std::string()) + ")";
            if (e > 1) ds += "^" + std::to_string(e);
        }
        return ns + "/" + (ks.size() > 1 ? "(" + ds + ")" : ds);
    }

private:
    UPoly num_, den_;
};

inline std::ostream& operator<<(std::ostream& os, const RationalFunction& f) { return os << f.to_string(); }

}  // namespace sdc

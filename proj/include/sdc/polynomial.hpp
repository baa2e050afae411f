#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sdc/cyclotomic.hpp"
#include "sdc/errors.hpp"
#include "sdc/matrix.hpp"

namespace sdc {

using Exponent = std::vector<std::uint16_t>;

inline int total_degree(const Exponent& e) {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

/// Graded lexicographic order, largest first: x^8 comes before x^4y^4.
struct GradedLexGreater {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

struct ExponentHash {
    std::size_t operator()(const Exponent& e) const {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto x : e) h = (h ^ x) * 0x100000001b3ULL;
        return h;
    }
};

/// Sparse polynomial with cyclotomic coefficients over named variables.
class WeightPolynomial {
public:
    using Terms = std::map<Exponent, Cyclotomic, GradedLexGreater>;

    WeightPolynomial() = default;
    explicit WeightPolynomial(std::vector<std::string> variables) : vars_(std::move(variables)) {}

    static WeightPolynomial constant(std::vector<std::string> variables, const Cyclotomic& c) {
        WeightPolynomial p(std::move(variables));
        p.add_term(Exponent(p.vars_.size(), 0), c);
        return p;
    }

    static WeightPolynomial variable(std::vector<std::string> variables, std::size_t i) {
        WeightPolynomial p(std::move(variables));
        if (i >= p.vars_.size()) throw ParseError("variable index out of range");
        Exponent e(p.vars_.size(), 0);
        e[i] = 1;
        p.add_term(e, 1);
        return p;
    }

    [[nodiscard]] std::size_t num_variables() const noexcept { return vars_.size(); }
    [[nodiscard]] const std::vector<std::string>& variables() const noexcept { return vars_; }
    [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
    [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return terms_.size(); }

    void add_term(const Exponent& e, const Cyclotomic& c) {
        if (e.size() != vars_.size()) throw Error("exponent length differs from variable count");
        if (c.is_zero()) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    [[nodiscard]] Cyclotomic coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Cyclotomic() : it->second;
    }

    /// Largest total degree, or -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

    [[nodiscard]] bool is_homogeneous() const {
        for (const auto& [e, c] : terms_)
            if (total_degree(e) != degree()) return false;
        return true;
    }

    /// Same terms under new variable names.
    [[nodiscard]] WeightPolynomial renamed(std::vector<std::string> variables) const {
        if (variables.size() != vars_.size()) throw Error("renaming must keep the variable count");
        WeightPolynomial p = *this;
        p.vars_ = std::move(variables);
        return p;
    }

    WeightPolynomial operator-() const {
        WeightPolynomial p = *this;
        for (auto& [e, c] : p.terms_) c = -c;
        return p;
    }

    friend WeightPolynomial operator+(WeightPolynomial a, const WeightPolynomial& b) {
        a.require_same(b);
        for (const auto& [e, c] : b.terms_) a.add_term(e, c);
        return a;
    }
    friend WeightPolynomial operator-(const WeightPolynomial& a, const WeightPolynomial& b) { return a + (-b); }

    friend WeightPolynomial operator*(const WeightPolynomial& a, const WeightPolynomial& b) {
        a.require_same(b);
        WeightPolynomial out(a.vars_);
        Exponent e(a.vars_.size());
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
                out.add_term(e, ca * cb);
            }
        return out;
    }

    friend WeightPolynomial operator*(const Cyclotomic& s, WeightPolynomial p) {
        if (s.is_zero()) return WeightPolynomial(p.vars_);
        for (auto& [e, c] : p.terms_) c = c * s;
        return p;
    }
    friend WeightPolynomial operator*(WeightPolynomial p, const Cyclotomic& s) { return s * std::move(p); }

    WeightPolynomial& operator+=(const WeightPolynomial& o) { return *this = *this + o; }
    WeightPolynomial& operator-=(const WeightPolynomial& o) { return *this = *this - o; }
    WeightPolynomial& operator*=(const WeightPolynomial& o) { return *this = *this * o; }

    [[nodiscard]] WeightPolynomial pow(int k) const {
        if (k < 0) throw Error("negative polynomial power");
        WeightPolynomial out = constant(vars_, 1), base = *this;
        for (; k; k >>= 1) {
            if (k & 1) out *= base;
            if (k > 1) base *= base;
        }
        return out;
    }

    /// Equality of variable lists and of term maps.
    friend bool operator==(const WeightPolynomial& a, const WeightPolynomial& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const WeightPolynomial& a, const WeightPolynomial& b) { return !(a == b); }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h = vars_.size();
        for (const auto& [e, c] : terms_) h = (h * 1000003ULL) ^ ExponentHash{}(e) ^ (c.hash() << 1);
        return h;
    }

    /// True when every coefficient is a rational integer.
    [[nodiscard]] bool has_integer_coefficients() const {
        for (const auto& [e, c] : terms_)
            if (!c.is_rational() || !is_integer(c.rational())) return false;
        return true;
    }

    /// Paper-style text, e.g. "x^8 + 14x^4y^4 + y^8".
    [[nodiscard]] std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            std::string mono;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] == 0) continue;
                mono += vars_[i];
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            bool neg = false;
            std::string coef;
            if (c.is_rational()) {
                Rational q = c.rational();
                neg = q < 0;
                if (neg) q = -q;
                if (q != 1 || mono.empty()) coef = q.get_str();
            } else {
                coef = "(" + c.to_string() + ")";
            }
            if (first)
                os << (neg ? "-" : "");
            else
                os << (neg ? " - " : " + ");
            os << coef << mono;
            first = false;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const WeightPolynomial& p) { return os << p.to_string(); }

private:
    void require_same(const WeightPolynomial& o) const {
        if (vars_ != o.vars_) throw Error("polynomials have different variables");
    }

    std::vector<std::string> vars_;
    Terms terms_;
};

/// Variable name for an alphabet label: "x0", "x(0,1)", or "x{a^3}".
inline std::string variable_name(const std::string& label) {
    bool plain = !label.empty();
    for (char ch : label) plain = plain && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')' || ch == ',');
    return plain ? "x" + label : "x{" + label + "}";
}

namespace detail {

/// Coefficient rings for the substitution engine.
struct CyclotomicRing {
    using Value = Cyclotomic;
    static bool is_zero(const Value& v) { return v.is_zero(); }
    static Value mul(const Value& a, const Value& b) { return a * b; }
    static void add_to(Value& acc, const Value& x) { acc += x; }
};

/// Integer group ring Z[C_L]: element sum c_k g^k with g^L = 1.
struct GroupRing {
    using Value = std::vector<std::int64_t>;
    std::size_t L;
    [[nodiscard]] static bool is_zero(const Value& v) {
        return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
    }
    [[nodiscard]] Value mul(const Value& a, const Value& b) const {
        Value out(L, 0);
        for (std::size_t i = 0; i < L; ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < L; ++j)
                if (b[j] != 0) out[(i + j) % L] += a[i] * b[j];
        }
        return out;
    }
    static void add_to(Value& acc, const Value& x) {
        if (acc.empty()) acc.assign(x.size(), 0);
        for (std::size_t i = 0; i < x.size(); ++i) acc[i] += x[i];
    }
};

/// Expands sum_e c_e prod_v l_v^{e_v} for linear forms l_v, sharing the
/// products of common exponent prefixes.
template <class Ring>
class LinearSubstitution {
public:
    using Value = typename Ring::Value;
    using Poly = std::unordered_map<Exponent, Value, ExponentHash>;

    LinearSubstitution(Ring ring, std::vector<Poly> forms, std::size_t n)
        : ring_(std::move(ring)), forms_(std::move(forms)), n_(n), powers_(forms_.size()) {}

    Poly run(std::vector<std::pair<Exponent, Value>> input) {
        std::sort(input.begin(), input.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        input_ = std::move(input);
        Poly one;
        one.emplace(Exponent(n_, 0), unit_value());
        out_.clear();
        expand(0, one, 0, input_.size());
        for (auto it = out_.begin(); it != out_.end();) it = Ring::is_zero(it->second) ? out_.erase(it) : std::next(it);
        return std::move(out_);
    }

    void set_unit(Value u) { unit_ = std::move(u); }

private:
    [[nodiscard]] Value unit_value() const { return unit_; }

    Poly mul(const Poly& a, const Poly& b) const {
        Poly out;
        out.reserve(a.size() * b.size());
        Exponent e(n_);
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) {
                for (std::size_t i = 0; i < n_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
                Ring::add_to(out[e], ring_.mul(ca, cb));
            }
        return out;
    }

    const Poly& power(std::size_t v, int k) {
        auto& pw = powers_[v];
        if (pw.empty()) {
            Poly one;
            one.emplace(Exponent(n_, 0), unit_value());
            pw.push_back(std::move(one));
        }
        while (static_cast<int>(pw.size()) <= k) pw.push_back(mul(pw.back(), forms_[v]));
        return pw[static_cast<std::size_t>(k)];
    }

    void expand(std::size_t var, const Poly& prefix, std::size_t lo, std::size_t hi) {
        if (var == forms_.size()) {
            for (std::size_t t = lo; t < hi; ++t)
                for (const auto& [e, c] : prefix) Ring::add_to(out_[e], ring_.mul(c, input_[t].second));
            return;
        }
        std::size_t i = lo;
        while (i < hi) {
            const int k = input_[i].first[var];
            std::size_t j = i;
            while (j < hi && input_[j].first[var] == k) ++j;
            if (k == 0)
                expand(var + 1, prefix, i, j);
            else
                expand(var + 1, mul(prefix, power(var, k)), i, j);
            i = j;
        }
    }

    Ring ring_;
    std::vector<Poly> forms_;
    std::size_t n_;
    std::vector<std::vector<Poly>> powers_;
    std::vector<std::pair<Exponent, Value>> input_;
    Poly out_;
    Value unit_{};
};

/// Writes a nonzero root of unity r as zeta_m^k with m = lcm(2, conductor).
inline std::optional<std::pair<std::int64_t, std::int64_t>> root_of_unity_exponent(const Cyclotomic& r) {
    const std::int64_t m = arith::lcm(2, r.conductor());
    for (std::int64_t k = 0; k < m; ++k)
        if (root_of_unity(m, k) == r) return std::make_pair(m, k);
    return std::nullopt;
}

inline WeightPolynomial substitute_monomial(const WeightPolynomial& p, const CycMatrix& M) {
    const int n = M.dim();
    std::vector<int> target(static_cast<std::size_t>(n));
    std::vector<std::vector<Cyclotomic>> pw(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w)
            if (!M(w, v).is_zero()) {
                target[static_cast<std::size_t>(v)] = w;
                pw[static_cast<std::size_t>(v)] = {Cyclotomic(1), M(w, v)};
            }
    auto power = [&](int v, int k) -> const Cyclotomic& {
        auto& list = pw[static_cast<std::size_t>(v)];
        while (static_cast<int>(list.size()) <= k) list.push_back(list.back() * list[1]);
        return list[static_cast<std::size_t>(k)];
    };
    WeightPolynomial out(p.variables());
    Exponent e(static_cast<std::size_t>(n));
    for (const auto& [src, c] : p.terms()) {
        std::fill(e.begin(), e.end(), 0);
        Cyclotomic coef = c;
        for (int v = 0; v < n; ++v) {
            const int k = src[static_cast<std::size_t>(v)];
            if (k == 0) continue;
            e[static_cast<std::size_t>(target[static_cast<std::size_t>(v)])] += static_cast<std::uint16_t>(k);
            const Cyclotomic& f = power(v, k);
            if (!f.is_one()) coef = coef * f;
        }
        out.add_term(e, coef);
    }
    return out;
}

/// Integer polynomial and a matrix s * (roots of unity or 0): expand in Z[C_m]
/// and multiply each degree-d term by s^d at the end. Empty result when the
/// shape does not apply or the integers could overflow.
inline std::optional<WeightPolynomial> substitute_scaled_roots(const WeightPolynomial& p, const CycMatrix& M) {
    if (!p.has_integer_coefficients()) return std::nullopt;
    const int n = M.dim();
    Cyclotomic s;
    for (const auto& e : M.entries())
        if (!e.is_zero()) {
            s = e;
            break;
        }
    if (s.is_zero()) return std::nullopt;
    const Cyclotomic s_inv = s.inverse();
    std::vector<std::pair<std::int64_t, std::int64_t>> roots(M.entries().size(), {0, -1});
    std::int64_t m = 2;
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (M.entries()[i].is_zero()) continue;
        auto r = root_of_unity_exponent(M.entries()[i] * s_inv);
        if (!r) return std::nullopt;
        roots[i] = *r;
        m = arith::lcm(m, r->first);
    }
    // overflow guard: sum |c| * (max column support)^deg
    int support = 0;
    for (int v = 0; v < n; ++v) {
        int k = 0;
        for (int w = 0; w < n; ++w) k += !M(w, v).is_zero();
        support = std::max(support, k);
    }
    long double bound = 0;
    for (const auto& [e, c] : p.terms())
        bound += std::abs(c.rational().get_d()) * std::pow(static_cast<long double>(support), total_degree(e));
    if (bound > 1e17L) return std::nullopt;

    const std::size_t L = static_cast<std::size_t>(m);
    GroupRing ring{L};
    using Poly = LinearSubstitution<GroupRing>::Poly;
    std::vector<Poly> forms(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            const auto [mm, k] = roots[static_cast<std::size_t>(w) * static_cast<std::size_t>(n) + static_cast<std::size_t>(v)];
            if (k < 0) continue;
            Exponent e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(w)] = 1;
            GroupRing::Value val(L, 0);
            val[static_cast<std::size_t>(k * (m / mm))] = 1;
            forms[static_cast<std::size_t>(v)].emplace(e, val);
        }
    std::vector<std::pair<Exponent, GroupRing::Value>> input;
    for (const auto& [e, c] : p.terms()) {
        GroupRing::Value val(L, 0);
        val[0] = c.rational().get_num().get_si();
        input.emplace_back(e, val);
    }
    LinearSubstitution<GroupRing> engine(ring, std::move(forms), static_cast<std::size_t>(n));
    GroupRing::Value unit(L, 0);
    unit[0] = 1;
    engine.set_unit(unit);
    const auto raw = engine.run(std::move(input));
    std::map<int, Cyclotomic> scale;
    WeightPolynomial out(p.variables());
    for (const auto& [e, val] : raw) {
        std::vector<Rational> c(L);
        for (std::size_t i = 0; i < L; ++i) c[i] = Rational(static_cast<long>(val[i]));
        Cyclotomic coef = Cyclotomic::from_powers(m, c);
        if (coef.is_zero()) continue;
        const int d = total_degree(e);
        auto it = scale.find(d);
        if (it == scale.end()) {
            Cyclotomic sd(1);
            for (int i = 0; i < d; ++i) sd = sd * s;
            it = scale.emplace(d, sd).first;
        }
        out.add_term(e, coef * it->second);
    }
    return out;
}

inline WeightPolynomial substitute_generic(const WeightPolynomial& p, const CycMatrix& M) {
    const int n = M.dim();
    using Poly = LinearSubstitution<CyclotomicRing>::Poly;
    std::vector<Poly> forms(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        for (int w = 0; w < n; ++w) {
            if (M(w, v).is_zero()) continue;
            Exponent e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(w)] = 1;
            forms[static_cast<std::size_t>(v)].emplace(e, M(w, v));
        }
    std::vector<std::pair<Exponent, Cyclotomic>> input(p.terms().begin(), p.terms().end());
    LinearSubstitution<CyclotomicRing> engine(CyclotomicRing{}, std::move(forms), static_cast<std::size_t>(n));
    engine.set_unit(Cyclotomic(1));
    WeightPolynomial out(p.variables());
    for (const auto& [e, c] : engine.run(std::move(input))) out.add_term(e, c);
    return out;
}

}  // namespace detail

/// Linear change of variables x_v -> sum_w M(w, v) x_w (column convention).
inline WeightPolynomial substitute(const WeightPolynomial& p, const CycMatrix& M) {
    if (static_cast<std::size_t>(M.dim()) != p.num_variables())
        throw ParseError("substitution matrix is " + std::to_string(M.dim()) + "x" + std::to_string(M.dim()) +
                         " but the polynomial has " + std::to_string(p.num_variables()) + " variables");
    if (M.is_monomial()) return detail::substitute_monomial(p, M);
    if (auto fast = detail::substitute_scaled_roots(p, M)) return *fast;
    return detail::substitute_generic(p, M);
}

/// Replaces each variable by an arbitrary polynomial over a common variable list.
inline WeightPolynomial compose(const WeightPolynomial& p, const std::vector<WeightPolynomial>& images) {
    if (images.size() != p.num_variables()) throw ParseError("compose needs one image per variable");
    if (images.empty()) return p;
    const auto& vars = images.front().variables();
    std::vector<std::vector<WeightPolynomial>> pw(images.size());
    auto power = [&](std::size_t v, int k) -> const WeightPolynomial& {
        auto& list = pw[v];
        if (list.empty()) list.push_back(WeightPolynomial::constant(vars, 1));
        while (static_cast<int>(list.size()) <= k) list.push_back(list.back() * images[v]);
        return list[static_cast<std::size_t>(k)];
    };
    WeightPolynomial out(vars);
    for (const auto& [e, c] : p.terms()) {
        WeightPolynomial t = WeightPolynomial::constant(vars, c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v]) t *= power(v, e[v]);
        out += t;
    }
    return out;
}

/// Parses paper-style text such as "x^8 + 14x^4y^4 + y^8" over single-letter
/// or indexed variables (x0, x1, ...). Coefficients are rationals.
inline WeightPolynomial parse_polynomial(const std::string& text, const std::vector<std::string>& variables) {
    WeightPolynomial out(variables);
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto number = [&] {
        std::size_t j = i;
        while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/')) ++j;
        std::string s = text.substr(i, j - i);
        i = j;
        return s;
    };
    // longest variable names first so "x10" is not read as "x1" "0"
    std::vector<std::size_t> order(variables.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return variables[a].size() > variables[b].size(); });
    skip();
    if (i == text.size()) throw ParseError("empty polynomial");
    bool first = true;
    while (true) {
        skip();
        if (i == text.size()) break;
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            throw ParseError("expected '+' or '-' at position " + std::to_string(i));
        }
        first = false;
        Rational coef = 1;
        bool has_factor = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coef = parse_rational(number());
            has_factor = true;
        }
        skip();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip();
        }
        Exponent e(variables.size(), 0);
        while (true) {
            skip();
            if (i == text.size()) break;
            bool matched = false;
            for (std::size_t v : order) {
                const auto& name = variables[v];
                if (text.compare(i, name.size(), name) != 0) continue;
                i += name.size();
                int k = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    std::string s = number();
                    if (s.empty() || s.find('/') != std::string::npos) throw ParseError("bad exponent at position " + std::to_string(i));
                    k = std::stoi(s);
                }
                e[v] = static_cast<std::uint16_t>(e[v] + k);
                matched = has_factor = true;
                break;
            }
            if (!matched) break;
            if (i < text.size() && text[i] == '*') ++i;
        }
        skip();
        if (!has_factor) throw ParseError("missing term at position " + std::to_string(i));
        if (i < text.size() && text[i] != '+' && text[i] != '-')
            throw ParseError("unexpected character '" + std::string(1, text[i]) + "' at position " + std::to_string(i));
        out.add_term(e, Cyclotomic(Rational(sign * coef)));
    }
    return out;
}

}  // namespace sdc

template <>
struct std::hash<sdc::WeightPolynomial> {
    std::size_t operator()(const sdc::WeightPolynomial& p) const { return p.hash(); }
};

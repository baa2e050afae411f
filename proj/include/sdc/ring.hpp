#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sdc/cyclotomic.hpp"
#include "sdc/errors.hpp"
#include "sdc/rational.hpp"

namespace sdc {

/// An element of Q/Z, kept as a rational in [0, 1).
struct QZ {
    Rational value;

    QZ() = default;
    QZ(const Rational& q) : value(q) { normalize(); }  // NOLINT(google-explicit-constructor)

    friend QZ operator+(const QZ& a, const QZ& b) { return QZ(a.value + b.value); }
    friend QZ operator-(const QZ& a, const QZ& b) { return QZ(a.value - b.value); }
    QZ operator-() const { return QZ(-value); }
    friend bool operator==(const QZ& a, const QZ& b) { return a.value == b.value; }
    friend bool operator!=(const QZ& a, const QZ& b) { return a.value != b.value; }
    friend bool operator<(const QZ& a, const QZ& b) { return a.value < b.value; }

    [[nodiscard]] std::string to_string() const { return value.get_str(); }

private:
    void normalize() {
        value.canonicalize();
        Integer fl;
        mpz_fdiv_q(fl.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
        value -= Rational(fl);
    }
};

using Table = std::vector<std::vector<int>>;

/// Finite ring given by its operation tables over element ids 0..n-1.
struct FiniteRing {
    std::vector<std::string> labels;
    Table add;
    Table mul;
    int zero = 0;
    int one = 1;

    // derived by finalize()
    std::vector<int> neg;
    std::vector<int> units;
    std::vector<int> unit_inverse;  // -1 for non-units

    [[nodiscard]] int size() const { return static_cast<int>(labels.size()); }
    [[nodiscard]] bool is_unit(int a) const { return unit_inverse[static_cast<std::size_t>(a)] >= 0; }
    [[nodiscard]] int plus(int a, int b) const { return add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    [[nodiscard]] int times(int a, int b) const { return mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    [[nodiscard]] int minus(int a, int b) const { return plus(a, neg[static_cast<std::size_t>(b)]); }

    [[nodiscard]] int find(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        return -1;
    }

    void finalize() {
        const int n = size();
        neg.assign(static_cast<std::size_t>(n), -1);
        unit_inverse.assign(static_cast<std::size_t>(n), -1);
        units.clear();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                if (plus(a, b) == zero) neg[static_cast<std::size_t>(a)] = b;
                if (times(a, b) == one && times(b, a) == one) unit_inverse[static_cast<std::size_t>(a)] = b;
            }
        for (int a = 0; a < n; ++a)
            if (unit_inverse[static_cast<std::size_t>(a)] >= 0) units.push_back(a);
    }

    /// Greedy generating set of (R, +), scanning ids in order.
    [[nodiscard]] std::vector<int> additive_generators() const {
        std::vector<int> gens;
        std::vector<bool> in(static_cast<std::size_t>(size()), false);
        in[static_cast<std::size_t>(zero)] = true;
        for (int a = 0; a < size(); ++a) {
            if (in[static_cast<std::size_t>(a)]) continue;
            gens.push_back(a);
            close_under(in, [&](int x, int y) { return plus(x, y); }, gens);
        }
        return gens;
    }

    /// Greedy generating set of R*, scanning ids in order; the identity is never listed.
    [[nodiscard]] std::vector<int> unit_generators() const {
        std::vector<int> gens;
        std::vector<bool> in(static_cast<std::size_t>(size()), false);
        in[static_cast<std::size_t>(one)] = true;
        for (int u : units) {
            if (in[static_cast<std::size_t>(u)]) continue;
            gens.push_back(u);
            close_under(in, [&](int x, int y) { return times(x, y); }, gens);
        }
        return gens;
    }

private:
    template <class Op>
    void close_under(std::vector<bool>& in, Op op, const std::vector<int>& gens) const {
        std::vector<int> frontier;
        for (int a = 0; a < size(); ++a)
            if (in[static_cast<std::size_t>(a)]) frontier.push_back(a);
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int a : frontier)
                for (int g : gens) {
                    const int c = op(a, g);
                    if (!in[static_cast<std::size_t>(c)]) {
                        in[static_cast<std::size_t>(c)] = true;
                        next.push_back(c);
                    }
                }
            frontier = std::move(next);
        }
    }
};

/// Finite left module. action[r][v] = r v, where r runs over the ring ids the
/// owning FormRing knows about.
struct Module {
    std::vector<std::string> labels;
    Table add;
    Table action;
    int zero = 0;
    std::vector<int> neg;

    [[nodiscard]] int size() const { return static_cast<int>(labels.size()); }
    [[nodiscard]] int plus(int a, int b) const { return add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    [[nodiscard]] int minus(int a, int b) const { return plus(a, neg[static_cast<std::size_t>(b)]); }
    [[nodiscard]] int act(int r, int v) const { return action[static_cast<std::size_t>(r)][static_cast<std::size_t>(v)]; }

    [[nodiscard]] int find(const std::string& label) const {
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == label) return static_cast<int>(i);
        return -1;
    }

    void finalize() {
        neg.assign(labels.size(), -1);
        for (int a = 0; a < size(); ++a)
            for (int b = 0; b < size(); ++b)
                if (plus(a, b) == zero) neg[static_cast<std::size_t>(a)] = b;
    }
};

/// Map V -> Q/Z stored as numerators over the form ring's level.
struct QuadraticMap {
    std::string label;
    std::vector<std::int64_t> table;
};

struct SymmetricIdempotent {
    int iota = 1;
    int left = 1;
    int right = 1;
};

/// A Type: ring, alphabet, bilinear form, quadratic maps and idempotents.
/// Every Q/Z value is stored as a numerator k standing for k/level.
struct FormRing {
    std::string label;
    /// Absent when the ring is a matrix ring too large to tabulate.
    std::optional<FiniteRing> ring;
    /// Names of the ring elements that module.action covers.
    std::vector<std::string> ring_labels;
    int ring_one = 1;
    Module module;
    std::int64_t level = 1;
    std::vector<std::vector<std::int64_t>> beta;
    std::vector<QuadraticMap> phi;
    std::vector<SymmetricIdempotent> idempotents;
    std::vector<int> unit_generators;
    int genus = 1;

    [[nodiscard]] QZ beta_value(int v, int w) const {
        return QZ(make_rational(beta[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)], level));
    }
    [[nodiscard]] QZ phi_value(std::size_t k, int v) const {
        return QZ(make_rational(phi[k].table[static_cast<std::size_t>(v)], level));
    }
    [[nodiscard]] int find_ring_element(const std::string& name) const {
        for (std::size_t i = 0; i < ring_labels.size(); ++i)
            if (ring_labels[i] == name) return static_cast<int>(i);
        return -1;
    }
    [[nodiscard]] std::int64_t reduce(std::int64_t k) const { return arith::mod(k, level); }
};

namespace detail {

[[noreturn]] inline void fail(const std::string& axiom, const std::string& witness) {
    throw ValidationError(axiom, witness);
}

inline std::string triple(const std::vector<std::string>& l, int a, int b, int c) {
    return "(" + l[static_cast<std::size_t>(a)] + ", " + l[static_cast<std::size_t>(b)] + ", " +
           l[static_cast<std::size_t>(c)] + ")";
}

inline void check_table(const Table& t, int rows, int cols, int range, const std::string& what) {
    if (static_cast<int>(t.size()) != rows) fail(what + "-shape", "expected " + std::to_string(rows) + " rows");
    for (const auto& row : t) {
        if (static_cast<int>(row.size()) != cols) fail(what + "-shape", "expected " + std::to_string(cols) + " columns");
        for (int x : row)
            if (x < 0 || x >= range) fail(what + "-closure", "entry " + std::to_string(x) + " out of range");
    }
}

inline void check_abelian_group(const Table& add, int zero, const std::vector<std::string>& l, const std::string& prefix) {
    const int n = static_cast<int>(l.size());
    auto at = [&](int a, int b) { return add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; };
    for (int a = 0; a < n; ++a) {
        if (at(zero, a) != a || at(a, zero) != a) fail(prefix + "add-identity", l[static_cast<std::size_t>(a)]);
        bool has_inverse = false;
        for (int b = 0; b < n; ++b) {
            if (at(a, b) != at(b, a)) fail(prefix + "add-commutativity", triple(l, a, b, a));
            if (at(a, b) == zero) has_inverse = true;
            for (int c = 0; c < n; ++c)
                if (at(at(a, b), c) != at(a, at(b, c))) fail(prefix + "add-associativity", triple(l, a, b, c));
        }
        if (!has_inverse) fail(prefix + "add-inverse", l[static_cast<std::size_t>(a)]);
    }
}

}  // namespace detail

namespace detail {

struct VecHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const {
        std::size_t h = v.size();
        for (auto x : v) h = h * 1000003ULL ^ static_cast<std::size_t>(x);
        return h;
    }
};

/// Subgroup of (Z/level)^n generated incrementally, stored as an explicit set.
class AdditiveSpan {
public:
    AdditiveSpan(std::int64_t level, std::size_t n, std::size_t cap = 2000000)
        : level_(level), cap_(cap) {
        elems_.emplace_back(n, 0);
        set_.insert(elems_.back());
    }

    [[nodiscard]] bool contains(const std::vector<std::int64_t>& v) const { return set_.count(normalized(v)) != 0; }

    /// Adds g; returns false if it was already in the span.
    bool add(const std::vector<std::int64_t>& g0) {
        const auto g = normalized(g0);
        if (set_.count(g)) return false;
        const std::size_t base = elems_.size();
        std::vector<std::vector<std::int64_t>> fresh;
        for (std::size_t i = 0; i < base; ++i) {
            std::vector<std::int64_t> cur = elems_[i];
            for (;;) {
                for (std::size_t k = 0; k < cur.size(); ++k) cur[k] = (cur[k] + g[k]) % level_;
                if (set_.count(cur)) break;
                set_.insert(cur);
                fresh.push_back(cur);
                if (set_.size() > cap_) throw BudgetExceeded("additive span of quadratic maps exceeds its cap");
            }
        }
        for (auto& f : fresh) elems_.push_back(std::move(f));
        return true;
    }

    [[nodiscard]] std::size_t size() const { return elems_.size(); }

private:
    [[nodiscard]] std::vector<std::int64_t> normalized(std::vector<std::int64_t> v) const {
        for (auto& x : v) x = arith::mod(x, level_);
        return v;
    }

    std::int64_t level_;
    std::size_t cap_;
    std::vector<std::vector<std::int64_t>> elems_;
    std::unordered_set<std::vector<std::int64_t>, VecHash> set_;
};

}  // namespace detail

/// Whether target lies in the subgroup of (Z/level)^n generated by gens.
inline bool in_additive_span(std::int64_t level, const std::vector<std::vector<std::int64_t>>& gens,
                             const std::vector<std::int64_t>& target) {
    detail::AdditiveSpan span(level, target.size());
    for (const auto& g : gens) span.add(g);
    return span.contains(target);
}

/// Checks the ring axioms (|R| <= 256) and unit closure; throws ValidationError.
inline void validate_ring(const FiniteRing& R) {
    const int n = R.size();
    detail::check_table(R.add, n, n, n, "ring-add");
    detail::check_table(R.mul, n, n, n, "ring-mul");
    if (R.zero < 0 || R.zero >= n || R.one < 0 || R.one >= n) detail::fail("ring-constants", "zero/one out of range");
    const auto& l = R.labels;
    if (n <= 256) {
        detail::check_abelian_group(R.add, R.zero, l, "ring-");
        for (int a = 0; a < n; ++a) {
            if (R.times(R.one, a) != a || R.times(a, R.one) != a) detail::fail("mul-identity", l[static_cast<std::size_t>(a)]);
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c) {
                    if (R.times(R.times(a, b), c) != R.times(a, R.times(b, c)))
                        detail::fail("mul-associativity", detail::triple(l, a, b, c));
                    if (R.times(a, R.plus(b, c)) != R.plus(R.times(a, b), R.times(a, c)) ||
                        R.times(R.plus(a, b), c) != R.plus(R.times(a, c), R.times(b, c)))
                        detail::fail("distributivity", detail::triple(l, a, b, c));
                }
        }
    }
    for (int u : R.units)
        for (int w : R.units)
            if (!R.is_unit(R.times(u, w))) detail::fail("unit-closure", detail::triple(l, u, w, R.times(u, w)));
}

/// Checks every testable condition on a form ring; throws ValidationError
/// naming the violated axiom and a witness.
inline void validate(const FormRing& rho) {
    const Module& V = rho.module;
    const int n = V.size();
    const int nr = static_cast<int>(rho.ring_labels.size());
    if (n < 1) detail::fail("module-empty", "module has no elements");
    if (rho.level < 1) detail::fail("level", "level must be positive");
    if (rho.ring) {
        validate_ring(*rho.ring);
        if (rho.ring->size() != nr) detail::fail("ring-labels", "label count differs from ring size");
    }
    detail::check_table(V.add, n, n, n, "module-add");
    detail::check_table(V.action, nr, n, n, "module-action");
    detail::check_abelian_group(V.add, V.zero, V.labels, "module-");
    const auto& vl = V.labels;
    for (int r = 0; r < nr; ++r)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w)
                if (V.act(r, V.plus(v, w)) != V.plus(V.act(r, v), V.act(r, w)))
                    detail::fail("module-action-additivity", rho.ring_labels[static_cast<std::size_t>(r)] + " on " +
                                                                 vl[static_cast<std::size_t>(v)] + ", " + vl[static_cast<std::size_t>(w)]);
    if (rho.ring) {
        const FiniteRing& R = *rho.ring;
        for (int v = 0; v < n; ++v) {
            if (V.act(R.one, v) != v) detail::fail("module-unital", vl[static_cast<std::size_t>(v)]);
            for (int r = 0; r < nr; ++r)
                for (int s = 0; s < nr; ++s) {
                    if (V.act(R.plus(r, s), v) != V.plus(V.act(r, v), V.act(s, v)))
                        detail::fail("module-ring-additivity", detail::triple(R.labels, r, s, 0) + " on " + vl[static_cast<std::size_t>(v)]);
                    if (V.act(R.times(r, s), v) != V.act(r, V.act(s, v)))
                        detail::fail("module-compatibility", detail::triple(R.labels, r, s, 0) + " on " + vl[static_cast<std::size_t>(v)]);
                }
        }
    }

    // beta: shape, biadditivity, nonsingularity
    if (static_cast<int>(rho.beta.size()) != n) detail::fail("beta-shape", "beta must be |V| x |V|");
    for (const auto& row : rho.beta)
        if (static_cast<int>(row.size()) != n) detail::fail("beta-shape", "beta must be |V| x |V|");
    auto B = [&](int v, int w) { return rho.beta[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]; };
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            for (int w = 0; w < n; ++w) {
                if (rho.reduce(B(V.plus(u, v), w) - B(u, w) - B(v, w)) != 0 ||
                    rho.reduce(B(w, V.plus(u, v)) - B(w, u) - B(w, v)) != 0)
                    detail::fail("beta-biadditivity", detail::triple(vl, u, v, w));
            }
    {
        std::set<std::vector<std::int64_t>> rows;
        for (int v = 0; v < n; ++v) {
            std::vector<std::int64_t> row(rho.beta[static_cast<std::size_t>(v)]);
            for (auto& x : row) x = rho.reduce(x);
            if (!rows.insert(row).second) detail::fail("beta-singular", "v -> beta(v, .) is not injective at " + vl[static_cast<std::size_t>(v)]);
        }
    }

    // Phi: polarization biadditive, and the beta specialization lies in the additive span
    for (const auto& q : rho.phi) {
        if (static_cast<int>(q.table.size()) != n) detail::fail("phi-shape", q.label);
        auto Q = [&](int v) { return q.table[static_cast<std::size_t>(v)]; };
        if (rho.reduce(Q(V.zero)) != 0) detail::fail("phi-polarization", q.label + " is nonzero at 0");
        auto P = [&](int v, int w) { return Q(V.plus(v, w)) - Q(v) - Q(w); };
        for (int u = 0; u < n; ++u)
            for (int v = 0; v < n; ++v)
                for (int w = 0; w < n; ++w)
                    if (rho.reduce(P(V.plus(u, v), w) - P(u, w) - P(v, w)) != 0)
                        detail::fail("phi-polarization", q.label + " at " + detail::triple(vl, u, v, w));
    }
    {
        std::vector<std::int64_t> spec(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) spec[static_cast<std::size_t>(v)] = rho.reduce(B(v, v));
        std::vector<std::vector<std::int64_t>> gens;
        for (const auto& q : rho.phi) gens.push_back(q.table);
        if (!in_additive_span(rho.level, gens, spec))
            detail::fail("phi-specialization", "v -> beta(v, v) is not in the span of Phi");
    }

    // idempotents
    for (const auto& e : rho.idempotents) {
        for (int x : {e.iota, e.left, e.right})
            if (x < 0 || x >= nr) detail::fail("idempotent-range", "ring element id " + std::to_string(x));
        const std::string name = "iota = " + rho.ring_labels[static_cast<std::size_t>(e.iota)];
        if (rho.ring) {
            const FiniteRing& R = *rho.ring;
            if (R.times(e.iota, e.iota) != e.iota) detail::fail("idempotency", name + ": iota * iota != iota");
            if (R.times(e.left, e.right) != e.iota) detail::fail("factorization", name + ": left * right != iota");
        } else {
            for (int v = 0; v < n; ++v) {
                if (V.act(e.iota, V.act(e.iota, v)) != V.act(e.iota, v))
                    detail::fail("idempotency", name + ": iota * iota != iota on " + vl[static_cast<std::size_t>(v)]);
                if (V.act(e.left, V.act(e.right, v)) != V.act(e.iota, v))
                    detail::fail("factorization", name + ": left * right != iota on " + vl[static_cast<std::size_t>(v)]);
            }
        }
    }

    // units act by permutations
    std::vector<int> to_check = rho.unit_generators;
    if (rho.ring) to_check = rho.ring->units;
    for (int u : to_check) {
        if (u < 0 || u >= nr) detail::fail("unit-range", "ring element id " + std::to_string(u));
        std::vector<bool> hit(static_cast<std::size_t>(n), false);
        for (int v = 0; v < n; ++v) {
            const int w = V.act(u, v);
            if (hit[static_cast<std::size_t>(w)]) detail::fail("unit-permutation", rho.ring_labels[static_cast<std::size_t>(u)]);
            hit[static_cast<std::size_t>(w)] = true;
        }
    }
}

/// Exponential e^{2 pi i k / level}.
inline Cyclotomic qz_phase(std::int64_t k, std::int64_t level) { return phase(make_rational(k, level)); }

}  // namespace sdc

#pragma once

#include <string>
#include <vector>

#include "sdc/ring.hpp"

namespace sdc {

/// Z/nZ with element ids equal to the residues.
inline FiniteRing integers_mod(int n) {
    if (n < 2) throw ParseError("modulus must be at least 2");
    FiniteRing R;
    R.add.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    R.mul = R.add;
    for (int a = 0; a < n; ++a) {
        R.labels.push_back(std::to_string(a));
        for (int b = 0; b < n; ++b) {
            R.add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
            R.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a * b) % n;
        }
    }
    R.zero = 0;
    R.one = 1;
    R.finalize();
    return R;
}

/// GF(p^k) with elements ordered 0, 1, g, g^2, ..., g^(q-2) for the class of x
/// modulo x^k - sum reduction[i] x^i. Keeps the F_p coordinates of each element.
struct FiniteField {
    FiniteRing ring;
    int p = 2;
    int k = 1;
    std::vector<std::vector<int>> coords;

    [[nodiscard]] int q() const { return ring.size(); }

    [[nodiscard]] int power(int a, int e) const {
        int r = ring.one;
        for (int i = 0; i < e; ++i) r = ring.times(r, a);
        return r;
    }
    [[nodiscard]] int frobenius(int a) const { return power(a, p); }
    /// Absolute trace to F_p, as an integer in [0, p).
    [[nodiscard]] int trace(int a) const {
        int t = ring.zero, x = a;
        for (int i = 0; i < k; ++i) {
            t = ring.plus(t, x);
            x = frobenius(x);
        }
        return coords[static_cast<std::size_t>(t)][0];
    }
    /// Conjugate v^sqrt(q) for quadratic extensions.
    [[nodiscard]] int conj(int a) const { return power(a, p); }
};

inline FiniteField galois_field(int p, int k, const std::vector<int>& reduction, const std::string& generator_name) {
    FiniteField F;
    F.p = p;
    F.k = k;
    int q = 1;
    for (int i = 0; i < k; ++i) q *= p;
    auto mul_x = [&](std::vector<int> c) {
        std::vector<int> out(static_cast<std::size_t>(k), 0);
        for (int i = 0; i + 1 < k; ++i) out[static_cast<std::size_t>(i) + 1] = c[static_cast<std::size_t>(i)];
        const int top = c[static_cast<std::size_t>(k) - 1];
        for (int i = 0; i < k; ++i)
            out[static_cast<std::size_t>(i)] = (out[static_cast<std::size_t>(i)] + top * reduction[static_cast<std::size_t>(i)]) % p;
        for (auto& x : out) x = (x % p + p) % p;
        return out;
    };
    F.coords.push_back(std::vector<int>(static_cast<std::size_t>(k), 0));
    std::vector<int> cur(static_cast<std::size_t>(k), 0);
    cur[0] = 1;
    for (int j = 0; j < q - 1; ++j) {
        F.coords.push_back(cur);
        cur = mul_x(cur);
    }
    F.ring.labels = {"0", "1"};
    if (k > 1) F.ring.labels.push_back(generator_name);
    for (int j = 2; j < q - 1; ++j) F.ring.labels.push_back(generator_name + "^" + std::to_string(j));
    if (k == 1) {
        // prime field: use residues as labels and ids
        F.ring = integers_mod(p);
        F.coords.clear();
        for (int a = 0; a < p; ++a) F.coords.push_back({a});
        return F;
    }
    auto id_of = [&](const std::vector<int>& c) {
        for (std::size_t i = 0; i < F.coords.size(); ++i)
            if (F.coords[i] == c) return static_cast<int>(i);
        throw Error("reduction polynomial does not give a primitive generator");
    };
    F.ring.add.assign(static_cast<std::size_t>(q), std::vector<int>(static_cast<std::size_t>(q)));
    F.ring.mul = F.ring.add;
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) {
            std::vector<int> s(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i)
                s[static_cast<std::size_t>(i)] = (F.coords[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] +
                                                  F.coords[static_cast<std::size_t>(b)][static_cast<std::size_t>(i)]) % p;
            F.ring.add[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = id_of(s);
            int m = 0;
            if (a != 0 && b != 0) m = 1 + ((a - 1) + (b - 1)) % (q - 1);
            F.ring.mul[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = m;
        }
    // distinct powers check
    for (std::size_t i = 0; i < F.coords.size(); ++i)
        for (std::size_t j = i + 1; j < F.coords.size(); ++j)
            if (F.coords[i] == F.coords[j]) throw Error("reduction polynomial does not give a primitive generator");
    F.ring.zero = 0;
    F.ring.one = 1;
    F.ring.finalize();
    return F;
}

/// F4 = {0, 1, w, w^2} with w^2 = w + 1.
inline FiniteField field_f4() { return galois_field(2, 2, {1, 1}, "w"); }
/// F9 = {0, 1, a, ..., a^7} with a^2 = a + 1, so a^4 = -1 and -a satisfies
/// x^2 + x = 1. This listing reproduces the printed 9-dimensional generators.
inline FiniteField field_f9() { return galois_field(3, 2, {1, 1}, "a"); }

namespace detail {

inline FormRing regular_form_ring(const std::string& label, const FiniteRing& R, std::int64_t level) {
    FormRing rho;
    rho.label = label;
    rho.ring = R;
    rho.ring_labels = R.labels;
    rho.ring_one = R.one;
    rho.module.labels = R.labels;
    rho.module.add = R.add;
    rho.module.action = R.mul;
    rho.module.zero = R.zero;
    rho.module.finalize();
    rho.level = level;
    rho.unit_generators = R.unit_generators();
    return rho;
}

/// (Z/n, Z/n, beta = uv/n, Phi = {v^2/d}).
inline FormRing cyclic_form_ring(const std::string& label, int n, int d) {
    const std::int64_t level = std::max(n, d);
    FormRing rho = regular_form_ring(label, integers_mod(n), level);
    rho.beta.assign(static_cast<std::size_t>(n), std::vector<std::int64_t>(static_cast<std::size_t>(n)));
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            rho.beta[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = (static_cast<std::int64_t>(u) * v % n) * (level / n);
    QuadraticMap q;
    q.label = "v^2/" + std::to_string(d);
    for (int v = 0; v < n; ++v) q.table.push_back((static_cast<std::int64_t>(v) * v % d) * (level / d));
    rho.phi.push_back(q);
    rho.idempotents.push_back({1, 1, 1});
    return rho;
}

}  // namespace detail

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"2_I", "2_II", "3", "4_H", "4_II_Z", "9_H", "Z6_demo"};
    return names;
}

/// Built-in Types.
inline FormRing preset(const std::string& name) {
    FormRing rho;
    if (name == "2_I") {
        rho = detail::cyclic_form_ring(name, 2, 2);
    } else if (name == "2_II") {
        rho = detail::cyclic_form_ring(name, 2, 4);
    } else if (name == "3") {
        rho = detail::cyclic_form_ring(name, 3, 3);
    } else if (name == "4_II_Z") {
        rho = detail::cyclic_form_ring(name, 4, 8);
    } else if (name == "Z6_demo") {
        rho = detail::cyclic_form_ring(name, 6, 6);
        rho.idempotents = {{3, 3, 3}, {4, 4, 4}};
    } else if (name == "4_H" || name == "9_H") {
        const bool f4 = name == "4_H";
        const FiniteField F = f4 ? field_f4() : field_f9();
        const int q = F.q();
        rho = detail::regular_form_ring(name, F.ring, F.p);
        rho.beta.assign(static_cast<std::size_t>(q), std::vector<std::int64_t>(static_cast<std::size_t>(q)));
        for (int v = 0; v < q; ++v)
            for (int w = 0; w < q; ++w)
                rho.beta[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] = F.trace(F.ring.times(v, F.conj(w)));
        // beta(a v, v) with a = w (F4) or a = -a_gen = a_gen^5 (F9, where a + a^3 = -1);
        // for F4 the plain specialization beta(v, v) vanishes identically
        const int a = f4 ? 2 : 6;
        QuadraticMap qm;
        qm.label = f4 ? "beta(wv,v)" : "beta(av,v)";
        for (int v = 0; v < q; ++v) qm.table.push_back(F.trace(F.ring.times(a, F.ring.times(v, F.conj(v)))));
        rho.phi.push_back(qm);
        rho.idempotents = {{1, 1, 1}};
    } else {
        throw ParseError("unknown preset '" + name + "'");
    }
    validate(rho);
    return rho;
}

}  // namespace sdc

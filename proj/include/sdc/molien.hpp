#pragma once

#include <cstdint>
#include <map>
#include <thread>
#include <vector>

#include "sdc/clifford_weil.hpp"
#include "sdc/univariate.hpp"

namespace sdc {

/// Elements sharing the traces of their first n powers (n = dimension) have the
/// same characteristic polynomial, hence the same contribution to the Molien sum.
struct TraceClass {
    /// Elementary symmetric functions e_0..e_n of the eigenvalues.
    std::vector<Cyclotomic> elementary;
    std::uint64_t count = 0;
    /// Multiplicative order of the elements.
    std::uint64_t order = 1;
};

struct MolienOptions {
    /// Worker threads for the pass over the group elements.
    int jobs = 1;
    /// Largest numerator degree n (e - 1) the exact mode will expand (e = group exponent).
    std::size_t exact_degree_budget = 20000;
};

namespace detail {

using TraceKey = std::vector<std::int64_t>;

inline TraceKey trace_key(const PackedAlgebra& alg, const PackedMatrix& g) {
    TraceKey key;
    PackedMatrix p = g;
    for (int k = 1; k <= alg.dim(); ++k) {
        if (k > 1) p = alg.mul(p, g);
        auto t = alg.trace_numerators(p);
        key.insert(key.end(), t.begin(), t.end());
        key.push_back(p.den);
    }
    return key;
}

inline std::uint64_t element_order(const PackedAlgebra& alg, const PackedMatrix& g) {
    const PackedMatrix one = alg.identity();
    PackedMatrix p = g;
    for (std::uint64_t k = 1; k <= 1000000; ++k) {
        if (p == one) return k;
        p = alg.mul(p, g);
    }
    throw BudgetExceeded("element order exceeds 10^6");
}

/// Newton: k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i.
inline std::vector<Cyclotomic> elementary_from_power_sums(const std::vector<Cyclotomic>& p) {
    const std::size_t n = p.size();
    std::vector<Cyclotomic> e(n + 1);
    e[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Cyclotomic s;
        for (std::size_t i = 1; i <= k; ++i) {
            const Cyclotomic term = e[k - i] * p[i - 1];
            s = (i % 2 == 1) ? s + term : s - term;
        }
        e[k] = s.scaled(make_rational(1, static_cast<long>(k)));
    }
    return e;
}

}  // namespace detail

/// Groups the elements by their power traces.
inline std::vector<TraceClass> trace_classes(const MatrixGroup& G, const MolienOptions& opt = {}) {
    const auto& alg = G.algebra();
    const auto& els = G.packed_elements();
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, opt.jobs));
    std::vector<std::map<detail::TraceKey, std::pair<std::uint64_t, std::size_t>>> parts(jobs);
    auto work = [&](std::size_t part) {
        for (std::size_t i = part; i < els.size(); i += jobs) {
            auto& slot = parts[part][detail::trace_key(alg, els[i])];
            if (slot.first++ == 0) slot.second = i;
        }
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
    }
    std::map<detail::TraceKey, std::pair<std::uint64_t, std::size_t>> all;
    for (const auto& part : parts)
        for (const auto& [key, v] : part) {
            auto [it, fresh] = all.emplace(key, v);
            if (!fresh) {
                it->second.first += v.first;
                it->second.second = std::min(it->second.second, v.second);
            }
        }
    const int n = alg.dim();
    const std::size_t d = static_cast<std::size_t>(alg.field().degree());
    std::vector<TraceClass> out;
    for (const auto& [key, v] : all) {
        std::vector<Cyclotomic> p;
        for (int k = 0; k < n; ++k) {
            const auto base = key.begin() + static_cast<std::ptrdiff_t>(static_cast<std::size_t>(k) * (d + 1));
            p.push_back(alg.to_cyclotomic(std::vector<std::int64_t>(base, base + static_cast<std::ptrdiff_t>(d)), *(base + static_cast<std::ptrdiff_t>(d))));
        }
        out.push_back({detail::elementary_from_power_sums(p), v.first, detail::element_order(alg, els[v.second])});
    }
    return out;
}

/// Molien coefficients (1/|G|) sum_g trace(S^d g) for d = 0..D, from
/// h_d = sum_k (-1)^(k-1) e_k h_(d-k). Each coefficient must be a nonnegative integer.
inline std::vector<Rational> molien_coeffs(const std::vector<TraceClass>& classes, std::uint64_t order, std::size_t D) {
    std::vector<Cyclotomic> total(D + 1);
    for (const auto& c : classes) {
        const std::size_t n = c.elementary.size() - 1;
        std::vector<Cyclotomic> h(D + 1);
        h[0] = 1;
        for (std::size_t d = 1; d <= D; ++d) {
            Cyclotomic s;
            for (std::size_t k = 1; k <= std::min(d, n); ++k) {
                if (c.elementary[k].is_zero()) continue;
                const Cyclotomic term = c.elementary[k] * h[d - k];
                s = (k % 2 == 1) ? s + term : s - term;
            }
            h[d] = s;
        }
        const Cyclotomic weight(Rational(static_cast<long>(c.count)));
        for (std::size_t d = 0; d <= D; ++d) total[d] += weight * h[d];
    }
    std::vector<Rational> out;
    for (std::size_t d = 0; d <= D; ++d) {
        if (!total[d].is_rational()) throw Error("Molien coefficient at degree " + std::to_string(d) + " is not rational: internal arithmetic fault");
        Rational q = total[d].rational() / Rational(static_cast<long>(order));
        if (!is_integer(q) || q < 0)
            throw Error("Molien coefficient at degree " + std::to_string(d) + " is " + q.get_str() + ": internal arithmetic fault");
        out.push_back(q);
    }
    return out;
}

inline std::vector<Rational> molien_coeffs(const MatrixGroup& G, std::size_t D, const MolienOptions& opt = {}) {
    return molien_coeffs(trace_classes(G, opt), G.order(), D);
}

/// Exact Molien series. With e the group exponent every term 1/det(I - tg) is
/// Q_g(t)/(1 - t^e)^n with deg Q_g <= n(e - 1), so the averaged numerator is the
/// truncated series times (1 - t^e)^n; common cyclotomic factors are then cancelled.
inline RationalFunction molien_series(const std::vector<TraceClass>& classes, std::uint64_t order, const MolienOptions& opt = {}) {
    if (classes.empty()) throw Error("molien_series: empty group");
    const std::size_t n = classes.front().elementary.size() - 1;
    std::int64_t e = 1;
    for (const auto& c : classes) e = arith::lcm(e, static_cast<std::int64_t>(c.order));
    const std::size_t B = n * static_cast<std::size_t>(e - 1);
    if (B > opt.exact_degree_budget) throw BudgetExceeded("molien_series: numerator degree " + std::to_string(B) + " exceeds the exact budget");
    const UPoly H(molien_coeffs(classes, order, B));
    UPoly num = (H * UPoly::one_minus_t_pow(static_cast<std::size_t>(e)).pow(static_cast<unsigned>(n))).truncated(B + 1);
    std::map<std::int64_t, std::size_t> mult;
    for (std::int64_t d : arith::divisors(e)) {
        std::size_t m = n;
        const UPoly phi = UPoly::cyclotomic(d);
        while (m > 0 && !num.is_zero()) {
            auto [q, r] = num.divmod(phi);
            if (!r.is_zero()) break;
            num = q;
            --m;
        }
        mult[d] = m;
    }
    // 1 - t^e = -prod_{d | e} Phi_d
    UPoly den(n % 2 == 0 ? 1 : -1);
    for (const auto& [d, m] : mult) den = den * UPoly::cyclotomic(d).pow(static_cast<unsigned>(m));
    return {num, den};
}

inline RationalFunction molien_series(const MatrixGroup& G, const MolienOptions& opt = {}) {
    return molien_series(trace_classes(G, opt), G.order(), opt);
}

}  // namespace sdc

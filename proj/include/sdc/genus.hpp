#pragma once

#include <map>
#include <string>
#include <vector>

#include "sdc/ring.hpp"

namespace sdc {

struct GenusOptions {
    /// Largest |V|^m accepted.
    std::int64_t module_cap = 6561;
    /// Mat_m(R) is tabulated only when |R|^(m*m) is at most this.
    std::int64_t explicit_ring_cap = 1024;
};

namespace detail {

using RingMatrix = std::vector<int>;  // row-major m x m over ring ids

inline std::string matrix_label(const FiniteRing& R, const RingMatrix& A, int m) {
    std::string s = "[";
    for (int i = 0; i < m; ++i) {
        s += i ? ",[" : "[";
        for (int j = 0; j < m; ++j) {
            if (j) s += ",";
            s += R.labels[static_cast<std::size_t>(A[static_cast<std::size_t>(i * m + j)])];
        }
        s += "]";
    }
    return s + "]";
}

inline RingMatrix matrix_mul(const FiniteRing& R, const RingMatrix& A, const RingMatrix& B, int m) {
    RingMatrix C(static_cast<std::size_t>(m * m), R.zero);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            int s = R.zero;
            for (int k = 0; k < m; ++k)
                s = R.plus(s, R.times(A[static_cast<std::size_t>(i * m + k)], B[static_cast<std::size_t>(k * m + j)]));
            C[static_cast<std::size_t>(i * m + j)] = s;
        }
    return C;
}

inline RingMatrix unit_matrix(const FiniteRing& R, int m) {
    RingMatrix A(static_cast<std::size_t>(m * m), R.zero);
    for (int i = 0; i < m; ++i) A[static_cast<std::size_t>(i * m + i)] = R.one;
    return A;
}

}  // namespace detail

/// Mat_m(rho): ring Mat_m(R), module V^m with tuple index sum v_i |V|^(m-1-i),
/// beta summed over components, Phi_m pulled back along row vectors, and each
/// idempotent placed in the (1,1) slot.
inline FormRing genus_lift(const FormRing& rho, int m, const GenusOptions& opt = {}) {
    if (m < 1) throw ParseError("genus must be positive");
    if (!rho.ring) throw Error("genus_lift needs a tabulated ring");
    if (rho.genus != 1) throw Error("genus_lift expects a genus-1 form ring");
    const FiniteRing& R = *rho.ring;
    const Module& V = rho.module;
    const int n = V.size(), r = R.size();
    std::int64_t nm = 1, rm = 1;
    for (int i = 0; i < m; ++i) {
        nm *= n;
        if (nm > opt.module_cap) throw BudgetExceeded("|V|^m exceeds the genus size cap");
    }
    bool explicit_ring = true;
    for (int i = 0; i < m * m; ++i) {
        rm *= r;
        if (rm > opt.explicit_ring_cap) {
            explicit_ring = false;
            break;
        }
    }

    auto digits = [&](std::int64_t idx) {
        std::vector<int> d(static_cast<std::size_t>(m));
        for (int i = m - 1; i >= 0; --i) {
            d[static_cast<std::size_t>(i)] = static_cast<int>(idx % n);
            idx /= n;
        }
        return d;
    };
    auto index = [&](const std::vector<int>& d) {
        std::int64_t idx = 0;
        for (int x : d) idx = idx * n + x;
        return static_cast<int>(idx);
    };

    FormRing out;
    out.label = m == 1 ? rho.label : "Mat_" + std::to_string(m) + "(" + rho.label + ")";
    out.genus = m;
    out.level = rho.level;

    // module V^m
    Module& W = out.module;
    W.labels.resize(static_cast<std::size_t>(nm));
    W.add.assign(static_cast<std::size_t>(nm), std::vector<int>(static_cast<std::size_t>(nm)));
    std::vector<std::vector<int>> dig(static_cast<std::size_t>(nm));
    for (std::int64_t x = 0; x < nm; ++x) {
        dig[static_cast<std::size_t>(x)] = digits(x);
        std::string s = "(";
        for (int i = 0; i < m; ++i) {
            if (i) s += ",";
            s += V.labels[static_cast<std::size_t>(dig[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)])];
        }
        W.labels[static_cast<std::size_t>(x)] = s + ")";
    }
    for (std::int64_t x = 0; x < nm; ++x)
        for (std::int64_t y = 0; y < nm; ++y) {
            std::vector<int> s(static_cast<std::size_t>(m));
            for (int i = 0; i < m; ++i)
                s[static_cast<std::size_t>(i)] = V.plus(dig[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)],
                                                        dig[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)]);
            W.add[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = index(s);
        }
    std::vector<int> zero_digits(static_cast<std::size_t>(m), V.zero);
    W.zero = index(zero_digits);
    W.finalize();

    // ring elements: either all of Mat_m(R) or just the ones the generators need
    std::vector<detail::RingMatrix> elems;
    std::map<detail::RingMatrix, int> elem_id;
    auto intern = [&](const detail::RingMatrix& A) {
        auto it = elem_id.find(A);
        if (it != elem_id.end()) return it->second;
        const int id = static_cast<int>(elems.size());
        elems.push_back(A);
        elem_id.emplace(A, id);
        return id;
    };
    if (explicit_ring) {
        for (std::int64_t idx = 0; idx < rm; ++idx) {
            detail::RingMatrix A(static_cast<std::size_t>(m * m));
            std::int64_t t = idx;
            for (int i = m * m - 1; i >= 0; --i) {
                A[static_cast<std::size_t>(i)] = static_cast<int>(t % r);
                t /= r;
            }
            intern(A);
        }
    }
    const int one_id = intern(detail::unit_matrix(R, m));
    std::vector<int> unit_gens;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            for (int a : R.additive_generators()) {
                auto E = detail::unit_matrix(R, m);
                E[static_cast<std::size_t>(i * m + j)] = a;
                unit_gens.push_back(intern(E));
            }
        }
    for (int i = 0; i < m; ++i)
        for (int u : R.unit_generators()) {
            auto D = detail::unit_matrix(R, m);
            D[static_cast<std::size_t>(i * m + i)] = u;
            unit_gens.push_back(intern(D));
        }
    for (const auto& e : rho.idempotents) {
        auto slot = [&](int x) {
            detail::RingMatrix A(static_cast<std::size_t>(m * m), R.zero);
            A[0] = x;
            return intern(A);
        };
        out.idempotents.push_back({slot(e.iota), slot(e.left), slot(e.right)});
    }
    out.unit_generators = unit_gens;
    out.ring_one = one_id;
    for (const auto& A : elems) out.ring_labels.push_back(detail::matrix_label(R, A, m));

    // matrix action on V^m: (A v)_i = sum_j A_ij v_j
    W.action.assign(elems.size(), std::vector<int>(static_cast<std::size_t>(nm)));
    for (std::size_t e = 0; e < elems.size(); ++e) {
        const auto& A = elems[e];
        for (std::int64_t x = 0; x < nm; ++x) {
            const auto& d = dig[static_cast<std::size_t>(x)];
            std::vector<int> s(static_cast<std::size_t>(m), V.zero);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j)
                    s[static_cast<std::size_t>(i)] =
                        V.plus(s[static_cast<std::size_t>(i)], V.act(A[static_cast<std::size_t>(i * m + j)], d[static_cast<std::size_t>(j)]));
            W.action[e][static_cast<std::size_t>(x)] = index(s);
        }
    }

    if (explicit_ring) {
        FiniteRing M;
        M.labels = out.ring_labels;
        const std::size_t ne = elems.size();
        M.add.assign(ne, std::vector<int>(ne));
        M.mul.assign(ne, std::vector<int>(ne));
        for (std::size_t a = 0; a < ne; ++a)
            for (std::size_t b = 0; b < ne; ++b) {
                detail::RingMatrix S(static_cast<std::size_t>(m * m));
                for (int k = 0; k < m * m; ++k)
                    S[static_cast<std::size_t>(k)] = R.plus(elems[a][static_cast<std::size_t>(k)], elems[b][static_cast<std::size_t>(k)]);
                M.add[a][b] = elem_id.at(S);
                M.mul[a][b] = elem_id.at(detail::matrix_mul(R, elems[a], elems[b], m));
            }
        M.zero = elem_id.at(detail::RingMatrix(static_cast<std::size_t>(m * m), R.zero));
        M.one = one_id;
        M.finalize();
        out.ring = std::move(M);
    }

    // beta^(m)
    out.beta.assign(static_cast<std::size_t>(nm), std::vector<std::int64_t>(static_cast<std::size_t>(nm)));
    for (std::int64_t x = 0; x < nm; ++x)
        for (std::int64_t y = 0; y < nm; ++y) {
            std::int64_t s = 0;
            for (int i = 0; i < m; ++i)
                s += rho.beta[static_cast<std::size_t>(dig[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)])]
                             [static_cast<std::size_t>(dig[static_cast<std::size_t>(y)][static_cast<std::size_t>(i)])];
            out.beta[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = arith::mod(s, rho.level);
        }

    // Phi_m: v -> phi(sum a_i v_i), keeping only maps outside the span so far
    detail::AdditiveSpan span(rho.level, static_cast<std::size_t>(nm));
    std::int64_t rows = 1;
    for (int i = 0; i < m; ++i) rows *= r;
    for (const auto& q : rho.phi) {
        for (std::int64_t a = 0; a < rows; ++a) {
            std::vector<int> coef(static_cast<std::size_t>(m));
            std::int64_t t = a;
            for (int i = m - 1; i >= 0; --i) {
                coef[static_cast<std::size_t>(i)] = static_cast<int>(t % r);
                t /= r;
            }
            QuadraticMap pm;
            std::string name = q.label + " @ (";
            for (int i = 0; i < m; ++i) name += (i ? "," : "") + R.labels[static_cast<std::size_t>(coef[static_cast<std::size_t>(i)])];
            pm.label = name + ")";
            pm.table.resize(static_cast<std::size_t>(nm));
            for (std::int64_t x = 0; x < nm; ++x) {
                int s = V.zero;
                for (int i = 0; i < m; ++i)
                    s = V.plus(s, V.act(coef[static_cast<std::size_t>(i)], dig[static_cast<std::size_t>(x)][static_cast<std::size_t>(i)]));
                pm.table[static_cast<std::size_t>(x)] = q.table[static_cast<std::size_t>(s)];
            }
            if (span.add(pm.table)) out.phi.push_back(std::move(pm));
        }
    }
    validate(out);
    return out;
}

}  // namespace sdc

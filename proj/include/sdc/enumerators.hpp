#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdc/code.hpp"
#include "sdc/polynomial.hpp"

namespace sdc {

struct EnumeratorOptions {
    /// Largest number of codeword m-tuples cwe will visit.
    std::uint64_t tuple_budget = 20000000;
};

/// Variable names of the genus-m complete enumerator: one per element of V^m.
inline std::vector<std::string> cwe_variables(const Module& V, int m) {
    const int n = V.size();
    std::int64_t count = 1;
    for (int i = 0; i < m; ++i) count *= n;
    std::vector<std::string> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t x = 0; x < count; ++x) {
        std::vector<int> d(static_cast<std::size_t>(m));
        std::int64_t y = x;
        for (int i = m - 1; i >= 0; --i, y /= n) d[static_cast<std::size_t>(i)] = static_cast<int>(y % n);
        std::string label;
        if (m == 1) {
            label = V.labels[static_cast<std::size_t>(d[0])];
        } else {
            label = "(";
            for (int i = 0; i < m; ++i) label += (i ? "," : "") + V.labels[static_cast<std::size_t>(d[static_cast<std::size_t>(i)])];
            label += ")";
        }
        out.push_back(variable_name(label));
    }
    return out;
}

/// Genus-m complete weight enumerator: sum over m-tuples of codewords of
/// prod_i x_{(c1_i, ..., cm_i)}, variables ordered with the first codeword's
/// symbol most significant (the module order of the genus-m lift).
inline WeightPolynomial cwe(const Code& code, int m = 1, const EnumeratorOptions& opt = {}) {
    if (m < 1) throw ParseError("genus must be positive");
    const auto& words = code.packed();
    const Module& V = code.form_ring().module;
    const int n = V.size(), N = code.length();
    long double tuples = 1;
    for (int i = 0; i < m; ++i) tuples *= static_cast<long double>(words.size());
    if (tuples > static_cast<long double>(opt.tuple_budget))
        throw BudgetExceeded("cwe: |C|^m exceeds the tuple budget");
    auto vars = cwe_variables(V, m);
    const std::size_t nv = vars.size();

    std::vector<std::vector<int>> symbols(words.size(), std::vector<int>(static_cast<std::size_t>(N)));
    for (std::size_t k = 0; k < words.size(); ++k)
        for (int i = 0; i < N; ++i) symbols[k][static_cast<std::size_t>(i)] = code.symbol(words[k], i);

    std::unordered_map<Exponent, std::int64_t, ExponentHash> counts;
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    Exponent e(nv);
    while (true) {
        std::fill(e.begin(), e.end(), 0);
        for (int i = 0; i < N; ++i) {
            std::size_t idx = 0;
            for (int j = 0; j < m; ++j) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(symbols[pick[static_cast<std::size_t>(j)]][static_cast<std::size_t>(i)]);
            ++e[idx];
        }
        ++counts[e];
        int j = m - 1;
        while (j >= 0 && ++pick[static_cast<std::size_t>(j)] == words.size()) pick[static_cast<std::size_t>(j--)] = 0;
        if (j < 0) break;
    }
    WeightPolynomial out(std::move(vars));
    for (const auto& [ex, c] : counts) out.add_term(ex, Cyclotomic(static_cast<long>(c)));
    return out;
}

/// Default names for merged variables: x, y, z for up to three blocks, else s0, s1, ...
inline std::vector<std::string> block_names(std::size_t blocks) {
    static const char* const xyz[] = {"x", "y", "z"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < blocks; ++i) out.push_back(blocks <= 3 ? xyz[i] : "s" + std::to_string(i));
    return out;
}

/// Identifies the variables inside each block. Merged variables are named
/// x, y, z (or s0, s1, ...) unless names are given.
inline WeightPolynomial symmetrize(const WeightPolynomial& p, const std::vector<std::vector<int>>& blocks,
                                   std::vector<std::string> names = {}) {
    const std::size_t nv = p.num_variables();
    std::vector<int> block_of(nv, -1);
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (int v : blocks[b]) {
            if (v < 0 || static_cast<std::size_t>(v) >= nv) throw ParseError("partition names variable " + std::to_string(v) + " which does not exist");
            if (block_of[static_cast<std::size_t>(v)] >= 0) throw ParseError("partition lists variable " + std::to_string(v) + " twice");
            block_of[static_cast<std::size_t>(v)] = static_cast<int>(b);
        }
    }
    for (std::size_t v = 0; v < nv; ++v)
        if (block_of[v] < 0) throw ParseError("partition does not cover variable " + p.variables()[v]);
    if (names.empty()) names = block_names(blocks.size());
    if (names.size() != blocks.size()) throw ParseError("one name per block is required");
    WeightPolynomial out(names);
    Exponent e(blocks.size());
    for (const auto& [src, c] : p.terms()) {
        std::fill(e.begin(), e.end(), 0);
        for (std::size_t v = 0; v < nv; ++v) e[static_cast<std::size_t>(block_of[v])] += src[v];
        out.add_term(e, c);
    }
    return out;
}

/// Hamming weight enumerator in x (zero symbol) and y (everything else).
inline WeightPolynomial hwe(const Code& code, const EnumeratorOptions& opt = {}) {
    const Module& V = code.form_ring().module;
    std::vector<std::vector<int>> blocks{{V.zero}, {}};
    for (int v = 0; v < V.size(); ++v)
        if (v != V.zero) blocks[1].push_back(v);
    if (blocks[1].empty()) blocks.pop_back();
    return symmetrize(cwe(code, 1, opt), blocks, blocks.size() == 2 ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{"x"});
}

/// Matrix of the MacWilliams transform over an alphabet of size q in the
/// column convention: x -> (x + (q-1) y) / sqrt(q), y -> (x - y) / sqrt(q).
/// Without normalization the 1/sqrt(q) factor is omitted.
inline CycMatrix macwilliams_matrix(std::int64_t q, bool normalized = true) {
    if (q < 2) throw ParseError("alphabet size must be at least 2");
    CycMatrix M(2);
    M(0, 0) = 1;
    M(1, 0) = Cyclotomic(static_cast<long>(q - 1));
    M(0, 1) = 1;
    M(1, 1) = -1;
    return normalized ? M.scaled(sqrt_nat(q).inverse()) : M;
}

/// Hamming enumerator of the dual: W(x + (q-1) y, x - y) / |C|.
inline WeightPolynomial macwilliams_dual(const WeightPolynomial& w, std::int64_t q, std::int64_t code_size) {
    if (w.num_variables() != 2) throw ParseError("macwilliams_dual needs a two-variable polynomial");
    if (code_size < 1) throw ParseError("code size must be positive");
    return substitute(w, macwilliams_matrix(q, false)) * Cyclotomic(make_rational(1, code_size));
}

}  // namespace sdc

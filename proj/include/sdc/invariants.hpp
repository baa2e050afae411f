#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdc/classify.hpp"
#include "sdc/enumerate.hpp"
#include "sdc/enumerators.hpp"
#include "sdc/molien.hpp"

namespace sdc {

/// Span of polynomials kept in reduced echelon form; the pivot of a row is
/// its leading term in graded lex order.
class PolynomialSpan {
public:
    /// Adds p; returns false when p already lies in the span.
    bool add(const WeightPolynomial& p) {
        WeightPolynomial r = reduce(p);
        if (r.is_zero()) return false;
        const Exponent pivot = r.terms().begin()->first;
        r = r.terms().begin()->second.inverse() * r;
        for (auto& row : rows_) {
            const Cyclotomic c = row.coefficient(pivot);
            if (!c.is_zero()) row = row - c * r;
        }
        rows_.push_back(std::move(r));
        return true;
    }
    [[nodiscard]] bool contains(const WeightPolynomial& p) const { return reduce(p).is_zero(); }
    [[nodiscard]] std::size_t rank() const { return rows_.size(); }
    [[nodiscard]] const std::vector<WeightPolynomial>& basis() const { return rows_; }

private:
    [[nodiscard]] WeightPolynomial reduce(WeightPolynomial p) const {
        for (const auto& row : rows_) {
            const Cyclotomic c = p.coefficient(row.terms().begin()->first);
            if (!c.is_zero()) p = p - c * row;
        }
        return p;
    }
    std::vector<WeightPolynomial> rows_;
};

/// Degree-d monomials in n variables, in graded lex order (x0^d first).
inline std::vector<Exponent> monomials(std::size_t n, int d) {
    std::vector<Exponent> out;
    Exponent e(n, 0);
    auto rec = [&](auto&& self, std::size_t i, int left) -> void {
        if (i + 1 == n) {
            e[i] = static_cast<std::uint16_t>(left);
            out.push_back(e);
            return;
        }
        for (int k = left; k >= 0; --k) {
            e[i] = static_cast<std::uint16_t>(k);
            self(self, i + 1, left - k);
        }
    };
    if (n == 0) return d == 0 ? std::vector<Exponent>{Exponent{}} : std::vector<Exponent>{};
    rec(rec, 0, d);
    return out;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    long double r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    return static_cast<std::uint64_t>(r + 0.5L);
}

struct InvariantOptions {
    /// Largest number of degree-d monomials Reynolds projection will run over.
    std::uint64_t monomial_budget = 200000;
    /// Worker threads; monomials are split between them.
    int jobs = 1;
};

/// Reynolds projection (1/|G|) sum_g p(g x).
inline WeightPolynomial reynolds(const WeightPolynomial& p, const std::vector<CycMatrix>& elements) {
    WeightPolynomial sum(p.variables());
    for (const auto& g : elements) sum += substitute(p, g);
    return Cyclotomic(make_rational(1, static_cast<long>(elements.size()))) * sum;
}

/// Reynolds operator of G factored through the subgroup H generated by the
/// monomial generators: R_G = (1/|T|) sum_{t in T} t R_H for a transversal T of
/// the left cosets tH. R_H is cheap because monomial matrices map monomials
/// to multiples of monomials.
class FactoredReynolds {
public:
    explicit FactoredReynolds(const MatrixGroup& G) {
        const auto& alg = G.algebra();
        std::vector<Generator> mono;
        for (const auto& g : G.generators())
            if (g.matrix.is_monomial()) mono.push_back(g);
        if (mono.empty()) mono.push_back({"identity", CycMatrix::identity(G.dimension())});
        const MatrixGroup H = group_closure(mono);
        std::vector<detail::PackedMatrix> hs;
        for (std::size_t i = 0; i < H.order(); ++i) {
            subgroup_.push_back(H.element(i));
            hs.push_back(alg.pack(subgroup_.back()));
        }
        std::unordered_map<detail::PackedMatrix, std::size_t, detail::PackedMatrixHash> index;
        const auto& els = G.packed_elements();
        for (std::size_t i = 0; i < els.size(); ++i) index.emplace(els[i], i);
        std::vector<bool> covered(els.size(), false);
        for (std::size_t i = 0; i < els.size(); ++i) {
            if (covered[i]) continue;
            transversal_.push_back(G.element(i));
            for (const auto& h : hs) covered[index.at(alg.mul(els[i], h))] = true;
        }
    }

    [[nodiscard]] WeightPolynomial subgroup_average(const WeightPolynomial& p) const { return reynolds(p, subgroup_); }
    [[nodiscard]] WeightPolynomial coset_average(const WeightPolynomial& p) const { return reynolds(p, transversal_); }
    [[nodiscard]] WeightPolynomial operator()(const WeightPolynomial& p) const { return coset_average(subgroup_average(p)); }
    [[nodiscard]] std::size_t subgroup_order() const { return subgroup_.size(); }
    [[nodiscard]] std::size_t transversal_size() const { return transversal_.size(); }

private:
    std::vector<CycMatrix> subgroup_;
    std::vector<CycMatrix> transversal_;
};

/// Basis of the degree-d invariants: every degree-d monomial is projected with
/// the Reynolds operator and the projections are row reduced exactly.
inline std::vector<WeightPolynomial> invariant_basis(const MatrixGroup& G, int d, std::vector<std::string> variables = {},
                                                     const InvariantOptions& opt = {}) {
    const std::size_t n = static_cast<std::size_t>(G.dimension());
    if (variables.empty())
        for (std::size_t i = 0; i < n; ++i) variables.push_back("x" + std::to_string(i));
    if (variables.size() != n) throw ParseError("one variable name per coordinate is required");
    const std::uint64_t count = binomial(n + static_cast<std::size_t>(d) - 1, static_cast<std::size_t>(d));
    if (count > opt.monomial_budget) throw BudgetExceeded("invariant_basis: " + std::to_string(count) + " monomials exceed the budget");
    const FactoredReynolds R(G);
    // R_H(m) is a multiple of the H-orbit sum of m; project each distinct one once
    std::vector<WeightPolynomial> orbit_sums;
    std::unordered_set<WeightPolynomial> seen;
    for (const auto& e : monomials(n, d)) {
        WeightPolynomial m(variables);
        m.add_term(e, 1);
        WeightPolynomial s = R.subgroup_average(m);
        if (s.is_zero()) continue;
        s = s.terms().begin()->second.inverse() * s;
        if (seen.insert(s).second) orbit_sums.push_back(std::move(s));
    }
    std::vector<WeightPolynomial> proj(orbit_sums.size(), WeightPolynomial(variables));
    const std::size_t jobs = static_cast<std::size_t>(std::max(1, opt.jobs));
    auto work = [&](std::size_t part) {
        for (std::size_t i = part; i < orbit_sums.size(); i += jobs) proj[i] = R.coset_average(orbit_sums[i]);
    };
    if (jobs == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t j = 0; j < jobs; ++j) pool.emplace_back(work, j);
        for (auto& t : pool) t.join();
    }
    PolynomialSpan span;
    for (const auto& p : proj) span.add(p);
    return span.basis();
}

/// True when every generator fixes p.
inline bool is_invariant(const WeightPolynomial& p, const std::vector<CycMatrix>& generators) {
    for (const auto& g : generators) {
        if (static_cast<std::size_t>(g.dim()) != p.num_variables()) throw ParseError("generator dimension differs from the number of variables");
        if (substitute(p, g) != p) return false;
    }
    return true;
}

/// Generators f, g of the invariant ring for the four classical families.
struct GleasonBasis {
    std::string type;
    WeightPolynomial f;
    WeightPolynomial g;
};

inline GleasonBasis gleason_basis(const std::string& type) {
    const std::vector<std::string> xy{"x", "y"};
    auto P = [&](const std::string& s) { return parse_polynomial(s, xy); };
    if (type == "I") return {type, P("x^2 + y^2"), P("x^2y^2") * P("x^2 - y^2").pow(2)};
    if (type == "II") return {type, P("x^8 + 14x^4y^4 + y^8"), P("x^4y^4") * P("x^4 - y^4").pow(4)};
    if (type == "III") return {type, P("x^4 + 8xy^3"), P("y^3") * P("x^3 - y^3").pow(3)};
    if (type == "IV") return {type, P("x^2 + 3y^2"), P("y^2") * P("x^2 - y^2").pow(2)};
    throw ParseError("unknown Gleason type '" + type + "' (expected I, II, III or IV)");
}

/// Solves W = sum c_ab f^a g^b exactly. The result is a polynomial in the
/// variables f, g; it throws NoRepresentation when W is not in C[f, g].
inline WeightPolynomial gleason_decompose(const WeightPolynomial& W, const GleasonBasis& basis) {
    if (W.num_variables() != 2) throw ParseError("gleason_decompose needs a two-variable polynomial");
    if (!W.is_homogeneous()) throw ParseError("gleason_decompose needs a homogeneous polynomial");
    const WeightPolynomial w = W.renamed(basis.f.variables());
    const int N = w.is_zero() ? 0 : w.degree(), df = basis.f.degree(), dg = basis.g.degree();
    std::vector<std::pair<int, int>> pairs;
    for (int a = N / df; a >= 0; --a)
        if ((N - a * df) % dg == 0) pairs.emplace_back(a, (N - a * df) / dg);
    // columns f^a g^b, augmented with W; Gaussian elimination over the monomials
    std::vector<WeightPolynomial> cols;
    for (auto [a, b] : pairs) cols.push_back(basis.f.pow(a) * basis.g.pow(b));
    std::vector<Exponent> rows;
    for (const auto& c : cols)
        for (const auto& [e, _] : c.terms()) rows.push_back(e);
    for (const auto& [e, _] : w.terms()) rows.push_back(e);
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    const std::size_t k = cols.size();
    std::vector<std::vector<Cyclotomic>> A(rows.size(), std::vector<Cyclotomic>(k + 1));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t j = 0; j < k; ++j) A[r][j] = cols[j].coefficient(rows[r]);
        A[r][k] = w.coefficient(rows[r]);
    }
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_row(k);
    for (std::size_t j = 0; j < k; ++j) {
        std::size_t p = rank;
        while (p < A.size() && A[p][j].is_zero()) ++p;
        if (p == A.size()) throw Error("Gleason basis products are dependent");
        std::swap(A[p], A[rank]);
        const Cyclotomic inv = A[rank][j].inverse();
        for (auto& x : A[rank]) x = x * inv;
        for (std::size_t r = 0; r < A.size(); ++r)
            if (r != rank && !A[r][j].is_zero()) {
                const Cyclotomic c = A[r][j];
                for (std::size_t t = j; t <= k; ++t) A[r][t] -= c * A[rank][t];
            }
        pivot_row[j] = rank++;
    }
    for (std::size_t r = rank; r < A.size(); ++r)
        if (!A[r][k].is_zero()) throw NoRepresentation("polynomial is not in C[f, g] for Type " + basis.type);
    WeightPolynomial out({"f", "g"});
    for (std::size_t j = 0; j < k; ++j)
        out.add_term({static_cast<std::uint16_t>(pairs[j].first), static_cast<std::uint16_t>(pairs[j].second)}, A[pivot_row[j]][k]);
    return out;
}

/// Substitutes f, g back into a decomposition.
inline WeightPolynomial gleason_evaluate(const WeightPolynomial& decomposition, const GleasonBasis& basis) {
    return compose(decomposition, {basis.f, basis.g});
}

struct SpanReport {
    std::string type;
    int length = 0;
    int genus = 1;
    std::size_t codes = 0;
    /// Permutation classes (nu_N), when classification ran.
    std::optional<std::size_t> classes;
    std::size_t rank = 0;
    Rational molien = 0;
    std::uint64_t group_order = 0;
    /// Names of class representatives whose enumerators extend the span.
    std::vector<std::string> witnesses;
    [[nodiscard]] bool pass() const { return Rational(static_cast<long>(rank)) == molien; }
};

struct SpanOptions {
    EnumerateOptions enumerate;
    ClassifyOptions classify;
    ClosureOptions closure;
    MolienOptions molien;
    EnumeratorOptions enumerator;
    /// Classify into permutation classes first; cwe is constant on a class.
    bool classify_codes = true;
};

/// Rank of the genus-m enumerators of all codes of Type rho and length N,
/// against the degree-N Molien coefficient of C_m(rho).
inline SpanReport verify_span(const FormRing& rho, int N, int m, const SpanOptions& opt = {}) {
    SpanReport rep;
    rep.type = rho.label;
    rep.length = N;
    rep.genus = m;
    const MatrixGroup G = genus_group(rho, m, opt.closure);
    rep.group_order = G.order();
    rep.molien = molien_coeffs(G, static_cast<std::size_t>(N), opt.molien)[static_cast<std::size_t>(N)];
    std::vector<Code> codes = enumerate_type(rho, N, opt.enumerate);
    rep.codes = codes.size();
    if (opt.classify_codes) {
        codes = classify_permutation(codes, opt.classify);
        rep.classes = codes.size();
    }
    PolynomialSpan span;
    for (const auto& c : codes)
        if (span.add(cwe(c, m, opt.enumerator))) rep.witnesses.push_back(decomposition_name(c));
    rep.rank = span.rank();
    return rep;
}

}  // namespace sdc

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "sdc/genus.hpp"
#include "sdc/matrix.hpp"
#include "sdc/ring.hpp"

namespace sdc {

/// A generator matrix together with where it came from, e.g. "unit a" or "h(1,1)".
struct Generator {
    std::string label;
    CycMatrix matrix;
};

namespace detail {

inline Cyclotomic level_phase(std::int64_t k, std::int64_t level) { return phase(make_rational(k, level)); }

}  // namespace detail

/// rho(u): x_v -> x_{uv}.
inline CycMatrix gen_unit(const FormRing& rho, int u) {
    const Module& V = rho.module;
    const int n = V.size();
    if (u < 0 || u >= static_cast<int>(rho.ring_labels.size())) throw ParseError("ring element out of range");
    if (rho.ring && !rho.ring->is_unit(u)) throw Error("gen_unit: " + rho.ring_labels[static_cast<std::size_t>(u)] + " is not a unit");
    std::vector<bool> hit(static_cast<std::size_t>(n), false);
    CycMatrix M(n);
    for (int v = 0; v < n; ++v) {
        const int w = V.act(u, v);
        if (hit[static_cast<std::size_t>(w)]) throw Error("gen_unit: " + rho.ring_labels[static_cast<std::size_t>(u)] + " does not act invertibly");
        hit[static_cast<std::size_t>(w)] = true;
        M(w, v) = 1;
    }
    return M;
}

/// rho(phi): x_v -> exp(2 pi i phi(v)) x_v for a table of numerators over rho.level.
inline CycMatrix gen_phase(const FormRing& rho, const QuadraticMap& phi) {
    const int n = rho.module.size();
    if (static_cast<int>(phi.table.size()) != n) throw ParseError("quadratic map table has the wrong size");
    CycMatrix M(n);
    for (int v = 0; v < n; ++v) M(v, v) = detail::level_phase(phi.table[static_cast<std::size_t>(v)], rho.level);
    return M;
}

/// h_{iota,r}: x_v -> |iota V|^{-1/2} sum_{w in iota V} exp(2 pi i beta(w, r v)) x_{w + (1 - iota) v}.
inline CycMatrix gen_macwilliams(const FormRing& rho, const SymmetricIdempotent& e) {
    const Module& V = rho.module;
    const int n = V.size();
    std::vector<int> image;
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v = 0; v < n; ++v) {
        const int w = V.act(e.iota, v);
        if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = true;
            image.push_back(w);
        }
    }
    std::sort(image.begin(), image.end());
    const Cyclotomic scale = sqrt_nat(static_cast<std::int64_t>(image.size())).inverse();
    CycMatrix M(n);
    for (int v = 0; v < n; ++v) {
        const int shift = V.minus(v, V.act(e.iota, v));
        const int rv = V.act(e.right, v);
        for (int w : image) M(V.plus(w, shift), v) += detail::level_phase(rho.beta[static_cast<std::size_t>(w)][static_cast<std::size_t>(rv)], rho.level) * scale;
    }
    return M;
}

/// Unit permutations over the stored unit generators, one phase per stored
/// quadratic map, one MacWilliams matrix per idempotent; identity matrices are dropped.
inline std::vector<Generator> clifford_weil_generators(const FormRing& rho) {
    std::vector<Generator> out;
    auto keep = [&](std::string label, CycMatrix M) {
        if (!M.is_identity()) out.push_back({std::move(label), std::move(M)});
    };
    for (int u : rho.unit_generators) keep("unit " + rho.ring_labels[static_cast<std::size_t>(u)], gen_unit(rho, u));
    for (const auto& q : rho.phi) keep("phase " + q.label, gen_phase(rho, q));
    for (const auto& e : rho.idempotents)
        keep("h(" + rho.ring_labels[static_cast<std::size_t>(e.iota)] + "," + rho.ring_labels[static_cast<std::size_t>(e.right)] + ")",
             gen_macwilliams(rho, e));
    return out;
}

struct ClosureOptions {
    /// Largest group order the closure will build.
    std::uint64_t cap = 1000000;
    /// Worker threads for expanding each breadth-first layer.
    int jobs = 1;
};

/// A finite matrix group stored as its closed element list.
class MatrixGroup {
public:
    MatrixGroup(std::vector<Generator> gens, std::shared_ptr<const detail::PackedAlgebra> alg,
                std::vector<detail::PackedMatrix> elements)
        : gens_(std::move(gens)), alg_(std::move(alg)), elements_(std::move(elements)) {}

    [[nodiscard]] int dimension() const { return alg_->dim(); }
    [[nodiscard]] std::uint64_t order() const { return elements_.size(); }
    [[nodiscard]] const std::vector<Generator>& generators() const { return gens_; }
    [[nodiscard]] std::vector<CycMatrix> generator_matrices() const {
        std::vector<CycMatrix> out;
        for (const auto& g : gens_) out.push_back(g.matrix);
        return out;
    }
    [[nodiscard]] CycMatrix element(std::size_t i) const { return alg_->unpack(elements_.at(i)); }
    [[nodiscard]] const std::vector<detail::PackedMatrix>& packed_elements() const { return elements_; }
    [[nodiscard]] const detail::PackedAlgebra& algebra() const { return *alg_; }

private:
    std::vector<Generator> gens_;
    std::shared_ptr<const detail::PackedAlgebra> alg_;
    std::vector<detail::PackedMatrix> elements_;
};

/// Breadth-first closure of the generators under right multiplication,
/// deduplicated by exact entries. Throws CapExceeded with the partial count.
inline MatrixGroup group_closure(std::vector<Generator> gens, const ClosureOptions& opt = {}) {
    if (gens.empty()) throw ParseError("group_closure needs at least one generator (or its dimension)");
    const int n = gens.front().matrix.dim();
    std::int64_t L = 1;
    for (const auto& g : gens) {
        if (g.matrix.dim() != n) throw ParseError("generators have different dimensions");
        L = arith::lcm(L, g.matrix.conductor());
    }
    auto alg = std::make_shared<const detail::PackedAlgebra>(n, L);
    std::vector<detail::PackedMatrix> packed;
    for (const auto& g : gens) packed.push_back(alg->pack(g.matrix));

    std::vector<detail::PackedMatrix> elements{alg->identity()};
    std::unordered_map<detail::PackedMatrix, std::size_t, detail::PackedMatrixHash> index;
    index.emplace(elements[0], 0);
    std::size_t layer_begin = 0;
    const int jobs = std::max(1, opt.jobs);
    while (layer_begin < elements.size()) {
        const std::size_t layer_end = elements.size();
        const std::size_t count = layer_end - layer_begin;
        // products of this layer, computed in parallel and merged in a fixed order
        std::vector<detail::PackedMatrix> products(count * packed.size());
        auto work = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                for (std::size_t g = 0; g < packed.size(); ++g)
                    products[i * packed.size() + g] = alg->mul(elements[layer_begin + i], packed[g]);
        };
        if (jobs == 1 || count < 64) {
            work(0, count);
        } else {
            std::vector<std::thread> pool;
            const std::size_t chunk = (count + static_cast<std::size_t>(jobs) - 1) / static_cast<std::size_t>(jobs);
            for (std::size_t lo = 0; lo < count; lo += chunk) pool.emplace_back(work, lo, std::min(count, lo + chunk));
            for (auto& t : pool) t.join();
        }
        for (auto& x : products) {
            if (index.count(x)) continue;
            index.emplace(x, elements.size());
            elements.push_back(std::move(x));
            if (elements.size() > opt.cap) throw CapExceeded("group order exceeds the closure cap", elements.size());
        }
        layer_begin = layer_end;
    }
    return MatrixGroup(std::move(gens), std::move(alg), std::move(elements));
}

inline MatrixGroup group_closure(const std::vector<CycMatrix>& mats, const ClosureOptions& opt = {}) {
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < mats.size(); ++i) gens.push_back({"M" + std::to_string(i + 1), mats[i]});
    return group_closure(std::move(gens), opt);
}

/// Clifford-Weil group of the Type itself.
inline MatrixGroup clifford_weil_group(const FormRing& rho, const ClosureOptions& opt = {}) {
    auto gens = clifford_weil_generators(rho);
    if (gens.empty()) gens.push_back({"identity", CycMatrix::identity(rho.module.size())});
    return group_closure(std::move(gens), opt);
}

/// Genus-m Clifford-Weil group: the group of the lifted Type Mat_m(rho).
inline MatrixGroup genus_group(const FormRing& rho, int m, const ClosureOptions& opt = {}) {
    return clifford_weil_group(m == 1 ? rho : genus_lift(rho, m), opt);
}

/// Collapses each generator onto the blocks of a variable partition:
/// M~[b][c] = sum_{w in block b} M[w][v] for v in block c, which must not depend on v.
inline std::vector<Generator> collapse_group(const std::vector<Generator>& gens, const std::vector<std::vector<int>>& blocks) {
    if (gens.empty()) return {};
    const int n = gens.front().matrix.dim();
    std::vector<int> block_of(static_cast<std::size_t>(n), -1);
    for (std::size_t b = 0; b < blocks.size(); ++b)
        for (int v : blocks[b]) {
            if (v < 0 || v >= n || block_of[static_cast<std::size_t>(v)] >= 0) throw ParseError("partition is not a partition of the variables");
            block_of[static_cast<std::size_t>(v)] = static_cast<int>(b);
        }
    for (int v = 0; v < n; ++v)
        if (block_of[static_cast<std::size_t>(v)] < 0) throw ParseError("partition does not cover variable " + std::to_string(v));
    const int k = static_cast<int>(blocks.size());
    std::vector<Generator> out;
    for (std::size_t gi = 0; gi < gens.size(); ++gi) {
        const CycMatrix& M = gens[gi].matrix;
        if (M.dim() != n) throw ParseError("generators have different dimensions");
        CycMatrix C(k);
        for (int c = 0; c < k; ++c)
            for (std::size_t t = 0; t < blocks[static_cast<std::size_t>(c)].size(); ++t) {
                const int v = blocks[static_cast<std::size_t>(c)][t];
                std::vector<Cyclotomic> col(static_cast<std::size_t>(k));
                for (int w = 0; w < n; ++w) col[static_cast<std::size_t>(block_of[static_cast<std::size_t>(w)])] += M(w, v);
                for (int b = 0; b < k; ++b) {
                    if (t == 0)
                        C(b, c) = col[static_cast<std::size_t>(b)];
                    else if (C(b, c) != col[static_cast<std::size_t>(b)])
                        throw IllegalSymmetrization(gi, gens[gi].label, static_cast<std::size_t>(b), static_cast<std::size_t>(c));
                }
            }
        out.push_back({gens[gi].label, std::move(C)});
    }
    return out;
}

}  // namespace sdc

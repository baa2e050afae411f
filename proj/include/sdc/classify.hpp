#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdc/code.hpp"

namespace sdc {

/// The code with coordinate i of the result taken from coordinate perm[i].
inline Code permute(const Code& c, const std::vector<int>& perm) {
    const int N = c.length();
    if (static_cast<int>(perm.size()) != N) throw ParseError("permutation length differs from code length");
    std::vector<bool> seen(static_cast<std::size_t>(N), false);
    for (int p : perm) {
        if (p < 0 || p >= N || seen[static_cast<std::size_t>(p)]) throw ParseError("not a permutation");
        seen[static_cast<std::size_t>(p)] = true;
    }
    auto move = [&](Packed x) {
        Packed y = 0;
        for (int i = 0; i < N; ++i) y = (y << c.bits()) | static_cast<Packed>(c.symbol(x, perm[static_cast<std::size_t>(i)]));
        return y;
    };
    std::vector<Word> gens;
    for (const auto& g : c.generators()) {
        Word w(g.size());
        for (int i = 0; i < N; ++i) w[static_cast<std::size_t>(i)] = g[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        gens.push_back(std::move(w));
    }
    std::vector<Packed> words;
    words.reserve(c.size());
    for (Packed x : c.packed()) words.push_back(move(x));
    std::sort(words.begin(), words.end());
    return Code::from_codewords(c.form_ring_ptr(), N, std::move(gens), std::move(words));
}

namespace detail {

/// Branch and bound over column orders. The key of an order is the sequence
/// of sorted prefix multisets (M_1, ..., M_N); its minimum is reached by
/// extending only orders whose prefixes tie with the best seen so far.
class CanonicalSearch {
public:
    explicit CanonicalSearch(const Code& c) : c_(c), N_(c.length()) {}

    std::vector<Packed> run() {
        if (N_ == 0) return c_.packed();
        best_.assign(static_cast<std::size_t>(N_), {});
        set_.assign(static_cast<std::size_t>(N_), false);
        std::vector<Packed> prefix(c_.size(), 0);
        std::vector<bool> used(static_cast<std::size_t>(N_), false);
        dfs(0, prefix, used);
        return best_.back();
    }

private:
    void dfs(int j, const std::vector<Packed>& prefix, std::vector<bool>& used) {
        if (j == N_) return;
        const auto& words = c_.packed();
        std::vector<Packed> next(prefix.size()), sorted;
        for (int col = 0; col < N_; ++col) {
            if (used[static_cast<std::size_t>(col)]) continue;
            for (std::size_t r = 0; r < words.size(); ++r)
                next[r] = (prefix[r] << c_.bits()) | static_cast<Packed>(c_.symbol(words[r], col));
            sorted = next;
            std::sort(sorted.begin(), sorted.end());
            const auto J = static_cast<std::size_t>(j);
            if (set_[J]) {
                if (sorted > best_[J]) continue;
                if (sorted < best_[J]) {
                    best_[J] = sorted;
                    for (std::size_t k = J + 1; k < set_.size(); ++k) set_[k] = false;
                }
            } else {
                best_[J] = sorted;
                set_[J] = true;
                for (std::size_t k = J + 1; k < set_.size(); ++k) set_[k] = false;
            }
            used[static_cast<std::size_t>(col)] = true;
            dfs(j + 1, next, used);
            used[static_cast<std::size_t>(col)] = false;
        }
    }

    const Code& c_;
    int N_;
    std::vector<std::vector<Packed>> best_;
    std::vector<bool> set_;
};

struct PackedListHash {
    std::size_t operator()(const std::vector<Packed>& v) const {
        std::size_t h = v.size();
        for (Packed x : v) h = (h ^ x) * 0x100000001b3ULL + (h >> 31);
        return h;
    }
};

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
}

}  // namespace detail

/// Sorted codewords of the lexicographically least permuted image under the
/// prefix-multiset key; equal exactly for permutation-equivalent codes.
inline std::vector<Packed> canonical_form(const Code& c) {
    if (c.length() > 12) throw Infeasible("canonical_form is exhaustive only for N <= 12");
    return detail::CanonicalSearch(c).run();
}

struct ClassifyOptions {
    /// When the input is closed under coordinate permutations (for example a
    /// full enumeration), join codes along a transposition and an N-cycle
    /// instead of canonicalizing each one.
    bool use_orbits = true;
};

/// Indices of `codes` grouped by permutation equivalence; members ascending,
/// classes ordered by their first member.
inline std::vector<std::vector<std::size_t>> permutation_classes(const std::vector<Code>& codes, const ClassifyOptions& opt = {}) {
    const std::size_t n = codes.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    bool done = false;
    if (opt.use_orbits && n > 0) {
        const int N = codes[0].length();
        std::unordered_map<std::vector<Packed>, std::size_t, detail::PackedListHash> index;
        bool uniform = true;
        for (std::size_t i = 0; i < n && uniform; ++i) {
            uniform = codes[i].length() == N;
            index.emplace(codes[i].packed(), i);
        }
        std::vector<std::vector<int>> gens;
        if (N >= 2) {
            std::vector<int> swap(static_cast<std::size_t>(N)), cycle(static_cast<std::size_t>(N));
            std::iota(swap.begin(), swap.end(), 0);
            std::swap(swap[0], swap[1]);
            for (int i = 0; i < N; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % N;
            gens = {swap, cycle};
        }
        bool closed = uniform;
        for (std::size_t i = 0; i < n && closed; ++i)
            for (const auto& g : gens) {
                auto it = index.find(permute(codes[i], g).packed());
                if (it == index.end()) {
                    closed = false;
                    break;
                }
                parent[detail::find_root(parent, i)] = detail::find_root(parent, it->second);
            }
        if (closed)
            done = true;
        else
            std::iota(parent.begin(), parent.end(), std::size_t{0});
    }
    if (!done) {
        std::unordered_map<std::vector<Packed>, std::size_t, detail::PackedListHash> first;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Packed> key = canonical_form(codes[i]);
            key.push_back(static_cast<Packed>(codes[i].length()));
            auto [it, fresh] = first.emplace(std::move(key), i);
            if (!fresh) parent[i] = it->second;
        }
    }
    std::unordered_map<std::size_t, std::size_t> slot;
    std::vector<std::vector<std::size_t>> classes;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = detail::find_root(parent, i);
        auto [it, fresh] = slot.emplace(r, classes.size());
        if (fresh) classes.emplace_back();
        classes[it->second].push_back(i);
    }
    return classes;
}

/// One code per permutation class, ordered by canonical form.
inline std::vector<Code> classify_permutation(const std::vector<Code>& codes, const ClassifyOptions& opt = {}) {
    std::vector<std::pair<std::vector<Packed>, std::size_t>> reps;
    for (const auto& cls : permutation_classes(codes, opt)) {
        const Code& c = codes[cls.front()];
        std::vector<Packed> key{static_cast<Packed>(c.length())};
        const auto cf = canonical_form(c);
        key.insert(key.end(), cf.begin(), cf.end());
        reps.emplace_back(std::move(key), cls.front());
    }
    std::sort(reps.begin(), reps.end());
    std::vector<Code> out;
    for (const auto& r : reps) out.push_back(codes[r.second]);
    return out;
}

/// Coordinate blocks of the finest direct-sum splitting: coordinates are
/// joined when a codeword of minimal support covers both.
inline std::vector<std::vector<int>> direct_summand_supports(const Code& c) {
    const int N = c.length();
    std::vector<std::uint64_t> supports;
    for (Packed x : c.packed()) {
        std::uint64_t s = 0;
        for (int i = 0; i < N; ++i)
            if (c.symbol(x, i) != c.form_ring().module.zero) s |= std::uint64_t{1} << i;
        if (s) supports.push_back(s);
    }
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    std::vector<std::size_t> parent(static_cast<std::size_t>(N));
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::uint64_t s : supports) {
        bool minimal = true;
        for (std::uint64_t t : supports)
            if (t != s && (t & s) == t) {
                minimal = false;
                break;
            }
        if (!minimal) continue;
        int first = -1;
        for (int i = 0; i < N; ++i)
            if (s >> i & 1) {
                if (first < 0)
                    first = i;
                else
                    parent[detail::find_root(parent, static_cast<std::size_t>(i))] = detail::find_root(parent, static_cast<std::size_t>(first));
            }
    }
    std::vector<std::vector<int>> blocks;
    std::unordered_map<std::size_t, std::size_t> slot;
    for (int i = 0; i < N; ++i) {
        auto [it, fresh] = slot.emplace(detail::find_root(parent, static_cast<std::size_t>(i)), blocks.size());
        if (fresh) blocks.emplace_back();
        blocks[it->second].push_back(i);
    }
    return blocks;
}

/// The restriction of c to the given coordinates.
inline Code restrict_to(const Code& c, const std::vector<int>& coords) {
    const int k = static_cast<int>(coords.size());
    std::vector<Packed> words;
    for (Packed x : c.packed()) {
        Packed y = 0;
        for (int i : coords) y = (y << c.bits()) | static_cast<Packed>(c.symbol(x, i));
        words.push_back(y);
    }
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    std::vector<Word> gens;
    for (const auto& g : c.generators()) {
        Word w;
        for (int i : coords) w.push_back(g[static_cast<std::size_t>(i)]);
        gens.push_back(std::move(w));
    }
    return Code::from_codewords(c.form_ring_ptr(), k, std::move(gens), std::move(words));
}

/// Indecomposable summands, one per block of direct_summand_supports.
inline std::vector<Code> decompose(const Code& c) {
    std::vector<Code> out;
    for (const auto& b : direct_summand_supports(c)) out.push_back(restrict_to(c, b));
    return out;
}

namespace detail {

inline std::vector<int> weight_distribution(const Code& c) {
    std::vector<int> w(static_cast<std::size_t>(c.length()) + 1, 0);
    for (Packed x : c.packed()) {
        int k = 0;
        for (int i = 0; i < c.length(); ++i) k += c.symbol(x, i) != c.form_ring().module.zero;
        ++w[static_cast<std::size_t>(k)];
    }
    return w;
}

}  // namespace detail

/// Short name of an indecomposable binary self-dual code: i2, h8, d12+, ...,
/// otherwise "c<length>".
inline std::string summand_name(const Code& c) {
    const auto w = detail::weight_distribution(c);
    if (c.form_ring().module.size() == 2) {
        if (w == std::vector<int>{1, 0, 1}) return "i2";
        if (w == std::vector<int>{1, 0, 0, 0, 14, 0, 0, 0, 1}) return "h8";
        if (w == std::vector<int>{1, 0, 0, 0, 15, 0, 32, 0, 15, 0, 0, 0, 1}) return "d12+";
    }
    return "c" + std::to_string(c.length());
}

/// Summand names with multiplicities, largest summands first, e.g. "h8 i2^2".
inline std::string decomposition_name(const Code& c) {
    std::vector<std::pair<int, std::string>> parts;
    for (const auto& s : decompose(c)) parts.emplace_back(-s.length(), summand_name(s));
    std::sort(parts.begin(), parts.end());
    std::string out;
    for (std::size_t i = 0; i < parts.size();) {
        std::size_t j = i;
        while (j < parts.size() && parts[j] == parts[i]) ++j;
        if (!out.empty()) out += " ";
        out += parts[i].second;
        if (j - i > 1) out += "^" + std::to_string(j - i);
        i = j;
    }
    return out;
}

}  // namespace sdc

#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdc/presets.hpp"
#include "sdc/ring.hpp"

namespace sdc {

/// A word of V^N as module element ids.
using Word = std::vector<int>;
/// A word packed with a fixed number of bits per symbol, coordinate 0 most
/// significant, so numeric order is lexicographic order of element ids.
using Packed = std::uint64_t;

struct CodeOptions {
    /// Largest candidate set span_codewords or dual_code will build.
    std::uint64_t enumeration_cap = std::uint64_t{1} << 24;
};

/// R-submodule of V^N given by generators; codewords are spanned on demand.
class Code {
public:
    Code() = default;
    Code(std::shared_ptr<const FormRing> rho, int length, std::vector<Word> generators, const CodeOptions& opt = {})
        : rho_(std::move(rho)), length_(length), generators_(std::move(generators)), opt_(opt) {
        if (!rho_) throw Error("code needs a form ring");
        if (length_ < 0) throw ParseError("code length must be nonnegative");
        bits_ = 1;
        while ((1 << bits_) < rho_->module.size()) ++bits_;
        if (static_cast<std::int64_t>(bits_) * length_ > 64) throw Infeasible("word does not fit 64 bits at this length and alphabet");
        for (const auto& g : generators_) {
            if (static_cast<int>(g.size()) != length_) throw ParseError("generator row length differs from code length");
            for (int x : g)
                if (x < 0 || x >= rho_->module.size()) throw ParseError("generator entry out of range");
        }
    }

    /// Builds a code whose codeword set is already known (sorted, closed).
    static Code from_codewords(std::shared_ptr<const FormRing> rho, int length, std::vector<Word> generators,
                               std::vector<Packed> words) {
        Code c(std::move(rho), length, std::move(generators));
        c.words_ = std::make_shared<std::vector<Packed>>(std::move(words));
        return c;
    }

    [[nodiscard]] const FormRing& form_ring() const { return *rho_; }
    [[nodiscard]] std::shared_ptr<const FormRing> form_ring_ptr() const { return rho_; }
    [[nodiscard]] int length() const { return length_; }
    [[nodiscard]] int bits() const { return bits_; }
    [[nodiscard]] const std::vector<Word>& generators() const { return generators_; }

    [[nodiscard]] Packed pack(const Word& w) const {
        Packed x = 0;
        for (int s : w) x = (x << bits_) | static_cast<Packed>(s);
        return x;
    }
    [[nodiscard]] Word unpack(Packed x) const {
        Word w(static_cast<std::size_t>(length_));
        const Packed mask = (Packed{1} << bits_) - 1;
        for (int i = length_ - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<int>(x & mask);
            x >>= bits_;
        }
        return w;
    }
    [[nodiscard]] int symbol(Packed x, int i) const {
        return static_cast<int>((x >> (bits_ * (length_ - 1 - i))) & ((Packed{1} << bits_) - 1));
    }

    /// Sorted packed codewords.
    [[nodiscard]] const std::vector<Packed>& packed() const {
        if (!words_) words_ = std::make_shared<std::vector<Packed>>(span());
        return *words_;
    }
    [[nodiscard]] std::vector<Word> codewords() const {
        std::vector<Word> out;
        for (Packed x : packed()) out.push_back(unpack(x));
        return out;
    }
    [[nodiscard]] std::size_t size() const { return packed().size(); }

    [[nodiscard]] Packed add(Packed a, Packed b) const {
        const Module& V = rho_->module;
        Packed out = 0;
        for (int i = 0; i < length_; ++i) out = (out << bits_) | static_cast<Packed>(V.plus(symbol(a, i), symbol(b, i)));
        return out;
    }
    [[nodiscard]] Packed act(int r, Packed a) const {
        const Module& V = rho_->module;
        Packed out = 0;
        for (int i = 0; i < length_; ++i) out = (out << bits_) | static_cast<Packed>(V.act(r, symbol(a, i)));
        return out;
    }

    friend bool operator==(const Code& a, const Code& b) {
        return a.length_ == b.length_ && a.rho_->module.size() == b.rho_->module.size() && a.packed() == b.packed();
    }

    [[nodiscard]] const CodeOptions& options() const { return opt_; }

private:
    [[nodiscard]] std::vector<Packed> span() const {
        const int nr = static_cast<int>(rho_->ring_labels.size());
        std::unordered_set<Packed> set{0};
        std::vector<Packed> elems{0};
        for (const auto& g : generators_) {
            const Packed pg = pack(g);
            std::unordered_set<Packed> mult_set;
            std::vector<Packed> mults;
            for (int r = 0; r < nr; ++r) {
                const Packed x = act(r, pg);
                if (mult_set.insert(x).second) mults.push_back(x);
            }
            // R g is an additive subgroup when the ring is tabulated; close it anyway
            for (std::size_t i = 0; i < mults.size(); ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    const Packed x = add(mults[i], mults[j]);
                    if (mult_set.insert(x).second) mults.push_back(x);
                }
            std::vector<Packed> next;
            for (Packed s : elems)
                for (Packed m : mults) {
                    const Packed x = add(s, m);
                    if (set.insert(x).second) {
                        next.push_back(x);
                        if (set.size() > opt_.enumeration_cap) throw BudgetExceeded("codeword span exceeds the enumeration cap", set.size());
                    }
                }
            elems.insert(elems.end(), next.begin(), next.end());
        }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

    std::shared_ptr<const FormRing> rho_;
    int length_ = 0;
    int bits_ = 1;
    std::vector<Word> generators_;
    CodeOptions opt_;
    mutable std::shared_ptr<std::vector<Packed>> words_;
};

inline Code make_code(const FormRing& rho, int length, std::vector<Word> generators, const CodeOptions& opt = {}) {
    return Code(std::make_shared<const FormRing>(rho), length, std::move(generators), opt);
}

inline const std::vector<Packed>& span_codewords(const Code& c) { return c.packed(); }

namespace detail {

/// Additive generators of the code: a g for a in an additive generating set of R.
inline std::vector<Packed> additive_code_generators(const Code& c) {
    const FormRing& rho = c.form_ring();
    std::vector<int> ring_gens;
    if (rho.ring)
        ring_gens = rho.ring->additive_generators();
    else
        for (int r = 0; r < static_cast<int>(rho.ring_labels.size()); ++r) ring_gens.push_back(r);
    std::vector<Packed> out;
    for (const auto& g : c.generators()) {
        const Packed pg = c.pack(g);
        for (int a : ring_gens) {
            const Packed x = c.act(a, pg);
            if (x != 0) out.push_back(x);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline std::int64_t checked_pow(std::int64_t b, int e, std::uint64_t cap) {
    std::int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (static_cast<std::uint64_t>(r) > cap) throw BudgetExceeded("|V|^N exceeds the enumeration cap");
    }
    return r;
}

/// Annihilator of the words `gens` under sum_i B(u_i, g_i), found by meeting
/// in the middle over the two halves of the coordinates.
inline std::vector<Packed> annihilator(const Code& c, const FormRing& form, const std::vector<Packed>& gens) {
    const int N = c.length();
    const int n = form.module.size();
    checked_pow(n, N, c.options().enumeration_cap);
    const int h = N / 2;
    const std::size_t K = gens.size();
    auto B = [&](int u, int g) { return form.beta[static_cast<std::size_t>(u)][static_cast<std::size_t>(g)]; };

    struct Half {
        std::vector<Packed> words;
        std::vector<std::vector<std::int64_t>> sums;
    };
    auto enumerate_half = [&](int from, int to) {
        Half H;
        H.words.push_back(0);
        H.sums.emplace_back(K, 0);
        for (int i = from; i < to; ++i) {
            Half next;
            for (std::size_t t = 0; t < H.words.size(); ++t)
                for (int u = 0; u < n; ++u) {
                    next.words.push_back((H.words[t] << c.bits()) | static_cast<Packed>(u));
                    std::vector<std::int64_t> s = H.sums[t];
                    for (std::size_t k = 0; k < K; ++k) s[k] = (s[k] + B(u, c.symbol(gens[k], i))) % form.level;
                    next.sums.push_back(std::move(s));
                }
            H = std::move(next);
        }
        return H;
    };
    const Half left = enumerate_half(0, h);
    const Half right = enumerate_half(h, N);
    std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, VecHash> index;
    for (std::size_t t = 0; t < left.words.size(); ++t) index[left.sums[t]].push_back(t);
    std::vector<Packed> out;
    const int shift = c.bits() * (N - h);
    for (std::size_t t = 0; t < right.words.size(); ++t) {
        std::vector<std::int64_t> need(K);
        for (std::size_t k = 0; k < K; ++k) need[k] = arith::mod(-right.sums[t][k], form.level);
        auto it = index.find(need);
        if (it == index.end()) continue;
        for (std::size_t l : it->second) {
            out.push_back((shift >= 64 ? 0 : (left.words[l] << shift)) | right.words[t]);
            if (out.size() > c.options().enumeration_cap) throw BudgetExceeded("dual code exceeds the enumeration cap", out.size());
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline void require_same_alphabet(const Code& c, const FormRing& rho) {
    if (c.form_ring().module.size() != rho.module.size() || c.form_ring().module.labels != rho.module.labels)
        throw ParseError("code alphabet does not match the form ring's module");
}

}  // namespace detail

/// C-perp = {u : sum_i beta(u_i, c_i) = 0 for all c in C}, as sorted packed words.
inline std::vector<Packed> dual_words(const Code& c, const FormRing& rho) {
    detail::require_same_alphabet(c, rho);
    return detail::annihilator(c, rho, detail::additive_code_generators(c));
}

inline Code dual_code(const Code& c) {
    std::vector<Packed> words = dual_words(c, c.form_ring());
    std::vector<Word> gens;
    // every codeword generates; keep a small additive generating set instead
    std::unordered_set<Packed> spanned{0};
    std::vector<Packed> elems{0};
    for (Packed w : words) {
        if (spanned.count(w)) continue;
        gens.push_back(c.unpack(w));
        std::vector<Packed> cur = elems;
        for (;;) {
            bool grew = false;
            std::vector<Packed> add;
            for (Packed s : cur) {
                const Packed x = c.add(s, w);
                if (spanned.insert(x).second) {
                    add.push_back(x);
                    grew = true;
                }
            }
            if (!grew) break;
            elems.insert(elems.end(), add.begin(), add.end());
            cur = add;
        }
    }
    return Code::from_codewords(c.form_ring_ptr(), c.length(), std::move(gens), std::move(words));
}

inline bool is_self_dual_under(const Code& c, const FormRing& rho) { return dual_words(c, rho) == c.packed(); }

inline bool is_self_dual(const Code& c) { return is_self_dual_under(c, c.form_ring()); }

inline bool is_isotropic_under(const Code& c, const FormRing& rho) {
    detail::require_same_alphabet(c, rho);
    for (Packed x : c.packed())
        for (const auto& q : rho.phi) {
            std::int64_t s = 0;
            for (int i = 0; i < c.length(); ++i) s += q.table[static_cast<std::size_t>(c.symbol(x, i))];
            if (arith::mod(s, rho.level) != 0) return false;
        }
    return true;
}

inline bool is_isotropic(const Code& c) { return is_isotropic_under(c, c.form_ring()); }

/// Self-dual for rho's beta and isotropic for rho's Phi.
inline bool has_type(const Code& c, const FormRing& rho) {
    return is_self_dual_under(c, rho) && is_isotropic_under(c, rho);
}

/// Generator rows of the extended binary quadratic-residue code for a prime
/// p = 7 mod 8: coordinates infinity, 0, 1, ..., p-1; an all-ones row, then
/// the residue row {0} + QR shifted cyclically with infinity fixed at 0.
inline std::vector<Word> extended_qr_rows(int p) {
    if (!arith::is_prime(p) || p % 8 != 7) throw ParseError("extended_qr_code supports primes p = 7 mod 8");
    std::vector<bool> qr(static_cast<std::size_t>(p), false);
    for (int a = 1; a < p; ++a) qr[static_cast<std::size_t>(a * a % p)] = true;
    std::vector<Word> rows;
    rows.push_back(Word(static_cast<std::size_t>(p) + 1, 1));
    for (int s = 0; s < (p - 1) / 2; ++s) {
        Word row(static_cast<std::size_t>(p) + 1, 0);
        for (int x = 0; x < p; ++x)
            if (x == 0 || qr[static_cast<std::size_t>(x)]) row[static_cast<std::size_t>(1 + (x + s) % p)] = 1;
        rows.push_back(row);
    }
    return rows;
}

inline Code extended_qr_code(int p, const CodeOptions& opt = {}) {
    Code c = make_code(preset("2_I"), p + 1, extended_qr_rows(p), opt);
    std::uint64_t expect = std::uint64_t{1} << ((p + 1) / 2);
    if (c.size() != expect) throw Infeasible("residue rows do not span a code of half dimension for this prime");
    return c;
}

}  // namespace sdc

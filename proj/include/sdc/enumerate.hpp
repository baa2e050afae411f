#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sdc/code.hpp"

namespace sdc {

struct EnumerateOptions {
    /// Inputs beyond |V| in {2, 3} and N <= 12 need this flag.
    bool allow_large = false;
    /// Largest |V|^N the generic submodule search will scan.
    std::uint64_t vector_cap = std::uint64_t{1} << 20;
    /// Largest number of intermediate submodules the generic search will visit.
    std::uint64_t state_cap = 2000000;
    /// Use the plain submodule search even when a structured one applies.
    bool generic_only = false;
};

namespace detail {

using CodeSink = std::function<void(Code&&)>;

inline bool is_regular_field(const FormRing& rho) {
    if (!rho.ring) return false;
    const FiniteRing& R = *rho.ring;
    if (static_cast<int>(R.units.size()) != R.size() - 1) return false;
    if (rho.module.size() != R.size()) return false;
    return rho.module.add == R.add && rho.module.action == R.mul && rho.module.zero == R.zero;
}

/// Gaussian elimination over F_p: solutions of A y = b, as a particular
/// solution plus a nullspace basis; false if inconsistent.
inline bool solve_mod_p(std::vector<std::vector<int>> A, std::vector<int> b, int p, int nvars, std::vector<int>& particular,
                        std::vector<std::vector<int>>& kernel) {
    auto inv = [p](int a) {
        for (int x = 1; x < p; ++x)
            if (a * x % p == 1) return x;
        return 0;
    };
    std::vector<int> pivot_col;
    std::size_t row = 0;
    for (int col = 0; col < nvars && row < A.size(); ++col) {
        std::size_t sel = row;
        while (sel < A.size() && A[sel][static_cast<std::size_t>(col)] == 0) ++sel;
        if (sel == A.size()) continue;
        std::swap(A[sel], A[row]);
        std::swap(b[sel], b[row]);
        const int f = inv(A[row][static_cast<std::size_t>(col)]);
        for (auto& x : A[row]) x = x * f % p;
        b[row] = b[row] * f % p;
        for (std::size_t r = 0; r < A.size(); ++r) {
            if (r == row || A[r][static_cast<std::size_t>(col)] == 0) continue;
            const int g = A[r][static_cast<std::size_t>(col)];
            for (int c = 0; c < nvars; ++c)
                A[r][static_cast<std::size_t>(c)] = ((A[r][static_cast<std::size_t>(c)] - g * A[row][static_cast<std::size_t>(c)]) % p + p) % p;
            b[r] = ((b[r] - g * b[row]) % p + p) % p;
        }
        pivot_col.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < A.size(); ++r)
        if (b[r] != 0) return false;
    particular.assign(static_cast<std::size_t>(nvars), 0);
    for (std::size_t r = 0; r < pivot_col.size(); ++r) particular[static_cast<std::size_t>(pivot_col[r])] = b[r];
    std::vector<bool> is_pivot(static_cast<std::size_t>(nvars), false);
    for (int c : pivot_col) is_pivot[static_cast<std::size_t>(c)] = true;
    kernel.clear();
    for (int f = 0; f < nvars; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<int> v(static_cast<std::size_t>(nvars), 0);
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[static_cast<std::size_t>(pivot_col[r])] = (p - A[r][static_cast<std::size_t>(f)]) % p;
        kernel.push_back(std::move(v));
    }
    return true;
}

/// Self-dual isotropic subspaces of F_q^N in reduced row echelon form, built
/// from the bottom row up. Every constraint tying a new row x to the rows
/// already chosen is F_p-linear in the F_p-coordinates of x; the remaining
/// quadratic ones are checked on each solution.
class FieldSearch {
public:
    FieldSearch(std::shared_ptr<const FormRing> rho, int N) : rho_(std::move(rho)), N_(N), R_(*rho_->ring) {
        basis_ = R_.additive_generators();
        k_ = static_cast<int>(basis_.size());
        p_ = 1;
        for (int x = R_.one; x != R_.zero; x = R_.plus(x, R_.one)) ++p_;
        // coordinates of every element in the additive basis
        combos_.assign(static_cast<std::size_t>(R_.size()), -1);
        std::vector<int> c(static_cast<std::size_t>(k_), 0);
        const int q = R_.size();
        for (int idx = 0; idx < q; ++idx) {
            int t = idx, e = R_.zero;
            for (int i = 0; i < k_; ++i) {
                c[static_cast<std::size_t>(i)] = t % p_;
                t /= p_;
                for (int j = 0; j < c[static_cast<std::size_t>(i)]; ++j) e = R_.plus(e, basis_[static_cast<std::size_t>(i)]);
            }
            combos_[static_cast<std::size_t>(idx)] = e;
        }
    }

    void run(const CodeSink& sink) {
        sink_ = &sink;
        if (N_ % 2 != 0) return;
        if (N_ == 0) {
            sink(Code::from_codewords(rho_, 0, {}, {0}));
            return;
        }
        rows_.clear();
        pivots_.clear();
        extend(N_);
    }

private:
    // value of a Q/Z numerator as an element of F_p (the value is p-torsion)
    [[nodiscard]] int to_fp(std::int64_t num) const {
        const std::int64_t v = arith::mod(num, rho_->level) * p_;
        if (v % rho_->level != 0) throw Error("form value is not p-torsion over a field of characteristic p");
        return static_cast<int>((v / rho_->level) % p_);
    }
    [[nodiscard]] std::int64_t B(int v, int w) const { return rho_->beta[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)]; }
    [[nodiscard]] std::int64_t P(std::size_t q, int v, int w) const {
        const auto& t = rho_->phi[q].table;
        return t[static_cast<std::size_t>(rho_->module.plus(v, w))] - t[static_cast<std::size_t>(v)] - t[static_cast<std::size_t>(w)];
    }

    // word-level functional value of sum_j f(x_j, c_j)
    template <class F>
    int functional(const Word& x, const Word& c, F f) const {
        std::int64_t s = 0;
        for (int j = 0; j < N_; ++j) s += f(x[static_cast<std::size_t>(j)], c[static_cast<std::size_t>(j)]);
        return to_fp(s);
    }

    void extend(int bound) {
        const int j = static_cast<int>(rows_.size());
        const int need = N_ / 2 - j;
        if (need == 0) {
            emit();
            return;
        }
        for (int pi = bound - 1; pi >= need - 1; --pi) try_pivot(pi);
    }

    void try_pivot(int pi) {
        // additive generators of the current code
        std::vector<Word> cg;
        for (const auto& r : rows_)
            for (int a : basis_) {
                Word w(static_cast<std::size_t>(N_));
                for (int t = 0; t < N_; ++t) w[static_cast<std::size_t>(t)] = R_.times(a, r[static_cast<std::size_t>(t)]);
                cg.push_back(std::move(w));
            }
        std::vector<int> free;
        for (int t = pi + 1; t < N_; ++t)
            if (std::find(pivots_.begin(), pivots_.end(), t) == pivots_.end()) free.push_back(t);
        const int nvars = static_cast<int>(free.size()) * k_;

        // each functional: x -> sum_j g(a x_j, c_j) for g in {beta, beta^T, polarizations}
        std::vector<std::vector<int>> A;
        std::vector<int> rhs;
        Word unit_word(static_cast<std::size_t>(N_), R_.zero);
        unit_word[static_cast<std::size_t>(pi)] = R_.one;
        auto add_functional = [&](const std::function<std::int64_t(int, int)>& g) {
            for (const auto& c : cg)
                for (int a : basis_) {
                    std::vector<int> row(static_cast<std::size_t>(nvars));
                    for (std::size_t f = 0; f < free.size(); ++f)
                        for (int t = 0; t < k_; ++t) {
                            const int xv = R_.times(a, basis_[static_cast<std::size_t>(t)]);
                            row[f * static_cast<std::size_t>(k_) + static_cast<std::size_t>(t)] =
                                to_fp(g(xv, c[static_cast<std::size_t>(free[f])]));
                        }
                    const int cst = to_fp(g(R_.times(a, R_.one), c[static_cast<std::size_t>(pi)]));
                    A.push_back(std::move(row));
                    rhs.push_back((p_ - cst) % p_);
                }
        };
        if (!cg.empty()) {
            add_functional([&](int x, int c) { return B(x, c); });
            add_functional([&](int x, int c) { return B(c, x); });
            for (std::size_t q = 0; q < rho_->phi.size(); ++q) add_functional([&, q](int x, int c) { return P(q, x, c); });
        }
        std::vector<int> part;
        std::vector<std::vector<int>> kern;
        if (!solve_mod_p(A, rhs, p_, nvars, part, kern)) return;

        const std::size_t dim = kern.size();
        std::vector<int> coef(dim, 0);
        for (;;) {
            std::vector<int> y = part;
            for (std::size_t d = 0; d < dim; ++d)
                if (coef[d])
                    for (int v = 0; v < nvars; ++v) y[static_cast<std::size_t>(v)] = (y[static_cast<std::size_t>(v)] + coef[d] * kern[d][static_cast<std::size_t>(v)]) % p_;
            Word x = unit_word;
            for (std::size_t f = 0; f < free.size(); ++f) {
                int idx = 0;
                for (int t = k_ - 1; t >= 0; --t) idx = idx * p_ + y[f * static_cast<std::size_t>(k_) + static_cast<std::size_t>(t)];
                x[static_cast<std::size_t>(free[f])] = combos_[static_cast<std::size_t>(idx)];
            }
            if (self_compatible(x)) {
                rows_.push_back(x);
                pivots_.push_back(pi);
                extend(pi);
                rows_.pop_back();
                pivots_.pop_back();
            }
            std::size_t d = 0;
            while (d < dim && ++coef[d] == p_) coef[d++] = 0;
            if (d == dim) break;
        }
    }

    // R x is self-orthogonal and isotropic
    [[nodiscard]] bool self_compatible(const Word& x) const {
        const int q = R_.size();
        std::vector<Word> mult(static_cast<std::size_t>(q), Word(static_cast<std::size_t>(N_)));
        for (int a = 0; a < q; ++a)
            for (int t = 0; t < N_; ++t) mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)] = R_.times(a, x[static_cast<std::size_t>(t)]);
        for (const auto& ax : mult)
            for (const auto& qm : rho_->phi) {
                std::int64_t s = 0;
                for (int t = 0; t < N_; ++t) s += qm.table[static_cast<std::size_t>(ax[static_cast<std::size_t>(t)])];
                if (arith::mod(s, rho_->level) != 0) return false;
            }
        for (int a : basis_)
            for (int b : basis_) {
                std::int64_t s = 0;
                for (int t = 0; t < N_; ++t)
                    s += B(mult[static_cast<std::size_t>(a)][static_cast<std::size_t>(t)], mult[static_cast<std::size_t>(b)][static_cast<std::size_t>(t)]);
                if (arith::mod(s, rho_->level) != 0) return false;
            }
        return true;
    }

    void emit() {
        std::vector<Word> gens(rows_.rbegin(), rows_.rend());
        Code c(rho_, N_, std::move(gens));
        (void)c.packed();
        (*sink_)(std::move(c));
    }

    std::shared_ptr<const FormRing> rho_;
    int N_;
    const FiniteRing& R_;
    std::vector<int> basis_;
    int k_ = 1;
    int p_ = 2;
    std::vector<int> combos_;
    std::vector<Word> rows_;
    std::vector<int> pivots_;
    const CodeSink* sink_ = nullptr;
};

/// Pairwise and single-word conditions on R-generators of an isotropic,
/// self-orthogonal submodule of V^N.
class WordChecks {
public:
    WordChecks(std::shared_ptr<const FormRing> rho, int N) : rho_(std::move(rho)), N_(N), proto_(rho_, N, {}) {
        nr_ = static_cast<int>(rho_->ring_labels.size());
        add_gens_ = rho_->ring ? rho_->ring->additive_generators() : std::vector<int>{};
        if (!rho_->ring)
            for (int r = 0; r < nr_; ++r) add_gens_.push_back(r);
    }

    [[nodiscard]] const Code& proto() const { return proto_; }

    // R v and R w are orthogonal both ways and polarizations vanish
    [[nodiscard]] bool compatible(Packed v, Packed w) const {
        const FormRing& rho = *rho_;
        for (int a : add_gens_) {
            const Packed av = proto_.act(a, v);
            for (int b : add_gens_) {
                const Packed bw = proto_.act(b, w);
                std::int64_t s1 = 0, s2 = 0;
                std::vector<std::int64_t> sp(rho.phi.size(), 0);
                for (int t = 0; t < N_; ++t) {
                    const int x = proto_.symbol(av, t), y = proto_.symbol(bw, t);
                    s1 += rho.beta[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
                    s2 += rho.beta[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)];
                    for (std::size_t q = 0; q < rho.phi.size(); ++q) {
                        const auto& tb = rho.phi[q].table;
                        sp[q] += tb[static_cast<std::size_t>(rho.module.plus(x, y))] - tb[static_cast<std::size_t>(x)] - tb[static_cast<std::size_t>(y)];
                    }
                }
                if (rho.reduce(s1) || rho.reduce(s2)) return false;
                for (auto x : sp)
                    if (rho.reduce(x)) return false;
            }
        }
        return true;
    }

    [[nodiscard]] bool isotropic_multiples(Packed v) const {
        const FormRing& rho = *rho_;
        for (int r = 0; r < nr_; ++r) {
            const Packed rv = proto_.act(r, v);
            for (const auto& q : rho.phi) {
                std::int64_t s = 0;
                for (int t = 0; t < N_; ++t) s += q.table[static_cast<std::size_t>(proto_.symbol(rv, t))];
                if (rho.reduce(s)) return false;
            }
        }
        return true;
    }

private:
    std::shared_ptr<const FormRing> rho_;
    int N_;
    Code proto_;
    int nr_ = 0;
    std::vector<int> add_gens_;
};

/// Generic search over submodules D = C + R v for rings that are not fields.
class SubmoduleSearch {
public:
    SubmoduleSearch(std::shared_ptr<const FormRing> rho, int N, const EnumerateOptions& opt)
        : rho_(std::move(rho)), N_(N), opt_(opt), proto_(rho_, N, {}), chk_(rho_, N) {}

    void run(const CodeSink& sink) {
        const FormRing& rho = *rho_;
        const int n = rho.module.size();
        const std::int64_t total = checked_pow(n, N_, opt_.vector_cap);
        // |C|^2 = |V|^N
        std::int64_t target = 1;
        while (target * target < total) ++target;
        if (target * target != total) return;
        nr_ = static_cast<int>(rho.ring_labels.size());
        units_ = rho.ring ? rho.ring->units : std::vector<int>{};

        // root list: one representative (the least unit multiple) of each self-compatible R v
        std::vector<Packed> roots;
        for (std::int64_t idx = 1; idx < total; ++idx) {
            const Packed v = from_index(idx);
            bool least = true;
            for (int u : units_)
                if (proto_.act(u, v) < v) {
                    least = false;
                    break;
                }
            if (least && chk_.compatible(v, v) && chk_.isotropic_multiples(v)) roots.push_back(v);
        }
        const std::size_t L = roots.size();
        const std::size_t blocks = (L + 63) / 64;
        using Bits = std::vector<std::uint64_t>;
        std::vector<Bits> compat(L, Bits(blocks, 0));
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t j = i; j < L; ++j)
                if (chk_.compatible(roots[i], roots[j])) {
                    compat[i][j / 64] |= std::uint64_t{1} << (j % 64);
                    compat[j][i / 64] |= std::uint64_t{1} << (i % 64);
                }
        std::vector<std::vector<Packed>> mults(L);
        std::unordered_map<Packed, std::size_t> root_of;
        for (std::size_t i = 0; i < L; ++i) {
            mults[i] = multiples(roots[i]);
            root_of.emplace(roots[i], i);
        }

        const FiniteRing& R = *rho.ring;
        const int minus_one = R.neg[static_cast<std::size_t>(R.one)];
        struct State {
            std::vector<Packed> words;  // sorted
            std::vector<std::size_t> gens;
            Bits cand;
            Fingerprint fp;
        };
        std::unordered_set<Fingerprint, FingerprintHash> visited;
        std::vector<State> stack;
        Bits all(blocks, 0);
        for (std::size_t i = 0; i < L; ++i)
            if (compat[i][i / 64] >> (i % 64) & 1) all[i / 64] |= std::uint64_t{1} << (i % 64);
        const Fingerprint root_fp = element_hash(0);
        stack.push_back({{0}, {}, all, root_fp});
        visited.insert(root_fp);
        std::vector<Packed> reps;
        while (!stack.empty()) {
            State s = std::move(stack.back());
            stack.pop_back();
            const auto S = static_cast<std::int64_t>(s.words.size());
            if (S == target) {
                std::vector<Word> gens;
                for (std::size_t g : s.gens) gens.push_back(proto_.unpack(roots[g]));
                sink(Code::from_codewords(rho_, N_, std::move(gens), std::move(s.words)));
                continue;
            }
            auto in_s = [&](Packed x) { return std::binary_search(s.words.begin(), s.words.end(), x); };
            for (std::size_t b = 0; b < blocks; ++b)
                for (std::uint64_t bits = s.cand[b]; bits; bits &= bits - 1) {
                    const std::size_t c = b * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
                    // coset representatives of S in S + Rc
                    reps.clear();
                    for (Packed m : mults[c]) {
                        if (in_s(m)) continue;
                        bool fresh = true;
                        for (Packed t : reps)
                            if (in_s(proto_.add(m, proto_.act(minus_one, t)))) {
                                fresh = false;
                                break;
                            }
                        if (fresh) reps.push_back(m);
                    }
                    if (S * static_cast<std::int64_t>(reps.size() + 1) > target) continue;
                    // order-free fingerprint of the child, computed before building it
                    Fingerprint fp = s.fp;
                    for (Packed t : reps)
                        for (Packed w : s.words) {
                            const Fingerprint h = element_hash(proto_.add(w, t));
                            fp.first += h.first;
                            fp.second += h.second;
                        }
                    if (!visited.insert(fp).second) continue;
                    if (visited.size() > opt_.state_cap) throw BudgetExceeded("submodule search exceeds its state cap", visited.size());
                    State t{extend(s.words, reps), s.gens, s.cand, fp};
                    t.gens.push_back(c);
                    for (std::size_t k = 0; k < blocks; ++k) t.cand[k] &= compat[c][k];
                    for (Packed w : t.words) {
                        auto r = root_of.find(w);
                        if (r != root_of.end()) t.cand[r->second / 64] &= ~(std::uint64_t{1} << (r->second % 64));
                    }
                    stack.push_back(std::move(t));
                }
        }
    }

private:
    // visited states are kept as two 64-bit sums of per-word hashes, so the
    // search never stores whole submodules and can test a child before building it
    using Fingerprint = std::pair<std::uint64_t, std::uint64_t>;
    struct FingerprintHash {
        std::size_t operator()(const Fingerprint& f) const { return f.first ^ (f.second * 0x9e3779b97f4a7c15ULL); }
    };
    static Fingerprint element_hash(Packed x) {
        auto mix = [](std::uint64_t z) {
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        return {mix(x + 0x9e3779b97f4a7c15ULL), mix(x ^ 0x5851f42d4c957f2dULL) * 0xd6e8feb86659fd93ULL};
    }

    [[nodiscard]] std::vector<Packed> multiples(Packed v) const {
        std::vector<Packed> ml;
        for (int r = 0; r < nr_; ++r) ml.push_back(proto_.act(r, v));
        std::sort(ml.begin(), ml.end());
        ml.erase(std::unique(ml.begin(), ml.end()), ml.end());
        return ml;
    }

    [[nodiscard]] Packed from_index(std::int64_t idx) const {
        Word w(static_cast<std::size_t>(N_));
        const int n = rho_->module.size();
        for (int i = N_ - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<int>(idx % n);
            idx /= n;
        }
        return proto_.pack(w);
    }

    // S together with its cosets S + t
    [[nodiscard]] std::vector<Packed> extend(const std::vector<Packed>& words, const std::vector<Packed>& reps) const {
        std::vector<Packed> out = words;
        for (Packed t : reps)
            for (Packed s : words) out.push_back(proto_.add(s, t));
        std::sort(out.begin(), out.end());
        return out;
    }

    std::shared_ptr<const FormRing> rho_;
    int N_;
    EnumerateOptions opt_;
    Code proto_;
    WordChecks chk_;
    int nr_ = 0;
    std::vector<int> units_;
};

/// Structure of a local ring R = V whose maximal ideal m = pi R squares to
/// zero, with beta(pi r, pi s) = 0. Residues F = R/m are indexed by coset.
struct SquareZeroLocal {
    int pi = 0;
    std::vector<int> res;  // ring id -> residue id
    std::vector<int> rep;  // residue id -> least ring id in the coset
    FiniteRing F;
};

inline bool is_regular(const FormRing& rho) {
    return rho.ring && rho.module.size() == rho.ring->size() && rho.module.add == rho.ring->add &&
           rho.module.action == rho.ring->mul && rho.module.zero == rho.ring->zero;
}

inline std::optional<SquareZeroLocal> square_zero_local(const FormRing& rho) {
    if (!is_regular(rho)) return std::nullopt;
    const FiniteRing& R = *rho.ring;
    const int n = R.size();
    std::vector<int> m;
    for (int a = 0; a < n; ++a)
        if (!R.is_unit(a)) m.push_back(a);
    if (m.size() <= 1) return std::nullopt;
    for (int a : m)
        for (int b : m) {
            if (R.times(a, b) != R.zero) return std::nullopt;
            if (std::find(m.begin(), m.end(), R.plus(a, b)) == m.end()) return std::nullopt;
        }
    SquareZeroLocal L;
    L.pi = -1;
    for (int a : m) {
        std::vector<int> ideal;
        for (int r = 0; r < n; ++r) ideal.push_back(R.times(a, r));
        std::sort(ideal.begin(), ideal.end());
        ideal.erase(std::unique(ideal.begin(), ideal.end()), ideal.end());
        if (ideal.size() == m.size()) {
            L.pi = a;
            break;
        }
    }
    if (L.pi < 0) return std::nullopt;
    for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s)
            if (rho.reduce(rho.beta[static_cast<std::size_t>(R.times(L.pi, r))][static_cast<std::size_t>(R.times(L.pi, s))]) != 0)
                return std::nullopt;
    L.res.assign(static_cast<std::size_t>(n), -1);
    for (int r = 0; r < n; ++r) {
        if (L.res[static_cast<std::size_t>(r)] >= 0) continue;
        const int f = static_cast<int>(L.rep.size());
        L.rep.push_back(r);
        for (int x : m) L.res[static_cast<std::size_t>(R.plus(r, x))] = f;
    }
    const int q = static_cast<int>(L.rep.size());
    L.F.add.assign(static_cast<std::size_t>(q), std::vector<int>(static_cast<std::size_t>(q)));
    L.F.mul = L.F.add;
    for (int f = 0; f < q; ++f) {
        L.F.labels.push_back(R.labels[static_cast<std::size_t>(L.rep[static_cast<std::size_t>(f)])]);
        for (int g = 0; g < q; ++g) {
            const int a = L.rep[static_cast<std::size_t>(f)], b = L.rep[static_cast<std::size_t>(g)];
            L.F.add[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)] = L.res[static_cast<std::size_t>(R.plus(a, b))];
            L.F.mul[static_cast<std::size_t>(f)][static_cast<std::size_t>(g)] = L.res[static_cast<std::size_t>(R.times(a, b))];
        }
    }
    L.F.zero = L.res[static_cast<std::size_t>(R.zero)];
    L.F.one = L.res[static_cast<std::size_t>(R.one)];
    L.F.finalize();
    return L;
}

/// Self-dual codes over a square-zero local ring, built from the residue code
/// C1 = C mod m and lifts of its rows. C contains pi C2 with C2 the
/// annihilator of C1 under (y, x) -> beta(pi y, x), and each residue row x has
/// exactly one lift x + pi y in C with y in a fixed complement of C2.
class LocalLiftSearch {
public:
    LocalLiftSearch(std::shared_ptr<const FormRing> rho, int N, SquareZeroLocal L, const EnumerateOptions& opt)
        : rho_(std::move(rho)), N_(N), L_(std::move(L)), opt_(opt), chk_(rho_, N) {}

    void run(const CodeSink& sink) {
        sink_ = &sink;
        q_ = L_.F.size();
        total_ = checked_pow(q_, N_, opt_.vector_cap);
        target_ = checked_pow(q_, N_, opt_.vector_cap);
        fgens_ = L_.F.additive_generators();
        rows_.clear();
        pivots_.clear();
        residue_codes(N_);
    }

private:
    using FWord = std::vector<int>;

    [[nodiscard]] FWord f_word(std::int64_t idx) const {
        FWord w(static_cast<std::size_t>(N_));
        for (int i = N_ - 1; i >= 0; --i) {
            w[static_cast<std::size_t>(i)] = static_cast<int>(idx % q_);
            idx /= q_;
        }
        return w;
    }
    [[nodiscard]] std::int64_t f_index(const FWord& w) const {
        std::int64_t idx = 0;
        for (int x : w) idx = idx * q_ + x;
        return idx;
    }
    [[nodiscard]] FWord f_scale(int a, const FWord& w) const {
        FWord out(w.size());
        for (std::size_t i = 0; i < w.size(); ++i) out[i] = L_.F.times(a, w[i]);
        return out;
    }
    [[nodiscard]] FWord f_add(const FWord& u, const FWord& v) const {
        FWord out(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) out[i] = L_.F.plus(u[i], v[i]);
        return out;
    }
    // sum_t beta(pi y_t, x_t) over the residue representatives
    [[nodiscard]] std::int64_t bbar(const FWord& y, const FWord& x) const {
        const FiniteRing& R = *rho_->ring;
        std::int64_t s = 0;
        for (int t = 0; t < N_; ++t)
            s += rho_->beta[static_cast<std::size_t>(R.times(L_.pi, L_.rep[static_cast<std::size_t>(y[static_cast<std::size_t>(t)])]))]
                           [static_cast<std::size_t>(L_.rep[static_cast<std::size_t>(x[static_cast<std::size_t>(t)])])];
        return rho_->reduce(s);
    }

    [[nodiscard]] std::vector<FWord> additive_rows(const std::vector<FWord>& rows) const {
        std::vector<FWord> out;
        for (const auto& r : rows)
            for (int a : fgens_) out.push_back(f_scale(a, r));
        return out;
    }

    // F-span of a list of words, as a membership table over F^N
    void span_into(std::vector<bool>& in, std::vector<std::int64_t>& members, const FWord& w) const {
        std::vector<std::int64_t> add;
        for (int a = 0; a < q_; ++a) {
            const FWord aw = f_scale(a, w);
            for (std::int64_t m : members) {
                const std::int64_t x = f_index(f_add(f_word(m), aw));
                if (!in[static_cast<std::size_t>(x)]) {
                    in[static_cast<std::size_t>(x)] = true;
                    add.push_back(x);
                }
            }
        }
        members.insert(members.end(), add.begin(), add.end());
    }

    // residue codes in reduced row echelon form, self-orthogonal for bbar
    void residue_codes(int bound) {
        handle_residue();
        const int j = static_cast<int>(rows_.size());
        if (2 * (j + 1) > N_) return;
        for (int pi = bound - 1; pi >= 0; --pi) {
            std::vector<int> free;
            for (int t = pi + 1; t < N_; ++t)
                if (std::find(pivots_.begin(), pivots_.end(), t) == pivots_.end()) free.push_back(t);
            std::int64_t combos = 1;
            for (std::size_t i = 0; i < free.size(); ++i) combos *= q_;
            const auto gens = additive_rows(rows_);
            for (std::int64_t c = 0; c < combos; ++c) {
                FWord x(static_cast<std::size_t>(N_), L_.F.zero);
                x[static_cast<std::size_t>(pi)] = L_.F.one;
                std::int64_t t = c;
                for (int f : free) {
                    x[static_cast<std::size_t>(f)] = static_cast<int>(t % q_);
                    t /= q_;
                }
                bool ok = true;
                const auto mine = additive_rows({x});
                for (const auto& u : mine) {
                    for (const auto& v : mine)
                        if (bbar(u, v)) ok = false;
                    for (const auto& g : gens)
                        if (bbar(u, g) || bbar(g, u)) ok = false;
                    if (!ok) break;
                }
                if (!ok) continue;
                rows_.push_back(x);
                pivots_.push_back(pi);
                residue_codes(pi);
                rows_.pop_back();
                pivots_.pop_back();
            }
        }
    }

    void handle_residue() {
        const FiniteRing& R = *rho_->ring;
        const Code& proto = chk_.proto();
        const auto gens = additive_rows(rows_);
        // C2 and an F-basis of it
        std::vector<bool> in_span(static_cast<std::size_t>(total_), false);
        std::vector<std::int64_t> members{0};
        in_span[0] = true;
        std::vector<FWord> c2_basis;
        for (std::int64_t y = 1; y < total_; ++y) {
            const FWord w = f_word(y);
            bool ok = true;
            for (const auto& g : gens)
                if (bbar(w, g)) {
                    ok = false;
                    break;
                }
            if (!ok || in_span[static_cast<std::size_t>(y)]) continue;
            c2_basis.push_back(w);
            span_into(in_span, members, w);
        }
        // complement W of C2
        std::vector<FWord> w_basis;
        for (std::int64_t y = 1; y < total_; ++y) {
            if (in_span[static_cast<std::size_t>(y)]) continue;
            w_basis.push_back(f_word(y));
            span_into(in_span, members, f_word(y));
        }
        std::vector<FWord> complement{FWord(static_cast<std::size_t>(N_), L_.F.zero)};
        for (const auto& b : w_basis) {
            std::vector<FWord> next;
            for (const auto& e : complement)
                for (int a = 0; a < q_; ++a) next.push_back(f_add(e, f_scale(a, b)));
            complement = std::move(next);
        }
        // torsion generators pi C2
        torsion_.clear();
        for (const auto& c : c2_basis) {
            Word w(static_cast<std::size_t>(N_));
            for (int t = 0; t < N_; ++t) w[static_cast<std::size_t>(t)] = R.times(L_.pi, L_.rep[static_cast<std::size_t>(c[static_cast<std::size_t>(t)])]);
            torsion_.push_back(proto.pack(w));
        }
        for (std::size_t i = 0; i < torsion_.size(); ++i) {
            if (!chk_.isotropic_multiples(torsion_[i])) return;
            for (std::size_t j = 0; j <= i; ++j)
                if (!chk_.compatible(torsion_[i], torsion_[j])) return;
        }
        complement_ = std::move(complement);
        lifts_.clear();
        choose_lift(0);
    }

    void choose_lift(std::size_t i) {
        const FiniteRing& R = *rho_->ring;
        const Code& proto = chk_.proto();
        if (i == rows_.size()) {
            std::vector<Word> gens;
            for (Packed l : lifts_) gens.push_back(proto.unpack(l));
            for (Packed t : torsion_) gens.push_back(proto.unpack(t));
            Code c(rho_, N_, std::move(gens));
            if (static_cast<std::int64_t>(c.size()) != target_) return;
            (*sink_)(std::move(c));
            return;
        }
        // rows_ are stored bottom-up; lift them in the same order
        const FWord& x = rows_[i];
        for (const auto& y : complement_) {
            Word w(static_cast<std::size_t>(N_));
            for (int t = 0; t < N_; ++t)
                w[static_cast<std::size_t>(t)] =
                    R.plus(L_.rep[static_cast<std::size_t>(x[static_cast<std::size_t>(t)])],
                           R.times(L_.pi, L_.rep[static_cast<std::size_t>(y[static_cast<std::size_t>(t)])]));
            const Packed l = proto.pack(w);
            if (!chk_.isotropic_multiples(l) || !chk_.compatible(l, l)) continue;
            bool ok = true;
            for (Packed t : torsion_)
                if (!chk_.compatible(l, t)) {
                    ok = false;
                    break;
                }
            for (std::size_t j = 0; ok && j < lifts_.size(); ++j) ok = chk_.compatible(l, lifts_[j]);
            if (!ok) continue;
            lifts_.push_back(l);
            choose_lift(i + 1);
            lifts_.pop_back();
        }
    }

    std::shared_ptr<const FormRing> rho_;
    int N_;
    SquareZeroLocal L_;
    EnumerateOptions opt_;
    WordChecks chk_;
    int q_ = 2;
    std::int64_t total_ = 1;
    std::int64_t target_ = 1;
    std::vector<int> fgens_;
    std::vector<FWord> rows_;
    std::vector<int> pivots_;
    std::vector<FWord> complement_;
    std::vector<Packed> torsion_;
    std::vector<Packed> lifts_;
    const CodeSink* sink_ = nullptr;
};

/// A central idempotent e with V = eV + (1-e)V orthogonal for beta and for
/// every polarization; codes of the Type are then direct sums.
inline std::optional<int> splitting_idempotent(const FormRing& rho) {
    if (!rho.ring) return std::nullopt;
    const FiniteRing& R = *rho.ring;
    const Module& V = rho.module;
    for (int e = 0; e < R.size(); ++e) {
        if (e == R.zero || e == R.one || R.times(e, e) != e) continue;
        const int f = R.minus(R.one, e);
        bool ok = true;
        for (int r = 0; r < R.size() && ok; ++r) ok = R.times(e, r) == R.times(r, e);
        for (int v = 0; v < V.size() && ok; ++v)
            for (int w = 0; w < V.size() && ok; ++w) {
                const int ev = V.act(e, v), fw = V.act(f, w);
                if (rho.reduce(rho.beta[static_cast<std::size_t>(ev)][static_cast<std::size_t>(fw)]) ||
                    rho.reduce(rho.beta[static_cast<std::size_t>(fw)][static_cast<std::size_t>(ev)]))
                    ok = false;
                for (const auto& q : rho.phi) {
                    const auto& tb = q.table;
                    if (rho.reduce(tb[static_cast<std::size_t>(V.plus(ev, fw))] - tb[static_cast<std::size_t>(ev)] - tb[static_cast<std::size_t>(fw)]))
                        ok = false;
                }
            }
        if (ok) return e;
    }
    return std::nullopt;
}

/// The component (eR, eV) with the restricted forms; ids of the component are
/// listed in `ring_ids` and `module_ids`.
struct Component {
    FormRing rho;
    std::vector<int> ring_ids;
    std::vector<int> module_ids;
};

inline Component component(const FormRing& rho, int e) {
    const FiniteRing& R = *rho.ring;
    const Module& V = rho.module;
    Component c;
    for (int r = 0; r < R.size(); ++r)
        if (R.times(e, r) == r) c.ring_ids.push_back(r);
    for (int v = 0; v < V.size(); ++v)
        if (V.act(e, v) == v) c.module_ids.push_back(v);
    auto pos = [](const std::vector<int>& ids, int x) {
        return static_cast<int>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
    };
    const std::size_t nr = c.ring_ids.size(), nv = c.module_ids.size();
    FiniteRing S;
    S.add.assign(nr, std::vector<int>(nr));
    S.mul = S.add;
    for (std::size_t a = 0; a < nr; ++a) {
        S.labels.push_back(R.labels[static_cast<std::size_t>(c.ring_ids[a])]);
        for (std::size_t b = 0; b < nr; ++b) {
            S.add[a][b] = pos(c.ring_ids, R.plus(c.ring_ids[a], c.ring_ids[b]));
            S.mul[a][b] = pos(c.ring_ids, R.times(c.ring_ids[a], c.ring_ids[b]));
        }
    }
    S.zero = pos(c.ring_ids, R.zero);
    S.one = pos(c.ring_ids, e);
    S.finalize();
    FormRing& out = c.rho;
    out.label = rho.label + "[" + R.labels[static_cast<std::size_t>(e)] + "]";
    out.ring = S;
    out.ring_labels = S.labels;
    out.ring_one = S.one;
    out.level = rho.level;
    out.module.add.assign(nv, std::vector<int>(nv));
    out.module.action.assign(nr, std::vector<int>(nv));
    for (std::size_t v = 0; v < nv; ++v) {
        out.module.labels.push_back(V.labels[static_cast<std::size_t>(c.module_ids[v])]);
        for (std::size_t w = 0; w < nv; ++w) out.module.add[v][w] = pos(c.module_ids, V.plus(c.module_ids[v], c.module_ids[w]));
        for (std::size_t r = 0; r < nr; ++r) out.module.action[r][v] = pos(c.module_ids, V.act(c.ring_ids[r], c.module_ids[v]));
    }
    out.module.zero = pos(c.module_ids, V.zero);
    out.module.finalize();
    out.beta.assign(nv, std::vector<std::int64_t>(nv));
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t w = 0; w < nv; ++w)
            out.beta[v][w] = rho.beta[static_cast<std::size_t>(c.module_ids[v])][static_cast<std::size_t>(c.module_ids[w])];
    for (const auto& q : rho.phi) {
        QuadraticMap m{q.label, {}};
        for (int v : c.module_ids) m.table.push_back(q.table[static_cast<std::size_t>(v)]);
        out.phi.push_back(std::move(m));
    }
    out.unit_generators = S.unit_generators();
    out.idempotents = {{S.one, S.one, S.one}};
    return c;
}

inline void enumerate_any(const std::shared_ptr<const FormRing>& ptr, int N, const EnumerateOptions& opt, const CodeSink& sink) {
    const FormRing& rho = *ptr;
    if (opt.generic_only) return SubmoduleSearch(ptr, N, opt).run(sink);
    if (is_regular_field(rho)) return FieldSearch(ptr, N).run(sink);
    if (auto e = splitting_idempotent(rho)) {
        const FiniteRing& R = *rho.ring;
        const Component c1 = component(rho, *e), c2 = component(rho, R.minus(R.one, *e));
        std::vector<Code> B;
        enumerate_any(std::make_shared<const FormRing>(c2.rho), N, opt, [&](Code&& c) { B.push_back(std::move(c)); });
        if (B.empty()) return;
        const Code proto(ptr, N, {});
        auto lift = [&](const Word& w, const Component& c) {
            Word out(w.size());
            for (std::size_t t = 0; t < w.size(); ++t) out[t] = c.module_ids[static_cast<std::size_t>(w[t])];
            return out;
        };
        std::vector<std::vector<Packed>> bwords;
        for (const auto& b : B) {
            std::vector<Packed> bw;
            for (const auto& y : b.codewords()) bw.push_back(proto.pack(lift(y, c2)));
            bwords.push_back(std::move(bw));
        }
        enumerate_any(std::make_shared<const FormRing>(c1.rho), N, opt, [&](Code&& a) {
            std::vector<Packed> aw;
            for (const auto& x : a.codewords()) aw.push_back(proto.pack(lift(x, c1)));
            for (std::size_t k = 0; k < B.size(); ++k) {
                std::vector<Word> gens;
                for (const auto& g : a.generators()) gens.push_back(lift(g, c1));
                for (const auto& g : B[k].generators()) gens.push_back(lift(g, c2));
                std::vector<Packed> words;
                words.reserve(aw.size() * bwords[k].size());
                for (Packed px : aw)
                    for (Packed py : bwords[k]) words.push_back(proto.add(px, py));
                std::sort(words.begin(), words.end());
                sink(Code::from_codewords(ptr, N, std::move(gens), std::move(words)));
            }
        });
        return;
    }
    if (auto L = square_zero_local(rho)) return LocalLiftSearch(ptr, N, std::move(*L), opt).run(sink);
    SubmoduleSearch(ptr, N, opt).run(sink);
}

inline void check_enumerable(const FormRing& rho, int N, const EnumerateOptions& opt) {
    if (N < 0) throw ParseError("length must be nonnegative");
    if (!rho.ring) throw Infeasible("enumerate_type needs a tabulated ring");
    if (!opt.allow_large && (rho.module.size() > 3 || N > 12)) throw Infeasible("enumerate_type is exhaustive only for |V| <= 3 and N <= 12");
}

}  // namespace detail

/// Calls `visit` once for every code of Type rho and length N, in a fixed
/// order, without keeping them all.
inline void for_each_code_of_type(const FormRing& rho, int N, const std::function<void(Code&&)>& visit, const EnumerateOptions& opt = {}) {
    detail::check_enumerable(rho, N, opt);
    detail::enumerate_any(std::make_shared<const FormRing>(rho), N, opt, visit);
}

/// Every code of Type rho and length N, each exactly once, sorted by codeword set.
inline std::vector<Code> enumerate_type(const FormRing& rho, int N, const EnumerateOptions& opt = {}) {
    std::vector<Code> out;
    for_each_code_of_type(rho, N, [&](Code&& c) { out.push_back(std::move(c)); }, opt);
    std::sort(out.begin(), out.end(), [](const Code& a, const Code& b) { return a.packed() < b.packed(); });
    return out;
}

}  // namespace sdc

#pragma once

#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sdc/cyclotomic.hpp"
#include "sdc/errors.hpp"

namespace sdc {

/// Dense square matrix of cyclotomic numbers, row-major.
class CycMatrix {
public:
    CycMatrix() = default;
    explicit CycMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

    static CycMatrix identity(int n) {
        CycMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    /// Builds from nested rows; every row must have the same length as the list.
    static CycMatrix from_rows(const std::vector<std::vector<Cyclotomic>>& rows) {
        CycMatrix m(static_cast<int>(rows.size()));
        for (int i = 0; i < m.n_; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != m.n_) throw ParseError("matrix is not square");
            for (int j = 0; j < m.n_; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return m;
    }

    [[nodiscard]] int dim() const noexcept { return n_; }
    Cyclotomic& operator()(int r, int c) { return a_[index(r, c)]; }
    [[nodiscard]] const Cyclotomic& operator()(int r, int c) const { return a_[index(r, c)]; }
    [[nodiscard]] const std::vector<Cyclotomic>& entries() const noexcept { return a_; }

    friend CycMatrix operator*(const CycMatrix& x, const CycMatrix& y) {
        if (x.n_ != y.n_) throw Error("matrix dimensions differ");
        CycMatrix z(x.n_);
        for (int i = 0; i < x.n_; ++i)
            for (int k = 0; k < x.n_; ++k) {
                const Cyclotomic& a = x(i, k);
                if (a.is_zero()) continue;
                for (int j = 0; j < x.n_; ++j)
                    if (!y(k, j).is_zero()) z(i, j) += a * y(k, j);
            }
        return z;
    }

    [[nodiscard]] CycMatrix scaled(const Cyclotomic& s) const {
        CycMatrix m = *this;
        for (auto& e : m.a_) e = e * s;
        return m;
    }

    [[nodiscard]] CycMatrix conj_transpose() const {
        CycMatrix m(n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(j, i) = (*this)(i, j).conj();
        return m;
    }

    [[nodiscard]] Cyclotomic trace() const {
        Cyclotomic t;
        for (int i = 0; i < n_; ++i) t += (*this)(i, i);
        return t;
    }

    [[nodiscard]] bool is_identity() const { return *this == identity(n_); }

    /// True when each column has exactly one nonzero entry.
    [[nodiscard]] bool is_monomial() const {
        for (int c = 0; c < n_; ++c) {
            int nz = 0;
            for (int r = 0; r < n_; ++r) nz += !(*this)(r, c).is_zero();
            if (nz != 1) return false;
        }
        return true;
    }

    /// Least common multiple of the entry conductors.
    [[nodiscard]] std::int64_t conductor() const {
        std::int64_t L = 1;
        for (const auto& e : a_) L = arith::lcm(L, e.conductor());
        return L;
    }

    friend bool operator==(const CycMatrix& x, const CycMatrix& y) { return x.n_ == y.n_ && x.a_ == y.a_; }
    friend bool operator!=(const CycMatrix& x, const CycMatrix& y) { return !(x == y); }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(n_);
        for (const auto& e : a_) h = h * 1000003ULL ^ e.hash();
        return h;
    }

    /// One line per row, entries separated by " | ".
    [[nodiscard]] std::string to_string() const {
        std::ostringstream os;
        for (int i = 0; i < n_; ++i) {
            for (int j = 0; j < n_; ++j) os << (j ? " | " : "") << (*this)(i, j).to_string();
            os << "\n";
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const CycMatrix& m) { return os << "\n" << m.to_string(); }

private:
    [[nodiscard]] std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(c);
    }

    int n_ = 0;
    std::vector<Cyclotomic> a_;
};

namespace detail {

/// Fixed field Q(zeta_L) with elements of a matrix stored as int64 power-basis
/// numerators over one shared denominator. Used by group closure, where the
/// same few entries are multiplied millions of times.
class PackedField {
public:
    explicit PackedField(std::int64_t L) : L_(L) {
        const auto& t = cyclotomic_table(L);
        deg_ = static_cast<int>(t.degree);
        phi_ = t.minimal_poly;
    }

    [[nodiscard]] std::int64_t conductor() const noexcept { return L_; }
    [[nodiscard]] int degree() const noexcept { return deg_; }
    [[nodiscard]] const std::vector<std::int64_t>& minimal_poly() const noexcept { return phi_; }

private:
    std::int64_t L_;
    int deg_;
    std::vector<std::int64_t> phi_;
};

struct PackedMatrix {
    std::vector<std::int64_t> num;  // n*n entries of deg numerators each
    std::int64_t den = 1;

    friend bool operator==(const PackedMatrix& a, const PackedMatrix& b) { return a.den == b.den && a.num == b.num; }

    [[nodiscard]] std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(den) * 0x9e3779b97f4a7c15ULL;
        for (std::int64_t x : num) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
        return h;
    }
};

struct PackedMatrixHash {
    std::size_t operator()(const PackedMatrix& m) const { return m.hash(); }
};

/// Arithmetic on PackedMatrix values of one dimension over one PackedField.
class PackedAlgebra {
public:
    PackedAlgebra(int n, std::int64_t L) : n_(n), field_(L) {}

    [[nodiscard]] int dim() const noexcept { return n_; }
    [[nodiscard]] const PackedField& field() const noexcept { return field_; }

    [[nodiscard]] PackedMatrix pack(const CycMatrix& m) const {
        if (m.dim() != n_) throw Error("matrix dimension differs from the algebra");
        const int d = field_.degree();
        std::vector<std::vector<Rational>> lifted;
        Integer den = 1;
        for (const auto& e : m.entries()) {
            if (field_.conductor() % e.conductor() != 0) throw Error("entry outside the packed field");
            lifted.push_back(e.lifted(field_.conductor()));
            for (const auto& c : lifted.back()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
        }
        if (!den.fits_slong_p()) throw BudgetExceeded("packed matrix denominator overflow");
        PackedMatrix p;
        p.den = den.get_si();
        p.num.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) * static_cast<std::size_t>(d), 0);
        for (std::size_t k = 0; k < lifted.size(); ++k)
            for (int j = 0; j < d; ++j) {
                const Rational& c = lifted[k][static_cast<std::size_t>(j)];
                Integer v = c.get_num() * (den / c.get_den());
                if (!v.fits_slong_p()) throw BudgetExceeded("packed matrix numerator overflow");
                p.num[k * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] = v.get_si();
            }
        normalize(p);
        return p;
    }

    [[nodiscard]] CycMatrix unpack(const PackedMatrix& p) const {
        CycMatrix m(n_);
        const int d = field_.degree();
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = entry(p, i, j, d);
        return m;
    }

    [[nodiscard]] Cyclotomic entry(const PackedMatrix& p, int i, int j) const { return entry(p, i, j, field_.degree()); }

    [[nodiscard]] PackedMatrix identity() const {
        PackedMatrix p;
        const std::size_t d = static_cast<std::size_t>(field_.degree());
        p.num.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_) * d, 0);
        for (int i = 0; i < n_; ++i) p.num[(static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)) * d] = 1;
        return p;
    }

    [[nodiscard]] PackedMatrix mul(const PackedMatrix& a, const PackedMatrix& b) const {
        const int d = field_.degree();
        const std::size_t n = static_cast<std::size_t>(n_), du = static_cast<std::size_t>(d);
        const std::size_t wide = 2 * du - 1;
        std::vector<__int128> acc(wide);
        PackedMatrix c;
        c.num.assign(n * n * du, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::fill(acc.begin(), acc.end(), 0);
                bool any = false;
                for (std::size_t k = 0; k < n; ++k) {
                    const std::int64_t* x = &a.num[(i * n + k) * du];
                    const std::int64_t* y = &b.num[(k * n + j) * du];
                    for (std::size_t s = 0; s < du; ++s) {
                        if (x[s] == 0) continue;
                        for (std::size_t t = 0; t < du; ++t)
                            if (y[t] != 0) {
                                acc[s + t] += static_cast<__int128>(x[s]) * y[t];
                                any = true;
                            }
                    }
                }
                if (!any) continue;
                reduce(acc);
                for (std::size_t s = 0; s < du; ++s) c.num[(i * n + j) * du + s] = narrow(acc[s]);
            }
        c.den = narrow(static_cast<__int128>(a.den) * b.den);
        normalize(c);
        return c;
    }

    [[nodiscard]] bool is_identity(const PackedMatrix& p) const { return p == identity(); }

    /// Trace as a raw power-basis numerator vector (shared denominator p.den).
    [[nodiscard]] std::vector<std::int64_t> trace_numerators(const PackedMatrix& p) const {
        const std::size_t du = static_cast<std::size_t>(field_.degree()), n = static_cast<std::size_t>(n_);
        std::vector<std::int64_t> t(du, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t s = 0; s < du; ++s) t[s] += p.num[(i * n + i) * du + s];
        return t;
    }

    [[nodiscard]] Cyclotomic trace(const PackedMatrix& p) const { return to_cyclotomic(trace_numerators(p), p.den); }

    [[nodiscard]] Cyclotomic to_cyclotomic(const std::vector<std::int64_t>& num, std::int64_t den) const {
        std::vector<Rational> c(num.size());
        for (std::size_t s = 0; s < num.size(); ++s) c[s] = make_rational(num[s], den);
        return Cyclotomic::from_powers(field_.conductor(), c);
    }

private:
    [[nodiscard]] Cyclotomic entry(const PackedMatrix& p, int i, int j, int d) const {
        const std::size_t base = (static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)) * static_cast<std::size_t>(d);
        std::vector<std::int64_t> num(p.num.begin() + static_cast<std::ptrdiff_t>(base),
                                      p.num.begin() + static_cast<std::ptrdiff_t>(base) + d);
        return to_cyclotomic(num, p.den);
    }

    void reduce(std::vector<__int128>& acc) const {
        const std::size_t du = static_cast<std::size_t>(field_.degree());
        const auto& phi = field_.minimal_poly();
        for (std::size_t i = acc.size(); i-- > du;) {
            const __int128 c = acc[i];
            if (c == 0) continue;
            for (std::size_t j = 0; j < du; ++j)
                if (phi[j] != 0) acc[i - du + j] -= c * phi[j];
            acc[i] = 0;
        }
    }

    static std::int64_t narrow(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw BudgetExceeded("packed matrix arithmetic overflow");
        return static_cast<std::int64_t>(v);
    }

    static void normalize(PackedMatrix& p) {
        std::int64_t g = p.den;
        for (std::int64_t x : p.num) {
            if (g == 1) break;
            if (x != 0) g = std::gcd(g, x);
        }
        if (g < 0) g = -g;
        if (g > 1) {
            for (auto& x : p.num) x /= g;
            p.den /= g;
        }
    }

    int n_;
    PackedField field_;
};

}  // namespace detail

}  // namespace sdc

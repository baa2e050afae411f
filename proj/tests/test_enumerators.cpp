#include <gtest/gtest.h>

#include <random>

#include "sdc/enumerators.hpp"

using namespace sdc;

namespace {

const std::vector<std::string> XY = {"x", "y"};

WeightPolynomial xy(const std::string& s) { return parse_polynomial(s, XY); }

Code h8() { return make_code(preset("2_I"), 8, extended_qr_rows(7)); }

// Hamming enumerator straight from the codeword list
WeightPolynomial brute_hwe(const std::vector<Word>& words, int N) {
    WeightPolynomial w(XY);
    for (const auto& c : words) {
        std::uint16_t wt = 0;
        for (int s : c) wt += s != 0;
        w.add_term({static_cast<std::uint16_t>(N - wt), wt}, 1);
    }
    return w;
}

}  // namespace

TEST(Polynomial, ParseAndPrint) {
    const auto p = xy("x^8 + 14x^4y^4 + y^8");
    EXPECT_EQ(p.to_string(), "x^8 + 14x^4y^4 + y^8");
    EXPECT_EQ(xy("y^2 - x^2").to_string(), "-x^2 + y^2");
    EXPECT_EQ(xy("1/2x y").to_string(), "1/2xy");
    EXPECT_EQ((xy("x") + xy("y")).pow(2).to_string(), "x^2 + 2xy + y^2");
    EXPECT_EQ((xy("x") - xy("x")).to_string(), "0");
    EXPECT_THROW(xy("x + + y"), ParseError);
    EXPECT_THROW(xy("x % y"), ParseError);
    const auto q = parse_polynomial("x0^2 + x1^2", {"x0", "x1"});
    EXPECT_EQ(q.to_string(), "x0^2 + x1^2");
}

TEST(Polynomial, Arithmetic) {
    const auto a = xy("x + y"), b = xy("x - y");
    EXPECT_EQ(a * b, xy("x^2 - y^2"));
    EXPECT_EQ(a.pow(3) + b.pow(3), xy("2x^3 + 6xy^2"));
    EXPECT_EQ(Cyclotomic(make_rational(1, 2)) * xy("2x"), xy("x"));
    EXPECT_TRUE(xy("x^2 + xy").is_homogeneous());
    EXPECT_FALSE(xy("x^2 + y").is_homogeneous());
    EXPECT_EQ(xy("x^3 + y").degree(), 3);
    EXPECT_THROW((void)(xy("x") + parse_polynomial("x", {"x"})), Error);
}

TEST(Enumerators, CweExamples) {
    const FormRing r2 = preset("2_I");
    const Code rep3 = make_code(r2, 3, {{1, 1, 1}});
    EXPECT_EQ(cwe(rep3).to_string(), "x0^3 + x1^3");
    EXPECT_EQ(cwe(make_code(r2, 5, {})).to_string(), "x0^5");
    const Code i2 = make_code(r2, 2, {{1, 1}});
    // the four ordered pairs (00,00), (00,11), (11,00), (11,11)
    EXPECT_EQ(cwe(i2, 2).to_string(), "x(0,0)^2 + x(0,1)^2 + x(1,0)^2 + x(1,1)^2");
    EXPECT_THROW(cwe(i2, 0), ParseError);
    EnumeratorOptions tiny;
    tiny.tuple_budget = 10;
    EXPECT_THROW(cwe(h8(), 1, tiny), BudgetExceeded);
}

TEST(Enumerators, HammingEquations) {
    const FormRing r2 = preset("2_I");
    EXPECT_EQ(hwe(make_code(r2, 2, {{1, 1}})), xy("x^2 + y^2"));
    EXPECT_EQ(hwe(h8()), xy("x^8 + 14x^4y^4 + y^8"));
    const WeightPolynomial g = hwe(extended_qr_code(23));
    EXPECT_EQ(g, xy("x^24 + 759x^16y^8 + 2576x^12y^12 + 759x^8y^16 + y^24"));
}

TEST(Enumerators, CweInvariants) {
    std::mt19937 rng(7);
    for (const auto& name : preset_names()) {
        const FormRing rho = preset(name);
        const int n = rho.module.size();
        for (int trial = 0; trial < 5; ++trial) {
            const int N = 1 + static_cast<int>(rng() % 4);
            std::vector<Word> gens(2, Word(static_cast<std::size_t>(N)));
            for (auto& g : gens)
                for (auto& x : g) x = static_cast<int>(rng() % static_cast<unsigned>(n));
            const Code c = make_code(rho, N, gens);
            for (int m = 1; m <= 2; ++m) {
                const WeightPolynomial w = cwe(c, m);
                Cyclotomic sum;
                for (const auto& [e, k] : w.terms()) {
                    EXPECT_EQ(total_degree(e), N);
                    ASSERT_TRUE(k.is_rational());
                    EXPECT_GT(k.rational(), 0);
                    sum += k;
                }
                EXPECT_EQ(sum, Cyclotomic(static_cast<long>(std::pow(c.size(), m)))) << name;
            }
            // collapsing genus-2 variables onto the first coordinate gives |C| cwe(C)
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(n));
            for (int v = 0; v < n * n; ++v) blocks[static_cast<std::size_t>(v / n)].push_back(v);
            const auto first = symmetrize(cwe(c, 2), blocks, cwe(c).variables());
            EXPECT_EQ(first, Cyclotomic(static_cast<long>(c.size())) * cwe(c)) << name;
            // hwe is the {0} / rest symmetrization
            std::vector<std::vector<int>> zr{{rho.module.zero}, {}};
            for (int v = 0; v < n; ++v)
                if (v != rho.module.zero) zr[1].push_back(v);
            EXPECT_EQ(symmetrize(cwe(c), zr), hwe(c)) << name;
        }
    }
}

TEST(Enumerators, Symmetrize) {
    const WeightPolynomial c = cwe(h8());
    EXPECT_EQ(symmetrize(c, {{0}, {1}}).to_string(), "x^8 + 14x^4y^4 + y^8");
    EXPECT_EQ(symmetrize(c, {{0}, {1}}, {"x0", "x1"}), c);
    EXPECT_EQ(symmetrize(c, {{1}, {0}}, {"x1", "x0"}).to_string(), "x1^8 + 14x1^4x0^4 + x0^8");
    EXPECT_THROW(symmetrize(c, {{0}}), ParseError);
    EXPECT_THROW(symmetrize(c, {{0, 1}, {1}}), ParseError);
    EXPECT_THROW(symmetrize(c, {{0, 2}}), ParseError);
}

TEST(Enumerators, F9Code) {
    // [1 alpha] with alpha = -a = a^5, element id 6
    const FormRing rho = preset("9_H");
    const Code c = make_code(rho, 2, {{1, 6}});
    EXPECT_EQ(c.size(), 9u);
    EXPECT_EQ(hwe(c), xy("x^2 + 8y^2"));
    // orbits {0}, squares {1, a^2, a^4, a^6}, non-squares {a, a^3, a^5, a^7}
    const auto s = symmetrize(cwe(c), {{0}, {1, 3, 5, 7}, {2, 4, 6, 8}});
    ASSERT_EQ(s.num_variables(), 3u);
    // v, alpha v: alpha is a non-square, so each nonzero word has one symbol in each orbit
    EXPECT_EQ(s, parse_polynomial("x^2 + 8yz", {"x", "y", "z"}));
}

TEST(Substitute, Examples) {
    const CycMatrix plain = macwilliams_matrix(2, false);
    EXPECT_EQ(substitute(xy("x^3 + y^3"), plain) * Cyclotomic(make_rational(1, 2)), xy("x^3 + 3xy^2"));
    EXPECT_EQ(substitute(xy("x^2 + y^2"), macwilliams_matrix(2)), xy("x^2 + y^2"));
    const auto p = xy("x^5 - 3x^2y^3 + 7y^5");
    EXPECT_EQ(substitute(p, CycMatrix::identity(2)), p);
    EXPECT_THROW(substitute(p, CycMatrix::identity(3)), ParseError);
    // x^2 - y^2 under the normalized q = 2 matrix becomes 2xy
    EXPECT_EQ(substitute(xy("x^2 - y^2"), macwilliams_matrix(2)), xy("2xy"));
}

TEST(Substitute, FastPathsAgreeWithGeneric) {
    std::mt19937 rng(99);
    const Cyclotomic i = root_of_unity(4, 1), w = root_of_unity(3, 1);
    const std::vector<std::string> v3 = {"x", "y", "z"};
    const std::vector<CycMatrix> mats = {
        CycMatrix::from_rows({{0, 1, 0}, {i, 0, 0}, {0, 0, w}}),                  // monomial
        CycMatrix::from_rows({{1, 1, 1}, {1, w, w * w}, {1, w * w, w}}).scaled(sqrt_nat(3).inverse()),  // scaled roots
        CycMatrix::from_rows({{1, 2, 0}, {make_rational(1, 3), -1, i}, {0, w, 5}}),  // general
    };
    for (int trial = 0; trial < 10; ++trial) {
        WeightPolynomial p(v3);
        for (int t = 0; t < 6; ++t) {
            const std::uint16_t a = static_cast<std::uint16_t>(rng() % 5), b = static_cast<std::uint16_t>(rng() % (5 - a));
            p.add_term({a, b, static_cast<std::uint16_t>(4 - a - b)}, static_cast<long>(rng() % 9) - 4);
        }
        for (const auto& M : mats) EXPECT_EQ(substitute(p, M), detail::substitute_generic(p, M)) << p.to_string();
    }
}

TEST(MacWilliams, Examples) {
    EXPECT_EQ(macwilliams_dual(xy("x^3 + y^3"), 2, 2), xy("x^3 + 3xy^2"));
    for (int N = 1; N <= 6; ++N) EXPECT_EQ(macwilliams_dual(xy("x").pow(N), 2, 1), (xy("x") + xy("y")).pow(N));
    EXPECT_EQ(macwilliams_dual(hwe(h8()), 2, 16), hwe(h8()));
    EXPECT_THROW(macwilliams_dual(parse_polynomial("x", {"x"}), 2, 1), ParseError);
}

TEST(MacWilliams, RandomBinaryCodes) {
    std::mt19937 rng(2024);
    const FormRing r2 = preset("2_I");
    for (int trial = 0; trial < 200; ++trial) {
        const int N = 1 + static_cast<int>(rng() % 10);
        const int k = static_cast<int>(rng() % (N + 1));
        std::vector<Word> gens(static_cast<std::size_t>(k), Word(static_cast<std::size_t>(N)));
        for (auto& g : gens)
            for (auto& x : g) x = static_cast<int>(rng() % 2);
        const Code c = make_code(r2, N, gens);
        const Code d = dual_code(c);
        EXPECT_EQ(macwilliams_dual(hwe(c), 2, static_cast<std::int64_t>(c.size())), brute_hwe(d.codewords(), N)) << trial;
    }
}

TEST(MacWilliams, TernaryAndQuaternary) {
    // the same identity over F3 and F4 (Hermitian duality gives the same sizes)
    for (const char* name : {"3", "4_H"}) {
        const FormRing rho = preset(name);
        const Code c = make_code(rho, 4, {{1, 1, 1, 0}, {0, 1, 2, 1}});
        const Code d = dual_code(c);
        EXPECT_EQ(macwilliams_dual(hwe(c), rho.module.size(), static_cast<std::int64_t>(c.size())), hwe(d)) << name;
    }
}

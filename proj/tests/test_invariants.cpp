#include <gtest/gtest.h>

#include <fstream>

#include "sdc/invariants.hpp"
#include "sdc/presets.hpp"

using namespace sdc;

namespace {

const std::vector<std::string> XY = {"x", "y"};

WeightPolynomial xy(const std::string& s) { return parse_polynomial(s, XY); }

std::string golden(const std::string& name) {
    std::ifstream in(std::string(SDC_GOLDEN_DIR) + "/" + name);
    std::string line;
    std::getline(in, line);
    return line;
}

// F9 ids: 0, 1, a, a^2, ..., a^7; alpha = a^5 (id 6), -alpha = a (id 2), -1 = a^4 (id 5)
const std::vector<std::vector<int>> F9_ORBITS{{0}, {1, 3, 5, 7}, {2, 4, 6, 8}};

std::vector<Code> f9_codes() {
    const FormRing rho = preset("9_H");
    return {
        make_code(rho, 2, {{1, 6}}),
        make_code(rho, 4, {{1, 1, 1, 0}, {0, 1, 5, 1}}),
        make_code(rho, 6, {{1, 1, 1, 1, 1, 1}, {1, 1, 1, 0, 0, 0}, {0, 6, 2, 0, 1, 5}}),
    };
}

}  // namespace

TEST(Invariants, PolynomialSpan) {
    PolynomialSpan s;
    EXPECT_TRUE(s.add(xy("x^2 + y^2")));
    EXPECT_TRUE(s.add(xy("x^2 - y^2")));
    EXPECT_FALSE(s.add(xy("3x^2")));
    EXPECT_TRUE(s.contains(xy("y^2")));
    EXPECT_FALSE(s.contains(xy("xy")));
    EXPECT_EQ(s.rank(), 2u);
    EXPECT_EQ(monomials(3, 2).size(), 6u);
    EXPECT_EQ(monomials(2, 0).size(), 1u);
}

TEST(Invariants, BasisExamples) {
    const MatrixGroup c2 = clifford_weil_group(preset("2_II"));
    const auto b8 = invariant_basis(c2, 8, XY);
    ASSERT_EQ(b8.size(), 1u);
    EXPECT_EQ(b8[0], xy("x^8 + 14x^4y^4 + y^8"));
    const MatrixGroup c1 = genus_group(preset("2_I"), 1);
    const auto b4 = invariant_basis(c1, 4, XY);
    ASSERT_EQ(b4.size(), 1u);
    EXPECT_EQ(b4[0], xy("x^2 + y^2").pow(2));
    const auto b0 = invariant_basis(c1, 0, XY);
    ASSERT_EQ(b0.size(), 1u);
    EXPECT_EQ(b0[0], WeightPolynomial::constant(XY, 1));
    InvariantOptions tiny;
    tiny.monomial_budget = 5;
    EXPECT_THROW(invariant_basis(c2, 8, XY, tiny), BudgetExceeded);
}

TEST(Invariants, BasisSizeIsMolienCoefficient) {
    const auto gens9 = clifford_weil_generators(preset("9_H"));
    struct Case {
        std::string name;
        MatrixGroup group;
        int max_degree;
    };
    std::vector<Case> cases;
    cases.push_back({"C1(2_I)", genus_group(preset("2_I"), 1), 10});
    cases.push_back({"C1(2_II)", clifford_weil_group(preset("2_II")), 10});
    cases.push_back({"collapsed 9_H", group_closure(collapse_group(gens9, F9_ORBITS)), 10});
    cases.push_back({"C2(2_I)", genus_group(preset("2_I"), 2), 10});
    cases.push_back({"C(4_II_Z)", clifford_weil_group(preset("4_II_Z")), 10});
    cases.push_back({"C(3)", clifford_weil_group(preset("3")), 10});
    cases.push_back({"C(9_H)", clifford_weil_group(preset("9_H")), 4});
    for (const auto& c : cases) {
        const auto coeffs = molien_coeffs(c.group, static_cast<std::size_t>(c.max_degree));
        for (int d = 0; d <= c.max_degree; ++d) {
            const auto basis = invariant_basis(c.group, d);
            EXPECT_EQ(Rational(static_cast<long>(basis.size())), coeffs[static_cast<std::size_t>(d)]) << c.name << " d=" << d;
            for (const auto& p : basis) EXPECT_TRUE(is_invariant(p, c.group.generator_matrices())) << c.name;
        }
    }
}

TEST(Invariants, IsInvariant) {
    const Code g24 = extended_qr_code(23);
    EXPECT_TRUE(is_invariant(hwe(g24), clifford_weil_group(preset("2_II")).generator_matrices()));
    const CycMatrix H = CycMatrix::from_rows({{1, 1}, {1, -1}}).scaled(sqrt_nat(2).inverse());
    EXPECT_FALSE(is_invariant(xy("x^2 - y^2"), {H}));
    EXPECT_TRUE(is_invariant(xy("x^3 + 5y"), {}));
    EXPECT_THROW(is_invariant(xy("x"), {CycMatrix::identity(3)}), ParseError);
}

TEST(Invariants, GleasonDecompose) {
    const auto I = gleason_basis("I"), II = gleason_basis("II"), III = gleason_basis("III"), IV = gleason_basis("IV");
    const WeightPolynomial h8 = xy("x^8 + 14x^4y^4 + y^8");
    EXPECT_EQ(gleason_decompose(h8, I).to_string(), "f^4 - 4g");
    EXPECT_EQ(gleason_decompose(xy("x^2 + y^2"), I).to_string(), "f");
    const WeightPolynomial g24 = xy("x^24 + 759x^16y^8 + 2576x^12y^12 + 759x^8y^16 + y^24");
    EXPECT_EQ(gleason_decompose(g24, II).to_string(), "f^3 - 42g");
    const WeightPolynomial golay3 = xy("x^12 + 264x^6y^6 + 440x^3y^9 + 24y^12");
    EXPECT_EQ(gleason_decompose(golay3, III).to_string(), golden("gleason_ternary_golay.txt"));
    const WeightPolynomial hexa = xy("x^6 + 45x^2y^4 + 18y^6");
    EXPECT_EQ(gleason_decompose(hexa, IV).to_string(), golden("gleason_hexacode.txt"));
    EXPECT_EQ(gleason_decompose(xy("x^4 + 8xy^3"), III).to_string(), "f");
    // round trip
    for (const auto& [W, B] : std::vector<std::pair<WeightPolynomial, GleasonBasis>>{{h8, I}, {g24, II}, {golay3, III}, {hexa, IV}})
        EXPECT_EQ(gleason_evaluate(gleason_decompose(W, B), B), W);
    EXPECT_THROW(gleason_decompose(xy("x^8 + y^8"), II), NoRepresentation);
    EXPECT_THROW(gleason_decompose(xy("x^3 + y"), I), ParseError);
    EXPECT_THROW(gleason_basis("V"), ParseError);
}

TEST(Invariants, F9HammingRing) {
    const auto gens = collapse_group(clifford_weil_generators(preset("9_H")), F9_ORBITS);
    std::vector<CycMatrix> mats;
    for (const auto& g : gens) mats.push_back(g.matrix);
    const auto codes = f9_codes();
    std::vector<WeightPolynomial> orbit, ham;
    for (const auto& c : codes) {
        orbit.push_back(symmetrize(cwe(c), F9_ORBITS));
        ham.push_back(hwe(c));
    }
    EXPECT_EQ(ham[0], xy("x^2 + 8y^2"));
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 2; ++b)
            for (int e = 0; e <= 1; ++e) {
                const WeightPolynomial p = orbit[0].pow(a) * orbit[1].pow(b) * orbit[2].pow(e);
                EXPECT_TRUE(is_invariant(p, mats)) << a << b << e;
            }
    // degree 12 of C[f2, f4] + f6 C[f2, f4] is a direct sum of dimension 4 + 2 containing f6^2;
    // f6^2 itself needs the f6 part
    PolynomialSpan even, ring;
    for (int b = 0; b <= 3; ++b) {
        const WeightPolynomial p = ham[0].pow(6 - 2 * b) * ham[1].pow(b);
        EXPECT_TRUE(even.add(p));
        EXPECT_TRUE(ring.add(p));
    }
    EXPECT_TRUE(ring.add(ham[2] * ham[0].pow(3)));
    EXPECT_TRUE(ring.add(ham[2] * ham[0] * ham[1]));
    EXPECT_EQ(ring.rank(), 6u);
    EXPECT_TRUE(ring.contains(ham[2].pow(2)));
    EXPECT_FALSE(even.contains(ham[2].pow(2)));
}

TEST(Invariants, VerifySpanGenusOne) {
    const FormRing rho = preset("2_I");
    // Molien coefficients of 1/((1-t^2)(1-t^8)) at N = 2, 4, ..., 12
    const std::vector<long> expected = {1, 1, 1, 2, 2, 2};
    for (int N = 2; N <= 12; N += 2) {
        const SpanReport r = verify_span(rho, N, 1);
        EXPECT_TRUE(r.pass()) << N;
        EXPECT_EQ(r.rank, static_cast<std::size_t>(expected[static_cast<std::size_t>(N / 2 - 1)])) << N;
        if (N == 12) {
            ASSERT_TRUE(r.classes.has_value());
            EXPECT_EQ(*r.classes, 3u);
            EXPECT_EQ(r.codes, 75735u);
        }
    }
}

TEST(Invariants, VerifySpanGenusTwo) {
    const SpanReport r = verify_span(preset("2_I"), 12, 2);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.rank, 3u);
    EXPECT_EQ(r.group_order, 2304u);
    std::vector<std::string> w = r.witnesses;
    std::sort(w.begin(), w.end());
    EXPECT_EQ(w, (std::vector<std::string>{"d12+", "h8 i2^2", "i2^6"}));
}

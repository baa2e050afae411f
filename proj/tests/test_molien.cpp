#include <gtest/gtest.h>

#include <chrono>

#include "sdc/molien.hpp"
#include "sdc/presets.hpp"

using namespace sdc;

namespace {

RationalFunction products(std::vector<long> num, const std::vector<std::size_t>& ks) {
    std::vector<Rational> c;
    for (long x : num) c.emplace_back(x);
    return RationalFunction::over_products(UPoly(c), ks);
}

std::vector<Rational> ints(const std::vector<long>& v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

MatrixGroup collapsed_f9() {
    const auto gens = clifford_weil_generators(preset("9_H"));
    return group_closure(collapse_group(gens, {{0}, {1, 3, 5, 7}, {2, 4, 6, 8}}));
}

}  // namespace

TEST(Univariate, Basics) {
    const UPoly t = UPoly::monomial(1);
    EXPECT_EQ(UPoly::cyclotomic(1), t - UPoly(1));
    EXPECT_EQ(UPoly::cyclotomic(6), t * t - t + UPoly(1));
    EXPECT_EQ((UPoly(1) - t.pow(6)).exact_div(UPoly(1) - t), UPoly(ints({1, 1, 1, 1, 1, 1})));
    EXPECT_THROW((void)UPoly::monomial(3).exact_div(UPoly::monomial(1) + UPoly(1)), Error);
    EXPECT_EQ(UPoly(ints({1, 0, 3, -1})).to_string(), "1 + 3t^2 - t^3");
    // 1/((1-t)(1+t)) = 1/(1-t^2)
    EXPECT_EQ(RationalFunction(UPoly(1), UPoly(1) - t.pow(2)), RationalFunction(UPoly(1) - t, (UPoly(1) - t).pow(2) * (UPoly(1) + t)));
    EXPECT_EQ(products({1}, {2, 8}).series(8), ints({1, 0, 1, 0, 1, 0, 1, 0, 2}));
    EXPECT_EQ(products({1}, {2, 8}).to_string(), "1/((1 - t^2)(1 - t^8))");
}

TEST(Molien, TruncatedExamples) {
    const auto c1 = molien_coeffs(genus_group(preset("2_I"), 1), 16);
    EXPECT_EQ(c1, ints({1, 0, 1, 0, 1, 0, 1, 0, 2, 0, 2, 0, 2, 0, 2, 0, 3}));
    const MatrixGroup trivial = group_closure(std::vector<CycMatrix>{CycMatrix::identity(2)});
    EXPECT_EQ(molien_coeffs(trivial, 3), ints({1, 2, 3, 4}));
    EXPECT_EQ(molien_coeffs(clifford_weil_group(preset("4_II_Z")), 8)[8], 4);
    // monotone in the genus; first difference at degree 12
    const auto c2 = molien_coeffs(genus_group(preset("2_I"), 2), 16);
    for (std::size_t d = 0; d <= 16; ++d) EXPECT_LE(c1[d], c2[d]) << d;
    for (std::size_t d = 0; d < 12; ++d) EXPECT_EQ(c1[d], c2[d]) << d;
    EXPECT_EQ(c1[12], 2);
    EXPECT_EQ(c2[12], 3);
}

TEST(Molien, ExactSeries) {
    EXPECT_EQ(molien_series(genus_group(preset("2_I"), 1)), products({1}, {2, 8}));
    EXPECT_EQ(molien_series(clifford_weil_group(preset("2_II"))), products({1}, {8, 24}));
    std::vector<long> n18(19, 0);
    n18[0] = n18[18] = 1;
    EXPECT_EQ(molien_series(genus_group(preset("2_I"), 2)), products(n18, {2, 8, 12, 24}));
    std::vector<long> b1(41, 0);
    b1[0] = 1, b1[8] = 1, b1[16] = 2, b1[24] = 2, b1[32] = 1, b1[40] = 1;
    EXPECT_EQ(molien_series(clifford_weil_group(preset("4_II_Z"))), products(b1, {8, 8, 8, 24}));
    // collapsed F9 group: invariants in degrees 2, 4, 6, and 2 * 4 * 6 = 48 = |G|
    const MatrixGroup c48 = collapsed_f9();
    const RationalFunction m48 = molien_series(c48);
    EXPECT_EQ(m48, products({1}, {2, 4, 6}));
    EXPECT_EQ(m48.pole_coefficient_at_one(3), make_rational(1, 48));
    // a denominator (1-t^2)(1-t^4)(1-t^5) would need |G| = 40 and odd-degree invariants
    const RationalFunction with_five = products({1}, {2, 4, 5});
    EXPECT_NE(m48, with_five);
    EXPECT_EQ(with_five.pole_coefficient_at_one(3), make_rational(1, 40));
    EXPECT_EQ(molien_coeffs(c48, 12), ints({1, 0, 1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 7}));
    const MatrixGroup trivial1 = group_closure(std::vector<CycMatrix>{CycMatrix::identity(1)});
    EXPECT_EQ(molien_series(trivial1), products({1}, {1}));
}

TEST(Molien, SeriesMatchesCoefficients) {
    for (const auto& name : preset_names()) {
        if (name == "Z6_demo") continue;
        const MatrixGroup G = clifford_weil_group(preset(name));
        const auto classes = trace_classes(G);
        EXPECT_EQ(molien_series(classes, G.order()).series(30), molien_coeffs(classes, G.order(), 30)) << name;
    }
}

TEST(Molien, F9Numerator) {
    const RationalFunction m = molien_series(clifford_weil_group(preset("9_H")));
    UPoly d(1);
    for (std::size_t k : {2, 2, 4, 4, 6, 6, 6, 8, 12}) d = d * UPoly::one_minus_t_pow(k);
    const UPoly num = m.numerator_over(d);
    EXPECT_EQ(num[0], 1);
    EXPECT_EQ(num[2], 0);
    EXPECT_EQ(num[4], 3);
    EXPECT_EQ(num[6], 24);
    EXPECT_EQ(num[8], 74);
    EXPECT_EQ(num[10], 156);
    EXPECT_EQ(num[20], 989);
    EXPECT_EQ(num.degree(), 38);
    EXPECT_EQ(num.eval(1), 6912);
    EXPECT_EQ(m.pole_coefficient_at_one(9), make_rational(1, 192));
}

TEST(Molien, ParallelClassesAgree) {
    const MatrixGroup G = genus_group(preset("2_I"), 2);
    MolienOptions par;
    par.jobs = 4;
    EXPECT_EQ(molien_coeffs(G, 24), molien_coeffs(G, 24, par));
}

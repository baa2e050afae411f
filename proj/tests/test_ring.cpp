#include <gtest/gtest.h>

#include "sdc/genus.hpp"
#include "sdc/presets.hpp"

using namespace sdc;

namespace {

std::string axiom_of(const FormRing& rho) {
    try {
        validate(rho);
    } catch (const ValidationError& e) {
        return e.axiom();
    }
    return "";
}

}  // namespace

TEST(Ring, PresetsValidate) {
    for (const auto& name : preset_names()) {
        const FormRing rho = preset(name);
        EXPECT_EQ(axiom_of(rho), "") << name;
        EXPECT_EQ(rho.label, name);
    }
    EXPECT_THROW(preset("5_X"), ParseError);
}

TEST(Ring, F9ElementOrder) {
    const FiniteField F = field_f9();
    const FiniteRing& R = F.ring;
    ASSERT_EQ(R.size(), 9);
    const int a = 2;
    EXPECT_EQ(R.labels[static_cast<std::size_t>(a)], "a");
    // a^2 = a + 1 and a^4 = -1; alpha = -a satisfies alpha^2 + alpha = 1 and alpha + alpha^3 = -1
    const int minus_one = R.neg[static_cast<std::size_t>(R.one)];
    EXPECT_EQ(R.times(a, a), R.plus(a, R.one));
    EXPECT_EQ(F.power(a, 4), minus_one);
    const int alpha = R.neg[static_cast<std::size_t>(a)];
    EXPECT_EQ(alpha, F.power(a, 5));
    EXPECT_EQ(R.plus(R.times(alpha, alpha), alpha), R.one);
    EXPECT_EQ(R.plus(alpha, F.power(alpha, 3)), minus_one);
    for (int k = 0; k < 8; ++k) EXPECT_EQ(F.power(a, k), k + 1);
    // conjugation is v -> v^3 and fixes exactly F3
    int fixed = 0;
    for (int v = 0; v < 9; ++v) fixed += F.conj(v) == v;
    EXPECT_EQ(fixed, 3);
}

TEST(Ring, PhiValues) {
    EXPECT_EQ(preset("2_I").phi_value(0, 1), QZ(make_rational(1, 2)));
    EXPECT_EQ(preset("2_II").phi_value(0, 1), QZ(make_rational(1, 4)));
    // 9/8 mod 1
    EXPECT_EQ(preset("4_II_Z").phi_value(0, 3), QZ(make_rational(1, 8)));
    EXPECT_EQ(preset("Z6_demo").phi_value(0, 5), QZ(make_rational(1, 6)));
}

TEST(Ring, F9HermitianClosedForm) {
    // Tr(a v vbar)/3 = (a + a^3) v^4 / 3 for every a, v
    const FiniteField F = field_f9();
    const FiniteRing& R = F.ring;
    for (int a = 0; a < 9; ++a)
        for (int v = 0; v < 9; ++v) {
            const int lhs = F.trace(R.times(a, R.times(v, F.conj(v))));
            const int c = R.times(R.plus(a, F.power(a, 3)), F.power(v, 4));
            ASSERT_EQ(F.coords[static_cast<std::size_t>(c)][1], 0);
            EXPECT_EQ(lhs, F.coords[static_cast<std::size_t>(c)][0]) << a << " " << v;
        }
    // the stored generator is phi(alpha), which is -v^4/3
    const FormRing rho = preset("9_H");
    for (int v = 1; v < 9; ++v) {
        const Rational expect = (v % 2 == 1) ? make_rational(2, 3) : make_rational(1, 3);
        EXPECT_EQ(rho.phi_value(0, v), QZ(expect)) << v;
    }
}

TEST(Ring, Z6Idempotents) {
    FormRing rho = preset("Z6_demo");
    ASSERT_EQ(rho.idempotents.size(), 2u);
    for (const auto& e : rho.idempotents) {
        EXPECT_EQ(rho.ring->times(e.iota, e.iota), e.iota);
        EXPECT_EQ(rho.ring->times(e.left, e.right), e.iota);
    }
    rho.idempotents = {{2, 2, 1}};
    EXPECT_EQ(axiom_of(rho), "idempotency");
    rho.idempotents = {{3, 1, 1}};
    EXPECT_EQ(axiom_of(rho), "factorization");
}

TEST(Ring, DistinctDiagnostics) {
    {
        FormRing rho = preset("3");
        // 1*1 = 2 breaks the identity before anything else
        rho.ring->mul[1][1] = 2;
        EXPECT_EQ(axiom_of(rho), "mul-identity");
    }
    {
        FormRing rho = preset("Z6_demo");
        // swap two products to break associativity but keep the identity row
        rho.ring->mul[2][3] = 1;
        rho.ring->mul[3][2] = 1;
        const std::string ax = axiom_of(rho);
        EXPECT_TRUE(ax == "mul-associativity" || ax == "distributivity") << ax;
    }
    {
        FormRing rho = preset("3");
        for (auto& row : rho.beta)
            for (auto& x : row) x = 0;
        EXPECT_EQ(axiom_of(rho), "beta-singular");
    }
    {
        FormRing rho = preset("3");
        rho.beta[1][1] = 2;
        EXPECT_EQ(axiom_of(rho), "beta-biadditivity");
    }
    {
        FormRing rho = preset("2_I");
        rho.phi[0].table = {0, 0};
        EXPECT_EQ(axiom_of(rho), "phi-specialization");
    }
    {
        FormRing rho = preset("4_II_Z");
        rho.phi[0].table[3] = 3;
        EXPECT_EQ(axiom_of(rho), "phi-polarization");
    }
}

TEST(Genus, LiftOfOneKeepsData) {
    const FormRing rho = preset("2_I");
    const FormRing lift = genus_lift(rho, 1);
    EXPECT_EQ(lift.module.size(), 2);
    EXPECT_EQ(lift.beta, rho.beta);
    ASSERT_EQ(lift.phi.size(), 1u);
    EXPECT_EQ(lift.phi[0].table, rho.phi[0].table);
    EXPECT_EQ(lift.ring->size(), 2);
}

TEST(Genus, TwoForBinary) {
    const FormRing lift = genus_lift(preset("2_I"), 2);
    ASSERT_EQ(lift.module.size(), 4);
    const int x10 = lift.module.find("(1,0)");
    ASSERT_GE(x10, 0);
    EXPECT_EQ(lift.beta_value(x10, x10), QZ(make_rational(1, 2)));
    EXPECT_EQ(lift.ring->size(), 16);
    EXPECT_EQ(lift.ring->units.size(), 6u);
}

TEST(Genus, CrossTermForDoublyEven) {
    const FormRing lift = genus_lift(preset("2_II"), 2);
    const QuadraticMap* sum_map = nullptr;
    for (const auto& q : lift.phi)
        if (q.label == "v^2/4 @ (1,1)") sum_map = &q;
    ASSERT_NE(sum_map, nullptr);
    // polarization of (v1+v2)^2/4 computed over the integers, reduced mod 1
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            const int x1 = x >> 1, x2 = x & 1, y1 = y >> 1, y2 = y & 1;
            const int s1 = (x1 + y1) % 2, s2 = (x2 + y2) % 2;
            auto val = [](int a, int b) { return make_rational((a + b) * (a + b), 4); };
            const QZ expect(val(s1, s2) - val(x1, x2) - val(y1, y2));
            const int xy = lift.module.plus(x, y);
            const QZ got = QZ(make_rational(sum_map->table[static_cast<std::size_t>(xy)] -
                                                sum_map->table[static_cast<std::size_t>(x)] -
                                                sum_map->table[static_cast<std::size_t>(y)],
                                            lift.level));
            EXPECT_EQ(got, expect);
            // diagonal part (x1 y1 + x2 y2)/2 plus the cross term (x1 y2 + x2 y1)/2
            EXPECT_EQ(got, QZ(make_rational(x1 * y1 + x2 * y2 + x1 * y2 + x2 * y1, 2)));
        }
}

TEST(Genus, LiftsStayValid) {
    for (const auto& name : preset_names()) {
        const FormRing rho = preset(name);
        for (int m = 1; m <= 2; ++m) {
            FormRing lift;
            ASSERT_NO_THROW(lift = genus_lift(rho, m)) << name << " " << m;
            EXPECT_EQ(axiom_of(lift), "") << name;
            EXPECT_EQ(lift.module.size(), m == 1 ? rho.module.size() : rho.module.size() * rho.module.size());
        }
    }
}

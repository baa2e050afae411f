#include <gtest/gtest.h>

#include <random>
#include <unordered_set>

#include "sdc/cyclotomic.hpp"

using namespace sdc;

namespace {

Cyclotomic random_cyclotomic(std::mt19937& rng) {
    static const std::int64_t conductors[] = {1, 3, 4, 5, 8, 12};
    std::uniform_int_distribution<int> pick(0, 5), coef(-3, 3), den(1, 3);
    const std::int64_t L = conductors[pick(rng)];
    std::vector<Rational> c(static_cast<std::size_t>(L));
    for (auto& x : c) x = make_rational(coef(rng), den(rng));
    return Cyclotomic::from_powers(L, c);
}

}  // namespace

TEST(Cyclotomic, RootsOfUnity) {
    const Cyclotomic i = root_of_unity(4, 1);
    EXPECT_EQ(i * i, Cyclotomic(-1));
    EXPECT_EQ(root_of_unity(1, 0), Cyclotomic(1));
    EXPECT_EQ(root_of_unity(3, 1) + root_of_unity(3, 2), Cyclotomic(-1));
    EXPECT_EQ(root_of_unity(2, 1), Cyclotomic(-1));
    EXPECT_EQ(root_of_unity(12, 4), root_of_unity(3, 1));
    EXPECT_EQ(root_of_unity(8, 2), i);
}

TEST(Cyclotomic, ConductorIsMinimal) {
    // zeta_6 = -zeta_3^2 lives in Q(zeta_3)
    const Cyclotomic z6 = root_of_unity(6, 1);
    EXPECT_EQ(z6.conductor(), 3);
    EXPECT_EQ(z6, -root_of_unity(3, 2));
    // i + zeta_3 needs conductor 12
    EXPECT_EQ((root_of_unity(4, 1) + root_of_unity(3, 1)).conductor(), 12);
    // omega * conj(omega) drops to Q
    const Cyclotomic w = root_of_unity(3, 1);
    EXPECT_TRUE((w * w.conj()).is_rational());
}

TEST(Cyclotomic, SqrtNat) {
    EXPECT_EQ(sqrt_nat(9), Cyclotomic(3));
    EXPECT_EQ(sqrt_nat(1), Cyclotomic(1));
    const Cyclotomic s2 = sqrt_nat(2);
    EXPECT_EQ(s2, root_of_unity(8, 1) + root_of_unity(8, -1));
    EXPECT_EQ(s2 * s2, Cyclotomic(2));
    for (std::int64_t m = 1; m <= 30; ++m) {
        for (std::int64_t n = 1; n <= 30; ++n) {
            const Cyclotomic p = sqrt_nat(m) * sqrt_nat(n);
            ASSERT_EQ(p * p, Cyclotomic(static_cast<long>(m * n))) << m << " " << n;
        }
        const auto z = sqrt_nat(m).to_complex();
        EXPECT_NEAR(z.real(), std::sqrt(static_cast<double>(m)), 1e-9) << m;
        EXPECT_NEAR(z.imag(), 0.0, 1e-9) << m;
    }
}

TEST(Cyclotomic, Arithmetic) {
    const Cyclotomic s = root_of_unity(8, 1) + root_of_unity(8, 7);
    EXPECT_EQ(s * s, Cyclotomic(2));
    EXPECT_EQ(Cyclotomic(2).inverse(), Cyclotomic(make_rational(1, 2)));
    const Cyclotomic w = root_of_unity(3, 1);
    EXPECT_EQ(w.conj(), w * w);
    EXPECT_THROW(Cyclotomic(0).inverse(), DivisionByZero);
    EXPECT_EQ(s.inverse() * s, Cyclotomic(1));
}

TEST(Cyclotomic, FieldAxiomsOnRandomElements) {
    std::mt19937 rng(7);
    for (int iter = 0; iter < 200; ++iter) {
        const Cyclotomic a = random_cyclotomic(rng), b = random_cyclotomic(rng), c = random_cyclotomic(rng);
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
        if (!a.is_zero()) {
            ASSERT_EQ(a * a.inverse(), Cyclotomic(1)) << a.to_string();
        }
        ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
        const auto za = a.to_complex(), zb = b.to_complex(), zab = (a * b).to_complex();
        ASSERT_NEAR(std::abs(za * zb - zab), 0.0, 1e-9);
    }
}

TEST(Cyclotomic, EmbedThenReduceIsIdentity) {
    std::mt19937 rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        const Cyclotomic a = random_cyclotomic(rng);
        for (std::int64_t k : {2, 3, 5}) {
            const std::int64_t L = a.conductor() * k;
            ASSERT_EQ(Cyclotomic::from_powers(L, [&] {
                          // re-express the lifted power-basis vector as raw powers of zeta_L
                          return a.lifted(L);
                      }()),
                      a);
        }
    }
}

TEST(Cyclotomic, HashAgreesWithEquality) {
    std::mt19937 rng(3);
    // small pool so that products collide often
    std::vector<Cyclotomic> pool;
    for (int k = 0; k < 24; ++k) pool.push_back(root_of_unity(24, k));
    pool.push_back(sqrt_nat(2));
    pool.push_back(sqrt_nat(3));
    pool.push_back(Cyclotomic(make_rational(1, 2)));
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::vector<Cyclotomic> values;
    std::unordered_set<Cyclotomic> set;
    for (int i = 0; i < 10000; ++i) {
        Cyclotomic v = pool[pick(rng)] * pool[pick(rng)] * pool[pick(rng)];
        set.insert(v);
        values.push_back(std::move(v));
    }
    // count equality classes by pairwise comparison against representatives
    std::vector<Cyclotomic> reps;
    for (const auto& v : values) {
        bool found = false;
        for (const auto& r : reps)
            if (r == v) {
                ASSERT_EQ(r.hash(), v.hash());
                found = true;
                break;
            }
        if (!found) reps.push_back(v);
    }
    EXPECT_EQ(set.size(), reps.size());
}

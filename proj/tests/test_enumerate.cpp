#include <gtest/gtest.h>

#include <set>

#include "sdc/enumerate.hpp"

using namespace sdc;

namespace {

// number of self-dual binary codes of length N: prod_{i=1}^{N/2-1} (2^i + 1)
std::uint64_t binary_mass(int N) {
    std::uint64_t m = 1;
    for (int i = 1; i < N / 2; ++i) m *= (std::uint64_t{1} << i) + 1;
    return m;
}

// number of self-dual ternary codes of length N = 0 mod 4: 2 prod_{i=1}^{N/2-1} (3^i + 1)
std::uint64_t ternary_mass(int N) {
    std::uint64_t m = 2, p = 1;
    for (int i = 1; i < N / 2; ++i) {
        p *= 3;
        m *= p + 1;
    }
    return m;
}

// naive oracle: all subsets of V^N closed under the ring, self-dual and isotropic
std::size_t brute_force_count(const FormRing& rho, int N) {
    auto ptr = std::make_shared<const FormRing>(rho);
    const int n = rho.module.size();
    int total = 1;
    for (int i = 0; i < N; ++i) total *= n;
    auto word = [&](int idx) {
        Word w(static_cast<std::size_t>(N));
        for (int i = N - 1; i >= 0; --i, idx /= n) w[static_cast<std::size_t>(i)] = idx % n;
        return w;
    };
    std::set<std::vector<Packed>> seen;
    // every submodule of these small examples is generated by at most 3 words
    for (int a = 0; a < total; ++a)
        for (int b = a; b < total; ++b)
            for (int c = b; c < total; ++c) {
                Code x(ptr, N, {word(a), word(b), word(c)});
                if (std::uint64_t(x.size()) * x.size() != std::uint64_t(total)) continue;
                if (seen.count(x.packed())) continue;
                if (has_type(x, rho)) seen.insert(x.packed());
            }
    return seen.size();
}

}  // namespace

TEST(Enumerate, LengthTwo) {
    const auto codes = enumerate_type(preset("2_I"), 2);
    ASSERT_EQ(codes.size(), 1u);
    EXPECT_EQ(codes[0].size(), 2u);
    EXPECT_EQ(codes[0].codewords()[1], (Word{1, 1}));
}

TEST(Enumerate, BinaryMassFormula) {
    for (int N = 2; N <= 10; N += 2) EXPECT_EQ(enumerate_type(preset("2_I"), N).size(), binary_mass(N)) << N;
    EXPECT_TRUE(enumerate_type(preset("2_I"), 5).empty());
}

TEST(Enumerate, Binary8AllSelfDualAndDistinct) {
    const auto codes = enumerate_type(preset("2_I"), 8);
    ASSERT_EQ(codes.size(), 135u);
    std::set<std::vector<Packed>> distinct;
    for (const auto& c : codes) {
        EXPECT_TRUE(is_self_dual(c));
        distinct.insert(c.packed());
    }
    EXPECT_EQ(distinct.size(), 135u);
}

TEST(Enumerate, Binary12) {
    EXPECT_EQ(enumerate_type(preset("2_I"), 12).size(), 75735u);
}

TEST(Enumerate, TernaryMassFormula) {
    EXPECT_EQ(enumerate_type(preset("3"), 4).size(), ternary_mass(4));
    EXPECT_EQ(enumerate_type(preset("3"), 8).size(), ternary_mass(8));
    EXPECT_TRUE(enumerate_type(preset("3"), 6).empty());
}

TEST(Enumerate, DoublyEvenCounts) {
    // doubly-even self-dual codes of length 8: the 30 copies of h8
    EXPECT_EQ(enumerate_type(preset("2_II"), 8).size(), 30u);
    EXPECT_TRUE(enumerate_type(preset("2_II"), 4).empty());
}

TEST(Enumerate, MatchesBruteForce) {
    for (const char* name : {"4_H", "4_II_Z", "Z6_demo", "9_H"}) {
        const FormRing rho = preset(name);
        EnumerateOptions opt;
        opt.allow_large = true;
        for (int N : {1, 2}) {
            const auto codes = enumerate_type(rho, N, opt);
            EXPECT_EQ(codes.size(), brute_force_count(rho, N)) << name << " " << N;
            for (const auto& c : codes) EXPECT_TRUE(has_type(c, rho)) << name;
        }
    }
}

TEST(Enumerate, StructuredMatchesGeneric) {
    // square-zero local ring, a split ring, and self-dual Z4 codes without the Type II condition
    const std::vector<std::pair<FormRing, int>> cases = {
        {preset("4_II_Z"), 7}, {preset("Z6_demo"), 5}, {detail::cyclic_form_ring("4_I", 4, 4), 6}};
    EnumerateOptions plain;
    plain.allow_large = true;
    EnumerateOptions generic = plain;
    generic.generic_only = true;
    for (const auto& [rho, maxN] : cases)
        for (int N = 1; N <= maxN; ++N) {
            const auto a = enumerate_type(rho, N, plain);
            const auto b = enumerate_type(rho, N, generic);
            ASSERT_EQ(a.size(), b.size()) << rho.label << " " << N;
            for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].packed(), b[i].packed()) << rho.label << " " << N;
        }
}

TEST(Enumerate, QuaternaryTypeII) {
    EnumerateOptions opt;
    opt.allow_large = true;
    const FormRing rho = preset("4_II_Z");
    const auto codes = enumerate_type(rho, 8, opt);
    // residue-lift count from tests/oracles/z4_type2_count.py
    EXPECT_EQ(codes.size(), 5662u);
    std::set<std::vector<Packed>> distinct;
    for (const auto& c : codes) {
        EXPECT_EQ(c.size(), 256u);
        distinct.insert(c.packed());
    }
    EXPECT_EQ(distinct.size(), codes.size());
    for (std::size_t i = 0; i < codes.size(); i += 97) EXPECT_TRUE(has_type(codes[i], rho));
}

TEST(Enumerate, SplitRingIsProduct) {
    EnumerateOptions opt;
    opt.allow_large = true;
    // binary and ternary parts: 3 * 8 at N = 4
    EXPECT_EQ(enumerate_type(preset("Z6_demo"), 4, opt).size(), binary_mass(4) * ternary_mass(4));
}

TEST(Enumerate, Feasibility) {
    EXPECT_THROW(enumerate_type(preset("4_H"), 4), Infeasible);
    EXPECT_THROW(enumerate_type(preset("2_I"), 14), Infeasible);
}

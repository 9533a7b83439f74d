#include <random>

#include <gtest/gtest.h>

#include <fgl/errors.hpp>
#include <fgl/fgl.hpp>

using namespace fgl;

namespace
{

CoeffRingPtr ring(int p, std::optional<int> N, int d = 0, int D = 1)
{
    return CoeffRing::make(CoeffRingSpec{p, N, d, D});
}

Series x_of(const FormalGroupLaw &F, int cap)
{
    return series_variable(F.ring(), {"x"}, cap, 0);
}

CoeffElem u_poly(const CoeffRingPtr &R, const std::vector<std::pair<int, long>> &terms)
{
    CoeffElem c(R);
    for (const auto &[e, v] : terms) {
        c += pow(CoeffElem::u(R, 0), static_cast<unsigned long>(e)).scaled(v);
    }
    return c;
}

} // namespace

TEST(Fgl, MultiplicativeHasThreeTerms)
{
    const auto F = make_multiplicative(ring(2, 4), 8);
    EXPECT_EQ(F.series().size(), 3u);
    EXPECT_TRUE(F.is_polynomial());
    const auto x = x_of(F, 8);
    EXPECT_EQ(formal_sum(F, x, x - x), x);
    EXPECT_EQ(formal_sum(F, x, x), univariate(F.ring(), {0, 2, 1}, 8));
}

TEST(Fgl, MultiplicativeInverse)
{
    const auto F = make_multiplicative(ring(3, std::nullopt), 7);
    EXPECT_EQ(inverse_series(F), univariate(F.ring(), {0, -1, 1, -1, 1, -1, 1}, 7));
    const auto x = x_of(F, 7);
    EXPECT_TRUE(formal_sum(F, x, formal_inverse(F, x)).is_zero());
    EXPECT_TRUE(formal_inverse(F, x - x).is_zero());
}

TEST(Fgl, AdditiveModP)
{
    const auto F = make_additive(ring(3, 1), 6);
    EXPECT_EQ(inverse_series(F), univariate(F.ring(), {0, -1}, 6));
    EXPECT_TRUE(n_series(F, 3).series.is_zero());
}

TEST(Fgl, NSeries)
{
    const auto F = make_multiplicative(ring(2, std::nullopt), 10);
    EXPECT_EQ(n_series(F, 1).series, x_of(F, 10));
    EXPECT_TRUE(n_series(F, 0).series.is_zero());
    EXPECT_EQ(n_series(F, 4).series, univariate(F.ring(), {0, 4, 6, 4, 1}, 10));
    // [-1](x) = 1/(1+x) - 1
    EXPECT_EQ(n_series(F, -1).series, inverse_series(F));
}

TEST(Fgl, ArgumentsMustBeNilpotent)
{
    const auto F = make_multiplicative(ring(2, 4), 6);
    const auto one = series_constant(F.ring(), 1, {"x"}, 6);
    EXPECT_THROW(formal_sum(F, one, one), NonNilpotentArgument);
    EXPECT_THROW(formal_inverse(F, one), NonNilpotentArgument);
}

TEST(Fgl, AxiomsForConstructors)
{
    for (const auto &F : {make_multiplicative(ring(2, std::nullopt), 12), make_multiplicative(ring(3, 5), 12),
                          make_additive(ring(5, 2), 12), make_honda(ring(2, 1), 1, 12), make_honda(ring(2, 1), 2, 12),
                          make_honda(ring(3, 1), 1, 12), make_honda(ring(3, 1), 2, 12), make_honda(ring(2, 4), 1, 12),
                          make_lubin_tate_height2(ring(2, 4, 1, 3), 10)}) {
        const auto rep = check_axioms(F);
        EXPECT_TRUE(rep.passed()) << F.name();
    }
}

TEST(Fgl, AdditionAndCompositionOfNSeries)
{
    const auto F = make_honda(ring(3, 2), 1, 12);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> dist(0, 50);
    std::vector<std::pair<long, long>> pairs;
    for (int i = 0; i < 20; ++i) {
        pairs.emplace_back(dist(rng), dist(rng));
    }
    EXPECT_EQ(composition_mismatches(F, pairs), 0u);
    for (const auto &[a, b] : pairs) {
        EXPECT_EQ(formal_sum(F, n_series(F, a).series, n_series(F, b).series), n_series(F, a + b).series);
    }
}

// python3 tests/oracles/height_one.py
TEST(Fgl, HondaPSeriesOracle)
{
    struct Case {
        int p, n, T, N;
        std::vector<long> coeffs;
    };
    const std::vector<Case> cases{
        {2, 1, 12, 1, {0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0}}, {2, 2, 12, 1, {0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0}},
        {3, 1, 12, 1, {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0}}, {3, 2, 12, 1, {0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0}},
        {2, 1, 8, 3, {0, 2, 7, 2, 0, 2, 4, 4}},              {3, 1, 8, 2, {0, 3, 0, 1, 0, 0, 0, 6}},
    };
    for (const auto &c : cases) {
        const auto F = make_honda(ring(c.p, c.N), c.n, c.T);
        EXPECT_EQ(n_series(F, c.p).series, univariate(F.ring(), c.coeffs, c.T)) << c.p << " " << c.n << " " << c.N;
    }
}

TEST(Fgl, HondaNeedsRoomForThePSeries)
{
    EXPECT_THROW(make_honda(ring(2, 1), 2, 4), TruncationTooSmall);
    EXPECT_NO_THROW(make_honda(ring(2, 1), 2, 5));
}

// python3 tests/oracles/lubin_tate_p2_series.py (p=2, N=8, D=6, T=10)
TEST(Fgl, LubinTateTwoSeriesOracle)
{
    auto R = ring(2, 8, 1, 6);
    const auto F = make_lubin_tate_height2(R, 10);
    const std::vector<std::vector<std::pair<int, long>>> expected{
        {},
        {{0, 2}},
        {{1, 255}},
        {{2, 2}},
        {{3, 248}, {0, 249}},
        {{4, 26}, {1, 30}},
        {{5, 172}, {2, 145}},
        {{3, 246}, {0, 112}},
        {{4, 5}, {1, 64}},
        {{5, 230}, {2, 38}},
    };
    const auto two = n_series(F, 2).series;
    for (int k = 1; k < 10; ++k) {
        EXPECT_EQ(coeff_of(two, k), u_poly(R, expected[k])) << "x^" << k;
    }
    // the x^2 coefficient is -u, which is u only mod 2
    auto R1 = ring(2, 1, 1, 2);
    EXPECT_EQ(change_ring(coeff_of(two, 2), R1), CoeffElem::u(R1, 0));
}

TEST(Fgl, LubinTateReducesToHonda)
{
    const auto F = make_lubin_tate_height2(ring(2, 4, 1, 3), 10);
    auto Fp = ring(2, 1, 0, 1);
    const auto H = make_honda(Fp, 2, 10);
    EXPECT_EQ(change_ring(F.series(), Fp), H.series());
    const auto x = x_of(F, 10);
    EXPECT_EQ(formal_sum(F, x, x - x), x);
    EXPECT_EQ(coeff_of(n_series(F, 2).series, 1), CoeffElem(F.ring(), 2));
}

TEST(Fgl, ConstructorPreconditions)
{
    EXPECT_THROW(make_multiplicative(ring(2, 4, 1, 2), 6), InvalidSpec);
    EXPECT_THROW(make_lubin_tate_height2(ring(2, 4), 6), InvalidSpec);
    EXPECT_THROW(make_honda(ring(2, 1), 0, 6), InvalidSpec);
}

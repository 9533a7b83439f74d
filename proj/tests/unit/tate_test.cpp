#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fgl/errors.hpp>
#include <fgl/tate.hpp>

using namespace fgl;

namespace
{

long ipow(long b, int e)
{
    long r = 1;
    while (e-- > 0) {
        r *= b;
    }
    return r;
}

FormalGroupLaw multiplicative(int p, const AbelianPType &A)
{
    const auto spec = CoeffRingSpec::exact(p);
    return make_multiplicative(CoeffRing::make(spec), std::max(3, recommended_trunc(spec, 1, A)));
}

} // namespace

TEST(Tate, EulerClassFactors)
{
    for (const auto &A : {AbelianPType({2}), AbelianPType({1, 1}), AbelianPType({2, 1})}) {
        const auto F = multiplicative(2, A);
        const auto e = euler_class(F, A);
        EXPECT_EQ(e.factors.size(), static_cast<std::size_t>(ipow(2, A.order_exponent()) - 1));
        auto prod = e.ambient->one();
        for (const auto &f : e.factors) {
            prod *= f;
        }
        EXPECT_EQ(prod, e.product);
    }
}

TEST(Tate, LocalizingAtOneAndZero)
{
    const AbelianPType A({2});
    const auto e = euler_class(multiplicative(3, A), A);
    const auto one = localization_kernel(e.ambient->one());
    EXPECT_TRUE(one.eventual_kernel.empty());
    EXPECT_EQ(one.quotient_rank, e.ambient->rank());
    const auto zero = localization_kernel(e.ambient->zero());
    EXPECT_EQ(zero.quotient_rank, 0u);
    EXPECT_EQ(zero.eventual_kernel.size(), e.ambient->rank());
}

TEST(Tate, KernelStabilizesWithinRank)
{
    for (int p : {2, 3}) {
        for (int m = 1; m <= 3; ++m) {
            const AbelianPType A({m});
            const auto e = euler_class(multiplicative(p, A), A);
            const auto loc = localization_kernel(e.product);
            EXPECT_LE(loc.iterations, e.ambient->rank());
            EXPECT_TRUE(acts_invertibly(loc, e.product));
        }
    }
}

TEST(Tate, RationalLevelToTateIsAnIsomorphism)
{
    for (int p : {2, 3}) {
        for (int m = 1; m <= 3; ++m) {
            const AbelianPType A({m});
            const auto F = multiplicative(p, A);
            const auto rep = level_to_tate(F, A);
            const auto phi = static_cast<std::size_t>(ipow(p, m) - ipow(p, m - 1));
            EXPECT_EQ(rep.level_rank, phi);
            EXPECT_EQ(rep.tate_rank, phi);
            EXPECT_TRUE(rep.well_defined);
            EXPECT_TRUE(rep.bijective);
            for (const auto &f : factor_invertibility(F, A)) {
                EXPECT_TRUE(f.invertible);
            }
        }
    }
}

// python3 tests/oracles/height_one.py
TEST(Tate, EulerImageOracle)
{
    const std::vector<std::tuple<int, int, long>> cases{{2, 1, -2}, {2, 2, -4}, {2, 3, -8}, {3, 1, 3},
                                                        {3, 2, 9},  {3, 3, 27}, {5, 1, 5}};
    for (const auto &[p, m, value] : cases) {
        const AbelianPType A({m});
        const auto img = euler_image_in_level(multiplicative(p, A), A);
        EXPECT_EQ(img, img.algebra()->constant(CoeffElem(img.algebra()->ring(), value))) << p << "^" << m;
    }
}

TEST(Tate, ReportJson)
{
    const AbelianPType A({2});
    const auto j = to_json(tate_report(multiplicative(2, A), A));
    EXPECT_EQ(j["levelRank"], 2);
    EXPECT_EQ(j["tateRank"], 2);
    EXPECT_EQ(j["iso"], true);
    EXPECT_EQ(j["factorsInvertible"], true);
    EXPECT_EQ(j["eulerImageInLevel"], "-4");
}

TEST(Tate, TruncatedCoefficientsAreRejected)
{
    const AbelianPType A({1});
    const auto spec = CoeffRingSpec::truncated(2, 4);
    const auto F = make_multiplicative(CoeffRing::make(spec), 6);
    EXPECT_THROW(level_to_tate(F, A), ModeError);
    EXPECT_THROW(multiplication_matrix(euler_class(F, A).product), ModeError);
}

TEST(Tate, NonCyclicComparisonIsUnsupported)
{
    const AbelianPType A({1, 1});
    EXPECT_THROW(level_to_tate(multiplicative(2, A), A), UnsupportedGroupType);
}

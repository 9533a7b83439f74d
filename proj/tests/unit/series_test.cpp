#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fgl/errors.hpp>
#include <fgl/series.hpp>

using namespace fgl;

namespace
{

CoeffRingPtr Z()
{
    return CoeffRing::make(CoeffRingSpec::exact(2));
}

} // namespace

TEST(Series, ProductsDropTermsAtTheCap)
{
    const auto f = univariate(Z(), {0, 1, 1}, 4);
    const auto sq = f * f;
    EXPECT_EQ(sq, univariate(Z(), {0, 0, 1, 2}, 4));
    EXPECT_EQ(sq.degree(), 3);
    EXPECT_EQ(f.valuation(), 1);
}

TEST(Series, ZeroCoefficientsAreNotStored)
{
    auto R = CoeffRing::make(CoeffRingSpec::truncated(2, 2));
    const auto f = univariate(R, {0, 2, 4, 1}, 6);
    EXPECT_EQ(f.size(), 2u);
    EXPECT_TRUE((f - f).is_zero());
}

TEST(Series, SubstituteRequiresNilpotentArguments)
{
    auto R = Z();
    const auto f = univariate(R, {0, 1, 1}, 6);
    const auto one_plus_x = univariate(R, {1, 1}, 6);
    EXPECT_THROW(substitute(f, {one_plus_x}), NonNilpotentArgument);
    const auto x2 = univariate(R, {0, 0, 1}, 6);
    EXPECT_EQ(substitute(f, {x2}), univariate(R, {0, 0, 1, 0, 1}, 6));
}

TEST(Series, ComposeExpandsPolynomials)
{
    auto R = Z();
    const auto f = univariate(R, {0, 1, 1}, kNoTruncation);
    const auto arg = univariate(R, {1, 1}, 8);
    const auto unit = univariate(R, {1}, 8);
    const std::vector<Series> args{arg};
    // (1+x) + (1+x)^2
    EXPECT_EQ(compose(f, std::span<const Series>(args), unit), univariate(R, {2, 3, 1}, 8));
}

TEST(Series, InverseAndDerivative)
{
    auto R = CoeffRing::make(CoeffRingSpec::truncated(3, 3));
    const auto f = univariate(R, {1, 1}, 6);
    EXPECT_EQ(invert_series(f), univariate(R, {1, -1, 1, -1, 1, -1}, 6));
    EXPECT_EQ(derivative(univariate(R, {5, 1, 1, 1}, 6), 0), univariate(R, {1, 2, 3}, 6));
    EXPECT_THROW(invert_series(univariate(R, {3, 1}, 6)), NotAUnit);
}

TEST(Series, MultivariateCoefficientAccess)
{
    auto R = Z();
    const std::vector<std::string> xy{"x", "y"};
    const auto x = series_variable(R, xy, 5, 0);
    const auto y = series_variable(R, xy, 5, 1);
    const auto F = x + y + x * y;
    EXPECT_EQ(F.coefficient(Monomial{1, 1}), CoeffElem(R, 1));
    EXPECT_TRUE(F.coefficient(Monomial{2, 0}).is_zero());
    EXPECT_EQ(to_string(F), "y + x + x*y + O(5)");
}

TEST(Series, TextForPolynomials)
{
    auto R = Z();
    EXPECT_EQ(to_string(univariate(R, {-1, 3, -2}, kNoTruncation, "t")), "-1 + 3*t - 2*t^2");
}

TEST(Series, JsonRoundTrip)
{
    auto R = CoeffRing::make(CoeffRingSpec::truncated(2, 8, 1, 3));
    const std::vector<std::string> xs{"x"};
    auto f = series_variable(R, xs, 7, 0);
    f.add_term(Monomial{3}, CoeffElem::u(R, 0).scaled(5));
    const auto back = series_from_json(R, xs, 7, to_json(f));
    EXPECT_EQ(back, f);
}

TEST(Series, ChangeRing)
{
    auto fine = CoeffRing::make(CoeffRingSpec::truncated(2, 8));
    auto coarse = CoeffRing::make(CoeffRingSpec::truncated(2, 1));
    EXPECT_EQ(change_ring(univariate(fine, {0, 2, 1, 3}, 5), coarse), univariate(coarse, {0, 0, 1, 1}, 5));
}

TEST(Series, CapMustBePositive)
{
    EXPECT_THROW(series_zero(Z(), {"x"}, 0), TruncationTooSmall);
}

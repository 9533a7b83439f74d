#include <gtest/gtest.h>

#include <fgl/errors.hpp>
#include <fgl/grouprings.hpp>

using namespace fgl;

namespace
{

CoeffRingPtr Z(int p)
{
    return CoeffRing::make(CoeffRingSpec::exact(p));
}

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

FormalGroupLaw lubin_tate(int p, const AbelianPType &A)
{
    const auto spec = CoeffRingSpec::truncated(p, 4, 1, 3);
    return make_lubin_tate_height2(CoeffRing::make(spec), recommended_trunc(spec, 2, A));
}

} // namespace

TEST(AbelianPType, ParseAndSort)
{
    const auto A = AbelianPType::parse("1,2");
    EXPECT_EQ(A.exponents, (std::vector<int>{2, 1}));
    EXPECT_EQ(A.order_exponent(), 3);
    EXPECT_FALSE(A.is_cyclic());
    EXPECT_FALSE(A.is_elementary());
    EXPECT_TRUE(AbelianPType::parse("1,1").is_elementary());
    EXPECT_EQ(A.to_string(), "2,1");
    EXPECT_THROW(AbelianPType::parse("0"), UnsupportedGroupType);
    EXPECT_THROW(AbelianPType::parse(""), UnsupportedGroupType);
    EXPECT_THROW(AbelianPType::parse("2,x"), ParseError);
}

TEST(GroupRings, MultiplicativeCyclicRing)
{
    const AbelianPType C2({1});
    const auto alg = group_cohomology_ring(multiplicative(2, C2), C2);
    EXPECT_EQ(alg->rank(), 2u);
    EXPECT_EQ(alg->relations()[0], univariate(Z(2), {0, 2, 1}, alg->relations()[0].cap()));
    for (int p : {2, 3}) {
        for (int m = 1; m <= 3; ++m) {
            const AbelianPType A({m});
            EXPECT_EQ(group_cohomology_ring(multiplicative(p, A), A)->rank(), static_cast<std::size_t>(ipow(p, m)));
        }
    }
}

TEST(GroupRings, ReduceElement)
{
    const AbelianPType C2({1});
    const auto alg = group_cohomology_ring(multiplicative(2, C2), C2);
    const auto R = alg->ring();
    const auto coords = reduce_element(*alg, univariate(R, {0, 0, 1}, kNoTruncation));
    EXPECT_EQ(coords, (std::vector<CoeffElem>{CoeffElem(R), CoeffElem(R, -2)}));
    EXPECT_EQ(reduce_element(*alg, univariate(R, {1}, kNoTruncation)),
              (std::vector<CoeffElem>{CoeffElem(R, 1), CoeffElem(R)}));
}

// python3 tests/oracles/height_one.py
TEST(GroupRings, CyclotomicLevelRelations)
{
    struct Case {
        int p, m;
        std::vector<long> phi;
    };
    const std::vector<Case> cases{
        {2, 1, {2, 1}},
        {2, 2, {2, 2, 1}},
        {2, 3, {2, 4, 6, 4, 1}},
        {3, 1, {3, 3, 1}},
        {3, 2, {3, 9, 18, 21, 15, 6, 1}},
        {3,
         3,
         {3, 27, 189, 900, 3186, 8694, 18648, 31860, 43767, 48621, 43758, 31824, 18564, 8568, 3060, 816, 153, 18, 1}},
    };
    for (const auto &c : cases) {
        const AbelianPType A({c.m});
        const auto level = level_ring(multiplicative(c.p, A), A);
        const auto &rel = level->relations()[0];
        EXPECT_EQ(rel, univariate(Z(c.p), c.phi, rel.cap())) << c.p << "^" << c.m;
        EXPECT_EQ(level->rank(), static_cast<std::size_t>(ipow(c.p, c.m) - ipow(c.p, c.m - 1)));
    }
}

TEST(GroupRings, QuotientToLevelKillsRelations)
{
    const AbelianPType C3({1});
    const auto F = multiplicative(3, C3);
    const auto map = quotient_to_level(F, C3);
    EXPECT_EQ(map.source()->rank(), 3u);
    EXPECT_EQ(map.target()->rank(), 2u);
    for (const auto &rel : map.source()->relations()) {
        EXPECT_TRUE(map.apply(rel).is_zero());
    }
}

TEST(GroupRings, HeightTwoRanks)
{
    const AbelianPType C2({1});
    const AbelianPType C2xC2({1, 1});
    const auto F = lubin_tate(2, C2xC2);
    EXPECT_EQ(group_cohomology_ring(F, C2)->rank(), 4u);
    EXPECT_EQ(group_cohomology_ring(F, C2xC2)->rank(), 16u);
    const auto L1 = level_ring(F, C2);
    const auto L2 = level_ring(F, C2xC2);
    EXPECT_EQ(L1->rank(), 3u);
    EXPECT_EQ(L2->rank(), 6u);
    const auto map = quotient_to_level(F, C2xC2);
    for (const auto &rel : map.source()->relations()) {
        EXPECT_TRUE(map.apply(rel).is_zero());
    }
    // [2](x_j) vanishes on the level ring
    const auto two = torsion_series(F, 1);
    for (std::size_t j = 0; j < 2; ++j) {
        EXPECT_TRUE(evaluate(two, {L2->generator(j)}).is_zero());
    }
}

TEST(GroupRings, UnsupportedTypes)
{
    const AbelianPType mixed({2, 1});
    const AbelianPType C2xC2({1, 1});
    EXPECT_THROW(level_ring(multiplicative(2, mixed), mixed), UnsupportedGroupType);
    EXPECT_THROW(level_ring(multiplicative(2, C2xC2), C2xC2), UnsupportedGroupType);
    EXPECT_THROW(AbelianPType({0}), UnsupportedGroupType);
    EXPECT_THROW(AbelianPType(std::vector<int>{}), UnsupportedGroupType);
}

TEST(GroupRings, TorsionPolynomials)
{
    const AbelianPType A({2});
    const auto F = multiplicative(2, A);
    EXPECT_EQ(torsion_polynomial(F, 0), univariate(Z(2), {0, 1}, torsion_polynomial(F, 0).cap()));
    const auto P2 = torsion_polynomial(F, 2);
    EXPECT_EQ(P2, univariate(Z(2), {0, 4, 6, 4, 1}, P2.cap()));
    EXPECT_EQ(law_height(F), 1);
    EXPECT_EQ(law_height(lubin_tate(2, AbelianPType({1}))), 2);
}

TEST(GroupRings, RestrictionAndInflation)
{
    const AbelianPType C4({2});
    const auto F = multiplicative(2, C4);
    const auto maps = restriction_map(F, 1, 2);
    EXPECT_EQ(maps.restriction.source()->rank(), 4u);
    EXPECT_EQ(maps.restriction.target()->rank(), 2u);
    EXPECT_EQ(maps.restriction.images()[0], maps.restriction.target()->generator(0));
    // x -> [2](x) = 2x + x^2 from C_2 to C_4
    const auto &infl = maps.inflation;
    EXPECT_EQ(infl.images()[0], infl.target()->element(univariate(Z(2), {0, 2, 1}, kNoTruncation)));
    const auto same = restriction_map(F, 2, 2);
    EXPECT_EQ(same.restriction.images()[0], same.restriction.target()->generator(0));
    EXPECT_EQ(same.restriction.source()->rank(), same.restriction.target()->rank());
    EXPECT_THROW(restriction_map(F, 3, 2), UnsupportedGroupType);
}

TEST(GroupRings, PresentationMetadata)
{
    const AbelianPType C3({1});
    const auto alg = level_ring(multiplicative(3, C3), C3);
    const auto j = to_json(*alg);
    EXPECT_EQ(j["rank"], 2);
    EXPECT_EQ(j["variables"], nlohmann::json::array({"x"}));
    EXPECT_TRUE(j["metadata"].contains("dualGroup"));
}

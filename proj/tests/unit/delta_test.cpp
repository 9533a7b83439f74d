#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fgl/delta.hpp>
#include <fgl/errors.hpp>
#include <fgl/fgl.hpp>
#include <fgl/grouprings.hpp>

using namespace fgl;

namespace
{

AlgebraPtr base(int p, int N)
{
    return FiniteAlgebra::scalars(CoeffRing::make(CoeffRingSpec::truncated(p, N)));
}

} // namespace

TEST(Delta, IntegersWithIdentity)
{
    const auto R = DeltaRing::parse("Z; psi = id", 2);
    EXPECT_EQ(R.delta(R.constant(2)), R.constant(-1));
    EXPECT_TRUE(R.delta(R.constant(1)).is_zero());
    EXPECT_EQ(R.delta(R.constant(5)), R.constant(-10));
    const auto Z3 = DeltaRing::parse("Z", 3);
    EXPECT_EQ(Z3.delta(Z3.constant(5)), Z3.constant(-40));
}

TEST(Delta, PolynomialRing)
{
    const auto R2 = DeltaRing::parse("Z[t]; psi t -> t^2", 2);
    EXPECT_TRUE(R2.delta(R2.generator(0)).is_zero());
    // python3 tests/oracles/height_one.py
    EXPECT_EQ(R2.delta(R2.parse_element("t^2 + 3*t - 1")), R2.parse_element("-3*t^3 - 2*t^2 + 3*t - 1"));
    const auto R3 = DeltaRing::parse("Z[t]", 3);
    EXPECT_TRUE(R3.delta(R3.parse_element("t^2")).is_zero());
    EXPECT_EQ(R3.delta(R3.parse_element("t^2 + 3*t - 1")),
              R3.parse_element("-3*t^5 - 8*t^4 - 2*t^3 + 8*t^2 - 3*t"));
}

TEST(Delta, FrobeniusLiftCondition)
{
    EXPECT_THROW(DeltaRing::parse("Z[t]; psi t -> t + 1", 2), NotAFrobeniusLift);
    EXPECT_NO_THROW(DeltaRing::parse("Z[s,t]; psi s -> s^3; psi t -> t^3 + 3*s", 3));
    EXPECT_THROW(DeltaRing::parse("Z[t]; psi t -> t^^2", 2), ParseError);
    EXPECT_THROW(DeltaRing::parse("Q[t]", 2), ParseError);
}

TEST(Delta, AxiomsOnRandomSamples)
{
    for (int p : {2, 3}) {
        for (const char *ring : {"Z", "Z[t]", "Z[s,t]; psi t -> t^PP + PP*s"}) {
            std::string text = ring;
            for (auto pos = text.find("PP"); pos != std::string::npos; pos = text.find("PP")) {
                text.replace(pos, 2, std::to_string(p));
            }
            const auto R = DeltaRing::parse(text, p);
            const auto rep = check_delta_axioms(R, random_pairs(R, 200, 42));
            EXPECT_TRUE(rep.passed()) << text << ": " << (rep.failures.empty() ? "" : rep.failures.front());
            EXPECT_GT(rep.checks, 1000u);
        }
    }
}

TEST(Delta, ZeroPairPasses)
{
    const auto R = DeltaRing::parse("Z[t]", 2);
    EXPECT_TRUE(check_delta_axioms(R, {{R.zero(), R.zero()}}).passed());
}

TEST(Delta, SheafEval)
{
    const auto A = DeltaRing::parse("Z[t]", 2);
    const auto S = base(2, 3);
    const auto id = sheaf_eval(A, S, 0, 4);
    EXPECT_EQ(id.images[0], tensor_embed(A, S, A.generator(0), 4));
    const auto two = sheaf_eval(A, S, 2, 4);
    EXPECT_EQ(two.images[0], tensor_embed(A, S, A.parse_element("t^4"), 4));
    EXPECT_THROW(sheaf_eval(A, S, 2, 3), TruncationTooSmall);
    EXPECT_EQ(psi_power_degree(A, 3), 8);
}

TEST(Delta, SheafEvalOverMultiplicativeBase)
{
    // S = Z/2^3[x]/([2](x)), the ring of C_2 for the multiplicative law
    const AbelianPType C2({1});
    const auto F = make_multiplicative(CoeffRing::make(CoeffRingSpec::truncated(2, 3)), 4);
    const auto S = group_cohomology_ring(F, C2);
    const auto A = DeltaRing::parse("Z[t]; psi t -> t^2 + 2*t", 2);
    const auto v = sheaf_eval(A, S, 1, 4);
    EXPECT_EQ(v.images[0], tensor_embed(A, S, A.psi(A.generator(0)), 4));
    // fixes S pointwise: s (x) 1 goes to itself
    auto s = tensor_zero(A, S, 4);
    s.add_term(Monomial{}, S->generator(0));
    EXPECT_EQ(v.apply(s), s);
}

TEST(Delta, CompositionLaw)
{
    const auto A = DeltaRing::parse("Z[s,t]; psi t -> t^2 + 2*s", 2);
    EXPECT_TRUE(composition_check(A, base(2, 2), {{0, 0}, {1, 2}, {2, 1}, {0, 3}, {2, 2}}).passed());
}

TEST(Delta, CongruenceOverCharacteristicP)
{
    const auto Z2 = DeltaRing::parse("Z; psi = id", 2);
    EXPECT_TRUE(congruence_check(Z2, base(2, 1), {Z2.constant(3)}, 1, 1).passed());
    const auto A = DeltaRing::parse("Z[t]", 3);
    std::mt19937_64 rng(4);
    std::vector<Series> samples;
    for (int i = 0; i < 10; ++i) {
        samples.push_back(A.random_element(rng, 2, 9));
    }
    EXPECT_TRUE(congruence_check(A, base(3, 1), samples, 2, 9).passed());
    EXPECT_THROW(congruence_check(A, base(3, 2), samples, 1, 9), InvalidSpec);
}

TEST(Delta, SubgroupChains)
{
    EXPECT_EQ(subgroup_chains(2, {2}).size(), 1u);
    EXPECT_EQ(subgroup_chains(2, {3}).size(), 1u);
    EXPECT_EQ(subgroup_chains(2, {1, 1}).size(), 3u);
    EXPECT_EQ(subgroup_chains(3, {1, 1}).size(), 4u);
    EXPECT_EQ(subgroup_chains(2, {2, 1}).size(), 5u);
    const auto trivial = subgroup_chains(2, {});
    ASSERT_EQ(trivial.size(), 1u);
    EXPECT_TRUE(trivial[0].empty());
}

TEST(Delta, FrobeniusChains)
{
    const auto A = DeltaRing::parse("Z[t]", 2);
    for (const auto &exps : {std::vector<int>{}, {2}, {3}, {1, 1}}) {
        EXPECT_TRUE(frobenius_chain_check(A, base(2, 1), exps).passed());
    }
}

TEST(Delta, ReportJson)
{
    CheckReport r;
    r.checks = 3;
    r.failures.push_back("x");
    const auto j = to_json(r);
    EXPECT_EQ(j["passed"], false);
    EXPECT_EQ(j["checks"], 3);
    EXPECT_EQ(j["failures"].size(), 1u);
}

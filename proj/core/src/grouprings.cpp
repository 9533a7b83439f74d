#include <fgl/grouprings.hpp>

#include <algorithm>
#include <sstream>

#include <fgl/errors.hpp>
#include <fgl/weierstrass.hpp>

namespace fgl
{

namespace
{

long ipow(long base, long exp)
{
    long r = 1;
    while (exp-- > 0) {
        r *= base;
    }
    return r;
}

std::vector<std::string> variable_names(std::size_t k)
{
    if (k == 1) {
        return {"x"};
    }
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= k; ++i) {
        names.push_back("x" + std::to_string(i));
    }
    return names;
}

nlohmann::json group_metadata(const FormalGroupLaw &law, const AbelianPType &A, const std::string &what)
{
    return {{"ring", what},
            {"group", A.to_string()},
            {"law", law.name()},
            {"dualGroup", "A* is identified with A through the chosen generators"}};
}

// Polynomial in one variable over an algebra, dense from the constant term.
using AlgPoly = std::vector<AlgElem>;

AlgPoly times_linear(const AlgPoly &f, const AlgElem &root)
{
    // f * (X - root)
    AlgPoly out(f.size() + 1, root.zero_like());
    for (std::size_t i = 0; i < f.size(); ++i) {
        out[i + 1] += f[i];
        out[i] -= f[i] * root;
    }
    return out;
}

} // namespace

// ---------------------------------------------------------- AbelianPType

AbelianPType::AbelianPType(std::vector<int> exps) : exponents(std::move(exps))
{
    if (exponents.empty()) {
        throw UnsupportedGroupType("an abelian p-group type needs at least one cyclic factor");
    }
    for (int m : exponents) {
        if (m < 1) {
            throw UnsupportedGroupType("cyclic factor exponents must be positive (the trivial group is excluded)");
        }
    }
    std::sort(exponents.begin(), exponents.end(), std::greater<>());
    if (exponents.size() > kMaxVars) {
        throw UnsupportedGroupType("too many cyclic factors");
    }
}

AbelianPType AbelianPType::parse(const std::string &text)
{
    std::vector<int> exps;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            exps.push_back(v);
        } catch (const std::logic_error &) {
            throw ParseError("bad group type '" + text + "': expected exponents like 2,1");
        }
    }
    return AbelianPType(std::move(exps));
}

int AbelianPType::order_exponent() const
{
    int m = 0;
    for (int e : exponents) {
        m += e;
    }
    return m;
}

bool AbelianPType::is_elementary() const
{
    return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 1; });
}

std::string AbelianPType::to_string() const
{
    std::string out;
    for (int e : exponents) {
        out += (out.empty() ? "" : ",") + std::to_string(e);
    }
    return out;
}

// ------------------------------------------------------------- torsion

int law_height(const FormalGroupLaw &law)
{
    if (law.height()) {
        return *law.height();
    }
    const int p = law.ring()->p();
    const int d = weierstrass_degree(torsion_series(law, 1));
    int n = 0;
    long q = 1;
    while (q < d) {
        q *= p;
        ++n;
    }
    if (q != d) {
        throw InvariantBreach("Weierstrass degree " + std::to_string(d) + " of [p](x) is not a power of p");
    }
    return n;
}

int recommended_trunc(const CoeffRingSpec &spec, int height, const AbelianPType &A)
{
    const long d = ipow(spec.p, static_cast<long>(A.max_exponent()) * height);
    if (spec.is_exact()) {
        return static_cast<int>(d + 1);
    }
    // x^{dK} vanishes modulo the relations once the maximal ideal (nilpotent
    // of index K) is accounted for; evaluating F at k such points needs k
    // times that.
    const long K = *spec.precision + (spec.deformation_params > 0 ? spec.u_degree_cap - 1 : 0);
    return static_cast<int>(static_cast<long>(A.rank()) * d * K + 1);
}

Series torsion_series(const FormalGroupLaw &law, int m)
{
    const long q = ipow(law.ring()->p(), m);
    int cap = law.trunc();
    if (law.is_polynomial()) {
        cap = static_cast<int>(std::max<long>(cap, q + 1));
    }
    return n_series(law, q, cap).series;
}

Series torsion_polynomial(const FormalGroupLaw &law, int m)
{
    if (m == 0) {
        return series_variable(law.ring(), {"x"}, kNoTruncation, 0);
    }
    const Series f = torsion_series(law, m);
    const long d = ipow(law.ring()->p(), static_cast<long>(m) * law_height(law));
    if (f.cap() <= d) {
        throw TruncationTooSmall("truncation " + std::to_string(f.cap()) + " does not exceed the degree " +
                                 std::to_string(d) + " of P_" + std::to_string(m));
    }
    return weierstrass_prepare(f).distinguished.with_cap(kNoTruncation);
}

AlgebraPtr group_cohomology_ring(const FormalGroupLaw &law, const AbelianPType &A)
{
    const std::size_t k = A.rank();
    const auto names = variable_names(k);
    std::vector<Series> relations;
    std::vector<Series> cache(static_cast<std::size_t>(A.max_exponent() + 1), series_zero(law.ring(), {"x"}, 1));
    std::vector<bool> have(cache.size(), false);
    for (std::size_t i = 0; i < k; ++i) {
        const auto m = static_cast<std::size_t>(A.exponents[i]);
        if (!have[m]) {
            cache[m] = torsion_polynomial(law, static_cast<int>(m));
            have[m] = true;
        }
        relations.push_back(cache[m].embedded(names, {i}));
    }
    return FiniteAlgebra::make(law.ring(), names, std::move(relations),
                               group_metadata(law, A, "groupCohomology"));
}

AlgebraPtr level_ring(const FormalGroupLaw &law, const AbelianPType &A)
{
    const auto &ring = law.ring();
    if (A.is_cyclic()) {
        const int m = A.max_exponent();
        const Series top = torsion_polynomial(law, m);
        const Series below = torsion_polynomial(law, m - 1);
        auto [q, r] = weierstrass_divide(top, below);
        if (!r.is_zero()) {
            throw NonExactDivision("P_" + std::to_string(m) + " is not divisible by P_" + std::to_string(m - 1) +
                                   " at this precision");
        }
        Series g = weierstrass_prepare(q).distinguished.with_cap(kNoTruncation);
        return FiniteAlgebra::make(ring, {"x"}, {g}, group_metadata(law, A, "level"));
    }
    if (!A.is_elementary()) {
        throw UnsupportedGroupType("level rings are built for cyclic or elementary abelian groups, not " +
                                   A.to_string());
    }
    const int n = law_height(law);
    const std::size_t k = A.rank();
    if (static_cast<int>(k) > n) {
        throw UnsupportedGroupType("an elementary abelian group of rank " + std::to_string(k) +
                                   " has no level structures at height " + std::to_string(n));
    }
    const int p = ring->p();
    const Series P = torsion_polynomial(law, 1);
    std::vector<Series> multiples; // [a](x) for 0 <= a < p
    for (int a = 0; a < p; ++a) {
        const int cap = law.is_polynomial() ? std::max(law.trunc(), p + 1) : law.trunc();
        multiples.push_back(n_series(law, a, cap).series);
    }

    std::vector<Series> relations;
    AlgebraPtr alg = FiniteAlgebra::scalars(ring);
    for (std::size_t j = 0; j < k; ++j) {
        // Points c_a = [a_1](x_1) +_F ... +_F [a_j](x_j) of the algebra so far.
        std::vector<AlgElem> points{alg->zero()};
        for (std::size_t i = 0; i < j; ++i) {
            const AlgElem xi = alg->generator(i);
            std::vector<AlgElem> next;
            for (int a = 0; a < p; ++a) {
                const AlgElem t = evaluate(multiples[static_cast<std::size_t>(a)], {xi});
                for (const auto &c : points) {
                    next.push_back(evaluate(law.series(), {c, t}));
                }
            }
            points = std::move(next);
        }
        AlgPoly denom{alg->one()};
        for (const auto &c : points) {
            denom = times_linear(denom, c);
        }
        // Long division of P(X) by the monic denominator over alg.
        AlgPoly rem;
        for (int e = 0; e <= P.degree(); ++e) {
            rem.push_back(alg->constant(coeff_of(P, e)));
        }
        const std::size_t dd = denom.size() - 1;
        if (rem.size() <= dd) {
            throw NonExactDivision("P has lower degree than the level denominator");
        }
        AlgPoly quo(rem.size() - dd, alg->zero());
        for (std::size_t e = rem.size(); e-- > dd;) {
            const AlgElem c = rem[e];
            if (c.is_zero()) {
                continue;
            }
            quo[e - dd] = c;
            for (std::size_t i = 0; i <= dd; ++i) {
                rem[e - dd + i] -= c * denom[i];
            }
        }
        for (std::size_t i = 0; i < dd; ++i) {
            if (!rem[i].is_zero()) {
                throw NonExactDivision("P(x_" + std::to_string(j + 1) +
                                       ") is not divisible by the product of (x - c) over the adjoined points");
            }
        }
        const auto names = variable_names(j + 1);
        std::vector<std::size_t> prefix(j);
        for (std::size_t i = 0; i < j; ++i) {
            prefix[i] = i;
        }
        Series g(CoeffElem(ring), names, kNoTruncation);
        for (std::size_t e = 0; e < quo.size(); ++e) {
            const Series coeff = quo[e].to_polynomial().embedded(names, prefix);
            for (const auto &[mono, c] : coeff.terms()) {
                Monomial shifted = mono;
                shifted.set(j, static_cast<int>(e));
                g.add_term(shifted, c);
            }
        }
        for (auto &rel : relations) {
            rel = rel.embedded(names, prefix);
        }
        relations.push_back(std::move(g));
        alg = FiniteAlgebra::make(ring, names, relations,
                                  j + 1 == k ? group_metadata(law, A, "level") : nlohmann::json::object());
    }
    return alg;
}

AlgebraMap quotient_to_level(const FormalGroupLaw &law, const AbelianPType &A)
{
    return quotient_to_level(group_cohomology_ring(law, A), level_ring(law, A));
}

AlgebraMap quotient_to_level(const AlgebraPtr &ambient, const AlgebraPtr &level)
{
    std::vector<AlgElem> images;
    for (std::size_t i = 0; i < ambient->nvars(); ++i) {
        images.push_back(level->generator(i));
    }
    return AlgebraMap(ambient, level, std::move(images));
}

std::vector<CoeffElem> reduce_element(const FiniteAlgebra &alg, const Series &f)
{
    return alg.reduce(f);
}

CyclicMaps restriction_map(const FormalGroupLaw &law, int sub_exponent, int exponent)
{
    if (sub_exponent < 1 || sub_exponent > exponent) {
        throw UnsupportedGroupType("need cyclic groups C_{p^m'} inside C_{p^m} with 1 <= m' <= m");
    }
    const AlgebraPtr big = group_cohomology_ring(law, AbelianPType({exponent}));
    const AlgebraPtr small = group_cohomology_ring(law, AbelianPType({sub_exponent}));
    AlgebraMap restriction(big, small, {small->generator(0)});
    const AlgElem x = big->generator(0);
    const Series mult = torsion_series(law, exponent - sub_exponent);
    AlgebraMap inflation(small, big, {evaluate(mult, {x})});
    return {std::move(restriction), std::move(inflation)};
}

} // namespace fgl

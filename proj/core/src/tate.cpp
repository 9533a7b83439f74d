#include <fgl/tate.hpp>

#include <algorithm>

#include <nlohmann/json.hpp>

#include <fgl/errors.hpp>

namespace fgl
{

namespace
{

void require_rational_model(const FormalGroupLaw &law)
{
    if (!law.ring()->is_exact()) {
        throw ModeError("Euler-class localization needs exact coefficients; inverting a non-unit mod p^N is "
                        "ill-posed");
    }
    if (!law.is_polynomial()) {
        throw ModeError("Euler-class localization needs a polynomial formal group law over exact coefficients");
    }
}

mpq_class to_rational(const CoeffElem &c)
{
    return mpq_class(c.constant());
}

RationalMatrix kernel_matrix(const LocalizedRing &loc)
{
    return RationalMatrix::from_columns(loc.eventual_kernel, loc.ambient->rank());
}

struct Comparison {
    LocalizedRing loc;
    AlgebraPtr level;
    LevelTateReport report;
};

Comparison compare(const FormalGroupLaw &law, const AbelianPType &A, const EulerClassData &euler)
{
    if (!A.is_cyclic()) {
        throw UnsupportedGroupType("the level/Tate comparison is built for cyclic groups, not " + A.to_string());
    }
    LocalizedRing loc = localization_kernel(euler.product);
    AlgebraPtr level = level_ring(law, A);
    const AlgebraPtr &ambient = euler.ambient;
    const std::size_t n = ambient->rank();
    const RationalMatrix K = kernel_matrix(loc);

    std::vector<mpq_class> g_coords;
    for (const auto &c : ambient->reduce(level->relations()[0])) {
        g_coords.push_back(to_rational(c));
    }
    const bool well_defined = K.hconcat(RationalMatrix::from_columns({g_coords}, n)).rank() == K.cols();

    std::vector<std::vector<mpq_class>> images;
    for (std::size_t i = 0; i < level->rank(); ++i) {
        std::vector<mpq_class> coords;
        Series mono = ambient->polynomial_zero();
        mono.add_term(level->basis()[i], CoeffElem(ambient->ring(), 1));
        for (const auto &c : ambient->reduce(mono)) {
            coords.push_back(to_rational(c));
        }
        images.push_back(std::move(coords));
    }
    const bool spans = RationalMatrix::from_columns(images, n).hconcat(K).rank() == n;
    const bool bijective = well_defined && spans && level->rank() == loc.quotient_rank;
    const std::size_t level_rank = level->rank();
    return {std::move(loc), std::move(level), {level_rank, 0, well_defined, bijective}};
}

} // namespace

EulerClassData euler_class(const FormalGroupLaw &law, const AbelianPType &A)
{
    const AlgebraPtr ambient = group_cohomology_ring(law, A);
    const int p = law.ring()->p();
    const std::size_t k = A.rank();
    std::vector<int> orders;
    for (int m : A.exponents) {
        int q = 1;
        for (int i = 0; i < m; ++i) {
            q *= p;
        }
        orders.push_back(q);
    }
    // [i](x_j) in the ambient ring for every needed i.
    std::vector<std::vector<AlgElem>> multiples(k);
    for (std::size_t j = 0; j < k; ++j) {
        const AlgElem x = ambient->generator(j);
        for (int i = 0; i < orders[j]; ++i) {
            const int cap = law.is_polynomial() ? std::max(law.trunc(), i + 1) : law.trunc();
            multiples[j].push_back(evaluate(n_series(law, i, cap).series, {x}));
        }
    }

    EulerClassData out{ambient, {}, {}, ambient->one()};
    std::vector<int> idx(k, 0);
    while (true) {
        std::size_t pos = 0;
        while (pos < k && ++idx[pos] == orders[pos]) {
            idx[pos] = 0;
            ++pos;
        }
        if (pos == k) {
            break;
        }
        AlgElem factor = multiples[0][static_cast<std::size_t>(idx[0])];
        for (std::size_t j = 1; j < k; ++j) {
            factor = evaluate(law.series(), {factor, multiples[j][static_cast<std::size_t>(idx[j])]});
        }
        out.product *= factor;
        out.indices.push_back(idx);
        out.factors.push_back(std::move(factor));
    }
    return out;
}

RationalMatrix multiplication_matrix(const AlgElem &e)
{
    const AlgebraPtr &alg = e.algebra();
    if (!alg->ring()->is_exact()) {
        throw ModeError("rational matrices need exact coefficients");
    }
    const std::size_t n = alg->rank();
    RationalMatrix M(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<CoeffElem> unit(n, CoeffElem(alg->ring()));
        unit[j] = CoeffElem(alg->ring(), 1);
        const auto col = alg->multiply(e.coords(), unit);
        for (std::size_t i = 0; i < n; ++i) {
            M.at(i, j) = to_rational(col[i]);
        }
    }
    return M;
}

LocalizedRing localization_kernel(const AlgElem &e)
{
    const RationalMatrix M = multiplication_matrix(e);
    const std::size_t n = M.rows();
    RationalMatrix power = M;
    std::size_t rank = power.rank();
    std::size_t j = 1;
    while (true) {
        RationalMatrix next = power * M;
        const std::size_t next_rank = next.rank();
        if (next_rank == rank) {
            break;
        }
        power = std::move(next);
        rank = next_rank;
        ++j;
        if (j > n + 1) {
            throw InvariantBreach("kernel chain of e did not stabilize within the rank");
        }
    }
    return {e.algebra(), e, power.nullspace(), rank, j};
}

bool acts_invertibly(const LocalizedRing &loc, const AlgElem &s)
{
    if (s.algebra() != loc.ambient) {
        throw SpecMismatch("element does not live in the localized algebra");
    }
    const RationalMatrix Ms = multiplication_matrix(s);
    return Ms.hconcat(kernel_matrix(loc)).rank() == loc.ambient->rank();
}

LevelTateReport level_to_tate(const FormalGroupLaw &law, const AbelianPType &A)
{
    require_rational_model(law);
    auto cmp = compare(law, A, euler_class(law, A));
    cmp.report.tate_rank = cmp.loc.quotient_rank;
    return cmp.report;
}

std::vector<FactorReport> factor_invertibility(const FormalGroupLaw &law, const AbelianPType &A)
{
    require_rational_model(law);
    const EulerClassData euler = euler_class(law, A);
    const LocalizedRing loc = localization_kernel(euler.product);
    std::vector<FactorReport> out;
    for (std::size_t i = 0; i < euler.factors.size(); ++i) {
        out.push_back({euler.indices[i], acts_invertibly(loc, euler.factors[i])});
    }
    return out;
}

AlgElem euler_image_in_level(const FormalGroupLaw &law, const AbelianPType &A)
{
    const EulerClassData euler = euler_class(law, A);
    return quotient_to_level(euler.ambient, level_ring(law, A)).apply(euler.product);
}

bool TateReport::factors_invertible() const
{
    return std::all_of(factors.begin(), factors.end(), [](const FactorReport &f) { return f.invertible; });
}

TateReport tate_report(const FormalGroupLaw &law, const AbelianPType &A)
{
    require_rational_model(law);
    const EulerClassData euler = euler_class(law, A);
    auto cmp = compare(law, A, euler);
    cmp.report.tate_rank = cmp.loc.quotient_rank;
    std::vector<FactorReport> factors;
    for (std::size_t i = 0; i < euler.factors.size(); ++i) {
        factors.push_back({euler.indices[i], acts_invertibly(cmp.loc, euler.factors[i])});
    }
    const AlgebraMap q = quotient_to_level(euler.ambient, cmp.level);
    return {cmp.report, std::move(factors), q.apply(euler.product)};
}

nlohmann::json to_json(const TateReport &report)
{
    return {{"levelRank", report.comparison.level_rank},
            {"tateRank", report.comparison.tate_rank},
            {"iso", report.comparison.bijective},
            {"factorsInvertible", report.factors_invertible()},
            {"eulerImageInLevel", report.euler_image.to_string()}};
}

} // namespace fgl

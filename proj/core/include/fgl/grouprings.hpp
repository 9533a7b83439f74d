#pragma once

#include <string>
#include <vector>

#include <fgl/fgl.hpp>
#include <fgl/finite_algebra.hpp>

namespace fgl
{

// A = C_{p^{m_1}} x ... x C_{p^{m_k}} with m_1 >= ... >= m_k >= 1.
struct AbelianPType {
    std::vector<int> exponents;

    // Sorts descending; UnsupportedGroupType for an empty list or a
    // non-positive exponent (the trivial group is not accepted).
    explicit AbelianPType(std::vector<int> exps);
    // "2,1" -> C_{p^2} x C_p.
    static AbelianPType parse(const std::string &text);

    std::size_t rank() const
    {
        return exponents.size();
    }
    // m with |A| = p^m.
    int order_exponent() const;
    int max_exponent() const
    {
        return exponents.front();
    }
    bool is_cyclic() const
    {
        return exponents.size() == 1;
    }
    bool is_elementary() const;
    std::string to_string() const;

    friend bool operator==(const AbelianPType &, const AbelianPType &) = default;
};

// Height of the law's p-series: the registered height, or the Weierstrass
// degree of [p](x) read off as a power of p.
int law_height(const FormalGroupLaw &law);

// A series truncation at which the ring constructions for A are exact at
// the coefficient precision (exact mode: a polynomial law needs only
// p^{m_1 n} + 1).
int recommended_trunc(const CoeffRingSpec &spec, int height, const AbelianPType &A);

// [p^m](x) to the law's truncation, extended for polynomial laws so that
// the whole polynomial is kept.
Series torsion_series(const FormalGroupLaw &law, int m);

// The distinguished polynomial P_m of [p^m](x) (P_0 = x).
Series torsion_polynomial(const FormalGroupLaw &law, int m);

// Lambda[x_1..x_k]/(P_{m_1}(x_1), ..., P_{m_k}(x_k)), rank p^{n sum m_i}.
AlgebraPtr group_cohomology_ring(const FormalGroupLaw &law, const AbelianPType &A);

// The quotient classifying level structures: for cyclic A the relation is
// P_m / P_{m-1}; for elementary abelian A (k <= n) the j-th relation is
// P(x_j) divided by prod_a (x_j - c_a), where c_a runs over the points
// [a_1](x_1) +_F ... +_F [a_{j-1}](x_{j-1}) already adjoined. Each division
// is checked to be exact (NonExactDivision otherwise).
AlgebraPtr level_ring(const FormalGroupLaw &law, const AbelianPType &A);

// group_cohomology_ring(A) -> level_ring(A), x_i -> x_i.
AlgebraMap quotient_to_level(const FormalGroupLaw &law, const AbelianPType &A);
// The same map between already constructed rings.
AlgebraMap quotient_to_level(const AlgebraPtr &ambient, const AlgebraPtr &level);

// Coordinates of f on the monomial basis of alg.
std::vector<CoeffElem> reduce_element(const FiniteAlgebra &alg, const Series &f);

struct CyclicMaps {
    // Restriction to C_{p^{m'}} inside C_{p^m}: x -> x.
    AlgebraMap restriction;
    // Inflation along C_{p^m} -> C_{p^{m'}}: x -> [p^{m - m'}](x).
    AlgebraMap inflation;
};

// Maps between the rings of C_{p^m} and C_{p^{m'}} for 1 <= m' <= m.
CyclicMaps restriction_map(const FormalGroupLaw &law, int sub_exponent, int exponent);

} // namespace fgl

#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

#include <fgl/finite_algebra.hpp>
#include <fgl/grouprings.hpp>
#include <fgl/rational_matrix.hpp>

namespace fgl
{

// The Euler class of the reduced regular representation in the ring of A:
// the product over all nonzero (i_1..i_k), 0 <= i_j < p^{m_j}, of
// [i_1](x_1) +_F ... +_F [i_k](x_k).
struct EulerClassData {
    AlgebraPtr ambient;
    std::vector<std::vector<int>> indices;
    std::vector<AlgElem> factors;
    AlgElem product;
};

EulerClassData euler_class(const FormalGroupLaw &law, const AbelianPType &A);

// Matrix of multiplication by e on the monomial basis (exact coefficients
// only; ModeError otherwise).
RationalMatrix multiplication_matrix(const AlgElem &e);

// Rational model of alg[1/e]: alg_Q modulo the stable kernel of powers of e.
struct LocalizedRing {
    AlgebraPtr ambient;
    AlgElem inverted;
    std::vector<std::vector<mpq_class>> eventual_kernel;
    std::size_t quotient_rank;
    // Smallest j with ker(e^j) = ker(e^{j+1}).
    std::size_t iterations;
};

LocalizedRing localization_kernel(const AlgElem &e);

// Whether multiplication by s is bijective on the localized quotient.
bool acts_invertibly(const LocalizedRing &loc, const AlgElem &s);

struct LevelTateReport {
    std::size_t level_rank;
    std::size_t tate_rank;
    // The level relation lies in the eventual kernel, so x -> x descends.
    bool well_defined;
    bool bijective;
};

// level_ring(A) -> ambient/eventual kernel, x -> x, over Q. Requires exact
// coefficients and a polynomial law (ModeError) and cyclic A
// (UnsupportedGroupType).
LevelTateReport level_to_tate(const FormalGroupLaw &law, const AbelianPType &A);

struct FactorReport {
    std::vector<int> index;
    bool invertible;
};

std::vector<FactorReport> factor_invertibility(const FormalGroupLaw &law, const AbelianPType &A);

// The Euler class pushed into level_ring(A) along quotient_to_level.
AlgElem euler_image_in_level(const FormalGroupLaw &law, const AbelianPType &A);

struct TateReport {
    LevelTateReport comparison;
    std::vector<FactorReport> factors;
    AlgElem euler_image;

    bool factors_invertible() const;
};

TateReport tate_report(const FormalGroupLaw &law, const AbelianPType &A);

// {levelRank, tateRank, iso, factorsInvertible, eulerImageInLevel}
nlohmann::json to_json(const TateReport &report);

} // namespace fgl

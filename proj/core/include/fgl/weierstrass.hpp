#pragma once

#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include <fgl/series.hpp>

namespace fgl
{

// Weierstrass theory for univariate series over a CoeffRing, whose maximal
// ideal is (p, u_1, ...). A truncated input f is treated as the polynomial it
// stores; results are exact for that polynomial at the coefficient precision.

// Smallest d such that the coefficient of x^d is a unit. Throws
// NoUnitCoefficient when no stored coefficient is a unit.
int weierstrass_degree(const Series &f);

struct DivisionResult {
    Series quotient;  // same cap as the dividend
    Series remainder; // polynomial of degree < weierstrass_degree(divisor)
};

// f = q g + r with deg r < d. A monic polynomial divisor of degree d is
// handled by long division; otherwise q is the fixed point of
// q -> g_high^{-1} * shift_d(f - q g_low), iterated over a working
// x-precision wide enough for the maximal ideal to die out. Throws
// NonConvergence when the fixed point is not reached (exact coefficients
// whose quotient is not a polynomial).
DivisionResult weierstrass_divide(const Series &f, const Series &g);

struct WeierstrassFactorization {
    Series unit;
    Series distinguished;
    int degree;
};

// f = u P with P distinguished of degree d and u a unit, from dividing x^d
// by f: x^d = q f + r gives P = x^d - r and u = q^{-1}.
WeierstrassFactorization weierstrass_prepare(const Series &f);

// Monic polynomial whose lower coefficients all lie in the maximal ideal.
bool is_distinguished(const Series &P);

// Warning text when the p-precision cannot distinguish p^M from zero, so the
// linear-coefficient valuation of P_M would be vacuous.
std::optional<std::string> preparation_precision_warning(const CoeffRingSpec &spec, int M);

nlohmann::json to_json(const WeierstrassFactorization &w);

} // namespace fgl

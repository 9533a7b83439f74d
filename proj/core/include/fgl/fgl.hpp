#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <fgl/coeff_ring.hpp>
#include <fgl/series.hpp>

namespace fgl
{

enum class LawKind { additive, multiplicative, honda, lubin_tate, custom };

std::string to_string(LawKind kind);

// A bivariate series F(x, y) truncated at total degree trunc(), together with
// the metadata the finite-ring constructions need.
class FormalGroupLaw
{
public:
    FormalGroupLaw(Series law, LawKind kind, std::string name, std::optional<int> height, bool polynomial);

    const CoeffRingPtr &ring() const
    {
        return law_.zero().ring();
    }
    const Series &series() const
    {
        return law_;
    }
    int trunc() const
    {
        return law_.cap();
    }
    LawKind kind() const
    {
        return kind_;
    }
    const std::string &name() const
    {
        return name_;
    }
    std::optional<int> height() const
    {
        return height_;
    }
    // F has finitely many terms, all of degree < trunc(); substitution into
    // non-nilpotent arguments is then exact.
    bool is_polynomial() const
    {
        return polynomial_;
    }

    // The law with its coefficients reduced into a coarser ring.
    FormalGroupLaw reduced(const CoeffRingPtr &target) const;

private:
    Series law_;
    LawKind kind_;
    std::string name_;
    std::optional<int> height_;
    bool polynomial_;
};

FormalGroupLaw make_additive(const CoeffRingPtr &ring, int trunc);

// F(x, y) = x + y + xy. Requires no deformation parameters.
FormalGroupLaw make_multiplicative(const CoeffRingPtr &ring, int trunc);

// The p-typical law with logarithm sum_i x^{p^{ni}} / p^i, computed over the
// rationals and reduced. Over F_p its p-series is x^{p^n}. Throws
// TruncationTooSmall when trunc <= p^n.
FormalGroupLaw make_honda(const CoeffRingPtr &ring, int height, int trunc);

// Height-(d+1) deformation over Z/p^N[[u_1..u_d]] from Hazewinkel's
// functional equation l(x) = x + sum_i (v_i / p) l^{sigma^i}(x^{p^i}) with
// v_i = u_i (i <= d), v_{d+1} = 1 and sigma(u) = u^p. Reduces to the Honda
// law of the same height mod (p, u).
FormalGroupLaw make_lubin_tate(const CoeffRingPtr &ring, int trunc);

// make_lubin_tate restricted to one deformation parameter.
FormalGroupLaw make_lubin_tate_height2(const CoeffRingPtr &ring, int trunc);

FormalGroupLaw make_custom(Series law, std::string name, std::optional<int> height = std::nullopt);

// F(a, b). Arguments must have zero constant term and a cap no larger than
// the law's (unless the law is polynomial).
Series formal_sum(const FormalGroupLaw &law, const Series &a, const Series &b);

// The univariate inverse series i(x) with F(x, i(x)) = 0, to the law's cap.
Series inverse_series(const FormalGroupLaw &law);
// i(a), so that formal_sum(law, a, formal_inverse(law, a)) = 0.
Series formal_inverse(const FormalGroupLaw &law, const Series &a);
// a -_F b = F(a, i(b)).
Series formal_difference(const FormalGroupLaw &law, const Series &a, const Series &b);

struct NSeries {
    long m;
    Series series;
};

// [m](x) by a binary addition chain over +_F; negative m via the inverse.
NSeries n_series(const FormalGroupLaw &law, long m);
// [m](x) truncated at a smaller cap.
NSeries n_series(const FormalGroupLaw &law, long m, int cap);

struct AxiomReport {
    std::size_t unit_mismatches = 0;
    std::size_t commutativity_mismatches = 0;
    std::size_t associativity_mismatches = 0;
    std::size_t inverse_mismatches = 0;

    bool passed() const
    {
        return unit_mismatches + commutativity_mismatches + associativity_mismatches + inverse_mismatches == 0;
    }
};

// Unit, commutativity, associativity (in a three-variable scratch ring) and
// inverse axioms, to the law's truncation. Counts mismatched coefficients.
AxiomReport check_axioms(const FormalGroupLaw &law);

// Number of coefficients in which two series with the same shape differ.
std::size_t count_mismatches(const Series &a, const Series &b);

// Coefficient mismatches between [a]([b](x)) and [ab](x) over all pairs.
std::size_t composition_mismatches(const FormalGroupLaw &law, const std::vector<std::pair<long, long>> &pairs);

nlohmann::json to_json(const AxiomReport &report);

} // namespace fgl

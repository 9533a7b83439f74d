#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <fgl/finite_algebra.hpp>
#include <fgl/series.hpp>

namespace fgl
{

// A polynomial ring Z[t_1..t_k] with a Frobenius lift psi given on the
// generators. Elements are Series over the exact coefficient ring with no
// truncation.
class DeltaRing
{
public:
    // Throws NotAFrobeniusLift unless psi(t) - t^p is divisible by p for
    // every generator.
    DeltaRing(int p, std::vector<std::string> generators, std::vector<Series> psi_images);

    // "Z", "Z; psi = id", "Z[t]; psi t -> t^2", "Z[s,t]; psi s -> s^3; psi t -> t^3 + 3*s".
    // Generators without a psi clause get psi(t) = t^p.
    static DeltaRing parse(const std::string &text, int p);

    int p() const
    {
        return p_;
    }
    const CoeffRingPtr &ring() const
    {
        return ring_;
    }
    const std::vector<std::string> &generators() const
    {
        return gens_;
    }
    const std::vector<Series> &psi_images() const
    {
        return psi_;
    }

    Series zero() const;
    Series constant(long value) const;
    Series generator(std::size_t i) const;
    // Polynomial expression in the generators: integers, names, + - * ^ ( ).
    Series parse_element(const std::string &text) const;

    Series psi(const Series &a) const;
    Series psi_power(const Series &a, int r) const;
    // (psi(a) - a^p) / p; InvariantBreach if the division is not exact.
    Series delta(const Series &a) const;

    // Random polynomial of total degree <= max_degree with coefficients in
    // [-bound, bound].
    Series random_element(std::mt19937_64 &rng, int max_degree, int bound) const;

    std::string to_string() const;

private:
    int p_;
    CoeffRingPtr ring_;
    std::vector<std::string> gens_;
    std::vector<Series> psi_;
};

struct CheckReport {
    std::size_t checks = 0;
    std::vector<std::string> failures;

    bool passed() const
    {
        return failures.empty();
    }
    void merge(const CheckReport &other);
};

// {passed, failures, checks}
nlohmann::json to_json(const CheckReport &report);

using ElementPairs = std::vector<std::pair<Series, Series>>;

ElementPairs random_pairs(const DeltaRing &R, std::size_t count, std::uint64_t seed);

// Product and sum rules for delta, psi additive and multiplicative, and
// psi(a) = a^p mod p, on every pair; delta(1) = 0 once.
CheckReport check_delta_axioms(const DeltaRing &R, const ElementPairs &samples);

// Polynomials in A's generators with coefficients in a finite algebra S,
// truncated above a degree bound: the completed tensor product A (x) S.
using TensorPoly = BasicSeries<AlgElem>;

// The value of the sheaf attached to A on a deformation base S, together
// with the map psi^r (x) Id_S recorded by its values on A's generators.
struct SheafValue {
    AlgebraPtr base;
    int r;
    int degree_bound;
    std::vector<TensorPoly> images;

    TensorPoly unit() const;
    // The ring map applied to an element of A (x) S.
    TensorPoly apply(const TensorPoly &f) const;
    // this o other, i.e. generators go to apply(other.images[i]).
    std::vector<TensorPoly> compose_images(const SheafValue &other) const;
};

TensorPoly tensor_zero(const DeltaRing &A, const AlgebraPtr &S, int degree_bound);
// a (x) 1
TensorPoly tensor_embed(const DeltaRing &A, const AlgebraPtr &S, const Series &a, int degree_bound);

// TruncationTooSmall when some psi^r(t_i) has degree above degree_bound.
SheafValue sheaf_eval(const DeltaRing &A, const AlgebraPtr &S, int r, int degree_bound);

// Largest degree of psi^r on the generators (at least 1).
int psi_power_degree(const DeltaRing &A, int r);

// Over a base S with p = 0: psi^r(a) (x) s = a^{p^r} (x) s for every sampled
// a and random s.
CheckReport congruence_check(const DeltaRing &A, const AlgebraPtr &S, const std::vector<Series> &samples, int r,
                             std::uint64_t seed);

// Sheaf maps for r and r' composed against the map for r + r'.
CheckReport composition_check(const DeltaRing &A, const AlgebraPtr &S, const std::vector<std::pair<int, int>> &pairs);

// Every maximal chain 0 = H_0 < H_1 < ... < H_m = G of subgroups of
// G = prod C_{p^{m_i}} with index-p steps. A chain is listed by the element
// adjoined at each step (a tuple of residues); an empty exponent list is the
// trivial group.
std::vector<std::vector<std::vector<int>>> subgroup_chains(int p, const std::vector<int> &exponents);

// The composite of one psi per step along every subgroup chain agrees with
// psi^m on the generators.
CheckReport frobenius_chain_check(const DeltaRing &A, const AlgebraPtr &S, const std::vector<int> &exponents);

nlohmann::json to_json(const SheafValue &value);

} // namespace fgl

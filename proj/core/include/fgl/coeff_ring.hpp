#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json_fwd.hpp>

#include <fgl/monomial.hpp>

namespace fgl
{

// Parameters of a truncated model of Z_p[[u_1..u_{n-1}]]: residues mod p^N
// (or unbounded integers when precision is empty) and u-monomials of total
// degree below u_degree_cap.
struct CoeffRingSpec {
    int p = 2;
    std::optional<int> precision = 1;
    int deformation_params = 0;
    int u_degree_cap = 1;

    static CoeffRingSpec exact(int p)
    {
        return CoeffRingSpec{p, std::nullopt, 0, 1};
    }
    static CoeffRingSpec truncated(int p, int precision, int deformation_params = 0, int u_degree_cap = 1)
    {
        return CoeffRingSpec{p, precision, deformation_params, u_degree_cap};
    }

    bool is_exact() const
    {
        return !precision.has_value();
    }
    int height() const
    {
        return deformation_params + 1;
    }

    // Throws InvalidSpec when p is not prime, N < 1, D < 1, or exact mode is
    // requested with deformation parameters.
    void validate() const;

    std::string to_string() const;

    friend bool operator==(const CoeffRingSpec &, const CoeffRingSpec &) = default;
};

bool is_prime(long n);

class CoeffRing;
using CoeffRingPtr = std::shared_ptr<const CoeffRing>;

// Immutable context shared by all elements of one coefficient ring: the
// modulus and the u-monomial multiplication table.
class CoeffRing
{
public:
    static CoeffRingPtr make(const CoeffRingSpec &spec);

    const CoeffRingSpec &spec() const
    {
        return spec_;
    }
    int p() const
    {
        return spec_.p;
    }
    bool is_exact() const
    {
        return spec_.is_exact();
    }
    // p^N, or 0 in exact mode.
    const mpz_class &modulus() const
    {
        return modulus_;
    }
    std::size_t dimension() const
    {
        return monomials_.size();
    }
    const std::vector<Monomial> &monomials() const
    {
        return monomials_;
    }
    // Index of monomials()[i] * monomials()[j], or -1 when the product has
    // u-degree >= D.
    int product_index(std::size_t i, std::size_t j) const
    {
        return product_[i * monomials_.size() + j];
    }
    std::optional<std::size_t> index_of(const Monomial &m) const;

    void normalize(mpz_class &value) const;

    // Nilpotency index of the maximal ideal (p, u): every product of this
    // many elements of the ideal is zero. Empty in exact mode.
    std::optional<int> nilpotency_index() const;

    explicit CoeffRing(const CoeffRingSpec &spec);

private:
    CoeffRingSpec spec_;
    mpz_class modulus_;
    std::vector<Monomial> monomials_;
    std::vector<int> product_;
};

// An element of a CoeffRing, stored densely over the u-monomial basis with
// canonical residues in [0, p^N).
class CoeffElem
{
public:
    explicit CoeffElem(CoeffRingPtr ring);
    CoeffElem(CoeffRingPtr ring, long value);
    CoeffElem(CoeffRingPtr ring, const mpz_class &value);

    // The deformation parameter u_{index+1}.
    static CoeffElem u(CoeffRingPtr ring, std::size_t index);
    static CoeffElem from_terms(CoeffRingPtr ring, const std::vector<std::pair<Monomial, mpz_class>> &terms);

    const CoeffRingPtr &ring() const
    {
        return ring_;
    }
    const std::vector<mpz_class> &coefficients() const
    {
        return coeffs_;
    }
    const mpz_class &constant() const
    {
        return coeffs_.front();
    }
    const mpz_class &coefficient(std::size_t index) const
    {
        return coeffs_[index];
    }

    bool is_zero() const;
    bool is_one() const;
    // The constant term is not divisible by p.
    bool is_unit() const;

    CoeffElem zero_like() const
    {
        return CoeffElem(ring_);
    }
    CoeffElem one_like() const
    {
        return CoeffElem(ring_, 1);
    }

    CoeffElem &operator+=(const CoeffElem &other);
    CoeffElem &operator-=(const CoeffElem &other);
    CoeffElem &operator*=(const CoeffElem &other);
    CoeffElem operator-() const;

    friend CoeffElem operator+(CoeffElem a, const CoeffElem &b)
    {
        a += b;
        return a;
    }
    friend CoeffElem operator-(CoeffElem a, const CoeffElem &b)
    {
        a -= b;
        return a;
    }
    friend CoeffElem operator*(const CoeffElem &a, const CoeffElem &b);
    friend bool operator==(const CoeffElem &a, const CoeffElem &b);

    // acc += a * b without a temporary.
    friend void fused_add_mul(CoeffElem &acc, const CoeffElem &a, const CoeffElem &b);

    CoeffElem scaled(const mpz_class &factor) const;

    std::string to_string() const;

private:
    void check_same(const CoeffElem &other) const;

    CoeffRingPtr ring_;
    std::vector<mpz_class> coeffs_;
};

CoeffElem pow(const CoeffElem &base, unsigned long exponent);

// Inverse of a unit. Truncated mode: modular inverse of the constant term
// followed by a geometric series in the u-variables. Exact mode only inverts
// +-1. Throws NotAUnit otherwise.
CoeffElem invert(const CoeffElem &a);

// Coefficientwise division by p. Exact mode only (ModeError otherwise);
// NotDivisible when some coefficient is not a multiple of p.
CoeffElem exact_divide_by_p(const CoeffElem &a);

// Minimum p-adic valuation over the coefficients; empty for zero.
std::optional<int> p_valuation(const CoeffElem &a);

// Reduction along the natural map into a coarser ring with the same p:
// lower p-precision, smaller u-degree cap, or fewer u-variables (extra ones
// are sent to zero). Exact -> truncated is allowed; truncated -> exact is not.
CoeffElem change_ring(const CoeffElem &a, const CoeffRingPtr &target);

nlohmann::json to_json(const CoeffElem &a);
CoeffElem coeff_from_json(const CoeffRingPtr &ring, const nlohmann::json &j);

} // namespace fgl

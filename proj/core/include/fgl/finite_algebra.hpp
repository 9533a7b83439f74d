#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <fgl/coeff_ring.hpp>
#include <fgl/series.hpp>

namespace fgl
{

class FiniteAlgebra;
using AlgebraPtr = std::shared_ptr<const FiniteAlgebra>;

// Element of a FiniteAlgebra: coordinates over its monomial basis.
class AlgElem
{
public:
    AlgElem(AlgebraPtr algebra, std::vector<CoeffElem> coords);

    const AlgebraPtr &algebra() const
    {
        return alg_;
    }
    const std::vector<CoeffElem> &coords() const
    {
        return coords_;
    }
    const CoeffElem &coord(std::size_t i) const
    {
        return coords_[i];
    }

    AlgElem zero_like() const;
    AlgElem one_like() const;
    bool is_zero() const;
    bool is_one() const;
    // Units are exactly the elements whose constant coordinate is a unit of
    // the coefficient ring (the generators are topologically nilpotent).
    bool is_unit() const;

    AlgElem &operator+=(const AlgElem &o);
    AlgElem &operator-=(const AlgElem &o);
    AlgElem &operator*=(const AlgElem &o);
    AlgElem operator-() const;
    friend AlgElem operator+(AlgElem a, const AlgElem &b)
    {
        a += b;
        return a;
    }
    friend AlgElem operator-(AlgElem a, const AlgElem &b)
    {
        a -= b;
        return a;
    }
    friend AlgElem operator*(const AlgElem &a, const AlgElem &b);
    friend bool operator==(const AlgElem &a, const AlgElem &b);

    AlgElem scaled(const CoeffElem &c) const;

    // The basis representative as a polynomial in the algebra's variables.
    Series to_polynomial() const;
    std::string to_string() const;

private:
    void check_same(const AlgElem &o) const;

    AlgebraPtr alg_;
    std::vector<CoeffElem> coords_;
};

AlgElem pow(const AlgElem &base, unsigned long exponent);

// A finite free CoeffRing-algebra Lambda[x_1..x_k]/(g_1..g_k) presented by a
// triangular system: g_j involves only x_1..x_j, is monic in x_j of degree
// d_j, and every other term has x_j-degree < d_j. The basis is the set of
// monomials x^a with a_j < d_j, so the rank is the product of the d_j.
class FiniteAlgebra : public std::enable_shared_from_this<FiniteAlgebra>
{
public:
    // Throws std::invalid_argument when the relations are not triangular.
    static AlgebraPtr make(CoeffRingPtr ring, std::vector<std::string> variables, std::vector<Series> relations,
                           nlohmann::json metadata = nlohmann::json::object());

    // The coefficient ring itself, as a rank-one algebra with no variables.
    static AlgebraPtr scalars(CoeffRingPtr ring);

    const CoeffRingPtr &ring() const
    {
        return ring_;
    }
    const std::vector<std::string> &variables() const
    {
        return vars_;
    }
    std::size_t nvars() const
    {
        return vars_.size();
    }
    const std::vector<Series> &relations() const
    {
        return relations_;
    }
    const std::vector<int> &degrees() const
    {
        return degrees_;
    }
    std::size_t rank() const
    {
        return basis_.size();
    }
    const std::vector<Monomial> &basis() const
    {
        return basis_;
    }
    std::size_t basis_index(const Monomial &m) const;
    const nlohmann::json &metadata() const
    {
        return metadata_;
    }

    // Unique representative on the monomial basis, by triangular reduction
    // (highest variable first). Terminates because each step lowers the
    // monomial in lex order with x_k most significant.
    std::vector<CoeffElem> reduce(const Series &poly) const;

    AlgElem element(const Series &poly) const;
    AlgElem element(std::vector<CoeffElem> coords) const;
    AlgElem zero() const;
    AlgElem one() const;
    AlgElem constant(const CoeffElem &c) const;
    AlgElem generator(std::size_t j) const;

    // Product via the cached reductions of x^(a+b) for basis monomials a, b.
    std::vector<CoeffElem> multiply(const std::vector<CoeffElem> &a, const std::vector<CoeffElem> &b) const;

    // A polynomial in the algebra's variables with no truncation.
    Series polynomial_zero() const;

    FiniteAlgebra(CoeffRingPtr ring, std::vector<std::string> variables, std::vector<Series> relations,
                  nlohmann::json metadata);

private:
    void build_product_cache();
    std::size_t box_index(const Monomial &m) const;

    CoeffRingPtr ring_;
    std::vector<std::string> vars_;
    std::vector<Series> relations_;
    std::vector<int> degrees_;
    std::vector<Monomial> basis_;
    nlohmann::json metadata_;
    // Reduced coordinates of x^c for every c with c_j <= 2 d_j - 2.
    std::vector<std::vector<CoeffElem>> product_cache_;
};

// Evaluates a series (in any variables) at algebra elements. Terms beyond
// the series' cap are absent, so the caller must ensure the arguments are
// nilpotent enough (or the series is a polynomial).
AlgElem evaluate(const Series &f, std::span<const AlgElem> args);
AlgElem evaluate(const Series &f, std::initializer_list<AlgElem> args);

// A ring map between finite algebras given by images of the source
// generators. Construction checks that every source relation maps to zero.
class AlgebraMap
{
public:
    AlgebraMap(AlgebraPtr source, AlgebraPtr target, std::vector<AlgElem> images);

    const AlgebraPtr &source() const
    {
        return source_;
    }
    const AlgebraPtr &target() const
    {
        return target_;
    }
    const std::vector<AlgElem> &images() const
    {
        return images_;
    }

    AlgElem apply(const AlgElem &x) const;
    AlgElem apply(const Series &poly) const;

    nlohmann::json to_json() const;

private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    std::vector<AlgElem> images_;
};

nlohmann::json to_json(const FiniteAlgebra &alg);
nlohmann::json to_json(const AlgElem &x);

} // namespace fgl

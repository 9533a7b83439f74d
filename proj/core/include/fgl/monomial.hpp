#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace fgl
{

// Upper bound on the number of variables of a series or polynomial.
inline constexpr std::size_t kMaxVars = 8;

// Exponent vector of a monomial in at most kMaxVars variables. Unused slots
// are zero, so monomials in different variable counts compare sensibly.
class Monomial
{
public:
    Monomial() = default;
    Monomial(std::initializer_list<int> exps);
    explicit Monomial(const std::vector<int> &exps);

    static Monomial unit(std::size_t var, int exp = 1)
    {
        Monomial m;
        m.exps_[var] = static_cast<std::uint16_t>(exp);
        return m;
    }

    int operator[](std::size_t var) const
    {
        return exps_[var];
    }
    void set(std::size_t var, int exp)
    {
        exps_[var] = static_cast<std::uint16_t>(exp);
    }

    int degree() const
    {
        int d = 0;
        for (auto e : exps_) {
            d += e;
        }
        return d;
    }

    Monomial operator+(const Monomial &other) const
    {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            r.exps_[i] = static_cast<std::uint16_t>(exps_[i] + other.exps_[i]);
        }
        return r;
    }

    // True when every exponent of other is at most the matching one here.
    bool divisible_by(const Monomial &other) const
    {
        for (std::size_t i = 0; i < kMaxVars; ++i) {
            if (exps_[i] < other.exps_[i]) {
                return false;
            }
        }
        return true;
    }
    Monomial operator-(const Monomial &other) const;

    std::vector<int> to_vector(std::size_t nvars) const;
    std::string to_string(const std::vector<std::string> &names) const;

    friend bool operator==(const Monomial &, const Monomial &) = default;

    // Lexicographic order on the raw exponent array (variable 0 most
    // significant).
    friend bool lex_less(const Monomial &a, const Monomial &b)
    {
        return a.exps_ < b.exps_;
    }

private:
    std::array<std::uint16_t, kMaxVars> exps_{};
};

// Graded lexicographic order: total degree first, then lexicographic with
// the first variable most significant. This is the canonical iteration and
// serialization order of every sparse container in the library.
struct GradedLex {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        const int da = a.degree();
        const int db = b.degree();
        if (da != db) {
            return da < db;
        }
        return lex_less(a, b);
    }
};

// All monomials in nvars variables of total degree < cap, in graded-lex order.
std::vector<Monomial> monomials_below(std::size_t nvars, int cap);

} // namespace fgl

#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include <fgl/coeff_ring.hpp>
#include <fgl/errors.hpp>
#include <fgl/monomial.hpp>

namespace fgl
{

// Degree cap used for genuine polynomials (nothing is ever truncated).
inline constexpr int kNoTruncation = std::numeric_limits<int>::max() / 4;

// Generic fallback; CoeffElem provides an allocation-free overload.
template <class C>
void fused_add_mul(C &acc, const C &a, const C &b)
{
    acc += a * b;
}

// A multivariate power series truncated at total degree `cap`, with
// coefficients of type C. C must be a ring element type carrying its own
// context (zero_like(), is_zero(), +, -, *, ==). Terms of total degree >= cap
// are dropped silently by every operation; zero coefficients are never
// stored.
template <class C>
class BasicSeries
{
public:
    using Coeff = C;
    using TermMap = std::map<Monomial, C, GradedLex>;

    BasicSeries(C zero, std::vector<std::string> variables, int cap)
        : zero_(zero.zero_like()), vars_(std::move(variables)), cap_(cap)
    {
        if (vars_.size() > kMaxVars) {
            throw std::invalid_argument("too many series variables");
        }
        if (cap_ < 1) {
            throw TruncationTooSmall("series degree cap must be positive");
        }
    }

    static BasicSeries constant(const C &value, std::vector<std::string> variables, int cap)
    {
        BasicSeries s(value, std::move(variables), cap);
        s.add_term(Monomial{}, value);
        return s;
    }

    static BasicSeries variable(const C &zero, std::vector<std::string> variables, int cap, std::size_t index)
    {
        BasicSeries s(zero, std::move(variables), cap);
        if (index >= s.vars_.size()) {
            throw std::invalid_argument("variable index out of range");
        }
        s.add_term(Monomial::unit(index), zero.one_like());
        return s;
    }

    const C &zero() const
    {
        return zero_;
    }
    const std::vector<std::string> &variables() const
    {
        return vars_;
    }
    std::size_t nvars() const
    {
        return vars_.size();
    }
    int cap() const
    {
        return cap_;
    }
    const TermMap &terms() const
    {
        return terms_;
    }
    bool is_zero() const
    {
        return terms_.empty();
    }
    std::size_t size() const
    {
        return terms_.size();
    }

    C coefficient(const Monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? zero_ : it->second;
    }
    C constant_term() const
    {
        return coefficient(Monomial{});
    }

    // Lowest total degree of a stored term; cap() for zero.
    int valuation() const
    {
        return terms_.empty() ? cap_ : terms_.begin()->first.degree();
    }
    // Highest total degree of a stored term; -1 for zero.
    int degree() const
    {
        return terms_.empty() ? -1 : terms_.rbegin()->first.degree();
    }

    void add_term(const Monomial &m, const C &c)
    {
        if (m.degree() >= cap_ || c.is_zero()) {
            return;
        }
        auto [it, inserted] = terms_.try_emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) {
                terms_.erase(it);
            }
        }
    }

    void set_term(const Monomial &m, const C &c)
    {
        if (m.degree() >= cap_) {
            return;
        }
        if (c.is_zero()) {
            terms_.erase(m);
        } else {
            terms_.insert_or_assign(m, c);
        }
    }

    BasicSeries &operator+=(const BasicSeries &o)
    {
        check_compatible(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, c);
        }
        return *this;
    }
    BasicSeries &operator-=(const BasicSeries &o)
    {
        check_compatible(o);
        for (const auto &[m, c] : o.terms_) {
            add_term(m, -c);
        }
        return *this;
    }
    BasicSeries operator-() const
    {
        BasicSeries r(zero_, vars_, cap_);
        for (const auto &[m, c] : terms_) {
            r.terms_.emplace_hint(r.terms_.end(), m, -c);
        }
        return r;
    }
    friend BasicSeries operator+(BasicSeries a, const BasicSeries &b)
    {
        a += b;
        return a;
    }
    friend BasicSeries operator-(BasicSeries a, const BasicSeries &b)
    {
        a -= b;
        return a;
    }

    friend BasicSeries operator*(const BasicSeries &a, const BasicSeries &b)
    {
        a.check_compatible(b);
        std::map<Monomial, C, GradedLex> acc;
        for (const auto &[ma, ca] : a.terms_) {
            const int room = a.cap_ - ma.degree();
            for (const auto &[mb, cb] : b.terms_) {
                if (mb.degree() >= room) {
                    break;
                }
                auto [it, inserted] = acc.try_emplace(ma + mb, a.zero_);
                fused_add_mul(it->second, ca, cb);
            }
        }
        BasicSeries r(a.zero_, a.vars_, a.cap_);
        for (auto &[m, c] : acc) {
            if (!c.is_zero()) {
                r.terms_.emplace_hint(r.terms_.end(), m, std::move(c));
            }
        }
        return r;
    }
    BasicSeries &operator*=(const BasicSeries &o)
    {
        *this = *this * o;
        return *this;
    }

    BasicSeries scaled(const C &factor) const
    {
        BasicSeries r(zero_, vars_, cap_);
        for (const auto &[m, c] : terms_) {
            C v = c * factor;
            if (!v.is_zero()) {
                r.terms_.emplace_hint(r.terms_.end(), m, std::move(v));
            }
        }
        return r;
    }

    // Same terms under a smaller (or equal) cap.
    BasicSeries truncated(int new_cap) const
    {
        BasicSeries r(zero_, vars_, std::min(new_cap, cap_));
        for (const auto &[m, c] : terms_) {
            if (m.degree() >= r.cap_) {
                break;
            }
            r.terms_.emplace_hint(r.terms_.end(), m, c);
        }
        return r;
    }

    // Same terms with a different cap. Raising the cap asserts that the
    // series is known to the new precision (e.g. it is a polynomial).
    BasicSeries with_cap(int new_cap) const
    {
        BasicSeries r(zero_, vars_, new_cap);
        for (const auto &[m, c] : terms_) {
            r.add_term(m, c);
        }
        return r;
    }

    // The same coefficients viewed in a larger variable list: variable i of
    // this series becomes variable positions[i] of the result.
    BasicSeries embedded(std::vector<std::string> variables, const std::vector<std::size_t> &positions) const
    {
        if (positions.size() != vars_.size()) {
            throw std::invalid_argument("embedding needs one position per variable");
        }
        BasicSeries r(zero_, std::move(variables), cap_);
        for (const auto &[m, c] : terms_) {
            Monomial out;
            for (std::size_t i = 0; i < vars_.size(); ++i) {
                out.set(positions[i], m[i]);
            }
            r.add_term(out, c);
        }
        return r;
    }

    template <class D, class Fn>
    BasicSeries<D> map_coefficients(const D &zero, Fn &&fn) const
    {
        BasicSeries<D> r(zero, vars_, cap_);
        for (const auto &[m, c] : terms_) {
            r.add_term(m, fn(c));
        }
        return r;
    }

    friend bool operator==(const BasicSeries &a, const BasicSeries &b)
    {
        if (a.vars_.size() != b.vars_.size() || a.cap_ != b.cap_ || a.terms_.size() != b.terms_.size()) {
            return false;
        }
        auto ib = b.terms_.begin();
        for (const auto &[m, c] : a.terms_) {
            if (!(ib->first == m) || !(ib->second == c)) {
                return false;
            }
            ++ib;
        }
        return true;
    }

    void check_compatible(const BasicSeries &o) const
    {
        if (vars_.size() != o.vars_.size()) {
            throw SpecMismatch("series have different variable counts");
        }
        if (cap_ != o.cap_) {
            throw SpecMismatch("series have different degree caps (" + std::to_string(cap_) + " vs " +
                               std::to_string(o.cap_) + ")");
        }
    }

private:
    C zero_;
    std::vector<std::string> vars_;
    int cap_;
    TermMap terms_;
};

template <class C>
BasicSeries<C> pow(const BasicSeries<C> &base, unsigned long exponent)
{
    auto result = BasicSeries<C>::constant(base.zero().one_like(), base.variables(), base.cap());
    auto b = base;
    while (exponent > 0) {
        if (exponent & 1UL) {
            result *= b;
        }
        exponent >>= 1;
        if (exponent > 0) {
            b *= b;
        }
    }
    return result;
}

// Substitutes args[i] for variable i of f. Every argument must share one
// variable list and cap and have zero constant term (NonNilpotentArgument
// otherwise); the result lives in the arguments' variables and cap.
template <class C>
BasicSeries<C> substitute(const BasicSeries<C> &f, std::span<const BasicSeries<C>> args)
{
    if (args.size() != f.nvars()) {
        throw std::invalid_argument("substitute needs one argument per variable");
    }
    if (args.empty()) {
        throw std::invalid_argument("substitute needs at least one argument");
    }
    const auto &proto = args.front();
    for (const auto &a : args) {
        proto.check_compatible(a);
        if (!a.constant_term().is_zero()) {
            throw NonNilpotentArgument("substituted series must have zero constant term");
        }
    }
    const int out_cap = proto.cap();
    // Highest exponent of each variable that can still contribute.
    std::vector<int> max_exp(f.nvars(), 0);
    for (const auto &[m, c] : f.terms()) {
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            max_exp[v] = std::max(max_exp[v], m[v]);
        }
    }
    std::vector<std::vector<BasicSeries<C>>> powers(f.nvars());
    for (std::size_t v = 0; v < f.nvars(); ++v) {
        const int val = std::max(1, args[v].valuation());
        const int limit = std::min(max_exp[v], (out_cap - 1) / val);
        powers[v].push_back(BasicSeries<C>::constant(proto.zero().one_like(), proto.variables(), out_cap));
        for (int e = 1; e <= limit; ++e) {
            powers[v].push_back(powers[v].back() * args[v]);
        }
    }
    // Group terms by the exponent of the last variable, recursively; the
    // innermost level is a linear combination of precomputed powers.
    std::function<BasicSeries<C>(const std::vector<std::pair<Monomial, const C *>> &, std::size_t)> eval =
        [&](const std::vector<std::pair<Monomial, const C *>> &terms, std::size_t nv) {
            BasicSeries<C> out(proto.zero(), proto.variables(), out_cap);
            if (nv == 1) {
                for (const auto &[m, c] : terms) {
                    const auto e = static_cast<std::size_t>(m[0]);
                    if (e < powers[0].size()) {
                        out += powers[0][e].scaled(*c);
                    }
                }
                return out;
            }
            const std::size_t last = nv - 1;
            std::map<int, std::vector<std::pair<Monomial, const C *>>> groups;
            for (const auto &t : terms) {
                if (static_cast<std::size_t>(t.first[last]) < powers[last].size()) {
                    groups[t.first[last]].push_back(t);
                }
            }
            for (const auto &[e, group] : groups) {
                auto inner = eval(group, last);
                if (inner.is_zero()) {
                    continue;
                }
                out += e == 0 ? inner : inner * powers[last][static_cast<std::size_t>(e)];
            }
            return out;
        };
    std::vector<std::pair<Monomial, const C *>> all;
    all.reserve(f.size());
    for (const auto &[m, c] : f.terms()) {
        all.emplace_back(m, &c);
    }
    return eval(all, f.nvars());
}

template <class C>
BasicSeries<C> substitute(const BasicSeries<C> &f, std::initializer_list<BasicSeries<C>> args)
{
    std::vector<BasicSeries<C>> v(args);
    return substitute(f, std::span<const BasicSeries<C>>(v));
}

// Substitutes args[i] for variable i of f with no nilpotency requirement:
// every term of f is expanded, so this is exact when f is a polynomial and
// the cap of the arguments bounds every degree of interest.
template <class C>
BasicSeries<C> compose(const BasicSeries<C> &f, std::span<const BasicSeries<C>> args, const BasicSeries<C> &unit)
{
    if (args.size() != f.nvars()) {
        throw std::invalid_argument("compose needs one argument per variable");
    }
    for (const auto &a : args) {
        unit.check_compatible(a);
    }
    std::vector<int> max_exp(f.nvars(), 0);
    for (const auto &[m, c] : f.terms()) {
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            max_exp[v] = std::max(max_exp[v], m[v]);
        }
    }
    std::vector<std::vector<BasicSeries<C>>> powers(f.nvars());
    for (std::size_t v = 0; v < f.nvars(); ++v) {
        powers[v].push_back(unit);
        for (int e = 1; e <= max_exp[v]; ++e) {
            powers[v].push_back(powers[v].back() * args[v]);
        }
    }
    BasicSeries<C> out = unit.scaled(unit.zero());
    for (const auto &[m, c] : f.terms()) {
        BasicSeries<C> term = unit.scaled(c);
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            if (m[v] > 0) {
                term *= powers[v][static_cast<std::size_t>(m[v])];
            }
        }
        out += term;
    }
    return out;
}

using Series = BasicSeries<CoeffElem>;

// Convenience constructors over a CoeffRing.
Series series_zero(const CoeffRingPtr &ring, std::vector<std::string> variables, int cap);
Series series_variable(const CoeffRingPtr &ring, std::vector<std::string> variables, int cap, std::size_t index);
Series series_constant(const CoeffRingPtr &ring, long value, std::vector<std::string> variables, int cap);

// Univariate series from dense coefficients c[0] + c[1] x + ...
Series univariate(const CoeffRingPtr &ring, const std::vector<long> &coeffs, int cap, std::string var = "x");
// Coefficient of x^k in a univariate series.
CoeffElem coeff_of(const Series &f, int k);

// Partial derivative with respect to variable var.
Series derivative(const Series &f, std::size_t var);

// Multiplicative inverse of a series whose constant term is a unit.
Series invert_series(const Series &f);

// Reduces every coefficient into a coarser ring (see change_ring).
Series change_ring(const Series &f, const CoeffRingPtr &target);

// Term list [{"exps": [...], "coeff": <CoeffElem json>}] in graded-lex order.
nlohmann::json to_json(const Series &f);
Series series_from_json(const CoeffRingPtr &ring, std::vector<std::string> variables, int cap,
                        const nlohmann::json &terms);
std::string to_string(const Series &f);

} // namespace fgl

#include <fgl/fgl.hpp>

#include <algorithm>

#include <nlohmann/json.hpp>

#include <fgl/errors.hpp>

namespace fgl
{

std::string to_string(LawKind kind)
{
    switch (kind) {
        case LawKind::additive:
            return "additive";
        case LawKind::multiplicative:
            return "multiplicative";
        case LawKind::honda:
            return "honda";
        case LawKind::lubin_tate:
            return "lubinTate";
        case LawKind::custom:
            return "custom";
    }
    return "custom";
}

FormalGroupLaw::FormalGroupLaw(Series law, LawKind kind, std::string name, std::optional<int> height, bool polynomial)
    : law_(std::move(law)), kind_(kind), name_(std::move(name)), height_(height), polynomial_(polynomial)
{
    if (law_.nvars() != 2) {
        throw std::invalid_argument("a formal group law is a series in two variables");
    }
}

FormalGroupLaw FormalGroupLaw::reduced(const CoeffRingPtr &target) const
{
    return FormalGroupLaw(change_ring(law_, target), kind_, name_, height_, polynomial_);
}

namespace
{

const std::vector<std::string> kXY{"x", "y"};

// Element of Q[u_1..u_d]/(u-degree >= D), used only while building laws from
// their logarithms. Shares the u-monomial table of a CoeffRing.
class RatCoeff
{
public:
    explicit RatCoeff(const CoeffRing *table) : table_(table), c_(table->dimension()) {}
    RatCoeff(const CoeffRing *table, const mpq_class &value) : RatCoeff(table)
    {
        c_[0] = value;
    }

    RatCoeff zero_like() const
    {
        return RatCoeff(table_);
    }
    RatCoeff one_like() const
    {
        return RatCoeff(table_, 1);
    }
    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const mpq_class &q) { return sgn(q) == 0; });
    }
    const std::vector<mpq_class> &coefficients() const
    {
        return c_;
    }
    void set(std::size_t index, const mpq_class &v)
    {
        c_[index] = v;
    }

    RatCoeff &operator+=(const RatCoeff &o)
    {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] += o.c_[i];
        }
        return *this;
    }
    RatCoeff &operator-=(const RatCoeff &o)
    {
        for (std::size_t i = 0; i < c_.size(); ++i) {
            c_[i] -= o.c_[i];
        }
        return *this;
    }
    RatCoeff operator-() const
    {
        RatCoeff r(*this);
        for (auto &q : r.c_) {
            q = -q;
        }
        return r;
    }
    friend RatCoeff operator+(RatCoeff a, const RatCoeff &b)
    {
        a += b;
        return a;
    }
    friend RatCoeff operator*(const RatCoeff &a, const RatCoeff &b)
    {
        RatCoeff r(a.table_);
        const std::size_t n = a.c_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(a.c_[i]) == 0) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                const int k = a.table_->product_index(i, j);
                if (k >= 0 && sgn(b.c_[j]) != 0) {
                    r.c_[static_cast<std::size_t>(k)] += a.c_[i] * b.c_[j];
                }
            }
        }
        return r;
    }
    RatCoeff &operator*=(const RatCoeff &o)
    {
        *this = *this * o;
        return *this;
    }
    friend bool operator==(const RatCoeff &a, const RatCoeff &b)
    {
        return a.c_ == b.c_;
    }

    // u_i -> u_i^p on every monomial.
    RatCoeff frobenius_twist(int p) const
    {
        RatCoeff r(table_);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (sgn(c_[i]) == 0) {
                continue;
            }
            Monomial m = table_->monomials()[i];
            for (std::size_t v = 0; v < kMaxVars; ++v) {
                m.set(v, m[v] * p);
            }
            if (auto k = table_->index_of(m)) {
                r.c_[*k] += c_[i];
            }
        }
        return r;
    }

    RatCoeff scaled(const mpq_class &q) const
    {
        RatCoeff r(*this);
        for (auto &v : r.c_) {
            v *= q;
        }
        return r;
    }

private:
    const CoeffRing *table_;
    std::vector<mpq_class> c_;
};

using RatSeries = BasicSeries<RatCoeff>;

// Logarithm coefficients m_k of x^{p^k} (p^k < trunc) from
// p m_k = sum_{i=1}^{h} v_i sigma^i(m_{k-i}), m_0 = 1.
std::vector<RatCoeff> hazewinkel_log(const std::vector<RatCoeff> &v, int p, int trunc, bool twist)
{
    const RatCoeff one = v.front().one_like();
    std::vector<RatCoeff> m{one};
    long pk = p;
    for (int k = 1; pk < trunc; ++k, pk *= p) {
        RatCoeff acc = one.zero_like();
        for (int i = 1; i <= static_cast<int>(v.size()) && i <= k; ++i) {
            RatCoeff prev = m[static_cast<std::size_t>(k - i)];
            if (twist) {
                for (int s = 0; s < i; ++s) {
                    prev = prev.frobenius_twist(p);
                }
            }
            acc += v[static_cast<std::size_t>(i - 1)] * prev;
        }
        m.push_back(acc.scaled(mpq_class(1, p)));
    }
    return m;
}

// The law exp(l(x) + l(y)) for l(x) = sum_k m_k x^{p^k}, over the rationals.
RatSeries law_from_log(const std::vector<RatCoeff> &m, int p, int trunc)
{
    const RatCoeff zero = m.front().zero_like();
    // Compositional inverse e(t) of l(t) by the fixed point e = t - sum_{k>=1} m_k e^{p^k};
    // every pass fixes at least one more degree.
    const std::vector<std::string> t_var{"t"};
    RatSeries t = RatSeries::variable(zero, t_var, trunc, 0);
    RatSeries e = t;
    for (int pass = 0; pass < trunc; ++pass) {
        RatSeries next = t;
        RatSeries power = e;
        for (std::size_t k = 1; k < m.size(); ++k) {
            power = pow(power, static_cast<unsigned long>(p));
            next -= power.scaled(m[k]);
        }
        if (next == e) {
            break;
        }
        e = std::move(next);
    }
    // F = e(s) with s = l(x) + l(y), by Horner's rule; s is sparse.
    RatSeries s(zero, kXY, trunc);
    long pk = 1;
    for (std::size_t k = 0; k < m.size(); ++k, pk *= p) {
        s.add_term(Monomial{static_cast<int>(pk), 0}, m[k]);
        s.add_term(Monomial{0, static_cast<int>(pk)}, m[k]);
    }
    RatSeries law(zero, kXY, trunc);
    for (int d = trunc - 1; d >= 1; --d) {
        law = law * s;
        const auto c = e.coefficient(Monomial::unit(0, d));
        law.add_term(Monomial{}, c);
    }
    law = law * s;
    return law;
}

CoeffElem to_integral(const RatCoeff &q, const CoeffRingPtr &ring)
{
    const auto p = static_cast<unsigned long>(ring->p());
    CoeffElem r(ring);
    std::vector<std::pair<Monomial, mpz_class>> terms;
    for (std::size_t i = 0; i < q.coefficients().size(); ++i) {
        const mpq_class &c = q.coefficients()[i];
        if (sgn(c) == 0) {
            continue;
        }
        const mpz_class &den = c.get_den();
        if (mpz_divisible_ui_p(den.get_mpz_t(), p)) {
            throw IntegralityFailure("law coefficient " + c.get_str() + " is not p-integral");
        }
        mpz_class value;
        if (ring->is_exact()) {
            if (den != 1) {
                throw IntegralityFailure("law coefficient " + c.get_str() + " is not an integer");
            }
            value = c.get_num();
        } else {
            mpz_class inv;
            mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), ring->modulus().get_mpz_t());
            value = c.get_num() * inv;
        }
        terms.emplace_back(ring->monomials()[i], value);
    }
    return CoeffElem::from_terms(ring, terms);
}

FormalGroupLaw p_typical_law(const CoeffRingPtr &ring, std::vector<RatCoeff> v, int trunc, LawKind kind,
                             std::string name, int height)
{
    const int p = ring->p();
    const auto m = hazewinkel_log(v, p, trunc, true);
    const RatSeries law = law_from_log(m, p, trunc);
    return FormalGroupLaw(law.map_coefficients(CoeffElem(ring), [&](const RatCoeff &q) { return to_integral(q, ring); }),
                          kind, std::move(name), height, false);
}

long int_pow(long base, int exp)
{
    long r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

} // namespace

FormalGroupLaw make_additive(const CoeffRingPtr &ring, int trunc)
{
    if (trunc < 2) {
        throw TruncationTooSmall("additive law needs trunc >= 2");
    }
    Series f(CoeffElem(ring), kXY, trunc);
    f.add_term(Monomial{1, 0}, CoeffElem(ring, 1));
    f.add_term(Monomial{0, 1}, CoeffElem(ring, 1));
    return FormalGroupLaw(std::move(f), LawKind::additive, "additive", std::nullopt, true);
}

FormalGroupLaw make_multiplicative(const CoeffRingPtr &ring, int trunc)
{
    if (ring->spec().deformation_params != 0) {
        throw InvalidSpec("the multiplicative law is defined over rings without deformation parameters");
    }
    if (trunc < 3) {
        throw TruncationTooSmall("multiplicative law needs trunc >= 3");
    }
    Series f(CoeffElem(ring), kXY, trunc);
    f.add_term(Monomial{1, 0}, CoeffElem(ring, 1));
    f.add_term(Monomial{0, 1}, CoeffElem(ring, 1));
    f.add_term(Monomial{1, 1}, CoeffElem(ring, 1));
    return FormalGroupLaw(std::move(f), LawKind::multiplicative, "multiplicative", 1, true);
}

FormalGroupLaw make_honda(const CoeffRingPtr &ring, int height, int trunc)
{
    if (ring->spec().deformation_params != 0) {
        throw InvalidSpec("the Honda law is defined over rings without deformation parameters");
    }
    if (height < 1) {
        throw InvalidSpec("height must be positive");
    }
    if (trunc <= int_pow(ring->p(), height)) {
        throw TruncationTooSmall("Honda law of height " + std::to_string(height) + " needs trunc > p^n");
    }
    const RatCoeff zero(ring.get());
    std::vector<RatCoeff> v(static_cast<std::size_t>(height), zero);
    v.back() = zero.one_like();
    return p_typical_law(ring, std::move(v), trunc, LawKind::honda, "honda(" + std::to_string(height) + ")", height);
}

FormalGroupLaw make_lubin_tate(const CoeffRingPtr &ring, int trunc)
{
    const int d = ring->spec().deformation_params;
    if (d < 1) {
        throw InvalidSpec("the Lubin-Tate model needs at least one deformation parameter");
    }
    const int height = d + 1;
    if (trunc < 2) {
        throw TruncationTooSmall("Lubin-Tate law needs trunc >= 2");
    }
    const RatCoeff zero(ring.get());
    std::vector<RatCoeff> v;
    for (int i = 0; i < d; ++i) {
        RatCoeff ui(ring.get());
        ui.set(*ring->index_of(Monomial::unit(static_cast<std::size_t>(i))), 1);
        v.push_back(ui);
    }
    v.push_back(zero.one_like());
    return p_typical_law(ring, std::move(v), trunc, LawKind::lubin_tate, "lubinTate(" + std::to_string(height) + ")",
                         height);
}

FormalGroupLaw make_lubin_tate_height2(const CoeffRingPtr &ring, int trunc)
{
    if (ring->spec().deformation_params != 1) {
        throw InvalidSpec("the height-2 model needs exactly one deformation parameter");
    }
    return make_lubin_tate(ring, trunc);
}

FormalGroupLaw make_custom(Series law, std::string name, std::optional<int> height)
{
    return FormalGroupLaw(std::move(law), LawKind::custom, std::move(name), height, false);
}

namespace
{

void check_argument(const FormalGroupLaw &law, const Series &a)
{
    if (a.zero().ring() != law.ring() && !(a.zero().ring()->spec() == law.ring()->spec())) {
        throw SpecMismatch("argument and law live over different coefficient rings");
    }
    if (!law.is_polynomial() && a.cap() > law.trunc()) {
        throw TruncationTooSmall("argument cap " + std::to_string(a.cap()) + " exceeds the law's truncation " +
                                 std::to_string(law.trunc()));
    }
    if (!a.constant_term().is_zero()) {
        throw NonNilpotentArgument("formal group operations need arguments with zero constant term");
    }
}

} // namespace

Series formal_sum(const FormalGroupLaw &law, const Series &a, const Series &b)
{
    check_argument(law, a);
    check_argument(law, b);
    a.check_compatible(b);
    return substitute(law.series(), {a, b});
}

Series inverse_series(const FormalGroupLaw &law)
{
    const auto &ring = law.ring();
    const int cap = law.trunc();
    const Series x = series_variable(ring, {"x"}, cap, 0);
    const Series dfdy = derivative(law.series(), 1);
    // Newton iteration on y -> F(x, y); precision doubles each step.
    Series y = -x;
    for (int pass = 0; pass < 64; ++pass) {
        const Series value = substitute(law.series(), {x, y});
        if (value.is_zero()) {
            return y;
        }
        // F_y(x, y) has constant term 1; substitute needs nilpotent
        // arguments, which x and y are.
        const Series slope = substitute(dfdy, {x, y});
        y -= value * invert_series(slope);
    }
    throw NonConvergence("inverse series did not converge");
}

Series formal_inverse(const FormalGroupLaw &law, const Series &a)
{
    check_argument(law, a);
    if (law.is_polynomial() && a.cap() > law.trunc()) {
        // The inverse of a polynomial law is a genuine power series; it is
        // only known to the law's own cap.
        throw TruncationTooSmall("inverse series is only known to the law's truncation");
    }
    const Series iota = inverse_series(law).truncated(a.cap());
    return substitute(iota, {a});
}

Series formal_difference(const FormalGroupLaw &law, const Series &a, const Series &b)
{
    return formal_sum(law, a, formal_inverse(law, b));
}

NSeries n_series(const FormalGroupLaw &law, long m)
{
    return n_series(law, m, law.trunc());
}

NSeries n_series(const FormalGroupLaw &law, long m, int cap)
{
    const auto &ring = law.ring();
    const Series x = series_variable(ring, {"x"}, cap, 0);
    if (m == 0) {
        return {0, series_zero(ring, {"x"}, cap)};
    }
    const unsigned long n = static_cast<unsigned long>(m < 0 ? -m : m);
    int top = 63;
    while (((n >> top) & 1UL) == 0) {
        --top;
    }
    Series acc = x;
    for (int bit = top - 1; bit >= 0; --bit) {
        acc = formal_sum(law, acc, acc);
        if ((n >> bit) & 1UL) {
            acc = formal_sum(law, acc, x);
        }
    }
    if (m < 0) {
        acc = formal_inverse(law, acc);
    }
    return {m, std::move(acc)};
}

std::size_t count_mismatches(const Series &a, const Series &b)
{
    a.check_compatible(b);
    std::size_t n = 0;
    const Series diff = a - b;
    n += diff.size();
    return n;
}

std::size_t composition_mismatches(const FormalGroupLaw &law, const std::vector<std::pair<long, long>> &pairs)
{
    std::size_t bad = 0;
    for (const auto &[a, b] : pairs) {
        const Series outer = n_series(law, a).series;
        const Series inner = n_series(law, b).series;
        bad += count_mismatches(substitute(outer, {inner}), n_series(law, a * b).series);
    }
    return bad;
}

AxiomReport check_axioms(const FormalGroupLaw &law)
{
    const auto &ring = law.ring();
    const int cap = law.trunc();
    AxiomReport report;

    const Series x = series_variable(ring, {"x"}, cap, 0);
    const Series zero = series_zero(ring, {"x"}, cap);
    report.unit_mismatches += count_mismatches(formal_sum(law, x, zero), x);
    report.unit_mismatches += count_mismatches(formal_sum(law, zero, x), x);

    const Series &f = law.series();
    report.commutativity_mismatches = count_mismatches(f, f.embedded(kXY, {1, 0}));

    const std::vector<std::string> xyz{"x", "y", "z"};
    const Series X = series_variable(ring, xyz, cap, 0);
    const Series Y = series_variable(ring, xyz, cap, 1);
    const Series Z = series_variable(ring, xyz, cap, 2);
    const Series left = formal_sum(law, formal_sum(law, X, Y), Z);
    const Series right = formal_sum(law, X, formal_sum(law, Y, Z));
    report.associativity_mismatches = count_mismatches(left, right);

    report.inverse_mismatches = formal_sum(law, x, formal_inverse(law, x)).size();
    return report;
}

nlohmann::json to_json(const AxiomReport &report)
{
    return {{"unitMismatches", report.unit_mismatches},
            {"commutativityMismatches", report.commutativity_mismatches},
            {"associativityMismatches", report.associativity_mismatches},
            {"inverseMismatches", report.inverse_mismatches},
            {"passed", report.passed()}};
}

} // namespace fgl

#include <fgl/weierstrass.hpp>

#include <nlohmann/json.hpp>

#include <fgl/errors.hpp>

namespace fgl
{

namespace
{

using Dense = std::vector<CoeffElem>;

Dense to_dense(const Series &f, std::size_t length)
{
    Dense out(length, f.zero());
    for (const auto &[m, c] : f.terms()) {
        const auto k = static_cast<std::size_t>(m[0]);
        if (k < length) {
            out[k] = c;
        }
    }
    return out;
}

Series from_dense(const Dense &d, const Series &shape, int cap)
{
    Series out(shape.zero(), shape.variables(), cap);
    for (std::size_t k = 0; k < d.size() && static_cast<int>(k) < cap; ++k) {
        out.add_term(Monomial::unit(0, static_cast<int>(k)), d[k]);
    }
    return out;
}

// a * b truncated to `length` terms; b is assumed short.
Dense mul_trunc(const Dense &a, const Dense &b, std::size_t length)
{
    Dense out(length, a.front().zero_like());
    for (std::size_t j = 0; j < b.size() && j < length; ++j) {
        if (b[j].is_zero()) {
            continue;
        }
        for (std::size_t i = 0; i + j < length && i < a.size(); ++i) {
            if (!a[i].is_zero()) {
                fused_add_mul(out[i + j], a[i], b[j]);
            }
        }
    }
    return out;
}

// Inverse of a unit series h to `length` terms.
Dense inverse_dense(const Dense &h, std::size_t length)
{
    Dense b(length, h.front().zero_like());
    const CoeffElem h0inv = invert(h.front());
    b[0] = h0inv;
    for (std::size_t k = 1; k < length; ++k) {
        CoeffElem acc = h.front().zero_like();
        for (std::size_t j = 1; j <= k && j < h.size(); ++j) {
            if (!h[j].is_zero() && !b[k - j].is_zero()) {
                fused_add_mul(acc, h[j], b[k - j]);
            }
        }
        b[k] = -(acc * h0inv);
    }
    return b;
}

void check_univariate(const Series &f)
{
    if (f.nvars() != 1) {
        throw std::invalid_argument("Weierstrass theory is implemented for univariate series");
    }
}

bool is_monic_polynomial_of_degree(const Series &g, int d)
{
    return g.cap() > d && g.degree() == d && coeff_of(g, d).is_one();
}

} // namespace

int weierstrass_degree(const Series &f)
{
    check_univariate(f);
    for (const auto &[m, c] : f.terms()) {
        if (c.is_unit()) {
            return m[0];
        }
    }
    throw NoUnitCoefficient("no coefficient below x^" + std::to_string(f.cap()) + " is a unit");
}

DivisionResult weierstrass_divide(const Series &f, const Series &g)
{
    check_univariate(f);
    check_univariate(g);
    if (f.zero().ring() != g.zero().ring() && !(f.zero().ring()->spec() == g.zero().ring()->spec())) {
        throw SpecMismatch("dividend and divisor live over different coefficient rings");
    }
    const int d = weierstrass_degree(g);
    const int cap = f.cap();
    const CoeffElem zero = f.zero();

    if (is_monic_polynomial_of_degree(g, d)) {
        const int top = std::max(f.degree(), d - 1);
        Dense rem = to_dense(f, static_cast<std::size_t>(top + 1));
        const Dense div = to_dense(g, static_cast<std::size_t>(d + 1));
        Dense quo(static_cast<std::size_t>(std::max(top - d + 1, 0)), zero);
        for (int k = top; k >= d; --k) {
            const CoeffElem c = rem[static_cast<std::size_t>(k)];
            if (c.is_zero()) {
                continue;
            }
            quo[static_cast<std::size_t>(k - d)] = c;
            for (int j = 0; j <= d; ++j) {
                rem[static_cast<std::size_t>(k - d + j)] -= c * div[static_cast<std::size_t>(j)];
            }
        }
        rem.resize(static_cast<std::size_t>(d), zero);
        return {from_dense(quo, f, cap), from_dense(rem, f.with_cap(std::max(cap, d + 1)), std::max(cap, d + 1))};
    }

    const auto &ring = zero.ring();
    const auto nil = ring->nilpotency_index();
    const int gcap = g.cap();
    // Truncation errors start at degree >= work and move down d places per
    // pass while gaining a factor from the maximal ideal.
    const int rounds = nil ? *nil + 1 : cap + 1;
    const auto work = static_cast<std::size_t>(std::max(cap, gcap) + d * (rounds + 1));
    const auto ud = static_cast<std::size_t>(d);

    const Dense fd = to_dense(f, work);
    const Dense gd = to_dense(g, static_cast<std::size_t>(gcap));
    const Dense g_low(gd.begin(), gd.begin() + static_cast<std::ptrdiff_t>(ud));
    const Dense g_high(gd.begin() + static_cast<std::ptrdiff_t>(ud), gd.end());
    const Dense unit_inv = inverse_dense(g_high, work);

    Dense q(work, zero);
    const int max_passes = nil ? *nil + 3 : static_cast<int>(work) + 2;
    for (int pass = 0;; ++pass) {
        if (pass > max_passes) {
            throw NonConvergence("Weierstrass division did not stabilize within " + std::to_string(max_passes) +
                                 " passes");
        }
        Dense h = fd;
        const Dense qg = mul_trunc(q, g_low, work);
        for (std::size_t k = 0; k < work; ++k) {
            h[k] -= qg[k];
        }
        Dense shifted(h.begin() + static_cast<std::ptrdiff_t>(ud), h.end());
        Dense next = mul_trunc(unit_inv, shifted, work);
        if (next == q) {
            Dense rem(h.begin(), h.begin() + static_cast<std::ptrdiff_t>(ud));
            const int rcap = std::max(cap, d + 1);
            return {from_dense(q, f, cap), from_dense(rem, f.with_cap(rcap), rcap)};
        }
        q = std::move(next);
    }
}

WeierstrassFactorization weierstrass_prepare(const Series &f)
{
    check_univariate(f);
    const int d = weierstrass_degree(f);
    const int cap = f.cap();
    Series xd(f.zero(), f.variables(), cap);
    xd.add_term(Monomial::unit(0, d), f.zero().one_like());
    auto [q, r] = weierstrass_divide(xd, f);
    Series P = xd - r.truncated(cap);
    Series u = invert_series(q);
    return {std::move(u), std::move(P), d};
}

bool is_distinguished(const Series &P)
{
    if (P.nvars() != 1 || P.is_zero()) {
        return false;
    }
    const int d = P.degree();
    if (!coeff_of(P, d).is_one()) {
        return false;
    }
    for (const auto &[m, c] : P.terms()) {
        if (m[0] < d && c.is_unit()) {
            return false;
        }
    }
    return true;
}

std::optional<std::string> preparation_precision_warning(const CoeffRingSpec &spec, int M)
{
    if (spec.precision && *spec.precision <= M) {
        return "p-precision " + std::to_string(*spec.precision) + " cannot distinguish p^" + std::to_string(M) +
               " from 0; the linear coefficient of P_M is not observable";
    }
    return std::nullopt;
}

nlohmann::json to_json(const WeierstrassFactorization &w)
{
    return {{"unit", to_json(w.unit)}, {"distinguished", to_json(w.distinguished)}, {"degree", w.degree}};
}

} // namespace fgl

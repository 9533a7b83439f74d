#include <fgl/coeff_ring.hpp>

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include <fgl/errors.hpp>

namespace fgl
{

bool is_prime(long n)
{
    if (n < 2) {
        return false;
    }
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

void CoeffRingSpec::validate() const
{
    if (!is_prime(p)) {
        throw InvalidSpec("p = " + std::to_string(p) + " is not prime");
    }
    if (precision && *precision < 1) {
        throw InvalidSpec("p-precision must be at least 1");
    }
    if (deformation_params < 0) {
        throw InvalidSpec("deformation parameter count must be non-negative");
    }
    if (u_degree_cap < 1) {
        throw InvalidSpec("u-degree cap must be at least 1");
    }
    if (!precision && deformation_params != 0) {
        throw InvalidSpec("exact mode requires zero deformation parameters");
    }
    if (deformation_params >= static_cast<int>(kMaxVars)) {
        throw InvalidSpec("too many deformation parameters");
    }
}

std::string CoeffRingSpec::to_string() const
{
    std::ostringstream os;
    os << "p=" << p << ",N=" << (precision ? std::to_string(*precision) : std::string("exact"));
    if (deformation_params > 0) {
        os << ",u=" << deformation_params << ",D=" << u_degree_cap;
    }
    return os.str();
}

CoeffRing::CoeffRing(const CoeffRingSpec &spec) : spec_(spec)
{
    spec_.validate();
    if (spec_.deformation_params == 0) {
        // Only the constant monomial; the u-degree cap carries no information.
        spec_.u_degree_cap = 1;
    }
    if (spec_.precision) {
        mpz_ui_pow_ui(modulus_.get_mpz_t(), static_cast<unsigned long>(spec_.p),
                      static_cast<unsigned long>(*spec_.precision));
    } else {
        modulus_ = 0;
    }
    monomials_ = monomials_below(static_cast<std::size_t>(spec_.deformation_params), spec_.u_degree_cap);
    const std::size_t n = monomials_.size();
    product_.assign(n * n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (auto k = index_of(monomials_[i] + monomials_[j])) {
                product_[i * n + j] = static_cast<int>(*k);
            }
        }
    }
}

CoeffRingPtr CoeffRing::make(const CoeffRingSpec &spec)
{
    return std::make_shared<const CoeffRing>(spec);
}

std::optional<std::size_t> CoeffRing::index_of(const Monomial &m) const
{
    auto it = std::lower_bound(monomials_.begin(), monomials_.end(), m, GradedLex{});
    if (it == monomials_.end() || !(*it == m)) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - monomials_.begin());
}

void CoeffRing::normalize(mpz_class &value) const
{
    if (spec_.precision) {
        mpz_fdiv_r(value.get_mpz_t(), value.get_mpz_t(), modulus_.get_mpz_t());
    }
}

std::optional<int> CoeffRing::nilpotency_index() const
{
    if (!spec_.precision) {
        return std::nullopt;
    }
    // p^a u^b with a + |b| >= N + D - 1 has a >= N or |b| >= D.
    return *spec_.precision + spec_.u_degree_cap - 1;
}

CoeffElem::CoeffElem(CoeffRingPtr ring) : ring_(std::move(ring)), coeffs_(ring_->dimension()) {}

CoeffElem::CoeffElem(CoeffRingPtr ring, long value) : CoeffElem(std::move(ring))
{
    coeffs_[0] = value;
    ring_->normalize(coeffs_[0]);
}

CoeffElem::CoeffElem(CoeffRingPtr ring, const mpz_class &value) : CoeffElem(std::move(ring))
{
    coeffs_[0] = value;
    ring_->normalize(coeffs_[0]);
}

CoeffElem CoeffElem::u(CoeffRingPtr ring, std::size_t index)
{
    if (index >= static_cast<std::size_t>(ring->spec().deformation_params)) {
        throw InvalidSpec("deformation parameter index out of range");
    }
    CoeffElem r(ring);
    if (auto k = ring->index_of(Monomial::unit(index))) {
        r.coeffs_[*k] = 1;
        ring->normalize(r.coeffs_[*k]);
    }
    return r;
}

CoeffElem CoeffElem::from_terms(CoeffRingPtr ring, const std::vector<std::pair<Monomial, mpz_class>> &terms)
{
    CoeffElem r(ring);
    for (const auto &[m, c] : terms) {
        if (auto k = ring->index_of(m)) {
            r.coeffs_[*k] += c;
            ring->normalize(r.coeffs_[*k]);
        }
    }
    return r;
}

bool CoeffElem::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class &c) { return sgn(c) == 0; });
}

bool CoeffElem::is_one() const
{
    if (coeffs_[0] != 1) {
        return false;
    }
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const mpz_class &c) { return sgn(c) == 0; });
}

bool CoeffElem::is_unit() const
{
    return !mpz_divisible_ui_p(coeffs_[0].get_mpz_t(), static_cast<unsigned long>(ring_->p()));
}

void CoeffElem::check_same(const CoeffElem &other) const
{
    if (ring_ != other.ring_ && !(ring_->spec() == other.ring_->spec())) {
        throw SpecMismatch("coefficient rings differ: " + ring_->spec().to_string() + " vs " +
                           other.ring_->spec().to_string());
    }
}

CoeffElem &CoeffElem::operator+=(const CoeffElem &other)
{
    check_same(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] += other.coeffs_[i];
        ring_->normalize(coeffs_[i]);
    }
    return *this;
}

CoeffElem &CoeffElem::operator-=(const CoeffElem &other)
{
    check_same(other);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        coeffs_[i] -= other.coeffs_[i];
        ring_->normalize(coeffs_[i]);
    }
    return *this;
}

CoeffElem &CoeffElem::operator*=(const CoeffElem &other)
{
    *this = *this * other;
    return *this;
}

CoeffElem CoeffElem::operator-() const
{
    CoeffElem r(*this);
    for (auto &c : r.coeffs_) {
        c = -c;
        ring_->normalize(c);
    }
    return r;
}

void fused_add_mul(CoeffElem &acc, const CoeffElem &a, const CoeffElem &b)
{
    acc.check_same(a);
    acc.check_same(b);
    const auto &ring = *acc.ring_;
    const std::size_t n = acc.coeffs_.size();
    if (n == 1) {
        mpz_addmul(acc.coeffs_[0].get_mpz_t(), a.coeffs_[0].get_mpz_t(), b.coeffs_[0].get_mpz_t());
        ring.normalize(acc.coeffs_[0]);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a.coeffs_[i]) == 0) {
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const int k = ring.product_index(i, j);
            if (k < 0 || sgn(b.coeffs_[j]) == 0) {
                continue;
            }
            mpz_addmul(acc.coeffs_[static_cast<std::size_t>(k)].get_mpz_t(), a.coeffs_[i].get_mpz_t(),
                       b.coeffs_[j].get_mpz_t());
        }
    }
    for (auto &c : acc.coeffs_) {
        ring.normalize(c);
    }
}

CoeffElem operator*(const CoeffElem &a, const CoeffElem &b)
{
    CoeffElem r(a.ring_);
    fused_add_mul(r, a, b);
    return r;
}

bool operator==(const CoeffElem &a, const CoeffElem &b)
{
    a.check_same(b);
    return a.coeffs_ == b.coeffs_;
}

CoeffElem CoeffElem::scaled(const mpz_class &factor) const
{
    CoeffElem r(*this);
    for (auto &c : r.coeffs_) {
        c *= factor;
        ring_->normalize(c);
    }
    return r;
}

std::string CoeffElem::to_string() const
{
    std::vector<std::string> names;
    for (int i = 0; i < ring_->spec().deformation_params; ++i) {
        names.push_back("u" + std::to_string(i + 1));
    }
    std::string out;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0) {
            continue;
        }
        if (!out.empty()) {
            out += " + ";
        }
        const auto mono = ring_->monomials()[i];
        if (mono.degree() == 0) {
            out += coeffs_[i].get_str();
        } else {
            out += coeffs_[i].get_str() + "*" + mono.to_string(names);
        }
    }
    return out.empty() ? "0" : out;
}

CoeffElem pow(const CoeffElem &base, unsigned long exponent)
{
    CoeffElem result = base.one_like();
    CoeffElem b = base;
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

CoeffElem invert(const CoeffElem &a)
{
    const auto &ring = a.ring();
    if (!a.is_unit()) {
        throw NotAUnit("constant term " + a.constant().get_str() + " is divisible by p");
    }
    mpz_class c0inv;
    if (ring->is_exact()) {
        if (a.constant() != 1 && a.constant() != -1) {
            throw NotAUnit("only +-1 are invertible in the exact integer model, got " + a.constant().get_str());
        }
        c0inv = a.constant();
    } else {
        mpz_invert(c0inv.get_mpz_t(), a.constant().get_mpz_t(), ring->modulus().get_mpz_t());
    }
    const CoeffElem b0(ring, c0inv);
    // a * b0 = 1 - m with m nilpotent in the u-variables.
    const CoeffElem m = a.one_like() - a * b0;
    CoeffElem sum = a.one_like();
    CoeffElem term = a.one_like();
    for (int k = 1; k < ring->spec().u_degree_cap; ++k) {
        term *= m;
        if (term.is_zero()) {
            break;
        }
        sum += term;
    }
    return b0 * sum;
}

CoeffElem exact_divide_by_p(const CoeffElem &a)
{
    const auto &ring = a.ring();
    if (!ring->is_exact()) {
        throw ModeError("division by p is only defined over exact integer coefficients");
    }
    const auto p = static_cast<unsigned long>(ring->p());
    std::vector<std::pair<Monomial, mpz_class>> terms;
    for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
        const mpz_class &c = a.coefficient(i);
        if (!mpz_divisible_ui_p(c.get_mpz_t(), p)) {
            throw NotDivisible(c.get_str() + " is not divisible by " + std::to_string(p));
        }
        mpz_class q;
        mpz_divexact_ui(q.get_mpz_t(), c.get_mpz_t(), p);
        terms.emplace_back(ring->monomials()[i], q);
    }
    return CoeffElem::from_terms(ring, terms);
}

std::optional<int> p_valuation(const CoeffElem &a)
{
    std::optional<int> best;
    const auto p = static_cast<unsigned long>(a.ring()->p());
    for (const auto &c : a.coefficients()) {
        if (sgn(c) == 0) {
            continue;
        }
        mpz_class v = c;
        int k = 0;
        while (mpz_divisible_ui_p(v.get_mpz_t(), p)) {
            mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), p);
            ++k;
        }
        if (!best || k < *best) {
            best = k;
        }
    }
    return best;
}

CoeffElem change_ring(const CoeffElem &a, const CoeffRingPtr &target)
{
    if (a.ring() == target) {
        return a;
    }
    const auto &src = a.ring()->spec();
    const auto &dst = target->spec();
    if (src.p != dst.p) {
        throw SpecMismatch("cannot change ring across different primes");
    }
    if (!src.is_exact() && (dst.is_exact() || *dst.precision > *src.precision)) {
        throw SpecMismatch("cannot raise p-precision when changing rings");
    }
    std::vector<std::pair<Monomial, mpz_class>> terms;
    for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
        const Monomial &m = a.ring()->monomials()[i];
        bool dropped = false;
        for (int v = dst.deformation_params; v < src.deformation_params; ++v) {
            dropped = dropped || m[static_cast<std::size_t>(v)] != 0;
        }
        if (!dropped) {
            terms.emplace_back(m, a.coefficient(i));
        }
    }
    return CoeffElem::from_terms(target, terms);
}

nlohmann::json to_json(const CoeffElem &a)
{
    nlohmann::json monos = nlohmann::json::array();
    const auto nu = static_cast<std::size_t>(a.ring()->spec().deformation_params);
    for (std::size_t i = 0; i < a.coefficients().size(); ++i) {
        if (sgn(a.coefficient(i)) == 0) {
            continue;
        }
        monos.push_back({{"exps", a.ring()->monomials()[i].to_vector(nu)}, {"coeff", a.coefficient(i).get_str()}});
    }
    return {{"monomials", monos}};
}

CoeffElem coeff_from_json(const CoeffRingPtr &ring, const nlohmann::json &j)
{
    std::vector<std::pair<Monomial, mpz_class>> terms;
    const auto nu = static_cast<std::size_t>(ring->spec().deformation_params);
    for (const auto &t : j.at("monomials")) {
        auto exps = t.at("exps").get<std::vector<int>>();
        if (exps.size() != nu) {
            throw ParseError("u-exponent vector has the wrong length");
        }
        mpz_class c;
        if (c.set_str(t.at("coeff").get<std::string>(), 10) != 0) {
            throw ParseError("malformed decimal coefficient");
        }
        terms.emplace_back(Monomial(exps), c);
    }
    return CoeffElem::from_terms(ring, terms);
}

} // namespace fgl

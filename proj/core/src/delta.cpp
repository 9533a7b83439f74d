#include <fgl/delta.hpp>

#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include <fgl/errors.hpp>

namespace fgl
{

namespace
{

std::string trim(const std::string &s)
{
    const auto b = s.find_first_not_of(" \t\n");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\n");
    return s.substr(b, e - b + 1);
}

bool is_name(const std::string &s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) {
            return false;
        }
    }
    return true;
}

// Recursive-descent parser for integer polynomial expressions.
class ExprParser
{
public:
    ExprParser(const DeltaRing &R, std::string text) : R_(R), text_(std::move(text))
    {
    }

    Series parse()
    {
        Series v = expr();
        skip();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return v;
    }

private:
    [[noreturn]] void fail(const std::string &why) const
    {
        throw ParseError("cannot parse '" + text_ + "' at position " + std::to_string(pos_) + ": " + why);
    }

    void skip()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Series expr()
    {
        Series v = term();
        while (true) {
            if (accept('+')) {
                v += term();
            } else if (accept('-')) {
                v -= term();
            } else {
                return v;
            }
        }
    }

    Series term()
    {
        Series v = power();
        while (accept('*')) {
            v *= power();
        }
        return v;
    }

    Series power()
    {
        Series base = unary();
        if (accept('^')) {
            skip();
            const std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            if (start == pos_) {
                fail("expected an exponent");
            }
            return pow(base, std::stoul(text_.substr(start, pos_ - start)));
        }
        return base;
    }

    Series unary()
    {
        if (accept('-')) {
            return -unary();
        }
        return primary();
    }

    Series primary()
    {
        skip();
        if (accept('(')) {
            Series v = expr();
            if (!accept(')')) {
                fail("expected ')'");
            }
            return v;
        }
        const std::size_t start = pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
            }
            const mpz_class value(text_.substr(start, pos_ - start));
            return Series::constant(CoeffElem(R_.ring(), value), R_.generators(), kNoTruncation);
        }
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name = text_.substr(start, pos_ - start);
        if (name.empty()) {
            fail("expected a number, a generator or '('");
        }
        for (std::size_t i = 0; i < R_.generators().size(); ++i) {
            if (R_.generators()[i] == name) {
                return R_.generator(i);
            }
        }
        fail("unknown generator '" + name + "'");
    }

    const DeltaRing &R_;
    std::string text_;
    std::size_t pos_ = 0;
};

Series divide_by_p(const Series &f)
{
    return f.map_coefficients(f.zero(), [](const CoeffElem &c) { return exact_divide_by_p(c); });
}

bool divisible_by_p(const Series &f)
{
    for (const auto &[m, c] : f.terms()) {
        for (const auto &v : c.coefficients()) {
            if (mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(c.ring()->p())) == 0) {
                return false;
            }
        }
    }
    return true;
}

std::string show(const Series &f)
{
    return to_string(f);
}

TensorPoly tensor_constant(const DeltaRing &A, const AlgElem &s, int degree_bound)
{
    return TensorPoly::constant(s, A.generators(), degree_bound + 1);
}

AlgElem random_base_element(const AlgebraPtr &S, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<long> dist(0, S->ring()->p() - 1);
    std::vector<CoeffElem> coords;
    for (std::size_t i = 0; i < S->rank(); ++i) {
        coords.emplace_back(S->ring(), dist(rng));
    }
    return S->element(std::move(coords));
}

} // namespace

// -------------------------------------------------------------- DeltaRing

DeltaRing::DeltaRing(int p, std::vector<std::string> generators, std::vector<Series> psi_images)
    : p_(p), ring_(CoeffRing::make(CoeffRingSpec::exact(p))), gens_(std::move(generators))
{
    if (psi_images.size() != gens_.size()) {
        throw std::invalid_argument("psi needs one image per generator");
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        const Series &img = psi_images[i];
        if (img.nvars() != gens_.size()) {
            throw std::invalid_argument("psi image has the wrong variable count");
        }
        psi_.push_back(change_ring(img, ring_).with_cap(kNoTruncation));
        const Series diff = psi_.back() - pow(generator(i), static_cast<unsigned long>(p_));
        if (!divisible_by_p(diff)) {
            throw NotAFrobeniusLift("psi(" + gens_[i] + ") = " + show(psi_.back()) + " is not congruent to " +
                                    gens_[i] + "^" + std::to_string(p_) + " mod " + std::to_string(p_));
        }
    }
}

DeltaRing DeltaRing::parse(const std::string &text, int p)
{
    std::vector<std::string> parts;
    {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ';')) {
            parts.push_back(trim(item));
        }
    }
    if (parts.empty()) {
        throw ParseError("empty ring description");
    }
    const std::string head = parts.front();
    std::vector<std::string> gens;
    if (head == "Z") {
        // no generators
    } else if (head.size() > 3 && head.rfind("Z[", 0) == 0 && head.back() == ']') {
        std::stringstream ss(head.substr(2, head.size() - 3));
        std::string g;
        while (std::getline(ss, g, ',')) {
            g = trim(g);
            if (!is_name(g)) {
                throw ParseError("bad generator name '" + g + "' in '" + head + "'");
            }
            gens.push_back(g);
        }
    } else {
        throw ParseError("ring must be Z or Z[t1,...], got '" + head + "'");
    }

    // Parse psi clauses against a provisional ring with identity-free data.
    std::vector<std::string> clauses(parts.begin() + 1, parts.end());
    std::vector<std::string> exprs(gens.size());
    for (const auto &clause : clauses) {
        if (clause.empty()) {
            continue;
        }
        if (clause.rfind("psi", 0) != 0) {
            throw ParseError("expected a psi clause, got '" + clause + "'");
        }
        const std::string rest = trim(clause.substr(3));
        if (rest == "= id" || rest == "=id") {
            for (std::size_t i = 0; i < gens.size(); ++i) {
                exprs[i] = gens[i];
            }
            continue;
        }
        const auto arrow = rest.find("->");
        if (arrow == std::string::npos) {
            throw ParseError("expected 'psi <generator> -> <expression>', got '" + clause + "'");
        }
        const std::string name = trim(rest.substr(0, arrow));
        std::size_t idx = gens.size();
        for (std::size_t i = 0; i < gens.size(); ++i) {
            if (gens[i] == name) {
                idx = i;
            }
        }
        if (idx == gens.size()) {
            throw ParseError("psi clause names an unknown generator '" + name + "'");
        }
        exprs[idx] = trim(rest.substr(arrow + 2));
    }

    std::vector<Series> images;
    const DeltaRing scratch(p, gens, [&] {
        std::vector<Series> frob;
        const auto ring = CoeffRing::make(CoeffRingSpec::exact(p));
        for (std::size_t i = 0; i < gens.size(); ++i) {
            frob.push_back(pow(Series::variable(CoeffElem(ring), gens, kNoTruncation, i),
                               static_cast<unsigned long>(p)));
        }
        return frob;
    }());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        images.push_back(exprs[i].empty() ? scratch.psi_images()[i] : scratch.parse_element(exprs[i]));
    }
    return DeltaRing(p, gens, std::move(images));
}

Series DeltaRing::zero() const
{
    return Series(CoeffElem(ring_), gens_, kNoTruncation);
}

Series DeltaRing::constant(long value) const
{
    return Series::constant(CoeffElem(ring_, value), gens_, kNoTruncation);
}

Series DeltaRing::generator(std::size_t i) const
{
    return Series::variable(CoeffElem(ring_), gens_, kNoTruncation, i);
}

Series DeltaRing::parse_element(const std::string &text) const
{
    return ExprParser(*this, text).parse();
}

Series DeltaRing::psi(const Series &a) const
{
    if (gens_.empty()) {
        return a;
    }
    return compose(a, std::span<const Series>(psi_), constant(1));
}

Series DeltaRing::psi_power(const Series &a, int r) const
{
    Series out = a;
    for (int i = 0; i < r; ++i) {
        out = psi(out);
    }
    return out;
}

Series DeltaRing::delta(const Series &a) const
{
    try {
        return divide_by_p(psi(a) - pow(a, static_cast<unsigned long>(p_)));
    } catch (const NotDivisible &) {
        throw InvariantBreach("psi(a) - a^p is not divisible by p for a = " + show(a));
    }
}

Series DeltaRing::random_element(std::mt19937_64 &rng, int max_degree, int bound) const
{
    std::uniform_int_distribution<long> dist(-bound, bound);
    Series out = zero();
    if (gens_.empty()) {
        out.add_term(Monomial{}, CoeffElem(ring_, dist(rng)));
        return out;
    }
    for (const auto &m : monomials_below(gens_.size(), max_degree + 1)) {
        out.add_term(m, CoeffElem(ring_, dist(rng)));
    }
    return out;
}

std::string DeltaRing::to_string() const
{
    std::string out = "Z";
    if (!gens_.empty()) {
        out += "[";
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            out += (i ? "," : "") + gens_[i];
        }
        out += "]";
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
        out += "; psi " + gens_[i] + " -> " + show(psi_[i]);
    }
    return out;
}

// ------------------------------------------------------------ reports

void CheckReport::merge(const CheckReport &other)
{
    checks += other.checks;
    failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

nlohmann::json to_json(const CheckReport &report)
{
    return {{"passed", report.passed()}, {"failures", report.failures}, {"checks", report.checks}};
}

ElementPairs random_pairs(const DeltaRing &R, std::size_t count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    ElementPairs out;
    for (std::size_t i = 0; i < count; ++i) {
        Series a = R.random_element(rng, 2, 9);
        Series b = R.random_element(rng, 2, 9);
        out.emplace_back(std::move(a), std::move(b));
    }
    return out;
}

CheckReport check_delta_axioms(const DeltaRing &R, const ElementPairs &samples)
{
    CheckReport rep;
    const auto p = static_cast<unsigned long>(R.p());
    const Series P = R.constant(R.p());
    auto expect = [&](bool ok, const std::string &what, const Series &a, const Series &b) {
        ++rep.checks;
        if (!ok) {
            rep.failures.push_back(what + " fails at a = " + show(a) + ", b = " + show(b));
        }
    };
    ++rep.checks;
    if (!R.delta(R.constant(1)).is_zero()) {
        rep.failures.push_back("delta(1) is not 0");
    }
    for (const auto &[a, b] : samples) {
        const Series da = R.delta(a);
        const Series db = R.delta(b);
        const Series ap = pow(a, p);
        const Series bp = pow(b, p);
        expect(R.delta(a * b) == da * bp + ap * db + P * da * db, "product rule", a, b);
        const Series correction = divide_by_p(ap + bp - pow(a + b, p));
        expect(R.delta(a + b) == da + db + correction, "sum rule", a, b);
        expect(R.psi(a + b) == R.psi(a) + R.psi(b), "psi additivity", a, b);
        expect(R.psi(a * b) == R.psi(a) * R.psi(b), "psi multiplicativity", a, b);
        expect(divisible_by_p(R.psi(a) - ap) && divisible_by_p(R.psi(b) - bp), "psi(a) = a^p mod p", a, b);
    }
    return rep;
}

// --------------------------------------------------------------- sheaves

TensorPoly tensor_zero(const DeltaRing &A, const AlgebraPtr &S, int degree_bound)
{
    return TensorPoly(S->zero(), A.generators(), degree_bound + 1);
}

TensorPoly tensor_embed(const DeltaRing &A, const AlgebraPtr &S, const Series &a, int degree_bound)
{
    TensorPoly out = tensor_zero(A, S, degree_bound);
    for (const auto &[m, c] : a.terms()) {
        out.add_term(m, S->constant(change_ring(c, S->ring())));
    }
    return out;
}

TensorPoly SheafValue::unit() const
{
    std::vector<std::string> names;
    if (!images.empty()) {
        names = images.front().variables();
    }
    return TensorPoly::constant(base->one(), names, degree_bound + 1);
}

TensorPoly SheafValue::apply(const TensorPoly &f) const
{
    if (images.empty()) {
        return f;
    }
    return compose(f, std::span<const TensorPoly>(images), unit());
}

std::vector<TensorPoly> SheafValue::compose_images(const SheafValue &other) const
{
    std::vector<TensorPoly> out;
    for (const auto &img : other.images) {
        out.push_back(apply(img));
    }
    return out;
}

int psi_power_degree(const DeltaRing &A, int r)
{
    int d = 1;
    for (std::size_t i = 0; i < A.generators().size(); ++i) {
        d = std::max(d, A.psi_power(A.generator(i), r).degree());
    }
    return d;
}

SheafValue sheaf_eval(const DeltaRing &A, const AlgebraPtr &S, int r, int degree_bound)
{
    if (r < 0) {
        throw std::invalid_argument("the Frobenius power must be non-negative");
    }
    if (S->ring()->p() != A.p()) {
        throw SpecMismatch("the deformation base and the delta-ring use different primes");
    }
    SheafValue out{S, r, degree_bound, {}};
    for (std::size_t i = 0; i < A.generators().size(); ++i) {
        const Series img = A.psi_power(A.generator(i), r);
        if (img.degree() > degree_bound) {
            throw TruncationTooSmall("psi^" + std::to_string(r) + "(" + A.generators()[i] + ") has degree " +
                                     std::to_string(img.degree()) + " above the bound " +
                                     std::to_string(degree_bound));
        }
        out.images.push_back(tensor_embed(A, S, img, degree_bound));
    }
    return out;
}

CheckReport congruence_check(const DeltaRing &A, const AlgebraPtr &S, const std::vector<Series> &samples, int r,
                             std::uint64_t seed)
{
    if (S->ring()->spec().precision != std::optional<int>(1)) {
        throw InvalidSpec("the congruence check needs a base of characteristic p (p-precision 1)");
    }
    std::mt19937_64 rng(seed);
    CheckReport rep;
    unsigned long q = 1;
    for (int i = 0; i < r; ++i) {
        q *= static_cast<unsigned long>(A.p());
    }
    for (const auto &a : samples) {
        const AlgElem s = random_base_element(S, rng);
        const Series lifted = A.psi_power(a, r);
        const Series frob = pow(a, q);
        const int bound = std::max({lifted.degree(), frob.degree(), 0});
        const TensorPoly sp = tensor_constant(A, s, bound);
        const TensorPoly lhs = tensor_embed(A, S, lifted, bound) * sp;
        const TensorPoly rhs = tensor_embed(A, S, frob, bound) * sp;
        ++rep.checks;
        if (!(lhs == rhs)) {
            rep.failures.push_back("psi^" + std::to_string(r) + "(a) (x) s differs from a^" + std::to_string(q) +
                                   " (x) s at a = " + show(a) + ", s = " + s.to_string());
        }
    }
    return rep;
}

CheckReport composition_check(const DeltaRing &A, const AlgebraPtr &S, const std::vector<std::pair<int, int>> &pairs)
{
    CheckReport rep;
    for (const auto &[r1, r2] : pairs) {
        const int bound = std::max(psi_power_degree(A, r1 + r2), psi_power_degree(A, r1) * psi_power_degree(A, r2));
        const SheafValue first = sheaf_eval(A, S, r1, bound);
        const SheafValue second = sheaf_eval(A, S, r2, bound);
        const SheafValue both = sheaf_eval(A, S, r1 + r2, bound);
        ++rep.checks;
        if (first.compose_images(second) != both.images) {
            rep.failures.push_back("maps for r = " + std::to_string(r1) + " and r' = " + std::to_string(r2) +
                                   " do not compose to r + r'");
        }
    }
    return rep;
}

std::vector<std::vector<std::vector<int>>> subgroup_chains(int p, const std::vector<int> &exponents)
{
    std::vector<int> orders;
    std::size_t size = 1;
    for (int m : exponents) {
        int q = 1;
        for (int i = 0; i < m; ++i) {
            q *= p;
        }
        orders.push_back(q);
        size *= static_cast<std::size_t>(q);
    }
    if (size > 4096) {
        throw UnsupportedGroupType("group too large to enumerate subgroup chains");
    }
    auto decode = [&](std::size_t idx) {
        std::vector<int> v;
        for (int q : orders) {
            v.push_back(static_cast<int>(idx % static_cast<std::size_t>(q)));
            idx /= static_cast<std::size_t>(q);
        }
        return v;
    };
    auto encode = [&](const std::vector<int> &v) {
        std::size_t idx = 0;
        std::size_t stride = 1;
        for (std::size_t i = 0; i < orders.size(); ++i) {
            const int q = orders[i];
            idx += static_cast<std::size_t>(((v[i] % q) + q) % q) * stride;
            stride *= static_cast<std::size_t>(q);
        }
        return idx;
    };
    auto add = [&](std::size_t a, std::size_t b) {
        auto va = decode(a);
        const auto vb = decode(b);
        for (std::size_t i = 0; i < va.size(); ++i) {
            va[i] += vb[i];
        }
        return encode(va);
    };

    using Subgroup = std::vector<bool>;
    std::vector<std::vector<std::vector<int>>> chains;
    std::vector<std::vector<int>> steps;
    std::function<void(const Subgroup &, std::size_t)> walk = [&](const Subgroup &H, std::size_t order) {
        if (order == size) {
            chains.push_back(steps);
            return;
        }
        std::set<Subgroup> seen;
        for (std::size_t a = 0; a < size; ++a) {
            if (H[a]) {
                continue;
            }
            std::size_t pa = 0;
            for (int i = 0; i < p; ++i) {
                pa = add(pa, a);
            }
            if (!H[pa]) {
                continue;
            }
            Subgroup next = H;
            std::size_t multiple = 0;
            for (int k = 1; k < p; ++k) {
                multiple = add(multiple, a);
                for (std::size_t h = 0; h < size; ++h) {
                    if (H[h]) {
                        next[add(h, multiple)] = true;
                    }
                }
            }
            if (!seen.insert(next).second) {
                continue;
            }
            steps.push_back(decode(a));
            walk(next, order * static_cast<std::size_t>(p));
            steps.pop_back();
        }
    };
    Subgroup trivial(size, false);
    trivial[0] = true;
    walk(trivial, 1);
    return chains;
}

CheckReport frobenius_chain_check(const DeltaRing &A, const AlgebraPtr &S, const std::vector<int> &exponents)
{
    int m = 0;
    for (int e : exponents) {
        m += e;
    }
    int bound = psi_power_degree(A, m);
    int stepwise = 1;
    for (int i = 0; i < m; ++i) {
        stepwise *= psi_power_degree(A, 1);
    }
    bound = std::max({bound, stepwise, psi_power_degree(A, 1)});
    const SheafValue direct = sheaf_eval(A, S, m, bound);
    const SheafValue step = sheaf_eval(A, S, 1, bound);
    const SheafValue identity = sheaf_eval(A, S, 0, bound);
    CheckReport rep;
    const auto chains = subgroup_chains(A.p(), exponents);
    for (std::size_t c = 0; c < chains.size(); ++c) {
        std::vector<TensorPoly> images = identity.images;
        for (std::size_t s = 0; s < chains[c].size(); ++s) {
            for (auto &img : images) {
                img = step.apply(img);
            }
        }
        ++rep.checks;
        if (images != direct.images) {
            rep.failures.push_back("subgroup chain " + std::to_string(c + 1) + " composes to a map other than psi^" +
                                   std::to_string(m));
        }
    }
    return rep;
}

nlohmann::json to_json(const SheafValue &value)
{
    nlohmann::json images = nlohmann::json::array();
    for (const auto &img : value.images) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto &[m, c] : img.terms()) {
            terms.push_back({{"exps", m.to_vector(img.nvars())}, {"coeff", to_json(c)}});
        }
        images.push_back(terms);
    }
    return {{"r", value.r},
            {"degreeBound", value.degree_bound},
            {"base", {{"rank", value.base->rank()}, {"coefficientRing", value.base->ring()->spec().to_string()}}},
            {"images", images}};
}

} // namespace fgl

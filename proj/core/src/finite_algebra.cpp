#include <fgl/finite_algebra.hpp>

#include <stdexcept>

#include <fgl/errors.hpp>

namespace fgl
{

namespace
{

// Lex order with the highest variable most significant, greatest first.
struct HighLexGreater {
    bool operator()(const Monomial &a, const Monomial &b) const
    {
        for (std::size_t v = kMaxVars; v-- > 0;) {
            if (a[v] != b[v]) {
                return a[v] > b[v];
            }
        }
        return false;
    }
};

std::vector<CoeffElem> zeros(const CoeffRingPtr &ring, std::size_t n)
{
    return std::vector<CoeffElem>(n, CoeffElem(ring));
}

} // namespace

// ---------------------------------------------------------------- AlgElem

AlgElem::AlgElem(AlgebraPtr algebra, std::vector<CoeffElem> coords) : alg_(std::move(algebra)), coords_(std::move(coords))
{
    if (coords_.size() != alg_->rank()) {
        throw std::invalid_argument("coordinate vector does not match the algebra rank");
    }
}

AlgElem AlgElem::zero_like() const
{
    return alg_->zero();
}

AlgElem AlgElem::one_like() const
{
    return alg_->one();
}

bool AlgElem::is_zero() const
{
    for (const auto &c : coords_) {
        if (!c.is_zero()) {
            return false;
        }
    }
    return true;
}

bool AlgElem::is_one() const
{
    if (!coords_.front().is_one()) {
        return false;
    }
    for (std::size_t i = 1; i < coords_.size(); ++i) {
        if (!coords_[i].is_zero()) {
            return false;
        }
    }
    return true;
}

bool AlgElem::is_unit() const
{
    return coords_.front().is_unit();
}

void AlgElem::check_same(const AlgElem &o) const
{
    if (alg_ != o.alg_) {
        throw SpecMismatch("algebra elements live in different algebras");
    }
}

AlgElem &AlgElem::operator+=(const AlgElem &o)
{
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] += o.coords_[i];
    }
    return *this;
}

AlgElem &AlgElem::operator-=(const AlgElem &o)
{
    check_same(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        coords_[i] -= o.coords_[i];
    }
    return *this;
}

AlgElem &AlgElem::operator*=(const AlgElem &o)
{
    *this = *this * o;
    return *this;
}

AlgElem AlgElem::operator-() const
{
    std::vector<CoeffElem> out;
    out.reserve(coords_.size());
    for (const auto &c : coords_) {
        out.push_back(-c);
    }
    return AlgElem(alg_, std::move(out));
}

AlgElem operator*(const AlgElem &a, const AlgElem &b)
{
    a.check_same(b);
    return AlgElem(a.alg_, a.alg_->multiply(a.coords_, b.coords_));
}

bool operator==(const AlgElem &a, const AlgElem &b)
{
    return a.alg_ == b.alg_ && a.coords_ == b.coords_;
}

AlgElem AlgElem::scaled(const CoeffElem &c) const
{
    std::vector<CoeffElem> out;
    out.reserve(coords_.size());
    for (const auto &x : coords_) {
        out.push_back(x * c);
    }
    return AlgElem(alg_, std::move(out));
}

Series AlgElem::to_polynomial() const
{
    Series out = alg_->polynomial_zero();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        out.add_term(alg_->basis()[i], coords_[i]);
    }
    return out;
}

std::string AlgElem::to_string() const
{
    return fgl::to_string(to_polynomial());
}

AlgElem pow(const AlgElem &base, unsigned long exponent)
{
    AlgElem result = base.one_like();
    AlgElem b = base;
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

// ---------------------------------------------------------- FiniteAlgebra

AlgebraPtr FiniteAlgebra::make(CoeffRingPtr ring, std::vector<std::string> variables, std::vector<Series> relations,
                               nlohmann::json metadata)
{
    return std::make_shared<const FiniteAlgebra>(std::move(ring), std::move(variables), std::move(relations),
                                                 std::move(metadata));
}

AlgebraPtr FiniteAlgebra::scalars(CoeffRingPtr ring)
{
    return make(std::move(ring), {}, {});
}

FiniteAlgebra::FiniteAlgebra(CoeffRingPtr ring, std::vector<std::string> variables, std::vector<Series> relations,
                             nlohmann::json metadata)
    : ring_(std::move(ring)), vars_(std::move(variables)), metadata_(std::move(metadata))
{
    const std::size_t k = vars_.size();
    if (relations.size() != k) {
        throw std::invalid_argument("a triangular presentation needs one relation per variable");
    }
    if (k > kMaxVars) {
        throw std::invalid_argument("too many algebra variables");
    }
    for (std::size_t j = 0; j < k; ++j) {
        const Series &g = relations[j];
        if (g.nvars() != k) {
            throw std::invalid_argument("relation " + std::to_string(j + 1) + " has the wrong variable count");
        }
        int d = 0;
        for (const auto &[m, c] : g.terms()) {
            for (std::size_t v = j + 1; v < k; ++v) {
                if (m[v] != 0) {
                    throw std::invalid_argument("relation " + std::to_string(j + 1) + " involves a later variable");
                }
            }
            d = std::max(d, m[j]);
        }
        const Monomial lead = Monomial::unit(j, d);
        if (d < 1 || !g.coefficient(lead).is_one()) {
            throw std::invalid_argument("relation " + std::to_string(j + 1) + " is not monic in " + vars_[j]);
        }
        for (const auto &[m, c] : g.terms()) {
            if (m[j] == d && !(m == lead)) {
                throw std::invalid_argument("relation " + std::to_string(j + 1) +
                                            " has a term of leading degree besides the leading monomial");
            }
        }
        degrees_.push_back(d);
        relations_.push_back(g.with_cap(kNoTruncation));
    }

    // Mixed radix with x_1 fastest.
    std::size_t rank = 1;
    for (int d : degrees_) {
        rank *= static_cast<std::size_t>(d);
    }
    basis_.reserve(rank);
    for (std::size_t idx = 0; idx < rank; ++idx) {
        Monomial m;
        std::size_t rest = idx;
        for (std::size_t j = 0; j < k; ++j) {
            const auto d = static_cast<std::size_t>(degrees_[j]);
            m.set(j, static_cast<int>(rest % d));
            rest /= d;
        }
        basis_.push_back(m);
    }
    build_product_cache();
}

std::size_t FiniteAlgebra::basis_index(const Monomial &m) const
{
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
        const auto d = static_cast<std::size_t>(degrees_[j]);
        if (static_cast<std::size_t>(m[j]) >= d) {
            throw std::invalid_argument("monomial is not a basis monomial");
        }
        idx += static_cast<std::size_t>(m[j]) * stride;
        stride *= d;
    }
    return idx;
}

std::size_t FiniteAlgebra::box_index(const Monomial &m) const
{
    std::size_t idx = 0;
    std::size_t stride = 1;
    for (std::size_t j = 0; j < vars_.size(); ++j) {
        const auto width = static_cast<std::size_t>(2 * degrees_[j] - 1);
        idx += static_cast<std::size_t>(m[j]) * stride;
        stride *= width;
    }
    return idx;
}

void FiniteAlgebra::build_product_cache()
{
    std::size_t size = 1;
    for (int d : degrees_) {
        size *= static_cast<std::size_t>(2 * d - 1);
    }
    product_cache_.resize(size);
    for (std::size_t idx = 0; idx < size; ++idx) {
        Monomial m;
        std::size_t rest = idx;
        for (std::size_t j = 0; j < vars_.size(); ++j) {
            const auto width = static_cast<std::size_t>(2 * degrees_[j] - 1);
            m.set(j, static_cast<int>(rest % width));
            rest /= width;
        }
        Series mono = polynomial_zero();
        mono.add_term(m, CoeffElem(ring_, 1));
        product_cache_[idx] = reduce(mono);
    }
}

Series FiniteAlgebra::polynomial_zero() const
{
    return Series(CoeffElem(ring_), vars_, kNoTruncation);
}

std::vector<CoeffElem> FiniteAlgebra::reduce(const Series &poly) const
{
    if (poly.nvars() != vars_.size()) {
        throw SpecMismatch("polynomial has " + std::to_string(poly.nvars()) + " variables, algebra has " +
                           std::to_string(vars_.size()));
    }
    std::map<Monomial, CoeffElem, HighLexGreater> work;
    for (const auto &[m, c] : poly.terms()) {
        work.emplace(m, change_ring(c, ring_));
    }
    auto out = zeros(ring_, rank());
    while (!work.empty()) {
        auto node = work.extract(work.begin());
        const Monomial &m = node.key();
        const CoeffElem &c = node.mapped();
        if (c.is_zero()) {
            continue;
        }
        std::size_t j = vars_.size();
        while (j-- > 0) {
            if (m[j] >= degrees_[j]) {
                break;
            }
        }
        if (j == static_cast<std::size_t>(-1)) {
            out[basis_index(m)] += c;
            continue;
        }
        const Monomial lead = Monomial::unit(j, degrees_[j]);
        const Monomial base = m - lead;
        for (const auto &[t, a] : relations_[j].terms()) {
            if (t == lead) {
                continue;
            }
            auto [it, inserted] = work.try_emplace(base + t, CoeffElem(ring_));
            it->second -= c * a;
        }
    }
    return out;
}

std::vector<CoeffElem> FiniteAlgebra::multiply(const std::vector<CoeffElem> &a, const std::vector<CoeffElem> &b) const
{
    // Collect a_i b_j by the exponent of x^(alpha_i + beta_j), then expand
    // each collected coefficient along the cached reduction.
    auto collected = zeros(ring_, product_cache_.size());
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (b[j].is_zero()) {
                continue;
            }
            const std::size_t idx = box_index(basis_[i] + basis_[j]);
            if (collected[idx].is_zero()) {
                touched.push_back(idx);
            }
            fused_add_mul(collected[idx], a[i], b[j]);
        }
    }
    auto out = zeros(ring_, rank());
    for (std::size_t idx : touched) {
        const CoeffElem &s = collected[idx];
        if (s.is_zero()) {
            continue;
        }
        const auto &red = product_cache_[idx];
        for (std::size_t r = 0; r < red.size(); ++r) {
            if (!red[r].is_zero()) {
                fused_add_mul(out[r], s, red[r]);
            }
        }
        // Guard against revisiting an index that was zeroed and re-touched.
        collected[idx] = CoeffElem(ring_);
    }
    return out;
}

AlgElem FiniteAlgebra::element(const Series &poly) const
{
    return AlgElem(shared_from_this(), reduce(poly));
}

AlgElem FiniteAlgebra::element(std::vector<CoeffElem> coords) const
{
    return AlgElem(shared_from_this(), std::move(coords));
}

AlgElem FiniteAlgebra::zero() const
{
    return AlgElem(shared_from_this(), zeros(ring_, rank()));
}

AlgElem FiniteAlgebra::one() const
{
    return constant(CoeffElem(ring_, 1));
}

AlgElem FiniteAlgebra::constant(const CoeffElem &c) const
{
    auto coords = zeros(ring_, rank());
    coords[0] = change_ring(c, ring_);
    return AlgElem(shared_from_this(), std::move(coords));
}

AlgElem FiniteAlgebra::generator(std::size_t j) const
{
    if (j >= vars_.size()) {
        throw std::invalid_argument("generator index out of range");
    }
    Series x = polynomial_zero();
    x.add_term(Monomial::unit(j), CoeffElem(ring_, 1));
    return element(x);
}

// --------------------------------------------------------------- evaluate

AlgElem evaluate(const Series &f, std::span<const AlgElem> args)
{
    if (args.size() != f.nvars()) {
        throw std::invalid_argument("evaluate needs one argument per variable");
    }
    if (args.empty()) {
        throw std::invalid_argument("evaluate needs at least one argument");
    }
    const AlgebraPtr &alg = args.front().algebra();
    for (const auto &a : args) {
        if (a.algebra() != alg) {
            throw SpecMismatch("evaluation arguments live in different algebras");
        }
    }
    std::vector<int> max_exp(f.nvars(), 0);
    for (const auto &[m, c] : f.terms()) {
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            max_exp[v] = std::max(max_exp[v], m[v]);
        }
    }
    std::vector<std::vector<AlgElem>> powers(f.nvars());
    for (std::size_t v = 0; v < f.nvars(); ++v) {
        powers[v].push_back(alg->one());
        for (int e = 1; e <= max_exp[v]; ++e) {
            AlgElem next = powers[v].back() * args[v];
            const bool dead = next.is_zero();
            powers[v].push_back(std::move(next));
            if (dead) {
                break;
            }
        }
    }
    AlgElem out = alg->zero();
    for (const auto &[m, c] : f.terms()) {
        bool vanishes = false;
        for (std::size_t v = 0; v < f.nvars(); ++v) {
            if (static_cast<std::size_t>(m[v]) >= powers[v].size()) {
                vanishes = true;
                break;
            }
        }
        if (vanishes) {
            continue;
        }
        AlgElem term = powers[0][static_cast<std::size_t>(m[0])];
        for (std::size_t v = 1; v < f.nvars(); ++v) {
            if (m[v] > 0) {
                term *= powers[v][static_cast<std::size_t>(m[v])];
            }
        }
        out += term.scaled(change_ring(c, alg->ring()));
    }
    return out;
}

AlgElem evaluate(const Series &f, std::initializer_list<AlgElem> args)
{
    std::vector<AlgElem> v(args);
    return evaluate(f, std::span<const AlgElem>(v));
}

// ------------------------------------------------------------- AlgebraMap

AlgebraMap::AlgebraMap(AlgebraPtr source, AlgebraPtr target, std::vector<AlgElem> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images))
{
    if (images_.size() != source_->nvars()) {
        throw std::invalid_argument("an algebra map needs one image per source generator");
    }
    for (const auto &img : images_) {
        if (img.algebra() != target_) {
            throw SpecMismatch("image does not live in the target algebra");
        }
    }
    for (std::size_t j = 0; j < source_->relations().size(); ++j) {
        if (!apply(source_->relations()[j]).is_zero()) {
            throw RelationNotKilled("relation " + std::to_string(j + 1) + " of the source does not map to zero");
        }
    }
}

AlgElem AlgebraMap::apply(const Series &poly) const
{
    if (source_->nvars() == 0) {
        return target_->constant(poly.constant_term());
    }
    return evaluate(poly, std::span<const AlgElem>(images_));
}

AlgElem AlgebraMap::apply(const AlgElem &x) const
{
    if (x.algebra() != source_) {
        throw SpecMismatch("element does not live in the source algebra");
    }
    return apply(x.to_polynomial());
}

nlohmann::json AlgebraMap::to_json() const
{
    nlohmann::json images = nlohmann::json::array();
    for (const auto &img : images_) {
        images.push_back(fgl::to_json(img));
    }
    return {{"source", fgl::to_json(*source_)}, {"target", fgl::to_json(*target_)}, {"images", images}};
}

nlohmann::json to_json(const FiniteAlgebra &alg)
{
    nlohmann::json relations = nlohmann::json::array();
    for (const auto &g : alg.relations()) {
        relations.push_back(to_json(g));
    }
    nlohmann::json out = {{"variables", alg.variables()},
                          {"relations", relations},
                          {"rank", alg.rank()},
                          {"degrees", alg.degrees()},
                          {"coefficientRing", alg.ring()->spec().to_string()}};
    if (!alg.metadata().empty()) {
        out["metadata"] = alg.metadata();
    }
    return out;
}

nlohmann::json to_json(const AlgElem &x)
{
    return to_json(x.to_polynomial());
}

} // namespace fgl

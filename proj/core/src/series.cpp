#include <fgl/series.hpp>

#include <nlohmann/json.hpp>

namespace fgl
{

Series series_zero(const CoeffRingPtr &ring, std::vector<std::string> variables, int cap)
{
    return Series(CoeffElem(ring), std::move(variables), cap);
}

Series series_variable(const CoeffRingPtr &ring, std::vector<std::string> variables, int cap, std::size_t index)
{
    return Series::variable(CoeffElem(ring), std::move(variables), cap, index);
}

Series series_constant(const CoeffRingPtr &ring, long value, std::vector<std::string> variables, int cap)
{
    return Series::constant(CoeffElem(ring, value), std::move(variables), cap);
}

Series univariate(const CoeffRingPtr &ring, const std::vector<long> &coeffs, int cap, std::string var)
{
    Series s(CoeffElem(ring), {std::move(var)}, cap);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        s.add_term(Monomial::unit(0, static_cast<int>(k)), CoeffElem(ring, coeffs[k]));
    }
    return s;
}

CoeffElem coeff_of(const Series &f, int k)
{
    return f.coefficient(Monomial::unit(0, k));
}

Series change_ring(const Series &f, const CoeffRingPtr &target)
{
    return f.map_coefficients(CoeffElem(target), [&](const CoeffElem &c) { return change_ring(c, target); });
}

nlohmann::json to_json(const Series &f)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : f.terms()) {
        terms.push_back({{"exps", m.to_vector(f.nvars())}, {"coeff", to_json(c)}});
    }
    return terms;
}

Series series_from_json(const CoeffRingPtr &ring, std::vector<std::string> variables, int cap,
                        const nlohmann::json &terms)
{
    const std::size_t n = variables.size();
    Series s(CoeffElem(ring), std::move(variables), cap);
    for (const auto &t : terms) {
        auto exps = t.at("exps").get<std::vector<int>>();
        if (exps.size() != n) {
            throw ParseError("exponent vector has the wrong length");
        }
        s.add_term(Monomial(exps), coeff_from_json(ring, t.at("coeff")));
    }
    return s;
}

std::string to_string(const Series &f)
{
    std::string out;
    for (const auto &[m, c] : f.terms()) {
        auto cs = c.to_string();
        const bool compound = cs.find(' ') != std::string::npos;
        if (!out.empty()) {
            if (!compound && cs.front() == '-') {
                out += " - ";
                cs.erase(0, 1);
            } else {
                out += " + ";
            }
        }
        const auto ms = m.to_string(f.variables());
        if (ms == "1") {
            out += compound ? "(" + cs + ")" : cs;
        } else if (c.is_one()) {
            out += ms;
        } else {
            out += (compound ? "(" + cs + ")" : cs) + "*" + ms;
        }
    }
    if (out.empty()) {
        out = "0";
    }
    return f.cap() == kNoTruncation ? out : out + " + O(" + std::to_string(f.cap()) + ")";
}


Series derivative(const Series &f, std::size_t var)
{
    Series r(f.zero(), f.variables(), f.cap());
    for (const auto &[m, c] : f.terms()) {
        const int e = m[var];
        if (e == 0) {
            continue;
        }
        Monomial lowered = m;
        lowered.set(var, e - 1);
        r.add_term(lowered, c.scaled(mpz_class(e)));
    }
    return r;
}

Series invert_series(const Series &f)
{
    const CoeffElem c0inv = invert(f.constant_term());
    // f * c0inv = 1 - n with n of positive valuation.
    Series n = Series::constant(f.zero().one_like(), f.variables(), f.cap()) - f.scaled(c0inv);
    Series sum = Series::constant(f.zero().one_like(), f.variables(), f.cap());
    Series term = sum;
    for (int k = 1; k < f.cap(); ++k) {
        term *= n;
        if (term.is_zero()) {
            break;
        }
        sum += term;
    }
    return sum.scaled(c0inv);
}

} // namespace fgl

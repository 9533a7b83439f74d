#include <fgl/monomial.hpp>

#include <algorithm>
#include <stdexcept>

namespace fgl
{

Monomial::Monomial(std::initializer_list<int> exps) : Monomial(std::vector<int>(exps)) {}

Monomial::Monomial(const std::vector<int> &exps)
{
    if (exps.size() > kMaxVars) {
        throw std::invalid_argument("monomial has more than kMaxVars variables");
    }
    for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0 || exps[i] > 0xffff) {
            throw std::invalid_argument("monomial exponent out of range");
        }
        exps_[i] = static_cast<std::uint16_t>(exps[i]);
    }
}

Monomial Monomial::operator-(const Monomial &other) const
{
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) {
        if (exps_[i] < other.exps_[i]) {
            throw std::invalid_argument("monomial subtraction underflow");
        }
        r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - other.exps_[i]);
    }
    return r;
}

std::vector<int> Monomial::to_vector(std::size_t nvars) const
{
    return std::vector<int>(exps_.begin(), exps_.begin() + static_cast<std::ptrdiff_t>(nvars));
}

std::string Monomial::to_string(const std::vector<std::string> &names) const
{
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (exps_[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '*';
        }
        out += names[i];
        if (exps_[i] > 1) {
            out += '^' + std::to_string(exps_[i]);
        }
    }
    return out.empty() ? "1" : out;
}

namespace
{

void enumerate(std::size_t nvars, std::size_t var, int remaining, Monomial &cur, std::vector<Monomial> &out)
{
    if (var + 1 == nvars) {
        cur.set(var, remaining);
        out.push_back(cur);
        cur.set(var, 0);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur.set(var, e);
        enumerate(nvars, var + 1, remaining - e, cur, out);
    }
    cur.set(var, 0);
}

} // namespace

std::vector<Monomial> monomials_below(std::size_t nvars, int cap)
{
    std::vector<Monomial> out;
    if (nvars == 0) {
        if (cap > 0) {
            out.emplace_back();
        }
        return out;
    }
    for (int d = 0; d < cap; ++d) {
        std::vector<Monomial> level;
        Monomial cur;
        enumerate(nvars, 0, d, cur, level);
        std::sort(level.begin(), level.end(), GradedLex{});
        out.insert(out.end(), level.begin(), level.end());
    }
    return out;
}

} // namespace fgl

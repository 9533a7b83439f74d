#include <fgltools/job.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include <openssl/evp.h>

#include <fgl/delta.hpp>
#include <fgl/errors.hpp>
#include <fgl/fgl.hpp>
#include <fgl/grouprings.hpp>
#include <fgl/tate.hpp>
#include <fgl/weierstrass.hpp>

#ifndef FGL_VERSION
#define FGL_VERSION "0.0.0"
#endif

namespace fgltools
{

namespace
{

const std::set<std::string> kLaws{"additive", "multiplicative", "honda", "lubinTate2"};
const std::set<std::string> kJobCommands{"series",   "check-axioms", "prepare",    "groupring",
                                         "level",    "tate",         "delta-check", "sheaf-eval"};

bool uses_law(const std::string &command)
{
    return command != "delta-check" && command != "sheaf-eval";
}

bool uses_type(const std::string &command)
{
    return command == "groupring" || command == "level" || command == "tate";
}

struct Resolved {
    fgl::CoeffRingSpec ring;
    int height;
    int trunc;
};

Resolved resolve(const JobSpec &s)
{
    fgl::CoeffRingSpec ring;
    ring.p = s.p;
    int height = 1;
    if (s.law == "lubinTate2") {
        ring.deformation_params = 1;
        ring.u_degree_cap = s.udeg.value_or(3);
        ring.precision = s.exact ? std::nullopt : std::optional<int>(s.pprec.value_or(4));
        height = 2;
    } else {
        ring.deformation_params = 0;
        ring.u_degree_cap = 1;
        if (s.law == "honda") {
            ring.precision = s.exact ? std::nullopt : std::optional<int>(s.pprec.value_or(1));
            height = s.n;
        } else {
            ring.precision = s.exact || !s.pprec ? std::nullopt : s.pprec;
        }
    }
    ring.validate();

    int trunc = 12;
    if (s.trunc) {
        trunc = *s.trunc;
    } else if (s.command == "prepare") {
        trunc = fgl::recommended_trunc(ring, height, fgl::AbelianPType({s.M}));
    } else if (uses_type(s.command)) {
        trunc = fgl::recommended_trunc(ring, height, fgl::AbelianPType::parse(s.type));
    }
    if (s.law == "multiplicative" || s.law == "additive") {
        trunc = std::max(trunc, 3);
    }
    return {ring, height, trunc};
}

fgl::FormalGroupLaw make_law(const JobSpec &s, const Resolved &r)
{
    const auto ring = fgl::CoeffRing::make(r.ring);
    if (s.law == "additive") {
        return fgl::make_additive(ring, r.trunc);
    }
    if (s.law == "multiplicative") {
        return fgl::make_multiplicative(ring, r.trunc);
    }
    if (s.law == "honda") {
        return fgl::make_honda(ring, s.n, r.trunc);
    }
    return fgl::make_lubin_tate_height2(ring, r.trunc);
}

nlohmann::json presentation(const fgl::FiniteAlgebra &alg)
{
    const auto full = fgl::to_json(alg);
    nlohmann::json out = {{"variables", full["variables"]}, {"relations", full["relations"]}, {"rank", full["rank"]}};
    nlohmann::json text = nlohmann::json::array();
    for (const auto &g : alg.relations()) {
        text.push_back(fgl::to_string(g));
    }
    out["relationsText"] = text;
    out["coefficientRing"] = full["coefficientRing"];
    if (full.contains("metadata")) {
        out["metadata"] = full["metadata"];
    }
    return out;
}

long power(long base, int exp)
{
    long r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

} // namespace

bool is_job_command(const std::string &command)
{
    return kJobCommands.count(command) > 0;
}

void JobSpec::validate() const
{
    if (!is_job_command(command)) {
        throw fgl::InvalidSpec("unknown command '" + command + "'");
    }
    if (!fgl::is_prime(p)) {
        throw fgl::InvalidSpec("--p must be prime, got " + std::to_string(p));
    }
    if (uses_law(command) && kLaws.count(law) == 0) {
        throw fgl::InvalidSpec("--law must be one of additive, multiplicative, honda, lubinTate2; got '" + law + "'");
    }
    if (pprec && *pprec < 1) {
        throw fgl::InvalidSpec("--pprec must be positive");
    }
    if (udeg && *udeg < 1) {
        throw fgl::InvalidSpec("--udeg must be positive");
    }
    if (trunc && *trunc < 1) {
        throw fgl::InvalidSpec("--trunc must be positive");
    }
    if (n < 1 || M < 1 || samples < 0 || r < 0) {
        throw fgl::InvalidSpec("--n and --M must be positive; --samples and --r non-negative");
    }
    if (uses_type(command)) {
        if (type.empty()) {
            throw fgl::InvalidSpec("--type is required for " + command);
        }
        (void)fgl::AbelianPType::parse(type);
    } else if (command == "sheaf-eval" && !type.empty()) {
        (void)fgl::AbelianPType::parse(type);
    }
}

nlohmann::json JobSpec::canonical() const
{
    validate();
    nlohmann::json j = {{"command", command}, {"p", p}};
    if (uses_law(command)) {
        const Resolved res = resolve(*this);
        j["law"] = law;
        j["pprec"] = res.ring.precision ? nlohmann::json(*res.ring.precision) : nlohmann::json("exact");
        if (res.ring.deformation_params > 0) {
            j["udeg"] = res.ring.u_degree_cap;
        }
        if (law == "honda") {
            j["n"] = n;
        }
        j["trunc"] = res.trunc;
    }
    if (command == "series") {
        j["m"] = m == 0 ? static_cast<long>(p) : m;
    } else if (command == "check-axioms") {
        j["samples"] = samples;
        j["seed"] = seed;
    } else if (command == "prepare") {
        j["M"] = M;
    } else if (uses_type(command)) {
        j["type"] = fgl::AbelianPType::parse(type).to_string();
    } else if (command == "delta-check") {
        j["ring"] = ring;
        j["samples"] = samples;
        j["seed"] = seed;
    } else if (command == "sheaf-eval") {
        j["ring"] = ring;
        j["r"] = r;
        j["pprec"] = exact ? nlohmann::json("exact") : nlohmann::json(pprec.value_or(1));
        j["seed"] = seed;
        if (!type.empty()) {
            j["type"] = fgl::AbelianPType::parse(type).to_string();
        }
    }
    return j;
}

JobSpec JobSpec::from_json(const nlohmann::json &j)
{
    if (!j.is_object()) {
        throw fgl::ParseError("a job spec must be a JSON object");
    }
    JobSpec s;
    try {
        s.command = j.at("command").get<std::string>();
        s.law = j.value("law", s.law);
        s.p = j.value("p", s.p);
        s.n = j.value("n", s.n);
        s.M = j.value("M", s.M);
        s.m = j.value("m", s.m);
        s.type = j.value("type", s.type);
        if (j.contains("pprec")) {
            if (j["pprec"].is_string()) {
                if (j["pprec"].get<std::string>() != "exact") {
                    throw fgl::ParseError("pprec must be a positive integer or \"exact\"");
                }
                s.exact = true;
            } else {
                s.pprec = j["pprec"].get<int>();
            }
        }
        if (j.contains("udeg")) {
            s.udeg = j["udeg"].get<int>();
        }
        if (j.contains("trunc")) {
            s.trunc = j["trunc"].get<int>();
        }
        s.ring = j.value("ring", s.ring);
        s.samples = j.value("samples", s.samples);
        s.r = j.value("r", s.r);
        s.seed = j.value("seed", s.seed);
    } catch (const nlohmann::json::exception &e) {
        throw fgl::ParseError(std::string("bad job spec: ") + e.what());
    }
    s.validate();
    return s;
}

std::string sha256_hex(const std::string &data)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    std::ostringstream os;
    for (unsigned int i = 0; i < len; ++i) {
        os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return os.str();
}

std::string spec_hash(const JobSpec &spec)
{
    return sha256_hex(spec.canonical().dump());
}

std::string library_version()
{
    return FGL_VERSION;
}

std::string ResultRecord::digest() const
{
    const nlohmann::json core = {{"specHash", spec_hash},
                                 {"outputs", outputs},
                                 {"version", version},
                                 {"status", status == Status::ok ? "ok" : "checkFailed"}};
    return sha256_hex(core.dump());
}

nlohmann::json ResultRecord::to_json() const
{
    return {{"specHash", spec_hash},
            {"spec", spec},
            {"outputs", outputs},
            {"version", version},
            {"status", status == Status::ok ? "ok" : "checkFailed"},
            {"durationMs", duration_ms},
            {"digest", digest()}};
}

ResultRecord ResultRecord::from_json(const nlohmann::json &j)
{
    ResultRecord r;
    r.spec_hash = j.at("specHash").get<std::string>();
    r.spec = j.at("spec");
    r.outputs = j.at("outputs");
    r.version = j.at("version").get<std::string>();
    const auto status = j.at("status").get<std::string>();
    if (status != "ok" && status != "checkFailed") {
        throw fgl::ParseError("unknown record status '" + status + "'");
    }
    r.status = status == "ok" ? Status::ok : Status::check_failed;
    r.duration_ms = j.at("durationMs").get<double>();
    return r;
}

ResultRecord run_job(const JobSpec &spec)
{
    const auto start = std::chrono::steady_clock::now();
    ResultRecord rec;
    rec.spec = spec.canonical();
    rec.spec_hash = sha256_hex(rec.spec.dump());
    rec.version = library_version();
    nlohmann::json out;
    bool ok = true;

    if (uses_law(spec.command)) {
        const Resolved res = resolve(spec);
        const fgl::FormalGroupLaw law = make_law(spec, res);
        out["law"] = law.name();
        out["coefficientRing"] = res.ring.to_string();

        if (spec.command == "series") {
            const long m = spec.m == 0 ? spec.p : spec.m;
            const auto ns = fgl::n_series(law, m);
            out["m"] = m;
            out["series"] = fgl::to_json(ns.series);
            out["text"] = fgl::to_string(ns.series);
        } else if (spec.command == "check-axioms") {
            const auto report = fgl::check_axioms(law);
            std::mt19937_64 rng(spec.seed);
            std::uniform_int_distribution<long> dist(-3, 7);
            std::vector<std::pair<long, long>> pairs;
            for (int i = 0; i < spec.samples; ++i) {
                const long a = dist(rng);
                const long b = dist(rng);
                pairs.emplace_back(a, b);
            }
            const std::size_t comp = fgl::composition_mismatches(law, pairs);
            out["axioms"] = fgl::to_json(report);
            out["compositionPairs"] = pairs.size();
            out["compositionMismatches"] = comp;
            ok = report.passed() && comp == 0;
            out["passed"] = ok;
        } else if (spec.command == "prepare") {
            const auto f = fgl::n_series(law, power(spec.p, spec.M)).series;
            const auto w = fgl::weierstrass_prepare(f);
            const auto product = w.unit * w.distinguished.with_cap(f.cap());
            const std::size_t mismatches = fgl::count_mismatches(product, f);
            const auto val = fgl::p_valuation(fgl::coeff_of(w.distinguished, 1));
            out["factorization"] = fgl::to_json(w);
            out["unitText"] = fgl::to_string(w.unit);
            out["distinguishedText"] = fgl::to_string(w.distinguished);
            out["distinguished"] = fgl::is_distinguished(w.distinguished);
            out["reconstructionMismatches"] = mismatches;
            out["linearCoefficientValuation"] = val ? nlohmann::json(*val) : nlohmann::json(nullptr);
            if (const auto warn = fgl::preparation_precision_warning(res.ring, spec.M)) {
                out["warning"] = *warn;
            }
            ok = mismatches == 0 && fgl::is_distinguished(w.distinguished);
        } else if (spec.command == "groupring") {
            const auto alg = fgl::group_cohomology_ring(law, fgl::AbelianPType::parse(spec.type));
            out.update(presentation(*alg));
        } else if (spec.command == "level") {
            const auto A = fgl::AbelianPType::parse(spec.type);
            const auto level = fgl::level_ring(law, A);
            const auto q = fgl::quotient_to_level(fgl::group_cohomology_ring(law, A), level);
            out.update(presentation(*level));
            out["quotientMapChecked"] = true;
            (void)q;
        } else if (spec.command == "tate") {
            const auto report = fgl::tate_report(law, fgl::AbelianPType::parse(spec.type));
            out.update(fgl::to_json(report));
            ok = report.comparison.bijective && report.factors_invertible();
        }
    } else if (spec.command == "delta-check") {
        const auto R = fgl::DeltaRing::parse(spec.ring, spec.p);
        const auto report = fgl::check_delta_axioms(R, fgl::random_pairs(R, static_cast<std::size_t>(spec.samples),
                                                                         spec.seed));
        out = fgl::to_json(report);
        out["ring"] = R.to_string();
        ok = report.passed();
    } else if (spec.command == "sheaf-eval") {
        const auto R = fgl::DeltaRing::parse(spec.ring, spec.p);
        const auto base_spec = spec.exact ? fgl::CoeffRingSpec::exact(spec.p)
                                          : fgl::CoeffRingSpec::truncated(spec.p, spec.pprec.value_or(1));
        const auto S = fgl::FiniteAlgebra::scalars(fgl::CoeffRing::make(base_spec));
        const int bound = std::max(fgl::psi_power_degree(R, spec.r),
                                   fgl::psi_power_degree(R, spec.r) * fgl::psi_power_degree(R, 1));
        const auto value = fgl::sheaf_eval(R, S, spec.r, bound);
        out["ring"] = R.to_string();
        out["sheaf"] = fgl::to_json(value);
        nlohmann::json text = nlohmann::json::array();
        for (std::size_t i = 0; i < R.generators().size(); ++i) {
            text.push_back(R.generators()[i] + " -> " + fgl::to_string(R.psi_power(R.generator(i), spec.r)));
        }
        out["imagesText"] = text;
        std::mt19937_64 pair_rng(spec.seed);
        std::uniform_int_distribution<int> small(0, 3);
        std::vector<std::pair<int, int>> pairs{{spec.r, 1}, {1, spec.r}};
        while (pairs.size() < 10) {
            const int a = small(pair_rng);
            pairs.emplace_back(a, small(pair_rng));
        }
        const auto comp = fgl::composition_check(R, S, pairs);
        out["composition"] = fgl::to_json(comp);
        ok = comp.passed();
        if (!spec.type.empty()) {
            const auto chains = fgl::frobenius_chain_check(R, S, fgl::AbelianPType::parse(spec.type).exponents);
            out["frobeniusChains"] = fgl::to_json(chains);
            ok = ok && chains.passed();
        }
        if (base_spec.precision == std::optional<int>(1)) {
            std::mt19937_64 rng(spec.seed);
            std::vector<fgl::Series> samples;
            for (int i = 0; i < 10; ++i) {
                samples.push_back(R.random_element(rng, 2, 9));
            }
            const auto cong = fgl::congruence_check(R, S, samples, spec.r, spec.seed);
            out["congruence"] = fgl::to_json(cong);
            ok = ok && cong.passed();
        }
    }

    rec.outputs = std::move(out);
    rec.status = ok ? Status::ok : Status::check_failed;
    rec.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

bool is_usage_error(const std::string &error_name)
{
    static const std::set<std::string> usage{"ParseError",  "InvalidSpec",        "UnsupportedGroupType",
                                             "ModeError",   "TruncationTooSmall", "SpecMismatch",
                                             "NotAFrobeniusLift"};
    return usage.count(error_name) > 0;
}

std::string render_text(const nlohmann::json &outputs)
{
    std::ostringstream os;
    for (const auto &[key, value] : outputs.items()) {
        if (value.is_string()) {
            os << key << ": " << value.get<std::string>() << "\n";
        } else if (value.is_array() && !value.empty() && value.front().is_string()) {
            os << key << ":\n";
            for (const auto &v : value) {
                os << "  " << v.get<std::string>() << "\n";
            }
        } else if (value.is_structured()) {
            // Raw term lists are for machines; text mode prints a summary.
            if (value.is_object() && value.contains("passed")) {
                os << key << ": " << (value["passed"].get<bool>() ? "passed" : "FAILED") << "\n";
            }
        } else {
            os << key << ": " << value.dump() << "\n";
        }
    }
    return os.str();
}

} // namespace fgltools

#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include <fgl/errors.hpp>
#include <fgltools/job.hpp>
#include <fgltools/suite.hpp>

#ifndef FGL_SUITE_DIR
#define FGL_SUITE_DIR "suite"
#endif

namespace
{

using fgltools::JobSpec;

struct RawOptions {
    std::string pprec;
    std::string format = "json";
    std::string output;
};

void add_law_options(CLI::App *cmd, JobSpec &spec, RawOptions &raw)
{
    cmd->add_option("--law", spec.law, "additive, multiplicative, honda or lubinTate2")
        ->check(CLI::IsMember({"additive", "multiplicative", "honda", "lubinTate2"}));
    cmd->add_option("--n", spec.n, "height of the Honda law");
    cmd->add_option("--pprec", raw.pprec, "p-adic precision N, or 'exact'");
    cmd->add_option("--udeg", spec.udeg, "u-degree cap D of the deformation ring");
    cmd->add_option("--trunc", spec.trunc, "series truncation T (default: sufficient for the request)");
}

void add_common_options(CLI::App *cmd, JobSpec &spec, RawOptions &raw)
{
    cmd->add_option("--p", spec.p, "the prime");
    cmd->add_option("--report,--format", raw.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    cmd->add_option("--output", raw.output, "write the result here instead of stdout");
}

void emit(const std::string &text, const std::string &path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw fgl::InvalidSpec("cannot write --output " + path);
    }
    out << text;
}

int run_single(JobSpec spec, const RawOptions &raw)
{
    if (!raw.pprec.empty()) {
        if (raw.pprec == "exact") {
            spec.exact = true;
        } else {
            try {
                std::size_t used = 0;
                spec.pprec = std::stoi(raw.pprec, &used);
                if (used != raw.pprec.size()) {
                    throw std::invalid_argument(raw.pprec);
                }
            } catch (const std::logic_error &) {
                throw fgl::InvalidSpec("--pprec expects a positive integer or 'exact', got '" + raw.pprec + "'");
            }
        }
    }
    const auto record = fgltools::run_job(spec);
    if (raw.format == "json") {
        emit(record.outputs.dump(2) + "\n", raw.output);
    } else {
        emit(fgltools::render_text(record.outputs), raw.output);
    }
    if (record.outputs.contains("warning")) {
        std::cerr << "warning: " << record.outputs["warning"].get<std::string>() << "\n";
    }
    return record.status == fgltools::Status::ok ? 0 : 2;
}

struct SuiteFlags {
    std::string config;
    std::string baseline;
    std::string cache_dir;
    std::string output;
    std::size_t workers = 0;
    bool no_cache = false;
    bool write_baseline = false;
};

int run_suite(const SuiteFlags &flags)
{
    const bool default_config = flags.config.empty();
    const std::string config = default_config ? std::string(FGL_SUITE_DIR) + "/default.json" : flags.config;
    std::string baseline = flags.baseline;
    if (baseline.empty() && default_config) {
        baseline = std::string(FGL_SUITE_DIR) + "/baseline.json";
    }
    const auto jobs = fgltools::load_suite_config(config);

    fgltools::SuiteOptions opts;
    opts.workers = flags.workers ? flags.workers : std::max(1U, std::thread::hardware_concurrency());
    if (!flags.no_cache) {
        opts.cache.emplace(flags.cache_dir.empty() ? fgltools::default_cache_dir() : std::filesystem::path(flags.cache_dir));
    }
    const auto entries = fgltools::run_suite(jobs, opts);

    std::size_t passed = 0;
    std::size_t cached = 0;
    nlohmann::json summary = nlohmann::json::array();
    for (const auto &e : entries) {
        passed += e.passed() ? 1 : 0;
        cached += e.from_cache ? 1 : 0;
        nlohmann::json item = {{"spec", e.spec.canonical()}};
        if (e.record) {
            item["digest"] = e.record->digest();
            item["status"] = e.passed() ? "ok" : "checkFailed";
            item["outputs"] = e.record->outputs;
        } else {
            item["status"] = "error";
            item["error"] = e.error;
        }
        summary.push_back(item);
    }
    std::cout << fgltools::render_table(entries);
    std::cout << entries.size() << " jobs, " << passed << " passed, " << entries.size() - passed << " failed\n";
    std::cerr << cached << " of " << entries.size() << " results served from cache\n";
    if (!flags.output.empty()) {
        emit(summary.dump(2) + "\n", flags.output);
    }

    int status = passed == entries.size() ? 0 : 2;
    const auto digests = fgltools::suite_digests(entries);
    if (flags.write_baseline) {
        if (baseline.empty()) {
            throw fgl::InvalidSpec("--write-baseline needs --baseline when --config is given");
        }
        fgltools::write_baseline(baseline, digests);
        std::cout << "baseline written: " << baseline << " (" << digests.size() << " digests)\n";
    } else if (!baseline.empty()) {
        const auto diff = fgltools::diff_baseline(digests, fgltools::load_baseline(baseline));
        if (diff.matches()) {
            std::cout << "baseline: match (" << digests.size() << " digests)\n";
        } else {
            std::cout << "BaselineMismatch: " << diff.unexpected.size() << " new, " << diff.missing.size()
                      << " missing\n";
            for (const auto &d : diff.unexpected) {
                std::cout << "  + " << d << "\n";
            }
            for (const auto &d : diff.missing) {
                std::cout << "  - " << d << "\n";
            }
            status = 2;
        }
    }
    return status;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Formal group laws, level structures and delta-rings", "fgl"};
    app.require_subcommand(1);
    app.set_version_flag("--version", fgltools::library_version());

    JobSpec spec;
    RawOptions raw;

    auto *series = app.add_subcommand("series", "the m-series [m](x) of a formal group law");
    add_common_options(series, spec, raw);
    add_law_options(series, spec, raw);
    series->add_option("--m", spec.m, "multiplier (default p)");

    auto *axioms = app.add_subcommand("check-axioms", "unit, commutativity, associativity, inverse, [a][b] = [ab]");
    add_common_options(axioms, spec, raw);
    add_law_options(axioms, spec, raw);
    axioms->add_option("--samples", spec.samples, "random (a, b) pairs for [a]([b](x)) = [ab](x)");
    axioms->add_option("--seed", spec.seed, "random seed");

    auto *prepare = app.add_subcommand("prepare", "Weierstrass preparation of [p^M](x)");
    add_common_options(prepare, spec, raw);
    add_law_options(prepare, spec, raw);
    prepare->add_option("--M", spec.M, "exponent M");

    auto *groupring = app.add_subcommand("groupring", "the ring Lambda[[x_1..x_k]]/([p^m_i](x_i))");
    auto *level = app.add_subcommand("level", "the level-structure quotient");
    auto *tate = app.add_subcommand("tate", "rational level/Tate comparison and Euler class checks");
    for (auto *cmd : {groupring, level, tate}) {
        add_common_options(cmd, spec, raw);
        add_law_options(cmd, spec, raw);
        cmd->add_option("--type", spec.type, "group exponents, e.g. 2 or 1,1")->required();
    }

    auto *delta = app.add_subcommand("delta-check", "delta-ring axioms on random samples");
    add_common_options(delta, spec, raw);
    delta->add_option("--ring", spec.ring, "e.g. \"Z[t]; psi t -> t^2\"");
    delta->add_option("--samples", spec.samples, "random pairs");
    delta->add_option("--seed", spec.seed, "random seed");

    auto *sheaf = app.add_subcommand("sheaf-eval", "psi^r (x) Id on generators over Z/p^N");
    add_common_options(sheaf, spec, raw);
    sheaf->add_option("--ring", spec.ring, "e.g. \"Z[t]; psi t -> t^2\"");
    sheaf->add_option("--r", spec.r, "Frobenius power");
    sheaf->add_option("--pprec", raw.pprec, "p-adic precision N of the base, or 'exact'");
    sheaf->add_option("--seed", spec.seed, "random seed");
    sheaf->add_option("--type", spec.type, "also check Frobenius composites along subgroup chains of this group");

    SuiteFlags sflags;
    auto *suite = app.add_subcommand("suite", "run a job list with caching and baseline comparison");
    suite->add_option("--config", sflags.config, "JSON array of job specs (default: bundled suite)");
    suite->add_option("--baseline", sflags.baseline, "sorted JSON array of record digests");
    suite->add_option("--workers", sflags.workers, "concurrent jobs (default: hardware threads)");
    suite->add_option("--cache-dir", sflags.cache_dir, "result cache (default: $FGL_CACHE_DIR or .fgl-cache)");
    suite->add_option("--output", sflags.output, "write the full JSON summary here");
    suite->add_flag("--no-cache", sflags.no_cache, "neither read nor write the cache");
    suite->add_flag("--write-baseline", sflags.write_baseline, "replace the baseline with this run's digests");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 1;
    }

    try {
        if (suite->parsed()) {
            return run_suite(sflags);
        }
        for (auto *cmd : app.get_subcommands()) {
            spec.command = cmd->get_name();
        }
        return run_single(spec, raw);
    } catch (const fgl::Error &e) {
        std::cerr << "fgl: " << e.name() << ": " << e.what() << "\n";
        return fgltools::is_usage_error(e.name()) ? 1 : 2;
    } catch (const std::exception &e) {
        std::cerr << "fgl: " << e.what() << "\n";
        return 2;
    }
}

#include <fgltools/suite.hpp>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include <fgl/errors.hpp>

namespace fgltools
{

namespace fs = std::filesystem;

ResultCache::ResultCache(fs::path dir) : dir_(std::move(dir))
{
    fs::create_directories(dir_);
}

fs::path ResultCache::path_for(const std::string &spec_hash) const
{
    return dir_ / (spec_hash + ".json");
}

std::optional<ResultRecord> ResultCache::load(const std::string &spec_hash) const
{
    std::ifstream in(path_for(spec_hash));
    if (!in) {
        return std::nullopt;
    }
    try {
        const auto j = nlohmann::json::parse(in);
        ResultRecord rec = ResultRecord::from_json(j);
        if (rec.spec_hash != spec_hash || sha256_hex(rec.spec.dump()) != spec_hash ||
            rec.version != library_version() || j.value("digest", std::string()) != rec.digest()) {
            return std::nullopt;
        }
        return rec;
    } catch (const std::exception &) {
        return std::nullopt;
    }
}

void ResultCache::store(const ResultRecord &record) const
{
    static std::atomic<unsigned long> counter{0};
    std::ostringstream tmpname;
    tmpname << "." << record.spec_hash << ".tmp." << std::this_thread::get_id() << "." << counter++;
    const fs::path tmp = dir_ / tmpname.str();
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << record.to_json().dump(2) << "\n";
        if (!out) {
            throw std::runtime_error("cannot write cache entry " + tmp.string());
        }
    }
    fs::rename(tmp, path_for(record.spec_hash));
}

fs::path default_cache_dir()
{
    if (const char *env = std::getenv("FGL_CACHE_DIR"); env && *env) {
        return env;
    }
    return ".fgl-cache";
}

std::vector<JobSpec> load_suite_config(const fs::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw fgl::ParseError("cannot open suite config " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw fgl::ParseError("suite config " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!j.is_array()) {
        throw fgl::ParseError("suite config must be a JSON array of job specs");
    }
    std::vector<JobSpec> jobs;
    for (const auto &item : j) {
        jobs.push_back(JobSpec::from_json(item));
    }
    return jobs;
}

bool SuiteEntry::passed() const
{
    return record && record->status == Status::ok;
}

std::vector<SuiteEntry> run_suite(const std::vector<JobSpec> &jobs, const SuiteOptions &options)
{
    std::vector<SuiteEntry> entries(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            const std::size_t i = next++;
            if (i >= jobs.size()) {
                return;
            }
            SuiteEntry &e = entries[i];
            e.spec = jobs[i];
            try {
                const std::string key = spec_hash(e.spec);
                if (options.cache) {
                    if (auto hit = options.cache->load(key)) {
                        e.record = std::move(hit);
                        e.from_cache = true;
                        continue;
                    }
                }
                e.record = run_job(e.spec);
                if (options.cache) {
                    options.cache->store(*e.record);
                }
            } catch (const fgl::Error &err) {
                e.error = err.name() + ": " + err.what();
            } catch (const std::exception &err) {
                e.error = err.what();
            }
        }
    };
    const std::size_t n = std::max<std::size_t>(1, std::min(options.workers, jobs.size()));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
    return entries;
}

std::vector<std::string> suite_digests(const std::vector<SuiteEntry> &entries)
{
    std::vector<std::string> out;
    for (const auto &e : entries) {
        if (e.record) {
            out.push_back(e.record->digest());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> load_baseline(const fs::path &path)
{
    std::ifstream in(path);
    if (!in) {
        throw fgl::ParseError("cannot open baseline " + path.string());
    }
    try {
        auto v = nlohmann::json::parse(in).get<std::vector<std::string>>();
        std::sort(v.begin(), v.end());
        return v;
    } catch (const nlohmann::json::exception &e) {
        throw fgl::ParseError("baseline " + path.string() + " is not a JSON array of digests: " + e.what());
    }
}

void write_baseline(const fs::path &path, const std::vector<std::string> &digests)
{
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << nlohmann::json(digests).dump(2) << "\n";
    }
    fs::rename(tmp, path);
}

BaselineDiff diff_baseline(const std::vector<std::string> &digests, const std::vector<std::string> &baseline)
{
    BaselineDiff d;
    std::set_difference(digests.begin(), digests.end(), baseline.begin(), baseline.end(),
                        std::back_inserter(d.unexpected));
    std::set_difference(baseline.begin(), baseline.end(), digests.begin(), digests.end(),
                        std::back_inserter(d.missing));
    return d;
}

std::string render_table(const std::vector<SuiteEntry> &entries)
{
    std::ostringstream os;
    os << std::left << std::setw(4) << "#" << std::setw(14) << "command" << std::setw(16) << "law" << std::setw(4)
       << "p" << std::setw(8) << "type" << std::setw(8) << "status" << "digest\n";
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto &e = entries[i];
        const bool has_law = e.spec.command != "delta-check" && e.spec.command != "sheaf-eval";
        os << std::left << std::setw(4) << i + 1 << std::setw(14) << e.spec.command << std::setw(16)
           << (has_law ? e.spec.law : e.spec.ring) << std::setw(4) << e.spec.p << std::setw(8)
           << (e.spec.type.empty() ? "-" : e.spec.type) << std::setw(8)
           << (e.passed() ? "pass" : (e.record ? "FAIL" : "ERROR"))
           << (e.record ? e.record->digest().substr(0, 16) : e.error) << "\n";
    }
    return os.str();
}

} // namespace fgltools

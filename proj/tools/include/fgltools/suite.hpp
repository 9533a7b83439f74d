#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <fgltools/job.hpp>

namespace fgltools
{

// Content-addressed store of ResultRecords: <dir>/<specHash>.json.
class ResultCache
{
public:
    explicit ResultCache(std::filesystem::path dir);

    const std::filesystem::path &dir() const
    {
        return dir_;
    }
    std::filesystem::path path_for(const std::string &spec_hash) const;

    // Empty when missing, unreadable, or inconsistent with its key.
    std::optional<ResultRecord> load(const std::string &spec_hash) const;
    // Write to a temporary file in the same directory, then rename.
    void store(const ResultRecord &record) const;

private:
    std::filesystem::path dir_;
};

// FGL_CACHE_DIR, else ".fgl-cache".
std::filesystem::path default_cache_dir();

std::vector<JobSpec> load_suite_config(const std::filesystem::path &path);

struct SuiteEntry {
    JobSpec spec;
    std::optional<ResultRecord> record;
    std::string error; // library error text when the job threw
    bool from_cache = false;

    bool passed() const;
};

struct SuiteOptions {
    std::size_t workers = 1;
    std::optional<ResultCache> cache;
};

// Jobs run on a pool of workers; entries come back in config order.
std::vector<SuiteEntry> run_suite(const std::vector<JobSpec> &jobs, const SuiteOptions &options);

// Sorted, de-duplicated digests of the successful records.
std::vector<std::string> suite_digests(const std::vector<SuiteEntry> &entries);

struct BaselineDiff {
    std::vector<std::string> unexpected; // produced but not in the baseline
    std::vector<std::string> missing;    // in the baseline but not produced

    bool matches() const
    {
        return unexpected.empty() && missing.empty();
    }
};

std::vector<std::string> load_baseline(const std::filesystem::path &path);
void write_baseline(const std::filesystem::path &path, const std::vector<std::string> &digests);
BaselineDiff diff_baseline(const std::vector<std::string> &digests, const std::vector<std::string> &baseline);

std::string render_table(const std::vector<SuiteEntry> &entries);

} // namespace fgltools

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

namespace fgltools
{

// One invocation of a computational subcommand. Fields that a command does
// not use are dropped by canonical(), so equivalent requests hash equally.
struct JobSpec {
    std::string command;
    std::string law = "multiplicative";
    int p = 2;
    int n = 1;  // Honda height
    int M = 1;  // prepare: [p^M]
    long m = 0; // series: [m], 0 means p
    std::string type;
    std::optional<int> pprec; // empty: library default for the law
    bool exact = false;       // --pprec exact
    std::optional<int> udeg;
    std::optional<int> trunc;
    std::string ring = "Z[t]";
    int samples = 100;
    int r = 1;
    std::uint64_t seed = 1;

    // Throws fgl::InvalidSpec / fgl::ParseError on bad values.
    void validate() const;
    // Defaults resolved, irrelevant fields removed.
    nlohmann::json canonical() const;
    static JobSpec from_json(const nlohmann::json &j);
};

bool is_job_command(const std::string &command);

// Lowercase hex SHA-256.
std::string sha256_hex(const std::string &data);
std::string spec_hash(const JobSpec &spec);

enum class Status { ok, check_failed };

struct ResultRecord {
    std::string spec_hash;
    nlohmann::json spec;
    nlohmann::json outputs;
    std::string version;
    Status status = Status::ok;
    double duration_ms = 0;

    // Hash of everything except the duration.
    std::string digest() const;
    nlohmann::json to_json() const;
    static ResultRecord from_json(const nlohmann::json &j);
};

std::string library_version();

// Runs one job. Library errors propagate as fgl::Error.
ResultRecord run_job(const JobSpec &spec);

// Usage-type library errors (bad input rather than failed mathematics).
bool is_usage_error(const std::string &error_name);

std::string render_text(const nlohmann::json &outputs);

} // namespace fgltools

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <sys/wait.h>

#include <gtest/gtest.h>

#include <fgl/errors.hpp>
#include <fgltools/job.hpp>
#include <fgltools/suite.hpp>

using namespace fgltools;
namespace fs = std::filesystem;

namespace
{

fs::path scratch(const std::string &name)
{
    auto dir = fs::temp_directory_path() / ("fgl-tools-test-" + name + "-" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

JobSpec level_job(int p, const std::string &type)
{
    JobSpec s;
    s.command = "level";
    s.law = "multiplicative";
    s.p = p;
    s.exact = true;
    s.type = type;
    return s;
}

int run_cli(const std::string &args)
{
    const std::string cmd = std::string(FGL_BINARY) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

} // namespace

TEST(Job, HashIsDeterministicAndIgnoresUnusedFields)
{
    auto a = level_job(3, "2");
    auto b = a;
    b.samples = 7;
    b.ring = "Z";
    EXPECT_EQ(spec_hash(a), spec_hash(b));
    b.p = 2;
    EXPECT_NE(spec_hash(a), spec_hash(b));
    EXPECT_EQ(spec_hash(a).size(), 64u);
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Job, ValidationErrors)
{
    auto s = level_job(4, "1");
    EXPECT_THROW(s.validate(), fgl::InvalidSpec);
    s = level_job(2, "");
    EXPECT_THROW(s.validate(), fgl::InvalidSpec);
    s = level_job(2, "1");
    s.pprec = 0;
    s.exact = false;
    EXPECT_THROW(s.validate(), fgl::InvalidSpec);
    EXPECT_THROW(JobSpec::from_json(nlohmann::json::array()), fgl::ParseError);
    EXPECT_THROW(JobSpec::from_json({{"command", "level"}, {"pprec", "sometimes"}}), fgl::ParseError);
}

TEST(Job, OutputsAreDeterministic)
{
    const auto a = run_job(level_job(3, "2"));
    const auto b = run_job(level_job(3, "2"));
    EXPECT_EQ(a.outputs.dump(), b.outputs.dump());
    EXPECT_EQ(a.digest(), b.digest());
    EXPECT_EQ(a.outputs["rank"], 6);
    EXPECT_EQ(a.outputs["relationsText"][0], "3 + 9*x + 18*x^2 + 21*x^3 + 15*x^4 + 6*x^5 + x^6");
}

TEST(Job, RecordJsonRoundTrip)
{
    const auto rec = run_job(level_job(2, "2"));
    const auto back = ResultRecord::from_json(rec.to_json());
    EXPECT_EQ(back.digest(), rec.digest());
    EXPECT_EQ(back.spec_hash, rec.spec_hash);
}

TEST(Cache, CorruptedEntryIsRecomputed)
{
    const auto dir = scratch("corrupt");
    SuiteOptions opts;
    opts.cache.emplace(dir);
    const std::vector<JobSpec> jobs{level_job(2, "1"), level_job(3, "1")};
    const auto first = run_suite(jobs, opts);
    ASSERT_TRUE(first[0].passed());
    EXPECT_FALSE(first[0].from_cache);
    const auto path = opts.cache->path_for(spec_hash(jobs[0]));
    ASSERT_TRUE(fs::exists(path));
    {
        std::ofstream out(path, std::ios::trunc);
        out << "{\"specHash\": \"garbage\"";
    }
    const auto second = run_suite(jobs, opts);
    EXPECT_FALSE(second[0].from_cache);
    EXPECT_TRUE(second[1].from_cache);
    EXPECT_EQ(second[0].record->digest(), first[0].record->digest());
    // tampered outputs with a stale digest are rejected too
    auto j = nlohmann::json::parse(std::ifstream(path));
    j["outputs"]["rank"] = 99;
    std::ofstream(path, std::ios::trunc) << j.dump();
    EXPECT_FALSE(opts.cache->load(spec_hash(jobs[0])).has_value());
    fs::remove_all(dir);
}

TEST(Cache, CachedAndFreshAgree)
{
    const auto jobs = load_suite_config(FGL_SUITE_CONFIG);
    std::mt19937_64 rng(10);
    std::vector<JobSpec> picked;
    std::sample(jobs.begin(), jobs.end(), std::back_inserter(picked), 10, rng);
    const auto dir = scratch("agree");
    SuiteOptions cached;
    cached.cache.emplace(dir);
    cached.workers = 4;
    run_suite(picked, cached);
    const auto warm = run_suite(picked, cached);
    SuiteOptions fresh;
    const auto cold = run_suite(picked, fresh);
    ASSERT_EQ(warm.size(), cold.size());
    for (std::size_t i = 0; i < warm.size(); ++i) {
        EXPECT_TRUE(warm[i].from_cache);
        EXPECT_EQ(warm[i].record->digest(), cold[i].record->digest());
        EXPECT_EQ(warm[i].record->outputs.dump(), cold[i].record->outputs.dump());
    }
    fs::remove_all(dir);
}

TEST(Suite, BaselineDiff)
{
    const auto d = diff_baseline({"a", "b", "d"}, {"a", "c", "d"});
    EXPECT_FALSE(d.matches());
    EXPECT_EQ(d.unexpected, std::vector<std::string>{"b"});
    EXPECT_EQ(d.missing, std::vector<std::string>{"c"});
    EXPECT_TRUE(diff_baseline({}, {}).matches());
    const auto dir = scratch("baseline");
    write_baseline(dir / "b.json", {"x", "y"});
    EXPECT_EQ(load_baseline(dir / "b.json"), (std::vector<std::string>{"x", "y"}));
    fs::remove_all(dir);
}

TEST(Suite, ErrorsAreReportedPerEntry)
{
    auto bad = level_job(2, "1,1");
    const auto entries = run_suite({bad, level_job(2, "1")}, SuiteOptions{});
    EXPECT_FALSE(entries[0].passed());
    EXPECT_NE(entries[0].error.find("UnsupportedGroupType"), std::string::npos);
    EXPECT_TRUE(entries[1].passed());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli("level --law multiplicative --p 3 --type 2"), 0);
    EXPECT_EQ(run_cli("tate --law multiplicative --p 2 --type 2"), 0);
    EXPECT_EQ(run_cli("level --law multiplicative --p 3 --type 2 --frobnicate"), 1);
    EXPECT_EQ(run_cli("level --law multiplicative --p 3"), 1);
    EXPECT_EQ(run_cli("level --law multiplicative --p 4 --type 1"), 1);
    EXPECT_EQ(run_cli("level --law multiplicative --p 2 --type 0"), 1);
    EXPECT_EQ(run_cli("series --pprec sometimes"), 1);
    EXPECT_EQ(run_cli("delta-check --ring 'Z[t]; psi t -> t + 1' --p 2"), 1);
    EXPECT_EQ(run_cli("--help"), 0);
}

TEST(Cli, EmptySuiteAndBaselineMismatch)
{
    const auto dir = scratch("cli");
    std::ofstream(dir / "empty.json") << "[]";
    EXPECT_EQ(run_cli("suite --no-cache --config " + (dir / "empty.json").string()), 0);
    std::ofstream(dir / "one.json") << R"([{"command": "level", "law": "multiplicative", "p": 2, "type": "1"}])";
    std::ofstream(dir / "wrong.json") << R"(["0000"])";
    EXPECT_EQ(run_cli("suite --no-cache --config " + (dir / "one.json").string() + " --baseline " +
                      (dir / "wrong.json").string()),
              2);
    EXPECT_EQ(run_cli("suite --no-cache --config " + (dir / "one.json").string() + " --baseline " +
                      (dir / "fresh.json").string() + " --write-baseline"),
              0);
    EXPECT_EQ(run_cli("suite --no-cache --config " + (dir / "one.json").string() + " --baseline " +
                      (dir / "fresh.json").string()),
              0);
    fs::remove_all(dir);
}

#include "asec/random_tasks.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Outcome {
    int code = -1;
    std::string out;
};

Outcome run(const std::string &args) {
    const std::string command = std::string(ASEC_CLI) + " " + args + " 2>/dev/null";
    Outcome o;
    FILE *pipe = popen(command.c_str(), "r");
    if (!pipe)
        return o;
    char buffer[4096];
    std::size_t n;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0)
        o.out.append(buffer, n);
    const int status = pclose(pipe);
    o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return o;
}

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

const std::string diamond = ASEC_TEST_DATA "/diamond.json";

class Scratch : public ::testing::Test {
protected:
    void SetUp() override {
        dir = std::filesystem::temp_directory_path() /
              ("asec_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::remove_all(dir);
        std::filesystem::create_directories(dir);
    }
    void TearDown() override { std::filesystem::remove_all(dir); }
    std::filesystem::path dir;
};

} // namespace

TEST(CliPlan, DiamondLooseBound) {
    const Outcome o = run("plan " + diamond + " -e 4");
    EXPECT_EQ(o.code, 0);
    EXPECT_NE(o.out.find("eta_eff: 2.5"), std::string::npos) << o.out;
    EXPECT_NE(o.out.find("s0-a"), std::string::npos);
}

TEST(CliPlan, JsonReport) {
    const Outcome o = run("plan " + diamond + " -e 1 --json --validate");
    ASSERT_EQ(o.code, 0);
    const auto report = nlohmann::json::parse(o.out);
    EXPECT_EQ(report["eta_eff"], 1.0);
    EXPECT_EQ(report["plan"], (nlohmann::json{"s0-a", "a-g"}));
    EXPECT_EQ(report["stats"]["expensive_calls"], 1);
    EXPECT_EQ(report["validation"]["optimal_cost"], 3.0);
    EXPECT_EQ(report["validation"]["epsilon_optimal"], true);
}

TEST(CliPlan, BoundMissedExitCode) {
    // The only route has a single loose tier.
    const auto path = std::filesystem::temp_directory_path() / "asec_cli_missed.json";
    std::ofstream(path) << R"({"atoms": ["p"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": [], "add": ["p"], "del": [], "estimators": [{"cmin": 1, "cmax": 3, "tau_ms": 0}]}]})";
    EXPECT_EQ(run("plan " + path.string() + " -e 2").code, 2);
    EXPECT_EQ(run("plan " + path.string() + " -e 3").code, 0);
    std::filesystem::remove(path);
}

TEST(CliPlan, UnsolvableExitCode) {
    const auto path = std::filesystem::temp_directory_path() / "asec_cli_unsolvable.json";
    std::ofstream(path) << R"({"atoms": ["p", "q"], "init": [], "goal": ["p"], "actions": [
      {"name": "a", "pre": ["q"], "add": ["p"], "del": [], "estimators": [{"cmin": 1, "cmax": 1, "tau_ms": 0}]}]})";
    const Outcome o = run("plan " + path.string() + " --json");
    EXPECT_EQ(o.code, 3);
    EXPECT_EQ(nlohmann::json::parse(o.out)["eta_eff"], nullptr);
    std::filesystem::remove(path);
}

TEST(CliPlan, Errors) {
    EXPECT_EQ(run("plan /nonexistent/task.json").code, 1);
    EXPECT_EQ(run("plan " + diamond + " -e 0.5").code, 1);
    EXPECT_EQ(run("plan " + diamond + " -a greedy").code, 1);
}

TEST(CliPlan, EseAndBaselines) {
    for (const char *alg : {"asec_ese", "indifferent", "fully_lazy"}) {
        const Outcome o = run("plan " + diamond + " --json -e 1 -a " + std::string(alg));
        ASSERT_EQ(o.code, 0) << alg;
        EXPECT_EQ(nlohmann::json::parse(o.out)["eta_eff"], 1.0) << alg;
    }
}

TEST(CliPlan, ExternalEstimator) {
    const std::string cmd = std::string("--estimator-cmd '") + ASEC_FAKE_ESTIMATOR + " " +
                            diamond + " ok 99'";
    const Outcome o = run("plan " + diamond + " --json -e 1 " + cmd);
    ASSERT_EQ(o.code, 0) << o.out;
    EXPECT_EQ(nlohmann::json::parse(o.out)["eta_eff"], 1.0);
}

TEST_F(Scratch, BenchWritesCsvAndRerunsIdentically) {
    const Outcome gen = run("generate " + dir.string() + "/corpus --random 3 --transport 1 --seed 2");
    ASSERT_EQ(gen.code, 0) << gen.out;
    const std::string common = "bench " + dir.string() +
                               "/corpus --epsilon 1,2 --algorithms asec,indifferent "
                               "--no-timing --threads 2 -o ";
    const Outcome first = run(common + (dir / "a.csv").string());
    ASSERT_EQ(first.code, 0) << first.out;
    const Outcome second = run(common + (dir / "b.csv").string());
    ASSERT_EQ(second.code, 0);
    const std::string csv = read_file(dir / "a.csv");
    EXPECT_EQ(csv, read_file(dir / "b.csv"));
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4 * 2 * 2);
    EXPECT_NE(first.out.find("16 runs over 4 tasks"), std::string::npos) << first.out;
}

TEST_F(Scratch, BenchEmptyCorpusFails) {
    EXPECT_EQ(run("bench " + dir.string() + " -o " + (dir / "x.csv").string()).code, 1);
}

TEST_F(Scratch, PddlPair) {
    const asec::PddlText text = asec::transport_pddl({}, 3);
    std::ofstream(dir / "domain.pddl") << text.domain;
    std::ofstream(dir / "problem.pddl") << text.problem;
    const Outcome o = run("plan " + (dir / "domain.pddl").string() + " " +
                          (dir / "problem.pddl").string() + " -e 1 --json --validate --seed 4");
    ASSERT_EQ(o.code, 0) << o.out;
    const auto report = nlohmann::json::parse(o.out);
    EXPECT_EQ(report["eta_eff"], 1.0);
    EXPECT_EQ(report["validation"]["true_cost"], report["validation"]["optimal_cost"]);
}

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sys/wait.h>

#include "permcode/cli.hpp"

using namespace permcode;
using namespace permcode::cli;

namespace {

ParseOutcome parse(std::vector<std::string> args, const char* cap_env = nullptr) {
  args.insert(args.begin(), "permcode");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_args(static_cast<int>(argv.size()), argv.data(), cap_env);
}

RunResult run_args(std::vector<std::string> args, const char* cap_env = nullptr) {
  const auto parsed = parse(std::move(args), cap_env);
  if (!parsed.config) return parsed.failure;
  return run(*parsed.config);
}

bool contains(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

struct Spawned {
  int status = -1;
  std::string output;
};

Spawned spawn(const std::string& args, const std::string& env = "") {
  Spawned out;
  FILE* pipe = popen((env + " " + PERMCODE_CLI_PATH + " " + args + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return out;
  char buffer[4096];
  while (std::size_t got = std::fread(buffer, 1, sizeof buffer, pipe)) out.output.append(buffer, got);
  const int raw = pclose(pipe);
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return out;
}

}  // namespace

TEST(Cli, PmaxTableShowsExactAndDecimal) {
  const auto r = run_args({"pmax", "--n", "3", "--d", "2"});
  EXPECT_EQ(r.exit_status, kExitOk);
  EXPECT_TRUE(contains(r.output, "5/6 (0.833333333333)")) << r.output;
  EXPECT_TRUE(contains(r.output, "method=exact-enumeration"));
  EXPECT_TRUE(contains(r.output, "seed=0"));
  EXPECT_TRUE(contains(r.output, "dim_w        5"));
}

TEST(Cli, PmaxJsonReport) {
  const auto r = run_args({"pmax", "--n", "4", "--d", "2", "--format", "json"});
  ASSERT_EQ(r.exit_status, kExitOk) << r.error;
  const auto doc = nlohmann::json::parse(r.output);
  EXPECT_EQ(doc["metadata"]["command"], "pmax");
  EXPECT_EQ(doc["metadata"]["cap"], 66);
  EXPECT_EQ(doc["report"]["p_quantum_exact"], "1/2");
}

TEST(Cli, PmaxMonteCarloRoutes) {
  const auto r = run_args({"pmax", "--n", "20", "--d", "10", "--method", "plancherel", "--samples", "2000", "--seed", "4"});
  ASSERT_EQ(r.exit_status, kExitOk) << r.error;
  EXPECT_TRUE(contains(r.output, "method=plancherel-mc"));
  EXPECT_TRUE(contains(r.output, " +- "));
  const auto auto_route = run_args({"pmax", "--n", "20", "--d", "4", "--cap", "10", "--samples", "500"});
  EXPECT_TRUE(contains(auto_route.output, "method=schur-weyl-mc")) << auto_route.output;
}

TEST(Cli, SweepCsvRoundTrip) {
  const auto r = run_args({"sweep", "--r", "0.5", "--n", "10,20,30", "--format", "csv"});
  ASSERT_EQ(r.exit_status, kExitOk) << r.error;
  const auto rows = io::parse_sweep_csv(r.output);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto exact = coding::quantum_pmax_exact({rows[i].n_boxes, rows[i].n_colors});
    ASSERT_TRUE(rows[i].p_quantum_exact);
    EXPECT_EQ(*rows[i].p_quantum_exact, *exact.p_quantum_exact);
    EXPECT_EQ(rows[i].p_classical, exact.p_classical);
    EXPECT_EQ(rows[i].info_bound, exact.p_info_bound);
    EXPECT_EQ(rows[i].n_colors, rows[i].n_boxes / 2);
    if (i > 0) EXPECT_GT(*rows[i].p_quantum_exact, *rows[i - 1].p_quantum_exact);
  }
  EXPECT_EQ(*rows[0].p_quantum_exact, Rational(54263, 80640));
}

TEST(Cli, VerifyN3Json) {
  const auto r = run_args({"verify", "--suite", "n3", "--format", "json"});
  EXPECT_EQ(r.exit_status, kExitOk) << r.error;
  const auto doc = nlohmann::json::parse(r.output);
  ASSERT_TRUE(doc.contains("checks"));
  for (const auto& c : doc["checks"]) {
    const auto check = io::check_from_json(c);
    EXPECT_TRUE(check.pass) << check.check_name;
  }
}

TEST(Cli, SameConfigGivesIdenticalBytes) {
  const std::vector<std::string> args = {"pmax", "--n", "25", "--d", "5", "--method", "schur-weyl", "--samples", "3000", "--seed", "11", "--format", "json"};
  EXPECT_EQ(run_args(args).output, run_args(args).output);
  const std::vector<std::string> sample = {"sample", "--n", "12", "--samples", "5", "--seed", "3"};
  EXPECT_EQ(run_args(sample).output, run_args(sample).output);
}

TEST(Cli, ErrorsAndExitCodes) {
  const auto capacity = run_args({"pmax", "--n", "80", "--d", "5", "--method", "exact"});
  EXPECT_EQ(capacity.exit_status, kExitError);
  EXPECT_TRUE(contains(capacity.error, "66")) << capacity.error;

  const auto range = run_args({"pmax", "--n", "0", "--d", "2"});
  EXPECT_EQ(range.exit_status, kExitError);
  EXPECT_TRUE(contains(range.error, "--n")) << range.error;
  EXPECT_TRUE(contains(range.error, "100000")) << range.error;

  EXPECT_EQ(run_args({"pmax", "--n", "3"}).exit_status, kExitError);
  EXPECT_EQ(run_args({"frobnicate"}).exit_status, kExitError);
  EXPECT_EQ(run_args({"sample", "--n", "5", "--measure", "schur-weyl"}).exit_status, kExitError);
  EXPECT_EQ(run_args({"bounds", "--kind", "lemma1", "--n", "10"}).exit_status, kExitError);
  EXPECT_EQ(run_args({"--help"}).exit_status, kExitOk);
}

TEST(Cli, EnvironmentCap) {
  EXPECT_EQ(cap_from_environment(nullptr), 66);
  EXPECT_EQ(cap_from_environment("12"), 12);
  EXPECT_THROW(cap_from_environment("twelve"), DomainError);
  EXPECT_THROW(cap_from_environment("0"), DomainError);

  const auto capped = run_args({"pmax", "--n", "13", "--d", "3", "--method", "exact"}, "12");
  EXPECT_EQ(capped.exit_status, kExitError);
  // The flag overrides the environment.
  EXPECT_EQ(run_args({"pmax", "--n", "13", "--d", "3", "--cap", "20"}, "12").exit_status, kExitOk);
  EXPECT_EQ(parse({"verify"}, "bad").failure.exit_status, kExitError);
}

TEST(Cli, ClassicalAndBounds) {
  const auto classical = run_args({"classical", "--n", "7", "--d", "3", "--trials", "20000", "--seed", "2"});
  EXPECT_EQ(classical.exit_status, kExitOk);
  EXPECT_TRUE(contains(classical.output, "1/24"));
  EXPECT_TRUE(contains(classical.output, "simulated"));

  const auto erdos = run_args({"bounds", "--kind", "erdos", "--n", "100", "--format", "json"});
  ASSERT_EQ(erdos.exit_status, kExitOk) << erdos.error;
  EXPECT_EQ(nlohmann::json::parse(erdos.output)["report"]["violations"], 0);
}

TEST(CliBinary, EndToEnd) {
  const auto pmax = spawn("pmax --n 3 --d 2");
  EXPECT_EQ(pmax.status, 0);
  EXPECT_TRUE(contains(pmax.output, "5/6 (0.833333333333)")) << pmax.output;

  const auto bad = spawn("pmax --n 3 --d 0");
  EXPECT_EQ(bad.status, 1);
  EXPECT_TRUE(contains(bad.output, "--d")) << bad.output;

  EXPECT_EQ(spawn("pmax --n 13 --d 3 --method exact").status, 0);
  const auto capped = spawn("pmax --n 13 --d 3 --method exact", "PERMCODE_CAP=12");
  EXPECT_EQ(capped.status, 1);
  EXPECT_TRUE(contains(capped.output, "12")) << capped.output;

  const std::string path = ::testing::TempDir() + "permcode_sweep.csv";
  EXPECT_EQ(spawn("sweep --r 1 --n 3,4 --format csv --output " + path).status, 0);
  std::ifstream file(path);
  const std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
  const auto rows = io::parse_sweep_csv(text);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(*rows[1].p_quantum_exact, Rational(1));
}

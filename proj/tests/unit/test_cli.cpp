#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace {

namespace cli = bibalance::cli;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "bibalance");
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) {
  return std::string(BIBALANCE_TEST_DATA) + "/" + name;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(CliSimulate, OptimalAgainstGreedy) {
  const Result r = run({"simulate", "--house", "optimal", "--gambler", "greedy", "--T", "10"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j.at("loss").get<double>(), 10.0 + std::sqrt(10.0), 1e-9);
  EXPECT_EQ(j.at("house"), "optimal");
  EXPECT_EQ(j.at("T"), 10);
}

TEST(CliSimulate, KtReplay) {
  const Result r = run({"simulate", "--house", "kt", "--gambler",
                        "replay:" + data("zeros_then_one.json"), "--T", "8"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("loss").get<double>(), 16.0);
}

TEST(CliSimulate, ProportionalAtFairOddsGainsNothing) {
  const Result r = run({"simulate", "--house", "uniform", "--gambler", "proportional", "--T",
                        "5", "--gamma", "1"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(json::parse(r.out).at("gain").get<double>(), 0.0);
}

TEST(CliSimulate, TranscriptMatchesGolden) {
  const auto path = std::filesystem::temp_directory_path() / "bibalance_cli_transcript.csv";
  const Result r = run({"simulate", "--house", "optimal", "--gambler", "greedy", "--T", "3",
                        "--format", "csv", "--out", path.string()});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(slurp(path.string()), slurp(data("transcript_optimal_greedy_T3.csv")));
  std::filesystem::remove(path);
}

TEST(CliSweep, MatchesGolden) {
  const Result r = run({"sweep", "--house", "optimal,uniform", "--T", "1,2,3"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out, slurp(data("sweep_optimal_uniform.csv")));
}

TEST(CliSweep, SingleThreadIsByteIdentical) {
  const std::vector<std::string> args{"sweep", "--house", "optimal,kt,blackwell,mc",
                                      "--T", "4,6,8", "--bw-delta", "1.5", "--mc-n", "50"};
  const Result many = run(args);
  ASSERT_EQ(many.code, cli::kOk) << many.err;
  setenv("BIBALANCE_THREADS", "1", 1);
  const Result one = run(args);
  unsetenv("BIBALANCE_THREADS");
  EXPECT_EQ(one.out, many.out);
}

TEST(CliSweep, Trace) {
  const Result r = run({"sweep", "--house", "blackwell", "--T", "40", "--trace"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,phi1,phi2,region,r,bound");
}

TEST(CliVerify, ExitCodes) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "optimal-loss", "--T", "10"},
        {"verify", "equalizer-t2"},
        {"verify", "subtree-balance", "--T", "5"},
        {"verify", "jensen", "--T", "6", "--samples", "50"},
        {"verify", "grid-minimax", "--T", "2", "--res", "0.005"},
        {"verify", "blackwell-partition", "--points", "1000"},
        {"verify", "blackwell-projection", "--points", "5"}}) {
    const Result r = run(args);
    EXPECT_EQ(r.code, cli::kOk) << args[1] << " " << r.err;
    EXPECT_TRUE(json::parse(r.out).at("pass").get<bool>()) << args[1];
  }
  const Result coarse = run({"verify", "grid-minimax", "--T", "3", "--res", "0.01"});
  EXPECT_EQ(coarse.code, cli::kCheckFailed);
  EXPECT_FALSE(json::parse(coarse.out).at("pass").get<bool>());
  EXPECT_EQ(run({"verify", "no-such-check"}).code, cli::kUsage);
}

TEST(CliPlay, BetsFromStdin) {
  const Result r = run({"play", "--house", "optimal", "--T", "2"}, "1\n1\n");
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("house loss 3.41421"), std::string::npos) << r.out;
}

TEST(CliPlay, RepromptsOnBadInput) {
  const Result r = run({"play", "--house", "uniform", "--T", "1"}, "abc\n2\n0\n");
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("not a number in [0,1]: 'abc'"), std::string::npos);
  EXPECT_NE(r.out.find("house loss 2"), std::string::npos);
}

TEST(CliPlay, EndOfInputAborts) {
  EXPECT_EQ(run({"play", "--house", "optimal", "--T", "2"}, "1\n").code, cli::kAborted);
}

TEST(CliCompare, Csv) {
  const Result r = run({"compare", "--house", "optimal,kt", "--gambler", "greedy,alternating",
                        "--T", "6"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "house,gambler,loss,normalized_loss");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(CliErrors, UsageAndProtocol) {
  EXPECT_EQ(run({"simulate", "--house", "nope", "--gambler", "greedy", "--T", "3"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"simulate", "--house", "optimal", "--gambler", "greedy", "--T", "0"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsage);
  EXPECT_EQ(run({"simulate", "--house", "optimal", "--house-params", R"({"strict":true})",
                 "--gambler", "constant:0.5", "--T", "3"})
                .code,
            cli::kProtocol);
  EXPECT_EQ(run({"simulate", "--house", "blackwell", "--gambler", "greedy", "--T", "10"}).code,
            cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

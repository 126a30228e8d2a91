#include <gtest/gtest.h>

#include <sstream>

#include "flosim/dense_oracle.hpp"
#include "flosim_cli/cli.hpp"
#include <json.hpp>

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = flosim::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(FLOSIM_SAMPLES_DIR) + "/" + name; }

}  // namespace

TEST(Cli, ExtentRowAtPi) {
  Outcome o = run({"extent"});
  ASSERT_EQ(o.code, 0);
  std::istringstream in(o.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "theta,xi,w_squared,ratio");
  int rows = 0;
  bool saw_pi = false;
  while (std::getline(in, line)) {
    ++rows;
    double th, xi, w2, ratio;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &th, &xi, &w2, &ratio), 4);
    if (std::abs(th - M_PI) < 1e-12) {
      saw_pi = true;
      EXPECT_NEAR(xi, 2.0, 1e-12);
      EXPECT_NEAR(w2, 9.0, 1e-12);
      EXPECT_NEAR(ratio, 4.5, 1e-12);
    }
    if (th == 0.0) EXPECT_EQ(ratio, 1.0);
  }
  EXPECT_EQ(rows, 256);
  EXPECT_TRUE(saw_pi);
}

TEST(Cli, EstimateIsByteIdenticalForFixedSeed) {
  Outcome a = run({"estimate", sample("cz4.flo"), "--eps", "0.2", "--delta", "0.2", "--seed", "7"});
  Outcome b = run({"estimate", sample("cz4.flo"), "--eps", "0.2", "--delta", "0.2", "--seed", "7"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto j = nlohmann::json::parse(a.out);
  for (const char* key : {"version", "seed", "plan", "xi_star", "max_abs_alpha", "p_hat"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["seed"].get<std::uint64_t>(), 7u);
}

TEST(Cli, ExactMatchesFloOnlyEstimate) {
  Outcome ex = run({"exact", sample("flo_only.flo")});
  Outcome est = run({"estimate", sample("flo_only.flo"), "--seed", "1"});
  ASSERT_EQ(ex.code, 0) << ex.err;
  ASSERT_EQ(est.code, 0) << est.err;
  double p = nlohmann::json::parse(ex.out)["probability"];
  double q = nlohmann::json::parse(est.out)["p_raw"];
  EXPECT_NEAR(p, q, 1e-8);
  EXPECT_GT(p, 1e-3);
}

TEST(Cli, ErrorsMapToExitCodes) {
  EXPECT_EQ(run({"estimate", "/nonexistent.flo"}).code, 2);
  EXPECT_EQ(run({"estimate", sample("cz4.flo"), "--eps", "2"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"estimate", sample("cz4_partial.flo"), "--mode", "all"}).code, 2);
  Outcome o = run({"estimate", sample("hop4.mat")});
  EXPECT_EQ(o.code, 2);
  auto j = nlohmann::json::parse(o.err);
  EXPECT_EQ(j["error"], "SyntaxError");
  EXPECT_EQ(j["line"], 1);
}

TEST(Cli, CsvFormat) {
  Outcome o = run({"exact", sample("cz4.flo"), "--format", "csv"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out.substr(0, o.out.find('\n')), "tool,version,command,circuit,qubits,dense_cap,probability");
}

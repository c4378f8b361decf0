#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "evencob/cli.hpp"

namespace evencob::cli {
namespace {

using nlohmann::json;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(EVENCOB_FIXTURES) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("evencob_cli_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

TEST(Maslov, GenusOneFixture) {
  const auto r = run({"maslov", "--in", fixture("triple.ssf"), "--output", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["command"], "maslov");
  ASSERT_EQ(j["queries"].size(), 1u);
  const auto& q = j["queries"][0];
  EXPECT_EQ(q["maslov_index"], -1);
  EXPECT_EQ(q["parity_prediction"], 1);
  EXPECT_EQ(q["annihilator_dim"], 0);
  EXPECT_EQ(q["annihilator_matches"], true);
  EXPECT_EQ(q["gram"], json::parse(R"([["-1"]])"));

  const auto text = run({"maslov", "--in", fixture("triple.ssf")});
  EXPECT_NE(text.out.find("mu = -1, parity 1"), std::string::npos);
}

TEST(Check, ParityHolds) {
  const auto r = run({"check", "--theorem", "parity", "--genus-max", "3", "--trials", "1000", "--seed", "7"});
  EXPECT_EQ(r.code, kOk) << r.out;
  EXPECT_NE(r.out.find("parity: holds on 1000/1000"), std::string::npos);
}

TEST(Check, EveryTheoremHoldsOnASmallCampaign) {
  for (const char* th : {"dim-sum", "annihilator", "pair-dims", "ann-identities", "corollary", "well-defined"}) {
    const auto r = run({"check", "--theorem", th, "--trials", "60", "--seed", "3", "--output", "json"});
    EXPECT_EQ(r.code, kOk) << th << "\n" << r.out;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["campaign"]["failures"], 0) << th;
    EXPECT_TRUE(j["campaign"]["counterexample"].is_null());
  }
}

TEST(Check, JsonKeySetIsStable) {
  const auto j = json::parse(run({"check", "--theorem", "parity", "--trials", "5", "--output", "json"}).out);
  std::vector<std::string> keys;
  for (const auto& [k, _] : j["campaign"].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"counterexample", "failures", "genus_max", "holds", "name", "seed",
                                            "trials"}));
}

TEST(Check, IdenticalSeedGivesIdenticalReport) {
  const std::vector<std::string> args{"check", "--theorem", "annihilator", "--trials", "50", "--seed", "11",
                                      "--output", "json"};
  EXPECT_EQ(run(args).out, run(args).out);
}

TEST(Compose, HandlebodyCapFixture) {
  const auto r = run({"compose", "--in", fixture("pipeline.cbf"), "--output", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["composite"]["weight"], 2);
  EXPECT_EQ(j["composite"]["beta1"], 1);
  EXPECT_EQ(j["composite"]["beta0"], 1);
  EXPECT_EQ(j["composite"]["evenness"]["is_even"], true);
  EXPECT_TRUE(j["composite"]["violations"].empty());
  EXPECT_EQ(j["steps"][0]["maslov_term"], 0);
  const auto text = run({"compose", "--in", fixture("explicit.cbf")});
  EXPECT_NE(text.out.find("weight 2, beta1 1, beta0 1, even=true"), std::string::npos) << text.out;
}

TEST(Even, ReportsEachMorphism) {
  const auto r = run({"even", "--in", fixture("pipeline.cbf"), "--output", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["morphisms"].size(), 2u);
  for (const auto& m : j["morphisms"]) {
    EXPECT_EQ(m["evenness"]["is_even"], true);
    EXPECT_EQ(m["evenness"]["terms"]["epsilon"], 1);
  }
}

TEST(Gen, EmitsAReplayablePipeline) {
  const auto r = run({"gen", "--spec", "(composite (handlebody 2) (twisted_cylinder 2))", "--seed", "4",
                      "--output", "json"});
  ASSERT_EQ(r.code, kOk) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["evenness"]["is_even"], true);
  const auto p = parse_pipeline(j["file"].get<std::string>());
  ASSERT_EQ(p.morphisms.size(), 1u);
  EXPECT_EQ(p.morphisms[0].morphism.weight, j["weight"].get<long>());
  EXPECT_EQ(run({"gen", "--spec", "(cap 1)", "--seed", "4"}).out, run({"gen", "--spec", "(cap 1)", "--seed", "4"}).out);
}

TEST(Closure, SmallCampaignHolds) {
  const auto r = run({"closure", "--trials", "20", "--abstract-trials", "5", "--output", "json"});
  ASSERT_EQ(r.code, kOk) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["campaign"]["holds"], true);
  EXPECT_EQ(j["abstract_sample"]["trials"], 5);
}

TEST(InputErrors, ExitTwo) {
  EXPECT_EQ(run({}).code, kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, kInputError);
  EXPECT_EQ(run({"check", "--theorem", "fermat"}).code, kInputError);
  EXPECT_EQ(run({"check"}).code, kInputError);
  EXPECT_EQ(run({"check", "--theorem", "parity", "--bogus"}).code, kInputError);
  EXPECT_EQ(run({"check", "--theorem", "parity", "--trials", "-4"}).code, kInputError);
  EXPECT_EQ(run({"check", "--theorem", "parity", "--genus-max", "0"}).code, kInputError);
  EXPECT_EQ(run({"maslov", "--output", "xml", "--in", fixture("triple.ssf")}).code, kInputError);
  EXPECT_EQ(run({"maslov"}).code, kInputError);
  EXPECT_EQ(run({"maslov", "--in", "/nonexistent/file.ssf"}).code, kInputError);
  EXPECT_EQ(run({"gen", "--spec", "(cap"}).code, kInputError);
  EXPECT_EQ(run({"compose", "--in", write_temp("empty.cbf", "")}).code, kInputError);

  const auto bad = run({"maslov", "--in", write_temp("bad.ssf", "form 2\n0 1\n1 0\n")});
  EXPECT_EQ(bad.code, kInputError);
  EXPECT_NE(bad.err.find("line 1"), std::string::npos);
  const auto not_lagrangian =
      write_temp("nonlag.ssf", "form 2\n0 1\n-1 0\nsubspace A 2\n1 0\n0 1\ntriple A A A\n");
  EXPECT_EQ(run({"maslov", "--in", not_lagrangian}).code, kInputError);
}

TEST(Help, ExitsZero) { EXPECT_EQ(run({"--help"}).code, kOk); }

TEST(Binary, ExitCodesAndDeterministicOutput) {
  auto capture = [](const std::string& args, int& status) {
    const std::string cmd = std::string(EVENCOB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    std::string out;
    std::array<char, 4096> buf{};
    for (std::size_t n; (n = fread(buf.data(), 1, buf.size(), pipe)) > 0;) out.append(buf.data(), n);
    status = WEXITSTATUS(pclose(pipe));
    return out;
  };
  int s1 = -1, s2 = -1;
  const auto a = capture("check --theorem parity --seed 7 --trials 100 --output json", s1);
  const auto b = capture("check --theorem parity --seed 7 --trials 100 --output json", s2);
  EXPECT_EQ(s1, 0);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a.empty());
  int s3 = -1;
  capture("nonsense", s3);
  EXPECT_EQ(s3, 2);
  int s4 = -1;
  capture("maslov --in " + fixture("triple.ssf"), s4);
  EXPECT_EQ(s4, 0);
}

}  // namespace
}  // namespace evencob::cli

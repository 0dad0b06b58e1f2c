/*
 * Copyright 2026 The bibcount Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli_app.hpp"

namespace bibcount::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bibcount");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) {
  return std::string(BIBCOUNT_SAMPLES_DIR) + "/" + name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("bibcount_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::size_t lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

TEST(CliScore, WorkedExample) {
  const auto r = run({"score", "-i", sample("worked.jsonl"), "-m", "complete-fractionalized",
                      "--object", "institution"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "object,score,publications\nY,0.6667,1\nZ,0.3333,1\n");
}

TEST(CliScore, UnionAndAlias) {
  const auto r = run({"score", "-i", sample("uk10.jsonl"), "-m", "whole-fractionalized",
                      "--basic-unit", "country", "--union", "UK=England,Scotland,Wales",
                      "--precision", "6"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("Denmark,0.125000,1"), std::string::npos);
  EXPECT_NE(r.out.find("UK,0.125000,1"), std::string::npos);
  EXPECT_EQ(lines(r.out), 9u);
}

TEST(CliScore, Parameters) {
  const auto r = run({"score", "-i", sample("worked.jsonl"), "-m", "equal-contribution",
                      "--param", "floor=0.5"});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_NE(r.out.find("A,0.5000,1"), std::string::npos);
  EXPECT_EQ(run({"score", "-i", sample("worked.jsonl"), "-m", "harmonic", "--param", "x"}).code,
            kUsage);
  EXPECT_EQ(run({"score", "-i", sample("worked.jsonl"), "-m", "harmonic", "--param", "k=2"}).code,
            kMethodError);
}

TEST(CliScore, ErrorCodes) {
  EXPECT_EQ(run({"score", "-i", sample("missing.jsonl"), "-m", "complete"}).code, kInputError);
  EXPECT_EQ(run({"score", "-i", sample("worked.jsonl"), "-m", "nope"}).code, kMethodError);
  EXPECT_EQ(run({"score", "-i", sample("worked.jsonl"), "-m", "sequence-determines-credit"}).code,
            kMethodError);
  EXPECT_EQ(run({"score", "-i", sample("worked.jsonl"), "-m", "complete", "--basic-unit",
                 "planet"}).code,
            kUsage);
  EXPECT_EQ(run({"score", "-i", sample("worked.jsonl"), "-m", "complete", "--basic-unit",
                 "country", "--object", "author"}).code,
            kMethodError);
  EXPECT_EQ(run({"score", "-i", sample("worked.jsonl")}).code, kUsage);
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"--help"}).code, kOk);
  const auto missing = run({"score", "-i", sample("worked.jsonl"), "-m", "boxenbaum",
                            "--object", "institution"});
  EXPECT_EQ(missing.code, kOk) << missing.err;
  const auto no_attr = run({"score", "-i", sample("uk10.jsonl"), "-m", "boxenbaum"});
  EXPECT_EQ(no_attr.code, kMethodError);
  EXPECT_NE(no_attr.err.find("senior"), std::string::npos);
}

TEST(CliScore, MalformedInputReportsLine) {
  TempDir dir;
  std::ofstream(dir / "bad.jsonl") << slurp(sample("worked.jsonl")) << "{\"id\": 3\n";
  const auto r = run({"score", "-i", (dir / "bad.jsonl").string(), "-m", "complete"});
  EXPECT_EQ(r.code, kInputError);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(CliClassify, TextAndJson) {
  const auto text = run({"classify", "-m", "whole", "--trials", "50"});
  ASSERT_EQ(text.code, kOk) << text.err;
  EXPECT_NE(text.out.find("Whole"), std::string::npos);
  EXPECT_NE(text.out.find("rank: not_applicable"), std::string::npos) << text.out;
  EXPECT_NE(text.out.find("label: Whole"), std::string::npos) << text.out;

  const auto json = run({"classify", "-m", "npi-institutional", "--format", "json"});
  ASSERT_EQ(json.code, kOk) << json.err;
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["label"], "Unclassified");
  EXPECT_EQ(j["seed"], 42);
  bool registry_note = false;
  for (const auto& n : j["notes"])
    registry_note = registry_note || n.get<std::string>().find("registry") != std::string::npos;
  EXPECT_TRUE(registry_note);
  EXPECT_EQ(run({"classify", "-m", "whole", "--format", "xml"}).code, kUsage);
}

TEST(CliClassify, SeedFromEnvironment) {
  ::setenv("BIBCOUNT_SEED", "7", 1);
  const auto r = run({"classify", "-m", "complete", "--format", "json", "--trials", "10"});
  ::unsetenv("BIBCOUNT_SEED");
  ASSERT_EQ(r.code, kOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["seed"], 7);
}

TEST(CliLint, AllMethods) {
  const auto r = run({"lint"});
  EXPECT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out), 37u);
  EXPECT_NE(r.out.find("harmonic,principles,,,ok"), std::string::npos) << r.out;
  EXPECT_EQ(run({"lint", "-m", "boxenbaum"}).code, kOk);
}

TEST(CliRegistry, Filters) {
  EXPECT_EQ(lines(run({"registry", "list", "--era", "reviewed"}).out), 33u);
  EXPECT_EQ(lines(run({"registry", "list", "--group", "group1"}).out), 29u);
  EXPECT_EQ(lines(run({"registry", "list", "--used-4plus", "Y"}).out), 4u);
  const auto r = run({"registry", "list", "--claim", "non-conforming", "--era", "reviewed"});
  EXPECT_NE(r.out.find("on-line-fractionation,1993"), std::string::npos);
  EXPECT_NE(r.out.find("npi-institutional,2016"), std::string::npos);
}

TEST(CliNpi, Schemes) {
  auto r = run({"npi", "-i", sample("worked.jsonl")});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(r.out, "institution,score\nY,0.8165\nZ,0.5774\n");
  r = run({"npi", "-i", sample("worked.jsonl"), "--mode", "per-share", "--institution", "Y"});
  EXPECT_EQ(r.out, "institution,score\nY,1.1547\n");
  r = run({"npi", "-i", sample("worked.jsonl"), "--points", sample("points.csv"), "--root", "1"});
  EXPECT_EQ(r.out, "institution,score\nY,2.0000\nZ,1.0000\n");
  r = run({"npi", "-i", sample("worked.jsonl"), "--scheme", "bfi"});
  EXPECT_EQ(r.out, "institution,score\nY,0.6667\nZ,0.3333\n");
  r = run({"npi", "-i", sample("worked.jsonl"), "--institution", "Q"});
  EXPECT_EQ(r.code, kOk);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_EQ(run({"npi", "-i", sample("worked.jsonl"), "--root", "0"}).code, kUsage);
}

TEST(CliSimulateCompare, RoundTrip) {
  TempDir dir;
  const std::string corpus = (dir / "sim.jsonl").string();
  ASSERT_EQ(run({"simulate", "--pubs", "120", "--institutions", "12", "--countries", "4",
                 "--seed", "3", "-o", corpus}).code,
            kOk);
  EXPECT_EQ(lines(slurp(corpus)), 120u);
  EXPECT_EQ(run({"simulate", "--pubs", "120", "--institutions", "12", "--countries", "4",
                 "--seed", "3"}).out,
            slurp(corpus));
  EXPECT_EQ(run({"simulate", "--mean-team-size", "0.5"}).code, kInputError);

  const std::string plot = (dir / "plot.csv").string();
  const auto r = run({"compare", "-i", corpus, "-m", "straight,complete-fractionalized",
                      "--levels", "institution,country", "--plot-data", plot});
  ASSERT_EQ(r.code, kOk) << r.err;
  EXPECT_EQ(lines(r.out), 3u);
  EXPECT_NE(r.out.find("straight,complete-fractionalized,country,4,"), std::string::npos);
  EXPECT_EQ(slurp(plot).rfind("method_a,method_b,level,object,score_a,score_b,rank_a,rank_b\n", 0),
            0u);
  EXPECT_EQ(run({"compare", "-i", corpus, "-m", "straight"}).code, kUsage);
}

}  // namespace
}  // namespace bibcount::cli

// Copyright 2026 The qnlp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qnlp/pipeline.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qnlp/error.hpp"

namespace qnlp {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string &name) {
  const auto dir = fs::temp_directory_path() / ("qnlp_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_corpus(const fs::path &dir) {
  const auto ds = gen_data(default_lexicon(), GenConfig{});
  std::ofstream(dir / "dataset.tsv", std::ios::binary) << ds.serialize();
  std::ofstream(dir / "split.tsv", std::ios::binary) << ds.serialize_split();
  return dir / "dataset.tsv";
}

const std::vector<std::string> kAdjectiveClause{"siva", "hates", "thrilling", "comics"};

TEST(Inspect, Stages) {
  const auto lex = default_lexicon();
  EXPECT_EQ(inspect(kAdjectiveClause, lex, InspectStage::Types),
            "siva : n\nhates : n.r s n.l\nthrilling : n n.l\ncomics : n\n"
            "reduction (0,1) (3,4) (5,6) -> s\n");
  EXPECT_EQ(inspect(kAdjectiveClause, lex, InspectStage::Circuit).rfind("qubits 7\n", 0),
            0u);
  EXPECT_EQ(inspect(kAdjectiveClause, lex, InspectStage::Circuit, true)
                .rfind("qubits 4\n", 0),
            0u);
  const auto rw = inspect(kAdjectiveClause, lex, InspectStage::Rewritten);
  EXPECT_NE(rw.find("bend "), std::string::npos);
  EXPECT_NE(rw.find("qubits 4\n"), std::string::npos);
  EXPECT_NE(inspect(kAdjectiveClause, lex, InspectStage::Diagram).find("cup "),
            std::string::npos);
}

TEST(Inspect, UngrammaticalQuotesResidual) {
  try {
    inspect(std::vector<std::string>{"siva", "comics"}, default_lexicon(),
            InspectStage::Types);
    FAIL() << "expected UngrammaticalError";
  } catch (const UngrammaticalError &e) {
    EXPECT_EQ(e.residual(), "n n");
    EXPECT_NE(std::string(e.what()).find("n n"), std::string::npos);
  }
}

TEST(Profile, Names) {
  for (auto p : {Profile::Classical, Profile::QuantumExact,
                 Profile::QuantumExactFast, Profile::QuantumNoisy}) {
    EXPECT_EQ(parse_profile(to_string(p)), p);
  }
  EXPECT_THROW(parse_profile("quantum"), ConfigError);
  EXPECT_EQ(default_budget(Profile::QuantumExactFast),
            4 * default_budget(Profile::QuantumExact));
}

TEST(Run, WritesArtifactsAndEvaluates) {
  const auto dir = scratch_dir("run");
  RunConfig cfg;
  cfg.profile = Profile::QuantumExact;
  cfg.data_path = write_corpus(dir).string();
  cfg.iterations = 5;
  cfg.out_dir = (dir / "out").string();
  const auto r = run(cfg);
  EXPECT_EQ(slurp(dir / "out" / "metrics.csv"), r.metrics_csv);
  EXPECT_EQ(slurp(dir / "out" / "params.txt"), r.params);
  EXPECT_NE(slurp(dir / "out" / "summary.txt").find("test_acc="), std::string::npos);

  const auto corpus = load_corpus(cfg.data_path, "");
  const auto scores = evaluate_params(corpus, cfg, r.params);
  EXPECT_DOUBLE_EQ(scores.test_acc, r.report.test_acc);
  EXPECT_DOUBLE_EQ(scores.dev_acc, r.report.records.back().dev_acc);
  fs::remove_all(dir);
}

TEST(Run, MissingSplitFallsBackToStratified) {
  const auto dir = scratch_dir("nosplit");
  const auto data = write_corpus(dir);
  fs::remove(dir / "split.tsv");
  const auto corpus = load_corpus(data.string(), "");
  corpus.dataset.split.validate(130);
  EXPECT_EQ(corpus.dataset.split.train.size(), 70u);
  fs::remove_all(dir);
}

TEST(Run, BadInputs) {
  RunConfig cfg;
  cfg.data_path = "/nonexistent/dataset.tsv";
  EXPECT_THROW(run(cfg), Error);
  const auto dir = scratch_dir("badvocab");
  std::ofstream(dir / "dataset.tsv") << "0\tsiva likes xyzzy\n";
  auto message = [&] {
    try {
      load_corpus((dir / "dataset.tsv").string(), "");
    } catch (const Error &e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_NE(message().find("xyzzy"), std::string::npos);
  std::ofstream(dir / "dataset.tsv") << "0\tsiva comics\n";
  EXPECT_NE(message().find("residual types: n n"), std::string::npos);
  fs::remove_all(dir);
}

TEST(Parameters, RoundTrip) {
  const ParameterLayout layout({"a__0", "b__0", "b__1"});
  const std::vector<double> theta{0.1, -2.5, 1e-17};
  EXPECT_EQ(parse_parameters(serialize_parameters(layout, theta), layout), theta);
  EXPECT_THROW(parse_parameters("a__0 1\n", layout), BindingError);
  EXPECT_THROW(parse_parameters("zz__0 1\n", layout), ParseError);
}

#ifdef QNLP_CLI_PATH

int cli(const std::string &args, const fs::path &log) {
  const std::string cmd = std::string(QNLP_CLI_PATH) + " " + args + " > " +
                          log.string() + " 2>&1";
  return std::system(cmd.c_str());
}

TEST(Cli, EndToEnd) {
  const auto dir = scratch_dir("cli");
  const auto log = dir / "log.txt";
  ASSERT_EQ(cli("gen-data --seed 3 --out " + (dir / "d").string(), log), 0);
  const auto data = (dir / "d" / "dataset.tsv").string();
  EXPECT_EQ(slurp(data), gen_data(default_lexicon(), GenConfig{130, 70, 30, 30, 3})
                             .serialize());

  ASSERT_EQ(cli("inspect \"siva hates thrilling comics\" --stage circuit", log), 0);
  EXPECT_EQ(slurp(log).rfind("qubits 7", 0), 0u);
  ASSERT_EQ(cli("inspect \"siva hates thrilling comics\" --stage rewritten", log), 0);
  EXPECT_NE(slurp(log).find("qubits 4"), std::string::npos);
  EXPECT_NE(cli("inspect \"siva comics\"", log), 0);
  EXPECT_NE(slurp(log).find("residual types: n n"), std::string::npos);

  const auto out = (dir / "o").string();
  ASSERT_EQ(cli("run --profile quantum-noisy --shots 64 --iterations 2 --data " +
                    data + " --out " + out,
                log),
            0);
  EXPECT_NE(slurp(log).find("test_acc="), std::string::npos);
  const auto metrics = slurp(dir / "o" / "metrics.csv");
  ASSERT_EQ(cli("run --profile quantum-noisy --shots 64 --iterations 2 --data " +
                    data + " --out " + out,
                log),
            0);
  EXPECT_EQ(slurp(dir / "o" / "metrics.csv"), metrics);
  ASSERT_EQ(cli("eval --profile quantum-noisy --shots 64 --data " + data +
                    " --params " + (dir / "o" / "params.txt").string(),
                log),
            0);
  EXPECT_NE(slurp(log).find("test_acc="), std::string::npos);

  EXPECT_NE(cli("run --profile nope --data " + data, log), 0);
  EXPECT_NE(cli("run --data /nonexistent.tsv --out " + out, log), 0);
  EXPECT_NE(cli("run --profile quantum-noisy --noise-p1 2 --data " + data +
                    " --out " + out,
                log),
            0);
  fs::remove_all(dir);
}

#endif

}  // namespace
}  // namespace qnlp

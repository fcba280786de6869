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


// qnlp: dataset generation, inspection, training and evaluation.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qnlp/dataset.hpp"
#include "qnlp/pipeline.hpp"

namespace {

std::vector<std::string> tokenize(const std::string &sentence) {
  std::istringstream in(sentence);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qnlp::ConfigError("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qnlp::ConfigError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qnlp::Lexicon lexicon_from(const std::string &path) {
  return path.empty() ? qnlp::default_lexicon() : qnlp::Lexicon::load(path);
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Pregroup sentiment classifier toolkit"};
  app.require_subcommand(1);

  // gen-data
  std::string gen_lexicon, gen_out = "data";
  qnlp::GenConfig gen;
  auto *gen_cmd = app.add_subcommand("gen-data", "generate a labelled corpus");
  gen_cmd->add_option("--lexicon", gen_lexicon, "lexicon file (default: bundled)");
  gen_cmd->add_option("--seed", gen.seed, "sampling seed");
  gen_cmd->add_option("--count", gen.count, "number of sentences");
  gen_cmd->add_option("--train", gen.train, "training split size");
  gen_cmd->add_option("--dev", gen.dev, "development split size");
  gen_cmd->add_option("--test", gen.test, "test split size");
  gen_cmd->add_option("--out", gen_out, "output directory");

  // inspect
  std::string ins_sentence, ins_lexicon, ins_stage = "circuit";
  bool ins_rewrite = false;
  auto *ins_cmd = app.add_subcommand("inspect", "print one stage of a sentence");
  ins_cmd->add_option("sentence", ins_sentence, "space separated tokens")
      ->required();
  ins_cmd->add_option("--stage", ins_stage, "types|diagram|rewritten|circuit")
      ->check(CLI::IsMember({"types", "diagram", "rewritten", "circuit"}));
  ins_cmd->add_flag("--rewrite", ins_rewrite, "compile the rewritten diagram");
  ins_cmd->add_option("--lexicon", ins_lexicon, "lexicon file");

  // run / eval share most flags.
  qnlp::RunConfig cfg;
  std::string profile = "quantum-exact";
  std::size_t iterations = 0;
  bool no_rewrite = false;
  std::string params_path;
  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--profile", profile,
                    "classical|quantum-exact|quantum-exact-fast|quantum-noisy");
    cmd->add_option("--data", cfg.data_path, "dataset file")->required();
    cmd->add_option("--lexicon", cfg.lexicon_path, "lexicon file");
    cmd->add_option("--seed", cfg.seed, "training seed");
    cmd->add_option("--noise-p1", cfg.noise.p1, "1-qubit depolarizing rate");
    cmd->add_option("--noise-p2", cfg.noise.p2, "2-qubit depolarizing rate");
    cmd->add_option("--noise-readout", cfg.noise.readout_flip, "readout flip rate");
    cmd->add_option("--shots", cfg.noise.shots, "shots per circuit");
    cmd->add_flag("--no-rewrite", no_rewrite, "keep the cups");
  };
  auto *run_cmd = app.add_subcommand("run", "train one profile");
  add_common(run_cmd);
  auto *iter_opt = run_cmd->add_option("--iterations", iterations,
                                       "SPSA iterations or classical epochs");
  run_cmd->add_option("--out", cfg.out_dir, "output directory");
  auto *eval_cmd = app.add_subcommand("eval", "score saved parameters");
  add_common(eval_cmd);
  eval_cmd->add_option("--params", params_path, "params.txt of a run")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) {
      const auto ds = qnlp::gen_data(lexicon_from(gen_lexicon), gen);
      const std::filesystem::path out(gen_out);
      std::filesystem::create_directories(out);
      write_text(out / "dataset.tsv", ds.serialize());
      write_text(out / "split.tsv", ds.serialize_split());
      std::printf("wrote %zu sentences to %s\n", ds.examples.size(),
                  (out / "dataset.tsv").string().c_str());
      return 0;
    }
    if (*ins_cmd) {
      const auto stage = ins_stage == "types"     ? qnlp::InspectStage::Types
                         : ins_stage == "diagram" ? qnlp::InspectStage::Diagram
                         : ins_stage == "rewritten"
                             ? qnlp::InspectStage::Rewritten
                             : qnlp::InspectStage::Circuit;
      std::cout << qnlp::inspect(tokenize(ins_sentence),
                                 lexicon_from(ins_lexicon), stage, ins_rewrite);
      return 0;
    }
    cfg.profile = qnlp::parse_profile(profile);
    cfg.rewrite = !no_rewrite;
    if (cfg.profile == qnlp::Profile::QuantumNoisy) cfg.noise.validate();
    if (*run_cmd) {
      if (*iter_opt) cfg.iterations = iterations;
      const auto result = qnlp::run(cfg);
      std::printf("profile=%s test_acc=%.3f final_dev_acc=%.3f seconds=%.2f\n",
                  std::string(qnlp::to_string(cfg.profile)).c_str(),
                  result.report.test_acc, result.report.records.back().dev_acc,
                  result.report.seconds);
      return 0;
    }
    const auto corpus = qnlp::load_corpus(cfg.data_path, cfg.lexicon_path);
    const auto scores =
        qnlp::evaluate_params(corpus, cfg, read_text(params_path));
    std::printf("train_acc=%.3f dev_acc=%.3f test_acc=%.3f\n", scores.train_acc,
                scores.dev_acc, scores.test_acc);
    return 0;
  } catch (const std::exception &e) {
    std::fprintf(stderr, "qnlp: %s\n", e.what());
    return 1;
  }
}

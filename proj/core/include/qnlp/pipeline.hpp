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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/circuit.hpp"
#include "qnlp/dataset.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/error.hpp"
#include "qnlp/pregroup.hpp"
#include "qnlp/simulator.hpp"
#include "qnlp/trainer.hpp"

namespace qnlp {

/// Raised for a sentence whose types do not reduce to `s`.
class UngrammaticalError : public Error {
 public:
  explicit UngrammaticalError(std::string residual)
      : Error("sentence is not grammatical; residual types: " + residual),
        residual_(std::move(residual)) {}
  const std::string &residual() const { return residual_; }

 private:
  std::string residual_;
};

/// Every intermediate form of one sentence.
struct SentenceArtifacts {
  std::vector<TypedWord> typed;
  ReductionWitness witness;
  StringDiagram diagram;
  StringDiagram rewritten;
};

/// types -> reduction -> diagram -> cup removal.
SentenceArtifacts analyze(std::span<const std::string> tokens,
                          const Lexicon &lexicon);

enum class InspectStage { Types, Diagram, Rewritten, Circuit };

/// Text for one inspection stage. `rewrite` selects the rewritten diagram for
/// the Circuit stage; the Rewritten stage prints the rewritten diagram
/// followed by its circuit.
std::string inspect(std::span<const std::string> tokens, const Lexicon &lexicon,
                    InspectStage stage, bool rewrite = false,
                    const AnsatzConfig &cfg = {});

enum class Profile { Classical, QuantumExact, QuantumExactFast, QuantumNoisy };

std::string_view to_string(Profile p);
Profile parse_profile(std::string_view name);
/// Iterations (quantum) or epochs (classical) when not overridden.
std::size_t default_budget(Profile p);

struct Corpus {
  Lexicon lexicon;
  Dataset dataset;
  std::vector<SentenceArtifacts> sentences;
};

/// Builds every sentence of a dataset, throwing on the first bad one.
Corpus make_corpus(Lexicon lexicon, Dataset dataset);

/// Reads `data_path` and the `split.tsv` manifest next to it. Without a
/// manifest, a 7:3:3 stratified split with seed 0 is used.
Corpus load_corpus(const std::string &data_path, const std::string &lexicon_path);

struct RunConfig {
  Profile profile = Profile::QuantumExact;
  std::string data_path;
  std::string lexicon_path;  // empty: bundled lexicon
  std::uint64_t seed = 0;
  std::optional<std::size_t> iterations;
  NoiseModel noise;
  std::string out_dir = "out";
  bool rewrite = true;
  double classical_step = 0.05;
  SPSAConfig spsa;  // iterations and seed are taken from the fields above
};

struct RunResult {
  TrainReport report;
  std::string metrics_csv;
  std::string params;
  std::string summary;
};

/// Trains the profile on an in-memory corpus without touching the disk.
RunResult train_profile(const Corpus &corpus, const RunConfig &cfg);

/// load_corpus + train_profile, then writes metrics.csv, params.txt and
/// summary.txt into cfg.out_dir.
RunResult run(const RunConfig &cfg);

struct EvalResult {
  double train_acc = 0;
  double dev_acc = 0;
  double test_acc = 0;
};

/// Scores saved parameters (the params.txt of a run) on every split.
EvalResult evaluate_params(const Corpus &corpus, const RunConfig &cfg,
                           std::string_view params);

/// `name value` per line.
std::string serialize_parameters(const ParameterLayout &layout,
                                 std::span<const double> theta);
std::vector<double> parse_parameters(std::string_view text,
                                     const ParameterLayout &layout);

}  // namespace qnlp

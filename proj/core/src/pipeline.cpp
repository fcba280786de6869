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

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace qnlp {

namespace {

std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("failed writing " + path.string());
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::string residual_text(std::span<const SimpleType> types,
                          const ReductionWitness &w) {
  std::string out;
  for (auto i : w.residual) {
    if (!out.empty()) out += ' ';
    out += to_string(types[i]);
  }
  return out.empty() ? "(empty)" : out;
}

bool is_quantum(Profile p) { return p != Profile::Classical; }

struct QuantumSetup {
  ParameterLayout layout;
  std::vector<PreparedCircuit> circuits;
};

QuantumSetup quantum_setup(const Corpus &corpus, bool rewrite) {
  std::vector<StringDiagram> diagrams;
  diagrams.reserve(corpus.sentences.size());
  for (const auto &s : corpus.sentences) {
    diagrams.push_back(rewrite ? s.rewritten : s.diagram);
  }
  QuantumSetup setup{ParameterLayout(parameter_names(diagrams)), {}};
  setup.circuits.reserve(diagrams.size());
  for (const auto &d : diagrams) {
    setup.circuits.emplace_back(compile(d), setup.layout);
  }
  return setup;
}

std::vector<StringDiagram> plain_diagrams(const Corpus &corpus) {
  std::vector<StringDiagram> out;
  out.reserve(corpus.sentences.size());
  for (const auto &s : corpus.sentences) out.push_back(s.diagram);
  return out;
}

QuantumBackend backend_for(const RunConfig &cfg) {
  if (cfg.profile != Profile::QuantumNoisy) return ExactBackend{};
  NoiseModel nm = cfg.noise;
  nm.seed = cfg.seed;
  return NoisyBackend{nm};
}

}  // namespace

SentenceArtifacts analyze(std::span<const std::string> tokens,
                          const Lexicon &lexicon) {
  SentenceArtifacts a;
  a.typed = assign_types(tokens, lexicon);
  const auto types = concat_types(a.typed);
  const auto witness = reduce(types);
  if (!witness) {
    throw UngrammaticalError(residual_text(types, stack_reduce(types)));
  }
  a.witness = *witness;
  a.diagram = build_diagram(a.typed, a.witness);
  a.rewritten = remove_cups(a.diagram);
  return a;
}

std::string inspect(std::span<const std::string> tokens, const Lexicon &lexicon,
                    InspectStage stage, bool rewrite, const AnsatzConfig &cfg) {
  if (stage == InspectStage::Types) {
    const auto typed = assign_types(tokens, lexicon);
    std::string out;
    for (const auto &w : typed) out += w.word + " : " + to_string(w.type) + '\n';
    const auto types = concat_types(typed);
    const auto witness = reduce(types);
    if (!witness) {
      throw UngrammaticalError(residual_text(types, stack_reduce(types)));
    }
    out += "reduction";
    for (const auto &[i, j] : witness->contractions) {
      out += " (" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
    out += " -> s\n";
    return out;
  }
  const auto a = analyze(tokens, lexicon);
  switch (stage) {
    case InspectStage::Diagram:
      return render(a.diagram, RenderFormat::Text);
    case InspectStage::Rewritten:
      return render(a.rewritten, RenderFormat::Text) +
             serialize(compile(a.rewritten, cfg));
    case InspectStage::Circuit:
      return serialize(compile(rewrite ? a.rewritten : a.diagram, cfg));
    case InspectStage::Types:
      break;
  }
  return {};
}

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Classical:
      return "classical";
    case Profile::QuantumExact:
      return "quantum-exact";
    case Profile::QuantumExactFast:
      return "quantum-exact-fast";
    case Profile::QuantumNoisy:
      return "quantum-noisy";
  }
  return "?";
}

Profile parse_profile(std::string_view name) {
  for (auto p : {Profile::Classical, Profile::QuantumExact,
                 Profile::QuantumExactFast, Profile::QuantumNoisy}) {
    if (name == to_string(p)) return p;
  }
  throw ConfigError("unknown profile \"" + std::string(name) + "\"");
}

std::size_t default_budget(Profile p) {
  switch (p) {
    case Profile::Classical:
      return 500;
    case Profile::QuantumExactFast:
      return 800;
    case Profile::QuantumExact:
    case Profile::QuantumNoisy:
      return 200;
  }
  return 200;
}

namespace {

std::vector<SentenceArtifacts> analyze_all(const Lexicon &lexicon,
                                           const std::vector<Example> &examples) {
  std::vector<SentenceArtifacts> out;
  out.reserve(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i) {
    try {
      out.push_back(analyze(examples[i].tokens, lexicon));
    } catch (const Error &err) {
      throw Error("example " + std::to_string(i) + " (\"" +
                  examples[i].sentence() + "\"): " + err.what());
    }
  }
  return out;
}

}  // namespace

Corpus make_corpus(Lexicon lexicon, Dataset dataset) {
  auto sentences = analyze_all(lexicon, dataset.examples);
  dataset.split.validate(dataset.examples.size());
  return Corpus{std::move(lexicon), std::move(dataset), std::move(sentences)};
}

Corpus load_corpus(const std::string &data_path,
                   const std::string &lexicon_path) {
  Lexicon lexicon =
      lexicon_path.empty() ? default_lexicon() : Lexicon::load(lexicon_path);
  Dataset ds;
  ds.examples = Dataset::parse_examples(read_file(data_path));
  auto sentences = analyze_all(lexicon, ds.examples);
  const auto manifest = std::filesystem::path(data_path).parent_path() / "split.tsv";
  if (std::filesystem::exists(manifest)) {
    ds.split = Dataset::parse_split(read_file(manifest));
  } else {
    const std::size_t n = ds.examples.size();
    const std::size_t train = n * 7 / 13;
    const std::size_t dev = (n - train) / 2;
    ds.split = stratified_split(ds.examples, train, dev, n - train - dev, 0);
  }
  ds.split.validate(ds.examples.size());
  return Corpus{std::move(lexicon), std::move(ds), std::move(sentences)};
}

std::string serialize_parameters(const ParameterLayout &layout,
                                 std::span<const double> theta) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < layout.size(); ++i) {
    out += layout.names()[i];
    out += ' ';
    const auto res = std::to_chars(buf, buf + sizeof(buf), theta[i]);
    out.append(buf, res.ptr);
    out += '\n';
  }
  return out;
}

std::vector<double> parse_parameters(std::string_view text,
                                     const ParameterLayout &layout) {
  std::vector<double> theta(layout.size(), 0.0);
  std::vector<bool> seen(layout.size(), false);
  std::istringstream in{std::string(text)};
  std::string name, value;
  while (in >> name >> value) {
    const auto idx = layout.index_of(name);
    if (!idx) throw ParseError("unknown parameter \"" + name + "\"");
    const auto res =
        std::from_chars(value.data(), value.data() + value.size(), theta[*idx]);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
      throw ParseError("bad value for parameter \"" + name + "\"");
    }
    seen[*idx] = true;
  }
  std::string missing;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) missing += ' ' + layout.names()[i];
  }
  if (!missing.empty()) throw BindingError("missing parameter values:" + missing);
  return theta;
}

RunResult train_profile(const Corpus &corpus, const RunConfig &cfg) {
  RunResult result;
  const std::size_t budget = cfg.iterations.value_or(default_budget(cfg.profile));
  if (cfg.profile == Profile::Classical) {
    const auto diagrams = plain_diagrams(corpus);
    ClassicalConfig cc;
    cc.seed = cfg.seed;
    cc.epochs = budget;
    cc.step = cfg.classical_step;
    auto trained = train_classical(corpus.dataset, diagrams, corpus.lexicon, cc);
    result.report = std::move(trained.report);
    result.params = trained.store.serialize();
  } else {
    const auto setup = quantum_setup(corpus, cfg.rewrite);
    SPSAConfig spsa = cfg.spsa;
    spsa.iterations = budget;
    spsa.seed = cfg.seed;
    auto trained = train_quantum(corpus.dataset, setup.circuits, setup.layout,
                                 spsa, backend_for(cfg));
    result.report = std::move(trained.report);
    result.params = serialize_parameters(trained.layout, trained.theta);
  }
  result.metrics_csv = result.report.to_csv();

  const auto &last = result.report.records.back();
  std::string s;
  s += "profile=" + std::string(to_string(cfg.profile)) + '\n';
  s += "test_acc=" + fixed(result.report.test_acc, 3) + '\n';
  s += "final_dev_acc=" + fixed(last.dev_acc, 3) + '\n';
  s += "final_train_acc=" + fixed(last.train_acc, 3) + '\n';
  s += "final_train_loss=" + fixed(last.train_loss, 6) + '\n';
  s += (cfg.profile == Profile::Classical ? "epochs=" : "iterations=") +
       std::to_string(budget) + '\n';
  s += "seed=" + std::to_string(cfg.seed) + '\n';
  s += "examples=" + std::to_string(corpus.dataset.examples.size()) + '\n';
  if (is_quantum(cfg.profile)) {
    s += "rewrite=" + std::string(cfg.rewrite ? "true" : "false") + '\n';
  }
  if (cfg.profile == Profile::QuantumNoisy) {
    s += "noise_p1=" + fixed(cfg.noise.p1, 6) + '\n';
    s += "noise_p2=" + fixed(cfg.noise.p2, 6) + '\n';
    s += "noise_readout=" + fixed(cfg.noise.readout_flip, 6) + '\n';
    s += "shots=" + std::to_string(cfg.noise.shots) + '\n';
  }
  if (result.report.aborted) s += "aborted=" + result.report.abort_reason + '\n';
  s += "seconds=" + fixed(result.report.seconds, 3) + '\n';
  result.summary = std::move(s);
  return result;
}

RunResult run(const RunConfig &cfg) {
  if (cfg.out_dir.empty()) throw ConfigError("an output directory is required");
  if (cfg.profile == Profile::QuantumNoisy) cfg.noise.validate();
  const auto corpus = load_corpus(cfg.data_path, cfg.lexicon_path);
  auto result = train_profile(corpus, cfg);
  const std::filesystem::path out(cfg.out_dir);
  std::filesystem::create_directories(out);
  write_file(out / "metrics.csv", result.metrics_csv);
  write_file(out / "params.txt", result.params);
  write_file(out / "summary.txt", result.summary);
  return result;
}

EvalResult evaluate_params(const Corpus &corpus, const RunConfig &cfg,
                           std::string_view params) {
  const auto &ds = corpus.dataset;
  std::vector<std::array<double, 2>> preds(ds.examples.size());
  if (cfg.profile == Profile::Classical) {
    const auto store = TensorStore::parse(params);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      preds[i] = predict_tensor(corpus.sentences[i].diagram, store);
    }
  } else {
    const auto setup = quantum_setup(corpus, cfg.rewrite);
    const auto theta = parse_parameters(params, setup.layout);
    std::vector<std::size_t> all(preds.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    const auto outcomes =
        predict_quantum(setup.circuits, all, theta, backend_for(cfg), 0);
    for (std::size_t i = 0; i < preds.size(); ++i) {
      preds[i] = {outcomes[i].p0, outcomes[i].p1};
    }
  }
  const auto score = [&](const std::vector<std::size_t> &idx) {
    std::vector<std::array<double, 2>> p;
    std::vector<int> labels;
    for (auto i : idx) {
      p.push_back(preds[i]);
      labels.push_back(ds.examples[i].label);
    }
    return accuracy(p, labels);
  };
  return {score(ds.split.train), score(ds.split.dev), score(ds.split.test)};
}

}  // namespace qnlp

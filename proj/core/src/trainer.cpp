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

#include "qnlp/trainer.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <numbers>

#include "qnlp/error.hpp"

namespace qnlp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  return splitmix64(a ^ splitmix64(b));
}

void append_number(std::string &out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::vector<int> labels_of(const Dataset &ds,
                           std::span<const std::size_t> indices) {
  std::vector<int> out;
  out.reserve(indices.size());
  for (auto i : indices) out.push_back(ds.examples[i].label);
  return out;
}

std::vector<std::array<double, 2>> as_pairs(
    std::span<const OutcomePair> outcomes) {
  std::vector<std::array<double, 2>> out;
  out.reserve(outcomes.size());
  for (const auto &o : outcomes) out.push_back({o.p0, o.p1});
  return out;
}

double mean_loss(std::span<const std::array<double, 2>> preds,
                 std::span<const int> labels) {
  double total = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    total += loss_bce(preds[i][0], preds[i][1], labels[i]);
  }
  return preds.empty() ? 0.0 : total / static_cast<double>(preds.size());
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

double loss_bce(double p0, double p1, int label) {
  const double p = label == 0 ? p0 : p1;
  return -std::log(std::clamp(p, kProbabilityFloor, 1.0));
}

double loss_bce(const OutcomePair &p, int label) {
  return loss_bce(p.p0, p.p1, label);
}

double accuracy(std::span<const std::array<double, 2>> preds,
                std::span<const int> labels) {
  if (preds.empty()) throw ConfigError("accuracy of an empty prediction set");
  if (preds.size() != labels.size()) {
    throw ConfigError("prediction and label counts differ");
  }
  std::size_t hits = 0;
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto &p = preds[i];
    if (p[0] == p[1]) continue;
    if ((p[0] > p[1] ? 0 : 1) == labels[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

void SPSAConfig::validate() const {
  if (!(a > 0) || !(c > 0) || !(A >= 0)) {
    throw ConfigError("SPSA requires a > 0, c > 0 and A >= 0");
  }
  if (!(alpha >= 0) || !(gamma >= 0)) {
    throw ConfigError("SPSA exponents must be non-negative");
  }
}

double SPSAConfig::step_gain(std::size_t k) const {
  return a / std::pow(A + static_cast<double>(k) + 1.0, alpha);
}

double SPSAConfig::perturbation_gain(std::size_t k) const {
  return c / std::pow(static_cast<double>(k) + 1.0, gamma);
}

std::mt19937_64 perturbation_stream(std::uint64_t seed, std::size_t k) {
  return std::mt19937_64(mix(seed, 0x5b5a0000ULL + k));
}

std::vector<double> spsa_step(std::span<const double> theta, std::size_t k,
                              const Objective &objective, const SPSAConfig &cfg,
                              std::mt19937_64 &stream) {
  const double ak = cfg.step_gain(k);
  const double ck = cfg.perturbation_gain(k);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> delta(theta.size());
  for (auto &d : delta) d = coin(stream) ? 1.0 : -1.0;

  std::vector<double> plus(theta.begin(), theta.end());
  std::vector<double> minus(theta.begin(), theta.end());
  for (std::size_t i = 0; i < theta.size(); ++i) {
    plus[i] += ck * delta[i];
    minus[i] -= ck * delta[i];
  }
  const double f_plus = objective(plus);
  const double f_minus = objective(minus);
  if (!std::isfinite(f_plus) || !std::isfinite(f_minus)) {
    throw NonFiniteError("objective is not finite at SPSA iteration " +
                         std::to_string(k));
  }
  std::vector<double> next(theta.begin(), theta.end());
  const double diff = f_plus - f_minus;
  for (std::size_t i = 0; i < next.size(); ++i) {
    next[i] -= ak * diff / (2.0 * ck * delta[i]);
  }
  return next;
}

std::string TrainReport::to_csv() const {
  std::string out = "iter,train_loss,train_acc,dev_acc\n";
  for (const auto &r : records) {
    out += std::to_string(r.iteration);
    out += ',';
    append_number(out, r.train_loss);
    out += ',';
    append_number(out, r.train_acc);
    out += ',';
    append_number(out, r.dev_acc);
    out += '\n';
  }
  out += "# test_acc=";
  append_number(out, test_acc);
  out += "\n# seed=" + std::to_string(seed) + '\n';
  if (aborted) out += "# aborted=" + abort_reason + '\n';
  return out;
}

std::vector<OutcomePair> predict_quantum(std::span<const PreparedCircuit> circuits,
                                         std::span<const std::size_t> indices,
                                         std::span<const double> theta,
                                         const QuantumBackend &backend,
                                         std::uint64_t stream) {
  std::vector<OutcomePair> out;
  out.reserve(indices.size());
  for (auto i : indices) {
    const auto bound = circuits[i].bind(theta);
    if (const auto *noisy = std::get_if<NoisyBackend>(&backend)) {
      NoiseModel nm = noisy->noise;
      nm.seed = mix(mix(nm.seed, stream), i);
      out.push_back(run_noisy(bound, nm));
    } else {
      out.push_back(run_exact(bound));
    }
  }
  return out;
}

QuantumResult train_quantum(const Dataset &ds,
                            std::span<const PreparedCircuit> circuits,
                            const ParameterLayout &layout,
                            const SPSAConfig &cfg,
                            const QuantumBackend &backend) {
  const auto start = std::chrono::steady_clock::now();
  cfg.validate();
  if (const auto *noisy = std::get_if<NoisyBackend>(&backend)) {
    noisy->noise.validate();
  }
  ds.split.validate(ds.examples.size());
  if (circuits.size() != ds.examples.size()) {
    throw ConfigError("need one circuit per example: got " +
                      std::to_string(circuits.size()) + " for " +
                      std::to_string(ds.examples.size()) + " examples");
  }

  QuantumResult result;
  result.layout = layout;
  result.report.seed = cfg.seed;
  std::mt19937_64 init(mix(cfg.seed, 0x1417ULL));
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  result.theta.resize(layout.size());
  for (auto &t : result.theta) t = angle(init);

  const auto train_labels = labels_of(ds, ds.split.train);
  const auto dev_labels = labels_of(ds, ds.split.dev);
  const auto test_labels = labels_of(ds, ds.split.test);
  std::uint64_t evaluation = 0;

  const Objective objective = [&](std::span<const double> theta) {
    ++result.report.objective_evaluations;
    const auto preds = as_pairs(predict_quantum(circuits, ds.split.train, theta,
                                                backend, ++evaluation));
    return mean_loss(preds, train_labels);
  };
  const auto record = [&](std::size_t iteration) {
    const auto train = as_pairs(predict_quantum(circuits, ds.split.train,
                                                result.theta, backend,
                                                ++evaluation));
    const auto dev = as_pairs(predict_quantum(circuits, ds.split.dev,
                                              result.theta, backend,
                                              ++evaluation));
    result.report.records.push_back({iteration, mean_loss(train, train_labels),
                                     accuracy(train, train_labels),
                                     accuracy(dev, dev_labels)});
  };

  record(0);
  for (std::size_t k = 0; k < cfg.iterations; ++k) {
    auto stream = perturbation_stream(cfg.seed, k);
    try {
      result.theta = spsa_step(result.theta, k, objective, cfg, stream);
    } catch (const NonFiniteError &e) {
      result.report.aborted = true;
      result.report.abort_reason = e.what();
      break;
    }
    record(k + 1);
  }
  const auto test = as_pairs(predict_quantum(circuits, ds.split.test,
                                             result.theta, backend,
                                             ++evaluation));
  result.report.test_acc = accuracy(test, test_labels);
  result.report.seconds = seconds_since(start);
  return result;
}

std::array<double, 2> predict_tensor(const StringDiagram &d,
                                     const TensorStore &store) {
  return predict_classical(evaluate(d, store));
}

ClassicalResult train_classical(const Dataset &ds,
                                std::span<const StringDiagram> diagrams,
                                const Lexicon &lexicon,
                                const ClassicalConfig &cfg) {
  const auto start = std::chrono::steady_clock::now();
  ds.split.validate(ds.examples.size());
  if (diagrams.size() != ds.examples.size()) {
    throw ConfigError("need one diagram per example");
  }
  if (!(cfg.init_low < cfg.init_high)) {
    throw ConfigError("tensor initialization range is empty");
  }
  ClassicalResult result{
      {},
      TensorStore::random(lexicon, mix(cfg.seed, 0x7e50ULL), cfg.init_low,
                          cfg.init_high)};
  result.report.seed = cfg.seed;
  auto &store = result.store;

  const auto train_labels = labels_of(ds, ds.split.train);
  const auto dev_labels = labels_of(ds, ds.split.dev);
  const auto test_labels = labels_of(ds, ds.split.test);
  const auto predict = [&](std::span<const std::size_t> idx) {
    std::vector<std::array<double, 2>> out;
    for (auto i : idx) out.push_back(predict_tensor(diagrams[i], store));
    return out;
  };
  const auto record = [&](std::size_t epoch) {
    const auto train = predict(ds.split.train);
    const auto dev = predict(ds.split.dev);
    result.report.records.push_back({epoch, mean_loss(train, train_labels),
                                     accuracy(train, train_labels),
                                     accuracy(dev, dev_labels)});
    return result.report.records.back().train_loss;
  };

  std::map<std::string, std::vector<double>, std::less<>> velocity;
  for (const auto &[word, t] : store.tensors()) {
    velocity[word].assign(t.entries.size(), 0.0);
  }
  record(0);
  const double scale = 1.0 / static_cast<double>(ds.split.train.size());
  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::map<std::string, std::vector<double>, std::less<>> total;
    for (const auto &[word, t] : store.tensors()) {
      total[word].assign(t.entries.size(), 0.0);
    }
    for (auto i : ds.split.train) {
      ++result.report.objective_evaluations;
      const auto g = gradient(diagrams[i], store, ds.examples[i].label);
      for (const auto &[word, cot] : g) {
        auto &acc = total[word];
        for (std::size_t e = 0; e < cot.size(); ++e) acc[e] += cot[e];
      }
    }
    for (auto &[word, t] : store.tensors()) {
      auto &v = velocity[word];
      const auto &g = total[word];
      for (std::size_t e = 0; e < t.entries.size(); ++e) {
        v[e] = cfg.momentum * v[e] - cfg.step * g[e] * scale;
        t.entries[e] += v[e];
      }
    }
    if (!std::isfinite(record(epoch + 1))) {
      result.report.aborted = true;
      result.report.abort_reason =
          "non-finite loss at epoch " + std::to_string(epoch + 1);
      break;
    }
  }
  const auto test = predict(ds.split.test);
  result.report.test_acc = accuracy(test, test_labels);
  result.report.seconds = seconds_since(start);
  return result;
}

}  // namespace qnlp

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

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qnlp/circuit.hpp"
#include "qnlp/dataset.hpp"
#include "qnlp/diagram.hpp"
#include "qnlp/error.hpp"
#include "qnlp/simulator.hpp"
#include "qnlp/tensor.hpp"

namespace qnlp {

inline constexpr double kProbabilityFloor = 1e-9;

/// -log(clamp(p_label, 1e-9, 1)).
double loss_bce(double p0, double p1, int label);
double loss_bce(const OutcomePair &p, int label);

/// Fraction of argmax hits; p0 == p1 counts as a miss. Throws ConfigError on
/// empty or mismatched input.
double accuracy(std::span<const std::array<double, 2>> preds,
                std::span<const int> labels);

struct SPSAConfig {
  double a = 16.0;
  double c = 0.2;
  double A = 10.0;
  double alpha = 0.602;
  double gamma = 0.101;
  std::size_t iterations = 200;
  std::uint64_t seed = 0;

  void validate() const;
  double step_gain(std::size_t k) const;         // a / (A + k + 1)^alpha
  double perturbation_gain(std::size_t k) const;  // c / (k + 1)^gamma
};

/// The objective returned NaN or an infinity.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Perturbation stream dedicated to SPSA iteration `k`.
std::mt19937_64 perturbation_stream(std::uint64_t seed, std::size_t k);

using Objective = std::function<double(std::span<const double>)>;

/// One SPSA update with exactly two objective evaluations at
/// theta +/- c_k * delta, delta drawn uniformly from {-1, +1}^d.
std::vector<double> spsa_step(std::span<const double> theta, std::size_t k,
                              const Objective &objective, const SPSAConfig &cfg,
                              std::mt19937_64 &stream);

struct IterationRecord {
  std::size_t iteration = 0;
  double train_loss = 0;
  double train_acc = 0;
  double dev_acc = 0;

  friend bool operator==(const IterationRecord &,
                         const IterationRecord &) = default;
};

/// Record 0 is the evaluation before any update; one record follows per
/// iteration or epoch.
struct TrainReport {
  std::vector<IterationRecord> records;
  double test_acc = 0;
  double seconds = 0;
  std::uint64_t seed = 0;
  std::size_t objective_evaluations = 0;
  bool aborted = false;
  std::string abort_reason;

  /// `iter,train_loss,train_acc,dev_acc` rows, then `# test_acc=` and
  /// `# seed=` footers. Wall-clock time is not included.
  std::string to_csv() const;
};

struct ExactBackend {};
struct NoisyBackend {
  NoiseModel noise;
};
using QuantumBackend = std::variant<ExactBackend, NoisyBackend>;

struct QuantumResult {
  TrainReport report;
  ParameterLayout layout;
  std::vector<double> theta;
};

/// Predictions of every example under `backend` at `theta`. For the noisy
/// backend, each circuit gets its own seed derived from (`stream`, index).
std::vector<OutcomePair> predict_quantum(std::span<const PreparedCircuit> circuits,
                                         std::span<const std::size_t> indices,
                                         std::span<const double> theta,
                                         const QuantumBackend &backend,
                                         std::uint64_t stream);

/// SPSA on the mean cross-entropy of the training split. One circuit per
/// example, all sharing `layout`. Initial parameters uniform on [0, 2pi).
QuantumResult train_quantum(const Dataset &ds,
                            std::span<const PreparedCircuit> circuits,
                            const ParameterLayout &layout,
                            const SPSAConfig &cfg,
                            const QuantumBackend &backend);

struct ClassicalConfig {
  std::uint64_t seed = 0;
  std::size_t epochs = 500;
  double step = 0.05;
  double momentum = 0.0;
  // Initial entries are uniform on [init_low, init_high).
  double init_low = 0.0;
  double init_high = 1.0;
};

struct ClassicalResult {
  TrainReport report;
  TensorStore store;
};

std::array<double, 2> predict_tensor(const StringDiagram &d,
                                     const TensorStore &store);

/// Full-batch gradient descent on the mean cross-entropy of the training
/// split. `diagrams` are the un-rewritten sentence diagrams, one per example.
ClassicalResult train_classical(const Dataset &ds,
                                std::span<const StringDiagram> diagrams,
                                const Lexicon &lexicon,
                                const ClassicalConfig &cfg);

}  // namespace qnlp

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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qnlp/circuit.hpp"

namespace qnlp {

using Amplitude = std::complex<double>;

/// Dense 2^n amplitude vector, little-endian: qubit 0 is the least
/// significant bit of the basis index.
class StateVector {
 public:
  /// |0...0>.
  explicit StateVector(std::size_t n_qubits);
  StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes);

  std::size_t n_qubits() const { return n_qubits_; }
  std::span<const Amplitude> amplitudes() const { return amps_; }
  const Amplitude &operator[](std::size_t i) const { return amps_[i]; }
  double norm() const;

  /// Throws BindingError if the gate still carries a ParameterRef.
  void apply(const Gate &gate);
  /// pauli: 1 = X, 2 = Y, 3 = Z, 0 = identity.
  void apply_pauli(std::size_t qubit, int pauli);
  /// Zeroes every amplitude whose `qubit` bit differs from `outcome`.
  void project(std::size_t qubit, int outcome);

 private:
  void apply_1q(std::size_t q, const Amplitude m[2][2]);

  std::size_t n_qubits_;
  std::vector<Amplitude> amps_;
};

/// Raw and post-selection-normalized probabilities of the measured qubit.
struct OutcomePair {
  double p0_raw = 0;
  double p1_raw = 0;
  double p0 = 0;
  double p1 = 0;
  double postselect_mass = 0;

  /// No amplitude (or no accepted shot) survived post-selection; p0 = p1 = 0.
  bool degenerate() const { return !(postselect_mass > 0); }
};

/// Fills p0/p1 from the raw values.
OutcomePair make_outcome(double p0_raw, double p1_raw);

/// |0...0>, every gate in order, projection onto the post-selected outcomes,
/// then the measured qubit's marginals. The circuit must be fully bound.
OutcomePair run_exact(const Circuit &bound);
OutcomePair run_exact(const Circuit &circuit, const ParameterValues &values);

/// Final statevector before projection.
StateVector simulate(const Circuit &bound);

struct NoiseModel {
  double p1 = 0.001;            // depolarizing, per 1-qubit gate
  double p2 = 0.01;             // depolarizing, per 2-qubit gate
  double readout_flip = 0.02;   // per measured bit
  std::size_t shots = 1024;
  std::uint64_t seed = 0;

  /// Throws ConfigError when a value is out of range.
  void validate() const;
};

/// Monte-Carlo trajectories: after every gate a uniformly random
/// non-identity Pauli strikes its qubits with probability p1 or p2, each read
/// bit flips with probability readout_flip, and shots whose post-selected
/// bits are not all 0 are rejected. Raw values are counts over all shots;
/// p0/p1 are over accepted shots. Deterministic for a fixed seed.
OutcomePair run_noisy(const Circuit &bound, const NoiseModel &noise);
OutcomePair run_noisy(const Circuit &circuit, const ParameterValues &values,
                      const NoiseModel &noise);

}  // namespace qnlp

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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qnlp/diagram.hpp"

namespace qnlp {

enum class GateKind { H, RX, RZ, CRZ, CX };

std::string_view to_string(GateKind kind);
constexpr bool is_two_qubit(GateKind k) {
  return k == GateKind::CRZ || k == GateKind::CX;
}
constexpr bool is_rotation(GateKind k) {
  return k == GateKind::RX || k == GateKind::RZ || k == GateKind::CRZ;
}

/// A named trainable angle, `<word>__<k>`, optionally negated.
struct ParameterRef {
  std::string name;
  int sign = 1;

  friend bool operator==(const ParameterRef &, const ParameterRef &) = default;
};

using Angle = std::variant<double, ParameterRef>;

/// RZ(t) = diag(e^{-it/2}, e^{it/2}); RX(t) = cos(t/2) I - i sin(t/2) X;
/// CRZ applies RZ(t) to `target` when `control` is 1. For CX and CRZ,
/// `control` is qubits[0] and `target` qubits[1].
struct Gate {
  GateKind kind = GateKind::H;
  std::size_t qubits[2] = {0, 0};
  std::optional<Angle> angle;

  std::size_t arity() const { return is_two_qubit(kind) ? 2 : 1; }
  bool is_bound() const {
    return !angle || std::holds_alternative<double>(*angle);
  }
  /// Angle in radians; requires is_bound().
  double value() const { return angle ? std::get<double>(*angle) : 0.0; }

  friend bool operator==(const Gate &, const Gate &) = default;

  static Gate h(std::size_t q) { return {GateKind::H, {q, q}, std::nullopt}; }
  static Gate cx(std::size_t c, std::size_t t) {
    return {GateKind::CX, {c, t}, std::nullopt};
  }
  static Gate rx(std::size_t q, Angle a) { return {GateKind::RX, {q, q}, a}; }
  static Gate rz(std::size_t q, Angle a) { return {GateKind::RZ, {q, q}, a}; }
  static Gate crz(std::size_t c, std::size_t t, Angle a) {
    return {GateKind::CRZ, {c, t}, a};
  }
};

struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;
  std::map<std::size_t, int> postselect;  // qubit -> required outcome
  std::size_t measured = 0;

  /// Throws StructureError if qubit indices, angles, or the
  /// postselect/measured partition are inconsistent.
  void validate() const;

  friend bool operator==(const Circuit &, const Circuit &) = default;
};

struct AnsatzConfig {
  std::size_t qubits_per_n = 1;
  std::size_t qubits_per_s = 1;
  std::size_t iqp_layers = 1;

  void validate() const;
  QubitMap qubit_map() const { return {qubits_per_n, qubits_per_s}; }
};

/// Gates preparing a word state on `qubits` (all starting in |0>).
/// One qubit: RX, RZ, RX (3 parameters). k >= 2 qubits: H on each, then per
/// IQP layer a CRZ on every adjacent pair (k - 1 parameters per layer).
std::vector<Gate> word_state_gates(std::string_view word,
                                   std::span<const std::size_t> qubits,
                                   const AnsatzConfig &cfg);

/// Number of parameters a word on `k` qubits carries.
std::size_t word_parameter_count(std::size_t k, const AnsatzConfig &cfg);

/// Reversed order, angles negated: the adjoint of the gate sequence.
std::vector<Gate> dagger(std::span<const Gate> gates);

/// Reversed order, angles unchanged. Every gate in the set is a symmetric
/// matrix, so this is the transpose of the sequence.
std::vector<Gate> transpose(std::span<const Gate> gates);

/// IQP compilation of a (possibly rewritten) diagram. Cups become
/// CX(a, b), H(a) and a 00 post-selection; bent subdiagrams become their
/// transposes acting as effects on the cup's remaining wire.
Circuit compile(const StringDiagram &diagram, const AnsatzConfig &cfg = {});

/// Sorted, deduplicated parameter names over every word of the diagrams.
std::vector<std::string> parameter_names(std::span<const StringDiagram> diagrams,
                                         const AnsatzConfig &cfg = {});

/// Every distinct parameter name referenced by a circuit, sorted.
std::vector<std::string> referenced_parameters(const Circuit &circuit);

using ParameterValues = std::map<std::string, double, std::less<>>;

/// Replaces each ParameterRef with sign * value. Throws BindingError listing
/// every missing name.
Circuit bind(const Circuit &circuit, const ParameterValues &values);

/// Maps an ordered list of parameter names to vector positions so circuits
/// can be bound from a flat parameter vector.
class ParameterLayout {
 public:
  ParameterLayout() = default;
  explicit ParameterLayout(std::vector<std::string> names);

  const std::vector<std::string> &names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  ParameterValues to_values(std::span<const double> theta) const;

 private:
  std::vector<std::string> names_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// A circuit whose ParameterRefs have been resolved against a layout once, so
/// rebinding to a new parameter vector is a linear pass.
class PreparedCircuit {
 public:
  PreparedCircuit(Circuit circuit, const ParameterLayout &layout);

  const Circuit &circuit() const { return circuit_; }
  Circuit bind(std::span<const double> theta) const;

 private:
  struct Slot {
    std::size_t gate;
    std::size_t param;
    int sign;
  };
  Circuit circuit_;
  Circuit skeleton_;  // ParameterRefs replaced by 0.0
  std::vector<Slot> slots_;
};

/// Line-oriented text: `qubits N`, `postselect q=0 ...`, `measure q`, then one
/// `KIND q0 [q1] [angle-or-name]` line per gate. Negated parameters are
/// written `-name`.
std::string serialize(const Circuit &circuit);
Circuit parse_circuit(std::string_view text);

}  // namespace qnlp

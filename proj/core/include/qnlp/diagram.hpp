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
#include <span>
#include <string>
#include <vector>

#include "qnlp/pregroup.hpp"

namespace qnlp {

enum class BoxKind { State, Effect };

struct WordBox {
  std::string word;
  PregroupType type;
  BoxKind kind = BoxKind::State;
  std::size_t first_wire = 0;  // wires [first_wire, first_wire + type.size())
};

/// One wire per simple type of the sentence, in left-to-right order.
struct Wire {
  SimpleType type;
  std::size_t box = 0;
  std::size_t port = 0;
};

struct Cup {
  std::size_t left = 0;  // wire indices, left < right
  std::size_t right = 0;

  friend bool operator==(const Cup &, const Cup &) = default;
};

/// One application of the bending rule. The state box `box`, together with
/// the effects it had already absorbed, closed off at `closed_wire`; the cup
/// was deleted and the transposed subdiagram now sits as an effect on
/// `target_wire`.
struct BendStep {
  Cup cup;
  std::size_t closed_wire = 0;
  std::size_t target_wire = 0;
  std::size_t box = 0;
  std::vector<std::size_t> absorbed;  // earlier step indices nested inside
};

struct StringDiagram {
  std::vector<WordBox> boxes;
  std::vector<Wire> wires;
  std::vector<Cup> cups;
  std::vector<std::size_t> open_wires;
  std::vector<BendStep> bent;

  /// Steps not nested inside a later step, i.e. effects still attached
  /// directly to a state box.
  std::vector<std::size_t> top_level_steps() const;
};

/// One state box per word, one cup per contraction, residual wires open.
/// Throws StructureError when the witness does not match the types or does
/// not leave exactly one plain `s`.
StringDiagram build_diagram(std::span<const TypedWord> sentence,
                            const ReductionWitness &witness);

/// Repeatedly bends closed state subdiagrams through their cups, rightmost
/// removable cup first, until no cup is removable.
StringDiagram remove_cups(const StringDiagram &diagram);

struct QubitMap {
  std::size_t qubits_per_n = 1;
  std::size_t qubits_per_s = 1;

  std::size_t width(const SimpleType &t) const {
    return t.base == AtomicType::N ? qubits_per_n : qubits_per_s;
  }
};

struct ResourceCount {
  std::size_t qubits_total = 0;
  std::size_t qubits_postselected = 0;
  std::size_t qubits_measured = 0;

  friend bool operator==(const ResourceCount &,
                         const ResourceCount &) = default;
};

/// Qubit accounting for the circuit `compile` would produce. One qubit of
/// each open `s` wire is measured; any further `s` qubits are post-selected.
ResourceCount count_resources(const StringDiagram &diagram,
                              const QubitMap &qubits = {});

enum class RenderFormat { Text, Dot };

std::string render(const StringDiagram &diagram, RenderFormat format);

}  // namespace qnlp

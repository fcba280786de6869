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

#include "qnlp/diagram.hpp"

#include <algorithm>
#include <sstream>

#include "qnlp/error.hpp"

namespace qnlp {

namespace {

constexpr SimpleType kSentence{AtomicType::S, 0};

// Qubits owned by the subdiagram closed off in `step`: the box's wires plus
// the fresh qubits of every effect it absorbed.
std::size_t fragment_qubits(const StringDiagram &d, std::size_t step,
                            const QubitMap &q);

std::size_t fresh_qubits(const StringDiagram &d, std::size_t step,
                         const QubitMap &q) {
  const auto &s = d.bent[step];
  return fragment_qubits(d, step, q) - q.width(d.wires[s.closed_wire].type);
}

std::size_t fragment_qubits(const StringDiagram &d, std::size_t step,
                            const QubitMap &q) {
  const auto &s = d.bent[step];
  const auto &box = d.boxes[s.box];
  std::size_t total = 0;
  for (const auto &t : box.type.simples) total += q.width(t);
  for (auto nested : s.absorbed) total += fresh_qubits(d, nested, q);
  return total;
}

}  // namespace

std::vector<std::size_t> StringDiagram::top_level_steps() const {
  std::vector<bool> nested(bent.size(), false);
  for (const auto &s : bent) {
    for (auto a : s.absorbed) nested[a] = true;
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < bent.size(); ++i) {
    if (!nested[i]) out.push_back(i);
  }
  return out;
}

StringDiagram build_diagram(std::span<const TypedWord> sentence,
                            const ReductionWitness &witness) {
  StringDiagram d;
  for (std::size_t b = 0; b < sentence.size(); ++b) {
    const auto &w = sentence[b];
    if (w.type.empty()) {
      throw StructureError("word \"" + w.word + "\" has an empty type");
    }
    d.boxes.push_back({w.word, w.type, BoxKind::State, d.wires.size()});
    for (std::size_t p = 0; p < w.type.size(); ++p) {
      d.wires.push_back({w.type.simples[p], b, p});
    }
  }
  const auto types = concat_types(sentence);
  if (!is_valid_witness(types, witness)) {
    throw StructureError("reduction witness does not match the sentence types");
  }
  if (witness.residual.size() != 1 ||
      types[witness.residual[0]] != kSentence) {
    throw StructureError("witness does not reduce the sentence to s");
  }
  for (const auto &[i, j] : witness.contractions) d.cups.push_back({i, j});
  std::sort(d.cups.begin(), d.cups.end(), [](const Cup &a, const Cup &b) {
    return a.left < b.left;
  });
  d.open_wires = witness.residual;
  return d;
}

StringDiagram remove_cups(const StringDiagram &diagram) {
  StringDiagram d = diagram;
  // consumed[w]: wire w is the target of an effect still attached at top
  // level.
  std::vector<bool> consumed(d.wires.size(), false);
  for (auto t : d.top_level_steps()) consumed[d.bent[t].target_wire] = true;

  const auto closes_at = [&](std::size_t wire) {
    const auto &box = d.boxes[d.wires[wire].box];
    if (box.kind != BoxKind::State) return false;
    for (std::size_t p = 0; p < box.type.size(); ++p) {
      const auto w = box.first_wire + p;
      if (w != wire && !consumed[w]) return false;
    }
    return true;
  };

  while (true) {
    // Rightmost first: scan cups by decreasing right endpoint.
    std::vector<std::size_t> order(d.cups.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return d.cups[a].right > d.cups[b].right;
    });
    bool changed = false;
    for (auto ci : order) {
      const Cup cup = d.cups[ci];
      std::size_t closed = 0;
      std::size_t target = 0;
      if (closes_at(cup.right)) {
        closed = cup.right;
        target = cup.left;
      } else if (closes_at(cup.left)) {
        closed = cup.left;
        target = cup.right;
      } else {
        continue;
      }
      BendStep step;
      step.cup = cup;
      step.closed_wire = closed;
      step.target_wire = target;
      step.box = d.wires[closed].box;
      const auto &box = d.boxes[step.box];
      for (auto t : d.top_level_steps()) {
        const auto tw = d.bent[t].target_wire;
        if (tw >= box.first_wire && tw < box.first_wire + box.type.size()) {
          step.absorbed.push_back(t);
        }
      }
      d.boxes[step.box].kind = BoxKind::Effect;
      d.cups.erase(d.cups.begin() + static_cast<std::ptrdiff_t>(ci));
      d.bent.push_back(std::move(step));
      consumed[target] = true;
      changed = true;
      break;
    }
    if (!changed) break;
  }
  return d;
}

ResourceCount count_resources(const StringDiagram &d, const QubitMap &q) {
  ResourceCount rc;
  for (const auto &box : d.boxes) {
    if (box.kind != BoxKind::State) continue;
    for (const auto &t : box.type.simples) rc.qubits_total += q.width(t);
  }
  for (const auto &cup : d.cups) {
    rc.qubits_postselected += 2 * q.width(d.wires[cup.left].type);
  }
  for (auto t : d.top_level_steps()) {
    rc.qubits_total += fresh_qubits(d, t, q);
    rc.qubits_postselected += fragment_qubits(d, t, q);
  }
  for (auto w : d.open_wires) {
    rc.qubits_measured += 1;
    rc.qubits_postselected += q.width(d.wires[w].type) - 1;
  }
  return rc;
}

std::string render(const StringDiagram &d, RenderFormat format) {
  std::ostringstream out;
  if (format == RenderFormat::Text) {
    for (std::size_t b = 0; b < d.boxes.size(); ++b) {
      const auto &box = d.boxes[b];
      out << "box " << b << ' ' << box.word << " : " << to_string(box.type)
          << (box.kind == BoxKind::State ? " state" : " effect") << " wires";
      for (std::size_t p = 0; p < box.type.size(); ++p) {
        out << ' ' << box.first_wire + p;
      }
      out << '\n';
    }
    for (const auto &cup : d.cups) {
      out << "cup " << cup.left << ' ' << cup.right << " : "
          << to_string(d.wires[cup.left].type) << ' '
          << to_string(d.wires[cup.right].type) << '\n';
    }
    for (std::size_t i = 0; i < d.bent.size(); ++i) {
      const auto &s = d.bent[i];
      out << "bend " << i << ' ' << d.boxes[s.box].word << " closed "
          << s.closed_wire << " onto " << s.target_wire;
      if (!s.absorbed.empty()) {
        out << " absorbs";
        for (auto a : s.absorbed) out << ' ' << a;
      }
      out << '\n';
    }
    for (auto w : d.open_wires) {
      out << "open " << w << " : " << to_string(d.wires[w].type) << '\n';
    }
    return out.str();
  }

  out << "graph diagram {\n";
  out << "  rankdir=TB;\n";
  for (std::size_t b = 0; b < d.boxes.size(); ++b) {
    const auto &box = d.boxes[b];
    out << "  b" << b << " [label=\"" << box.word << "\\n"
        << to_string(box.type) << "\", shape="
        << (box.kind == BoxKind::State ? "triangle" : "invtriangle")
        << "];\n";
  }
  for (const auto &cup : d.cups) {
    out << "  b" << d.wires[cup.left].box << " -- b"
        << d.wires[cup.right].box << " [label=\"cup "
        << to_string(d.wires[cup.left].type) << ' '
        << to_string(d.wires[cup.right].type) << "\"];\n";
  }
  for (const auto &s : d.bent) {
    out << "  b" << s.box << " -- b" << d.wires[s.target_wire].box
        << " [style=dashed, label=\"bent " << s.target_wire << "\"];\n";
  }
  for (auto w : d.open_wires) {
    out << "  out" << w << " [shape=point];\n";
    out << "  b" << d.wires[w].box << " -- out" << w << " [label=\""
        << to_string(d.wires[w].type) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace qnlp

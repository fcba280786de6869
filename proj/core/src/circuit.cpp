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

#include "qnlp/circuit.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "qnlp/error.hpp"

namespace qnlp {

namespace {

std::string param_name(std::string_view word, std::size_t k) {
  return std::string(word) + "__" + std::to_string(k);
}

std::size_t type_width(const PregroupType &t, const QubitMap &q) {
  std::size_t k = 0;
  for (const auto &s : t.simples) k += q.width(s);
  return k;
}

Angle negate(const Angle &a) {
  if (const auto *v = std::get_if<double>(&a)) return -*v;
  auto ref = std::get<ParameterRef>(a);
  ref.sign = -ref.sign;
  return ref;
}

// Gates over a private qubit numbering; the unit that bent subdiagrams are
// assembled in before being spliced into the parent.
struct Fragment {
  std::size_t n_qubits = 0;
  std::vector<Gate> gates;
  std::set<std::size_t> postselect;

  std::size_t alloc() { return n_qubits++; }
};

class Compiler {
 public:
  Compiler(const StringDiagram &d, const AnsatzConfig &cfg)
      : d_(d), cfg_(cfg), q_(cfg.qubit_map()) {}

  Circuit run() {
    Fragment top;
    std::vector<std::vector<std::size_t>> wire_qubits(d_.wires.size());
    for (const auto &box : d_.boxes) {
      if (box.kind != BoxKind::State) continue;
      auto ports = emit_state(top, box);
      for (std::size_t p = 0; p < ports.size(); ++p) {
        wire_qubits[box.first_wire + p] = std::move(ports[p]);
      }
    }
    for (auto t : d_.top_level_steps()) {
      const auto &target = wire_qubits[d_.bent[t].target_wire];
      if (target.empty()) {
        throw StructureError("bent effect targets a wire with no state");
      }
      emit_effect(top, t, target);
    }
    for (const auto &cup : d_.cups) {
      const auto &a = wire_qubits[cup.left];
      const auto &b = wire_qubits[cup.right];
      if (a.empty() || b.empty() || a.size() != b.size()) {
        throw StructureError("cup joins wires of mismatched width");
      }
      const std::size_t k = a.size();
      for (std::size_t i = 0; i < k; ++i) {
        top.gates.push_back(Gate::cx(a[i], b[k - 1 - i]));
        top.gates.push_back(Gate::h(a[i]));
        top.postselect.insert(a[i]);
        top.postselect.insert(b[k - 1 - i]);
      }
    }
    if (d_.open_wires.size() != 1) {
      throw StructureError("diagram has " +
                           std::to_string(d_.open_wires.size()) +
                           " open wires; exactly one is required");
    }
    const auto &out = wire_qubits[d_.open_wires[0]];
    if (out.empty()) throw StructureError("open wire has no state");
    for (std::size_t i = 1; i < out.size(); ++i) top.postselect.insert(out[i]);

    Circuit c;
    c.n_qubits = top.n_qubits;
    c.gates = std::move(top.gates);
    for (auto q : top.postselect) c.postselect.emplace(q, 0);
    c.measured = out[0];
    c.validate();
    return c;
  }

 private:
  std::vector<std::vector<std::size_t>> emit_state(Fragment &f,
                                                   const WordBox &box) {
    std::vector<std::vector<std::size_t>> ports;
    std::vector<std::size_t> all;
    for (const auto &t : box.type.simples) {
      auto &port = ports.emplace_back();
      for (std::size_t i = 0; i < q_.width(t); ++i) {
        port.push_back(f.alloc());
        all.push_back(port.back());
      }
    }
    auto gates = word_state_gates(box.word, all, cfg_);
    f.gates.insert(f.gates.end(), gates.begin(), gates.end());
    return ports;
  }

  void emit_effect(Fragment &parent, std::size_t step,
                   std::span<const std::size_t> target) {
    const auto &s = d_.bent[step];
    const auto &box = d_.boxes[s.box];

    Fragment local;
    auto ports = emit_state(local, box);
    for (auto a : s.absorbed) {
      const auto port = d_.wires[d_.bent[a].target_wire].port;
      emit_effect(local, a, ports[port]);
    }
    const auto &closed = ports[d_.wires[s.closed_wire].port];
    if (closed.size() != target.size()) {
      throw StructureError("bent wire width does not match its partner");
    }

    std::vector<std::size_t> remap(local.n_qubits, 0);
    std::vector<bool> mapped(local.n_qubits, false);
    const std::size_t k = closed.size();
    for (std::size_t m = 0; m < k; ++m) {
      remap[closed[m]] = target[k - 1 - m];
      mapped[closed[m]] = true;
    }
    for (std::size_t l = 0; l < local.n_qubits; ++l) {
      if (!mapped[l]) remap[l] = parent.alloc();
    }
    for (auto g : transpose(local.gates)) {
      g.qubits[0] = remap[g.qubits[0]];
      g.qubits[1] = remap[g.qubits[1]];
      parent.gates.push_back(std::move(g));
    }
    for (std::size_t l = 0; l < local.n_qubits; ++l) {
      parent.postselect.insert(remap[l]);
    }
  }

  const StringDiagram &d_;
  const AnsatzConfig &cfg_;
  QubitMap q_;
};

void append_number(std::string &out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::size_t parse_index(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ParseError("line " + std::to_string(line) + ": bad qubit index \"" +
                     std::string(s) + "\"");
  }
  return v;
}

Angle parse_angle(std::string_view s) {
  double v = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec == std::errc() && res.ptr == s.data() + s.size()) return v;
  ParameterRef ref;
  if (!s.empty() && s.front() == '-') {
    ref.sign = -1;
    s.remove_prefix(1);
  }
  ref.name = std::string(s);
  return ref;
}

}  // namespace

std::string_view to_string(GateKind kind) {
  switch (kind) {
    case GateKind::H:
      return "H";
    case GateKind::RX:
      return "RX";
    case GateKind::RZ:
      return "RZ";
    case GateKind::CRZ:
      return "CRZ";
    case GateKind::CX:
      return "CX";
  }
  return "?";
}

void Circuit::validate() const {
  for (const auto &g : gates) {
    for (std::size_t i = 0; i < g.arity(); ++i) {
      if (g.qubits[i] >= n_qubits) {
        throw StructureError("gate qubit " + std::to_string(g.qubits[i]) +
                             " out of range");
      }
    }
    if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
      throw StructureError("two-qubit gate on a single qubit");
    }
    if (is_rotation(g.kind) != g.angle.has_value()) {
      throw StructureError(std::string(to_string(g.kind)) +
                           " has the wrong number of angles");
    }
  }
  if (n_qubits == 0) throw StructureError("circuit has no qubits");
  if (measured >= n_qubits) throw StructureError("measured qubit out of range");
  if (postselect.contains(measured)) {
    throw StructureError("measured qubit is also post-selected");
  }
  if (postselect.size() + 1 != n_qubits) {
    throw StructureError("post-selected and measured qubits must cover "
                         "every qubit exactly once");
  }
  for (const auto &[q, outcome] : postselect) {
    if (q >= n_qubits || (outcome != 0 && outcome != 1)) {
      throw StructureError("bad post-selection entry");
    }
  }
}

void AnsatzConfig::validate() const {
  if (qubits_per_n == 0 || qubits_per_s == 0 || iqp_layers == 0) {
    throw ConfigError("ansatz qubit counts and layers must be >= 1");
  }
}

std::size_t word_parameter_count(std::size_t k, const AnsatzConfig &cfg) {
  return k == 1 ? 3 : (k - 1) * cfg.iqp_layers;
}

std::vector<Gate> word_state_gates(std::string_view word,
                                   std::span<const std::size_t> qubits,
                                   const AnsatzConfig &cfg) {
  std::vector<Gate> gates;
  if (qubits.size() == 1) {
    const auto q = qubits[0];
    gates.push_back(Gate::rx(q, ParameterRef{param_name(word, 0)}));
    gates.push_back(Gate::rz(q, ParameterRef{param_name(word, 1)}));
    gates.push_back(Gate::rx(q, ParameterRef{param_name(word, 2)}));
    return gates;
  }
  for (auto q : qubits) gates.push_back(Gate::h(q));
  std::size_t k = 0;
  for (std::size_t layer = 0; layer < cfg.iqp_layers; ++layer) {
    for (std::size_t j = 0; j + 1 < qubits.size(); ++j) {
      gates.push_back(Gate::crz(qubits[j], qubits[j + 1],
                                ParameterRef{param_name(word, k++)}));
    }
  }
  return gates;
}

std::vector<Gate> dagger(std::span<const Gate> gates) {
  std::vector<Gate> out(gates.rbegin(), gates.rend());
  for (auto &g : out) {
    if (g.angle) g.angle = negate(*g.angle);
  }
  return out;
}

std::vector<Gate> transpose(std::span<const Gate> gates) {
  return {gates.rbegin(), gates.rend()};
}

Circuit compile(const StringDiagram &diagram, const AnsatzConfig &cfg) {
  cfg.validate();
  return Compiler(diagram, cfg).run();
}

std::vector<std::string> parameter_names(
    std::span<const StringDiagram> diagrams, const AnsatzConfig &cfg) {
  cfg.validate();
  const auto q = cfg.qubit_map();
  std::set<std::string> names;
  for (const auto &d : diagrams) {
    for (const auto &box : d.boxes) {
      const auto count = word_parameter_count(type_width(box.type, q), cfg);
      for (std::size_t k = 0; k < count; ++k) {
        names.insert(param_name(box.word, k));
      }
    }
  }
  return {names.begin(), names.end()};
}

std::vector<std::string> referenced_parameters(const Circuit &circuit) {
  std::set<std::string> names;
  for (const auto &g : circuit.gates) {
    if (!g.angle) continue;
    if (const auto *ref = std::get_if<ParameterRef>(&*g.angle)) {
      names.insert(ref->name);
    }
  }
  return {names.begin(), names.end()};
}

Circuit bind(const Circuit &circuit, const ParameterValues &values) {
  Circuit out = circuit;
  std::set<std::string> missing;
  for (auto &g : out.gates) {
    if (!g.angle) continue;
    if (const auto *ref = std::get_if<ParameterRef>(&*g.angle)) {
      const auto it = values.find(ref->name);
      if (it == values.end()) {
        missing.insert(ref->name);
      } else {
        g.angle = ref->sign * it->second;
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = "missing parameter values:";
    for (const auto &m : missing) msg += ' ' + m;
    throw BindingError(msg);
  }
  return out;
}

ParameterLayout::ParameterLayout(std::vector<std::string> names)
    : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!index_.emplace(names_[i], i).second) {
      throw ConfigError("duplicate parameter name " + names_[i]);
    }
  }
}

std::optional<std::size_t> ParameterLayout::index_of(
    std::string_view name) const {
  const auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ParameterValues ParameterLayout::to_values(std::span<const double> theta) const {
  if (theta.size() != names_.size()) {
    throw ConfigError("parameter vector has the wrong length");
  }
  ParameterValues values;
  for (std::size_t i = 0; i < names_.size(); ++i) values[names_[i]] = theta[i];
  return values;
}

PreparedCircuit::PreparedCircuit(Circuit circuit, const ParameterLayout &layout)
    : circuit_(std::move(circuit)) {
  std::set<std::string> missing;
  for (std::size_t i = 0; i < circuit_.gates.size(); ++i) {
    const auto &g = circuit_.gates[i];
    if (!g.angle) continue;
    if (const auto *ref = std::get_if<ParameterRef>(&*g.angle)) {
      if (const auto idx = layout.index_of(ref->name)) {
        slots_.push_back({i, *idx, ref->sign});
      } else {
        missing.insert(ref->name);
      }
    }
  }
  if (!missing.empty()) {
    std::string msg = "parameters absent from layout:";
    for (const auto &m : missing) msg += ' ' + m;
    throw BindingError(msg);
  }
  skeleton_ = circuit_;
  for (const auto &slot : slots_) skeleton_.gates[slot.gate].angle = 0.0;
}

Circuit PreparedCircuit::bind(std::span<const double> theta) const {
  Circuit out = skeleton_;
  for (const auto &slot : slots_) {
    out.gates[slot.gate].angle = slot.sign * theta[slot.param];
  }
  return out;
}

std::string serialize(const Circuit &circuit) {
  std::string out = "qubits " + std::to_string(circuit.n_qubits) + '\n';
  out += "postselect";
  for (const auto &[q, outcome] : circuit.postselect) {
    out += ' ' + std::to_string(q) + '=' + std::to_string(outcome);
  }
  out += "\nmeasure " + std::to_string(circuit.measured) + '\n';
  for (const auto &g : circuit.gates) {
    out += to_string(g.kind);
    for (std::size_t i = 0; i < g.arity(); ++i) {
      out += ' ' + std::to_string(g.qubits[i]);
    }
    if (g.angle) {
      out += ' ';
      if (const auto *v = std::get_if<double>(&*g.angle)) {
        append_number(out, *v);
      } else {
        const auto &ref = std::get<ParameterRef>(*g.angle);
        if (ref.sign < 0) out += '-';
        out += ref.name;
      }
    }
    out += '\n';
  }
  return out;
}

Circuit parse_circuit(std::string_view text) {
  Circuit c;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool saw_qubits = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    const auto &head = tok[0];
    if (head == "qubits" && tok.size() == 2) {
      c.n_qubits = parse_index(tok[1], line_no);
      saw_qubits = true;
    } else if (head == "postselect") {
      for (std::size_t i = 1; i < tok.size(); ++i) {
        const auto eq = tok[i].find('=');
        if (eq == std::string::npos) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": expected q=outcome");
        }
        c.postselect[parse_index(tok[i].substr(0, eq), line_no)] =
            static_cast<int>(parse_index(tok[i].substr(eq + 1), line_no));
      }
    } else if (head == "measure" && tok.size() == 2) {
      c.measured = parse_index(tok[1], line_no);
    } else {
      Gate g;
      bool known = false;
      for (auto k : {GateKind::H, GateKind::RX, GateKind::RZ, GateKind::CRZ,
                     GateKind::CX}) {
        if (head == to_string(k)) {
          g.kind = k;
          known = true;
        }
      }
      const std::size_t expected =
          1 + g.arity() + (is_rotation(g.kind) ? 1 : 0);
      if (!known || tok.size() != expected) {
        throw ParseError("line " + std::to_string(line_no) +
                         ": malformed gate \"" + line + "\"");
      }
      g.qubits[0] = parse_index(tok[1], line_no);
      g.qubits[1] = g.arity() == 2 ? parse_index(tok[2], line_no) : g.qubits[0];
      if (is_rotation(g.kind)) g.angle = parse_angle(tok.back());
      c.gates.push_back(std::move(g));
    }
  }
  if (!saw_qubits) throw ParseError("missing `qubits` header");
  c.validate();
  return c;
}

}  // namespace qnlp

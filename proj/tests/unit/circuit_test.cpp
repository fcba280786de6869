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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "qnlp/dataset.hpp"
#include "qnlp/error.hpp"
#include "qnlp/pipeline.hpp"
#include "qnlp/simulator.hpp"

namespace qnlp {
namespace {

std::vector<std::string> split_words(const std::string &s) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const auto end = s.find(' ', pos);
    out.push_back(s.substr(pos, end - pos));
    if (end == std::string::npos) return out;
    pos = end + 1;
  }
}

SentenceArtifacts parse(const std::string &s) {
  return analyze(split_words(s), default_lexicon());
}

// Golden serializations; the gate order is normative for this project.
constexpr const char *kTransitiveGolden =
    "qubits 5\n"
    "postselect 0=0 1=0 3=0 4=0\n"
    "measure 2\n"
    "RX 0 siva__0\n"
    "RZ 0 siva__1\n"
    "RX 0 siva__2\n"
    "H 1\n"
    "H 2\n"
    "H 3\n"
    "CRZ 1 2 hates__0\n"
    "CRZ 2 3 hates__1\n"
    "RX 4 comics__0\n"
    "RZ 4 comics__1\n"
    "RX 4 comics__2\n"
    "CX 0 1\n"
    "H 0\n"
    "CX 3 4\n"
    "H 3\n";

constexpr const char *kTransitiveRewrittenGolden =
    "qubits 3\n"
    "postselect 0=0 2=0\n"
    "measure 1\n"
    "H 0\n"
    "H 1\n"
    "H 2\n"
    "CRZ 0 1 hates__0\n"
    "CRZ 1 2 hates__1\n"
    "RX 2 comics__2\n"
    "RZ 2 comics__1\n"
    "RX 2 comics__0\n"
    "RX 0 siva__2\n"
    "RZ 0 siva__1\n"
    "RX 0 siva__0\n";

TEST(Compile, AdjectiveClause) {
  const auto a = parse("siva hates thrilling comics");
  const auto c = compile(a.diagram);
  EXPECT_EQ(c.n_qubits, 7u);
  EXPECT_EQ(c.postselect.size(), 6u);
  EXPECT_EQ(c.measured, 2u);
  std::size_t verb_h = 0, verb_crz = 0;
  for (const auto &g : c.gates) {
    if (g.kind == GateKind::CRZ &&
        std::get<ParameterRef>(*g.angle).name.starts_with("hates")) {
      ++verb_crz;
    }
    if (g.kind == GateKind::H && g.qubits[0] >= 1 && g.qubits[0] <= 3) ++verb_h;
  }
  EXPECT_EQ(verb_crz, 2u);
  EXPECT_GE(verb_h, 3u);
  const auto r = compile(a.rewritten);
  EXPECT_EQ(r.n_qubits, 4u);
  EXPECT_EQ(r.postselect.size(), 3u);
}

TEST(Compile, SentenceWord) {
  const std::vector<TypedWord> w{{"yes", parse_type("s")}};
  const auto c = compile(build_diagram(w, ReductionWitness{{}, {0}}));
  EXPECT_EQ(c.n_qubits, 1u);
  EXPECT_TRUE(c.postselect.empty());
  ASSERT_EQ(c.gates.size(), 3u);
  EXPECT_EQ(c.gates[0].kind, GateKind::RX);
  EXPECT_EQ(c.gates[1].kind, GateKind::RZ);
  EXPECT_EQ(c.gates[2].kind, GateKind::RX);
}

TEST(Compile, GoldenSerialization) {
  const auto a = parse("siva hates comics");
  EXPECT_EQ(serialize(compile(a.diagram)), kTransitiveGolden);
  EXPECT_EQ(serialize(compile(a.rewritten)), kTransitiveRewrittenGolden);
}

TEST(Compile, DeterministicAndCupAccounting) {
  const auto lex = default_lexicon();
  std::vector<StringDiagram> all;
  std::set<std::string> referenced;
  for (const auto &ex : enumerate_templates(lex)) {
    const auto a = analyze(ex.tokens, lex);
    const auto c1 = compile(a.diagram);
    ASSERT_EQ(serialize(c1), serialize(compile(a.diagram)));
    const auto r = compile(a.rewritten);
    ASSERT_EQ(c1.n_qubits - r.n_qubits, a.diagram.cups.size());
    ASSERT_LE(r.n_qubits, 5u);
    c1.validate();
    r.validate();
    for (const auto &n : referenced_parameters(c1)) referenced.insert(n);
    for (const auto &n : referenced_parameters(r)) referenced.insert(n);
    all.push_back(a.diagram);
  }
  const auto names = parameter_names(all);
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()), referenced);
}

TEST(ParameterNames, CorpusCount) {
  const auto lex = default_lexicon();
  std::vector<StringDiagram> all;
  for (const auto &ex : enumerate_templates(lex)) {
    all.push_back(analyze(ex.tokens, lex).diagram);
  }
  const auto names = parameter_names(all);
  EXPECT_EQ(names.size(), 7u * 3 + 3u * 1 + 5u * 2);
  EXPECT_TRUE(std::is_sorted(names.begin(), names.end()));
  EXPECT_TRUE(parameter_names(std::vector<StringDiagram>{}).empty());

  const auto d = parse("siva hates comics").diagram;
  const std::vector<StringDiagram> one{d}, two{d, parse("comics hates siva").diagram};
  EXPECT_EQ(parameter_names(one), parameter_names(two));
}

TEST(WordParameterCount, Shapes) {
  const AnsatzConfig cfg;
  EXPECT_EQ(word_parameter_count(1, cfg), 3u);
  EXPECT_EQ(word_parameter_count(2, cfg), 1u);
  EXPECT_EQ(word_parameter_count(3, cfg), 2u);
  const AnsatzConfig deep{1, 1, 3};
  EXPECT_EQ(word_parameter_count(3, deep), 6u);
}

TEST(Bind, Examples) {
  Circuit c{1, {Gate::rx(0, ParameterRef{"w__0", 1})}, {}, 0};
  const auto b = qnlp::bind(c, {{"w__0", std::numbers::pi}});
  EXPECT_EQ(b.gates[0].value(), std::numbers::pi);

  Circuit d{1, dagger(std::vector{Gate::rz(0, ParameterRef{"w__1", 1})}), {}, 0};
  EXPECT_EQ(qnlp::bind(d, {{"w__1", 0.5}}).gates[0].value(), -0.5);

  Circuit e{1, {Gate::rx(0, ParameterRef{"a__0", 1})}, {}, 0};
  try {
    qnlp::bind(e, {});
    FAIL() << "expected BindingError";
  } catch (const BindingError &err) {
    EXPECT_NE(std::string(err.what()).find("a__0"), std::string::npos);
  }
}

TEST(PreparedCircuit, MatchesBind) {
  const auto a = parse("rani loves boring fiction");
  const auto c = compile(a.rewritten);
  const ParameterLayout layout(parameter_names(std::vector{a.diagram}));
  const PreparedCircuit prepared(c, layout);
  std::vector<double> theta(layout.size());
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] = 0.1 * i - 0.7;
  EXPECT_EQ(prepared.bind(theta), qnlp::bind(c, layout.to_values(theta)));
}

TEST(Dagger, UndoesWordState) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-4.0, 4.0);
  for (std::size_t k = 1; k <= 3; ++k) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<std::size_t> qubits(k);
      for (std::size_t i = 0; i < k; ++i) qubits[i] = i;
      const auto gates = word_state_gates("w", qubits, AnsatzConfig{});
      Circuit c;
      c.n_qubits = k + 1;
      c.gates = gates;
      const auto back = dagger(gates);
      c.gates.insert(c.gates.end(), back.begin(), back.end());
      for (std::size_t q = 0; q < k; ++q) c.postselect[q] = 0;
      c.measured = k;
      ParameterValues values;
      for (const auto &n : referenced_parameters(c)) values[n] = angle(rng);
      const auto out = run_exact(c, values);
      ASSERT_NEAR(out.p0_raw, 1.0, 1e-9);
      ASSERT_NEAR(out.p1_raw, 0.0, 1e-9);
    }
  }
}

TEST(Serialization, RoundTrip) {
  const auto a = parse("siva hates thrilling comics");
  for (const auto &d : {a.diagram, a.rewritten}) {
    const auto c = compile(d);
    EXPECT_EQ(parse_circuit(serialize(c)), c);
  }
  Circuit bound{2, {Gate::h(0), Gate::crz(0, 1, -1.25), Gate::cx(1, 0)},
                {{1, 0}}, 0};
  const auto text = serialize(bound);
  EXPECT_EQ(parse_circuit(text), bound);
  EXPECT_THROW(parse_circuit("H 0\n"), ParseError);
  EXPECT_THROW(parse_circuit("qubits 1\nmeasure 0\nFOO 0\n"), ParseError);
}

TEST(Validate, RejectsMalformed) {
  Circuit c{1, {Gate::cx(0, 0)}, {}, 0};
  EXPECT_THROW(c.validate(), StructureError);
  Circuit d{1, {Gate::h(3)}, {}, 0};
  EXPECT_THROW(d.validate(), StructureError);
  Circuit e{2, {}, {{0, 0}}, 0};
  EXPECT_THROW(e.validate(), StructureError);
  Circuit f{2, {}, {}, 0};
  EXPECT_THROW(f.validate(), StructureError);
  EXPECT_THROW((AnsatzConfig{0, 1, 1}.validate()), ConfigError);
}

}  // namespace
}  // namespace qnlp

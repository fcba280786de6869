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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "qnlp/dataset.hpp"
#include "qnlp/error.hpp"
#include "qnlp/pipeline.hpp"

namespace qnlp {
namespace {

SentenceArtifacts parse(const std::string &sentence) {
  std::vector<std::string> toks;
  std::size_t pos = 0;
  while (pos < sentence.size()) {
    const auto end = sentence.find(' ', pos);
    toks.push_back(sentence.substr(pos, end - pos));
    if (end == std::string::npos) break;
    pos = end + 1;
  }
  return analyze(toks, default_lexicon());
}

StringDiagram sentence_word() {
  const std::vector<TypedWord> w{{"yes", parse_type("s")}};
  return build_diagram(w, ReductionWitness{{}, {0}});
}

std::size_t count(const std::string &haystack, const std::string &needle) {
  std::size_t n = 0;
  for (auto p = haystack.find(needle); p != std::string::npos;
       p = haystack.find(needle, p + 1)) {
    ++n;
  }
  return n;
}

TEST(BuildDiagram, AdjectiveClause) {
  const auto a = parse("siva hates thrilling comics");
  const auto &d = a.diagram;
  EXPECT_EQ(d.boxes.size(), 4u);
  for (const auto &b : d.boxes) EXPECT_EQ(b.kind, BoxKind::State);
  EXPECT_EQ(d.wires.size(), 7u);
  EXPECT_EQ(d.cups.size(), 3u);
  ASSERT_EQ(d.open_wires.size(), 1u);
  EXPECT_EQ(d.wires[d.open_wires[0]].type, (SimpleType{AtomicType::S, 0}));
}

TEST(BuildDiagram, SingleSentenceWord) {
  const auto d = sentence_word();
  EXPECT_EQ(d.boxes.size(), 1u);
  EXPECT_TRUE(d.cups.empty());
  EXPECT_EQ(d.open_wires.size(), 1u);
}

TEST(BuildDiagram, TransitiveClause) {
  const auto a = parse("siva hates comics");
  EXPECT_EQ(a.diagram.boxes.size(), 3u);
  ASSERT_EQ(a.diagram.cups.size(), 2u);
  EXPECT_EQ(a.diagram.cups[0], (Cup{0, 1}));
  EXPECT_EQ(a.diagram.cups[1], (Cup{3, 4}));
  EXPECT_EQ(a.diagram.open_wires, std::vector<std::size_t>{2});
}

TEST(BuildDiagram, RejectsForeignWitness) {
  const std::vector<TypedWord> w{{"siva", parse_type("n")},
                                 {"yes", parse_type("s")}};
  EXPECT_THROW(build_diagram(w, ReductionWitness{{}, {0, 1}}), StructureError);
  EXPECT_THROW(build_diagram(w, ReductionWitness{{{0, 1}}, {}}), StructureError);
}

TEST(CountResources, AdjectiveClauseBeforeAndAfter) {
  const auto a = parse("siva hates thrilling comics");
  EXPECT_EQ(count_resources(a.diagram), (ResourceCount{7, 6, 1}));
  EXPECT_EQ(count_resources(a.rewritten), (ResourceCount{4, 3, 1}));
}

TEST(CountResources, TransitiveClause) {
  const auto a = parse("siva hates comics");
  EXPECT_EQ(count_resources(a.diagram), (ResourceCount{5, 4, 1}));
  EXPECT_EQ(count_resources(a.rewritten), (ResourceCount{3, 2, 1}));
}

TEST(CountResources, SentenceWord) {
  EXPECT_EQ(count_resources(sentence_word()), (ResourceCount{1, 0, 1}));
}

TEST(CountResources, WiderQubitMap) {
  const auto a = parse("siva hates comics");
  // Two qubits per noun wire, one per sentence wire.
  const QubitMap q{2, 1};
  EXPECT_EQ(count_resources(a.diagram, q), (ResourceCount{9, 8, 1}));
  EXPECT_EQ(count_resources(a.rewritten, q), (ResourceCount{5, 4, 1}));
}

TEST(RemoveCups, FixpointWithoutCups) {
  const auto d = sentence_word();
  const auto r = remove_cups(d);
  EXPECT_EQ(render(r, RenderFormat::Text), render(d, RenderFormat::Text));
}

TEST(RemoveCups, IdempotentAndShrinking) {
  for (const auto &ex : enumerate_templates(default_lexicon())) {
    const auto a = analyze(ex.tokens, default_lexicon());
    const auto once = a.rewritten;
    const auto twice = remove_cups(once);
    ASSERT_EQ(render(once, RenderFormat::Text), render(twice, RenderFormat::Text));
    const auto before = count_resources(a.diagram);
    const auto after = count_resources(once);
    ASSERT_LT(after.qubits_total, before.qubits_total) << ex.sentence();
    ASSERT_EQ(after.qubits_total,
              after.qubits_postselected + after.qubits_measured);
    ASSERT_EQ(before.qubits_total - after.qubits_total, a.diagram.cups.size());
    ASSERT_EQ(once.open_wires.size(), 1u);
    ASSERT_LE(after.qubits_total, 5u);
  }
}

TEST(Render, TextAndDot) {
  const auto one = render(sentence_word(), RenderFormat::Text);
  EXPECT_NE(one.find("yes"), std::string::npos);
  EXPECT_NE(one.find(": s"), std::string::npos);

  const auto dot = render(parse("siva hates thrilling comics").diagram,
                           RenderFormat::Dot);
  EXPECT_EQ(dot.rfind("graph diagram {", 0), 0u);
  EXPECT_EQ(count(dot, "shape=triangle"), 4u);
  EXPECT_EQ(count(dot, "label=\"cup "), 3u);

  const auto empty = render(StringDiagram{}, RenderFormat::Dot);
  EXPECT_EQ(empty, "graph diagram {\n  rankdir=TB;\n}\n");
  EXPECT_EQ(render(StringDiagram{}, RenderFormat::Text), "");
}

TEST(Render, RewrittenShowsBends) {
  const auto text = render(parse("siva hates thrilling comics").rewritten,
                           RenderFormat::Text);
  EXPECT_EQ(count(text, "bend "), 3u);
  EXPECT_EQ(count(text, "cup "), 0u);
}

}  // namespace
}  // namespace qnlp

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


#include "qnlp/pregroup.hpp"

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "qnlp/dataset.hpp"
#include "qnlp/error.hpp"
#include "support/oracles.hpp"

namespace qnlp {
namespace {

constexpr SimpleType N{AtomicType::N, 0};
constexpr SimpleType NL{AtomicType::N, -1};
constexpr SimpleType NR{AtomicType::N, 1};
constexpr SimpleType S{AtomicType::S, 0};

std::vector<std::string> words(std::initializer_list<const char *> w) {
  return {w.begin(), w.end()};
}

TEST(ParseType, Transitive) {
  const auto t = parse_type("n.r s n.l");
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.simples[0], NR);
  EXPECT_EQ(t.simples[1], S);
  EXPECT_EQ(t.simples[2], NL);
  EXPECT_EQ(to_string(t), "n.r s n.l");
}

TEST(ParseType, SingleAtom) { EXPECT_EQ(parse_type("n").simples, std::vector{N}); }

TEST(ParseType, UnknownToken) {
  try {
    parse_type("n x");
    FAIL() << "expected ParseError";
  } catch (const ParseError &e) {
    EXPECT_NE(std::string(e.what()).find("\"x\""), std::string::npos);
  }
}

TEST(ParseType, RejectsIteratedAdjoint) {
  EXPECT_THROW(parse_type("n.l.l"), ParseError);
  EXPECT_THROW(parse_type("n.x"), ParseError);
}

TEST(Lexicon, RoundTrip) {
  const auto lex = default_lexicon();
  EXPECT_EQ(lex.size(), 15u);
  EXPECT_EQ(lex.words(PartOfSpeech::Noun).size(), 7u);
  EXPECT_EQ(lex.words(PartOfSpeech::Adjective).size(), 3u);
  EXPECT_EQ(lex.words(PartOfSpeech::TransitiveVerb).size(), 5u);
  const auto again = Lexicon::parse(lex.serialize());
  EXPECT_EQ(again.serialize(), lex.serialize());
}

TEST(Lexicon, RejectsBadEntries) {
  EXPECT_THROW(Lexicon::parse("Siva\tn\tnoun\tneutral\n"), ParseError);
  EXPECT_THROW(Lexicon::parse("siva\tn n.l\tnoun\tneutral\n"), ParseError);
  EXPECT_THROW(Lexicon::parse("a\tn\tnoun\tneutral\na\tn\tnoun\tneutral\n"),
               ParseError);
  EXPECT_THROW(Lexicon::parse("a\tn\tpronoun\tneutral\n"), ParseError);
  EXPECT_THROW(Lexicon::parse("a\tn\tnoun\n"), ParseError);
}

TEST(AssignTypes, AdjectiveClause) {
  const auto lex = default_lexicon();
  const auto toks = words({"siva", "hates", "thrilling", "comics"});
  const auto typed = assign_types(toks, lex);
  ASSERT_EQ(typed.size(), 4u);
  EXPECT_EQ(to_string(typed[0].type), "n");
  EXPECT_EQ(to_string(typed[1].type), "n.r s n.l");
  EXPECT_EQ(to_string(typed[2].type), "n n.l");
  EXPECT_EQ(to_string(typed[3].type), "n");
}

TEST(AssignTypes, EmptyAndUnknown) {
  const auto lex = default_lexicon();
  EXPECT_TRUE(assign_types({}, lex).empty());
  const auto toks = words({"siva", "xyzzy"});
  try {
    assign_types(toks, lex);
    FAIL() << "expected VocabularyError";
  } catch (const VocabularyError &e) {
    EXPECT_EQ(e.token(), "xyzzy");
  }
}

TEST(Reduce, AdjectiveClauseTypes) {
  const std::vector<SimpleType> t{N, NR, S, NL, N, NL, N};
  const auto w = reduce(t);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(w->residual, std::vector<std::size_t>{2});
  EXPECT_TRUE(is_valid_witness(t, *w));
  EXPECT_TRUE(oracle::replays_adjacently(t, *w));
  // Stack pass pairs: (0,1), (5,6), (3,4).
  const std::vector<std::pair<std::size_t, std::size_t>> pairs{
      {0, 1}, {3, 4}, {5, 6}};
  EXPECT_EQ(w->contractions, pairs);
}

TEST(Reduce, SmallCases) {
  const std::vector<SimpleType> s{S};
  ASSERT_TRUE(reduce(s).has_value());
  EXPECT_TRUE(reduce(s)->contractions.empty());
  EXPECT_FALSE(reduce(std::vector{N, S}).has_value());
  EXPECT_FALSE(reduce(std::vector{N, NL}).has_value());
  EXPECT_FALSE(reduce(std::vector<SimpleType>{}).has_value());
}

TEST(Reduce, GreedyDeadEndRecovered) {
  // The stack pass commits to (0,1) and strands the rest.
  const std::vector<SimpleType> t{NL, N, NR, N, S};
  EXPECT_NE(stack_reduce(t).residual.size(), 1u);
  const auto w = reduce(t);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(oracle::replays_adjacently(t, *w));
  EXPECT_EQ(w->residual, std::vector<std::size_t>{4});
}

TEST(IsValidWitness, RejectsCrossingAndNesting) {
  const std::vector<SimpleType> t{N, NR, N, NR, S};
  ReductionWitness crossing{{{0, 3}, {1, 2}}, {4}};
  EXPECT_FALSE(is_valid_witness(t, crossing));  // (1,2) is not a contraction
  const std::vector<SimpleType> u{NL, NL, N, N, S};
  ReductionWitness cross2{{{0, 2}, {1, 3}}, {4}};
  EXPECT_FALSE(is_valid_witness(u, cross2));
  ReductionWitness good{{{0, 3}, {1, 2}}, {4}};
  EXPECT_TRUE(is_valid_witness(u, good));
  const std::vector<SimpleType> v{N, S, NR};
  ReductionWitness trapped{{{0, 2}}, {1}};
  EXPECT_FALSE(is_valid_witness(v, trapped));
}

// Exhaustive agreement with the adjacent-cancellation oracle. Length 10 is
// covered by the acceptance suite; 8 keeps this test quick.
TEST(Reduce, MatchesBruteForceUpToLengthEight) {
  const SimpleType alphabet[6] = {{AtomicType::N, -1}, {AtomicType::N, 0},
                                  {AtomicType::N, 1},  {AtomicType::S, -1},
                                  {AtomicType::S, 0},  {AtomicType::S, 1}};
  std::size_t grammatical = 0;
  for (std::size_t len = 0; len <= 8; ++len) {
    std::vector<std::size_t> digits(len, 0);
    std::vector<SimpleType> seq(len);
    while (true) {
      for (std::size_t i = 0; i < len; ++i) seq[i] = alphabet[digits[i]];
      const auto w = reduce(seq);
      const bool expect = oracle::grammatical(seq);
      ASSERT_EQ(w.has_value(), expect);
      if (w) {
        ++grammatical;
        ASSERT_TRUE(oracle::replays_adjacently(seq, *w));
        ASSERT_TRUE(is_valid_witness(seq, *w));
      }
      std::size_t i = 0;
      while (i < len && ++digits[i] == 6) digits[i++] = 0;
      if (i == len) break;
    }
  }
  EXPECT_GT(grammatical, 0u);
}

TEST(Reduce, EveryTemplateSentenceIsGrammatical) {
  const auto lex = default_lexicon();
  for (const auto &ex : enumerate_templates(lex)) {
    const auto typed = assign_types(ex.tokens, lex);
    const auto flat = concat_types(typed);
    const auto w = reduce(flat);
    ASSERT_TRUE(w.has_value()) << ex.sentence();
    EXPECT_EQ(*w, stack_reduce(flat));
  }
}

}  // namespace
}  // namespace qnlp

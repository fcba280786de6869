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
#include <utility>
#include <vector>

namespace qnlp {

enum class AtomicType { N, S };

/// An atomic type decorated with an adjoint order: -1 is the left adjoint
/// x^l, +1 the right adjoint x^r.
struct SimpleType {
  AtomicType base = AtomicType::N;
  int winding = 0;

  friend bool operator==(const SimpleType &, const SimpleType &) = default;
};

/// True when `left · right` contracts to the unit, i.e. x^z · x^{z+1}.
constexpr bool contracts(const SimpleType &left, const SimpleType &right) {
  return left.base == right.base && right.winding == left.winding + 1;
}

/// Renders as `n`, `n.l`, `s.r`, ...
std::string to_string(const SimpleType &t);

struct PregroupType {
  std::vector<SimpleType> simples;

  std::size_t size() const { return simples.size(); }
  bool empty() const { return simples.empty(); }
  friend bool operator==(const PregroupType &, const PregroupType &) = default;
};

std::string to_string(const PregroupType &t);

/// Parses whitespace-separated tokens from {n, s, n.l, n.r, s.l, s.r}.
/// Throws ParseError naming the offending token and its 1-based column.
PregroupType parse_type(std::string_view text);

enum class PartOfSpeech { Noun, Adjective, TransitiveVerb };
enum class Polarity { Positive, Negative, Neutral };

std::string_view to_string(PartOfSpeech pos);
std::string_view to_string(Polarity polarity);

struct LexiconEntry {
  PregroupType type;
  PartOfSpeech pos = PartOfSpeech::Noun;
  Polarity polarity = Polarity::Neutral;
};

/// Word -> (type, part of speech, polarity). One type per word; each part of
/// speech admits exactly one type shape.
class Lexicon {
 public:
  /// Throws ParseError on a malformed token, a duplicate word, or a type that
  /// does not match the part of speech.
  void add(std::string word, LexiconEntry entry);

  const LexiconEntry *find(std::string_view word) const;
  bool contains(std::string_view word) const { return find(word) != nullptr; }
  std::size_t size() const { return entries_.size(); }

  /// Words with the given part of speech, sorted.
  std::vector<std::string> words(PartOfSpeech pos) const;
  const std::map<std::string, LexiconEntry, std::less<>> &entries() const {
    return entries_;
  }

  /// Tab-separated `word type pos polarity` lines; `#` starts a comment.
  static Lexicon parse(std::string_view text);
  static Lexicon load(const std::string &path);
  std::string serialize() const;

 private:
  std::map<std::string, LexiconEntry, std::less<>> entries_;
};

/// The canonical shape for a part of speech: n, n n.l, n.r s n.l.
PregroupType canonical_type(PartOfSpeech pos);

struct TypedWord {
  std::string word;
  PregroupType type;
};

/// Looks every token up in the lexicon, preserving order. Throws
/// VocabularyError for the first unknown token.
std::vector<TypedWord> assign_types(std::span<const std::string> tokens,
                                    const Lexicon &lexicon);

/// Concatenation of the word types of a sentence.
std::vector<SimpleType> concat_types(std::span<const TypedWord> words);

/// Contraction pairs over the concatenated simple-type sequence of a
/// sentence, plus the indices left uncontracted.
struct ReductionWitness {
  std::vector<std::pair<std::size_t, std::size_t>> contractions;  // i < j
  std::vector<std::size_t> residual;

  friend bool operator==(const ReductionWitness &,
                         const ReductionWitness &) = default;
};

/// Outcome of the single left-to-right stack pass: all contractions it made
/// and the indices left on the stack. Never fails.
ReductionWitness stack_reduce(std::span<const SimpleType> types);

/// Decides whether the sequence reduces to exactly one plain `s`. The stack
/// pass is tried first and its witness returned when it succeeds; otherwise a
/// complete search over planar pairings is run. nullopt = not grammatical.
std::optional<ReductionWitness> reduce(std::span<const SimpleType> types);

/// Checks duality, planarity, disjointness and that each pair encloses only
/// contracted indices.
bool is_valid_witness(std::span<const SimpleType> types,
                      const ReductionWitness &witness);

}  // namespace qnlp

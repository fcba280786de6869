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

#include <algorithm>
#include <fstream>
#include <sstream>

#include "qnlp/error.hpp"

namespace qnlp {

namespace {

bool is_lower_word(std::string_view word) {
  return !word.empty() && std::all_of(word.begin(), word.end(), [](char c) {
    return c >= 'a' && c <= 'z';
  });
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(trim(line.substr(start, tab - start)));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

PartOfSpeech parse_pos(std::string_view s, std::size_t line) {
  if (s == "noun") return PartOfSpeech::Noun;
  if (s == "adjective") return PartOfSpeech::Adjective;
  if (s == "transitive-verb") return PartOfSpeech::TransitiveVerb;
  throw ParseError("line " + std::to_string(line) +
                   ": unknown part of speech \"" + std::string(s) + "\"");
}

Polarity parse_polarity(std::string_view s, std::size_t line) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  if (s == "neutral") return Polarity::Neutral;
  throw ParseError("line " + std::to_string(line) + ": unknown polarity \"" +
                   std::string(s) + "\"");
}

// full[i][j]: the half-open range [i, j) cancels completely with a planar
// pairing. Filled bottom-up by range length.
class PlanarTable {
 public:
  explicit PlanarTable(std::span<const SimpleType> types)
      : types_(types), n_(types.size()), full_((n_ + 1) * (n_ + 1), 0) {
    for (std::size_t i = 0; i <= n_; ++i) at(i, i) = 1;
    for (std::size_t len = 2; len <= n_; len += 2) {
      for (std::size_t i = 0; i + len <= n_; ++i) {
        const std::size_t j = i + len;
        for (std::size_t k = i + 1; k < j; k += 2) {
          if (contracts(types_[i], types_[k]) && at(i + 1, k) &&
              at(k + 1, j)) {
            at(i, j) = 1;
            break;
          }
        }
      }
    }
  }

  bool full(std::size_t i, std::size_t j) const {
    return full_[i * (n_ + 1) + j] != 0;
  }

  void collect(std::size_t i, std::size_t j,
               std::vector<std::pair<std::size_t, std::size_t>> &out) const {
    if (i == j) return;
    for (std::size_t k = i + 1; k < j; k += 2) {
      if (contracts(types_[i], types_[k]) && full(i + 1, k) &&
          full(k + 1, j)) {
        out.emplace_back(i, k);
        collect(i + 1, k, out);
        collect(k + 1, j, out);
        return;
      }
    }
  }

 private:
  char &at(std::size_t i, std::size_t j) { return full_[i * (n_ + 1) + j]; }

  std::span<const SimpleType> types_;
  std::size_t n_;
  std::vector<char> full_;
};

constexpr SimpleType kSentence{AtomicType::S, 0};

}  // namespace

std::string to_string(const SimpleType &t) {
  std::string out = t.base == AtomicType::N ? "n" : "s";
  if (t.winding < 0) {
    for (int i = 0; i < -t.winding; ++i) out += ".l";
  } else {
    for (int i = 0; i < t.winding; ++i) out += ".r";
  }
  return out;
}

std::string to_string(const PregroupType &t) {
  std::string out;
  for (const auto &s : t.simples) {
    if (!out.empty()) out += ' ';
    out += to_string(s);
  }
  return out;
}

PregroupType parse_type(std::string_view text) {
  PregroupType result;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == '\t') {
      ++pos;
      continue;
    }
    const auto end = text.find_first_of(" \t", pos);
    const auto token = text.substr(pos, end - pos);
    SimpleType simple;
    if (token == "n" || token == "n.l" || token == "n.r") {
      simple.base = AtomicType::N;
    } else if (token == "s" || token == "s.l" || token == "s.r") {
      simple.base = AtomicType::S;
    } else {
      throw ParseError("unknown token \"" + std::string(token) +
                       "\" at column " + std::to_string(pos + 1));
    }
    if (token.size() == 3) simple.winding = token[2] == 'l' ? -1 : 1;
    result.simples.push_back(simple);
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return result;
}

std::string_view to_string(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::Noun:
      return "noun";
    case PartOfSpeech::Adjective:
      return "adjective";
    case PartOfSpeech::TransitiveVerb:
      return "transitive-verb";
  }
  return "?";
}

std::string_view to_string(Polarity polarity) {
  switch (polarity) {
    case Polarity::Positive:
      return "positive";
    case Polarity::Negative:
      return "negative";
    case Polarity::Neutral:
      return "neutral";
  }
  return "?";
}

PregroupType canonical_type(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::Noun:
      return parse_type("n");
    case PartOfSpeech::Adjective:
      return parse_type("n n.l");
    case PartOfSpeech::TransitiveVerb:
      return parse_type("n.r s n.l");
  }
  return {};
}

void Lexicon::add(std::string word, LexiconEntry entry) {
  if (!is_lower_word(word)) {
    throw ParseError("lexicon word \"" + word + "\" must match [a-z]+");
  }
  if (entry.type != canonical_type(entry.pos)) {
    throw ParseError("word \"" + word + "\" has type \"" +
                     to_string(entry.type) + "\" but a " +
                     std::string(to_string(entry.pos)) + " must be \"" +
                     to_string(canonical_type(entry.pos)) + "\"");
  }
  if (entries_.contains(word)) {
    throw ParseError("duplicate lexicon word \"" + word + "\"");
  }
  entries_.emplace(std::move(word), std::move(entry));
}

const LexiconEntry *Lexicon::find(std::string_view word) const {
  const auto it = entries_.find(word);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> Lexicon::words(PartOfSpeech pos) const {
  std::vector<std::string> out;
  for (const auto &[word, entry] : entries_) {
    if (entry.pos == pos) out.push_back(word);
  }
  return out;
}

Lexicon Lexicon::parse(std::string_view text) {
  Lexicon lexicon;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    auto line = text.substr(start, nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (trim(line).empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 4) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 4 tab-separated fields, got " +
                       std::to_string(fields.size()));
    }
    LexiconEntry entry;
    try {
      entry.type = parse_type(fields[1]);
    } catch (const ParseError &e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    entry.pos = parse_pos(fields[2], line_no);
    entry.polarity = parse_polarity(fields[3], line_no);
    try {
      lexicon.add(std::string(fields[0]), std::move(entry));
    } catch (const ParseError &e) {
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return lexicon;
}

Lexicon Lexicon::load(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open lexicon file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

std::string Lexicon::serialize() const {
  std::string out;
  for (const auto &[word, entry] : entries_) {
    out += word + '\t' + to_string(entry.type) + '\t' +
           std::string(to_string(entry.pos)) + '\t' +
           std::string(to_string(entry.polarity)) + '\n';
  }
  return out;
}

std::vector<TypedWord> assign_types(std::span<const std::string> tokens,
                                    const Lexicon &lexicon) {
  std::vector<TypedWord> typed;
  typed.reserve(tokens.size());
  for (const auto &token : tokens) {
    const auto *entry = lexicon.find(token);
    if (entry == nullptr) throw VocabularyError(token);
    typed.push_back({token, entry->type});
  }
  return typed;
}

std::vector<SimpleType> concat_types(std::span<const TypedWord> words) {
  std::vector<SimpleType> out;
  for (const auto &w : words) {
    out.insert(out.end(), w.type.simples.begin(), w.type.simples.end());
  }
  return out;
}

ReductionWitness stack_reduce(std::span<const SimpleType> types) {
  ReductionWitness witness;
  std::vector<std::size_t> stack;
  for (std::size_t u = 0; u < types.size(); ++u) {
    if (!stack.empty() && contracts(types[stack.back()], types[u])) {
      witness.contractions.emplace_back(stack.back(), u);
      stack.pop_back();
    } else {
      stack.push_back(u);
    }
  }
  witness.residual = std::move(stack);
  std::sort(witness.contractions.begin(), witness.contractions.end());
  return witness;
}

std::optional<ReductionWitness> reduce(std::span<const SimpleType> types) {
  auto greedy = stack_reduce(types);
  if (greedy.residual.size() == 1 && types[greedy.residual[0]] == kSentence) {
    return greedy;
  }
  // The greedy pass can commit to a contraction that blocks the only
  // sentence-producing pairing (e.g. n.l n n.r n s), so fall back to the
  // exhaustive planar table.
  if (types.size() % 2 == 0) return std::nullopt;
  const PlanarTable table(types);
  for (std::size_t p = 0; p < types.size(); ++p) {
    if (types[p] != kSentence) continue;
    if (table.full(0, p) && table.full(p + 1, types.size())) {
      ReductionWitness witness;
      table.collect(0, p, witness.contractions);
      table.collect(p + 1, types.size(), witness.contractions);
      std::sort(witness.contractions.begin(), witness.contractions.end());
      witness.residual = {p};
      return witness;
    }
  }
  return std::nullopt;
}

bool is_valid_witness(std::span<const SimpleType> types,
                      const ReductionWitness &witness) {
  const std::size_t n = types.size();
  std::vector<int> partner(n, -1);
  for (const auto &[i, j] : witness.contractions) {
    if (i >= j || j >= n) return false;
    if (partner[i] != -1 || partner[j] != -1) return false;
    if (!contracts(types[i], types[j])) return false;
    partner[i] = static_cast<int>(j);
    partner[j] = static_cast<int>(i);
  }
  std::vector<std::size_t> unpaired;
  for (std::size_t k = 0; k < n; ++k) {
    if (partner[k] == -1) unpaired.push_back(k);
  }
  if (unpaired != witness.residual) return false;
  // Every index strictly inside a pair must be paired inside the same pair;
  // this covers both planarity and adjacency after inner cancellations.
  for (const auto &[i, j] : witness.contractions) {
    for (std::size_t k = i + 1; k < j; ++k) {
      if (partner[k] == -1) return false;
      const auto p = static_cast<std::size_t>(partner[k]);
      if (p <= i || p >= j) return false;
    }
  }
  return true;
}

}  // namespace qnlp

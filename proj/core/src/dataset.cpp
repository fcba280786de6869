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

#include "qnlp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <random>
#include <set>
#include <sstream>

#include "qnlp/error.hpp"

namespace qnlp {

namespace {

constexpr std::string_view kDefaultLexicon =
    "# word\ttype\tpart of speech\tpolarity\n"
    "siva\tn\tnoun\tneutral\n"
    "gopal\tn\tnoun\tneutral\n"
    "rani\tn\tnoun\tneutral\n"
    "comics\tn\tnoun\tneutral\n"
    "fiction\tn\tnoun\tneutral\n"
    "nonfiction\tn\tnoun\tneutral\n"
    "classics\tn\tnoun\tneutral\n"
    "thrilling\tn n.l\tadjective\tpositive\n"
    "boring\tn n.l\tadjective\tnegative\n"
    "popular\tn n.l\tadjective\tneutral\n"
    "loves\tn.r s n.l\ttransitive-verb\tpositive\n"
    "likes\tn.r s n.l\ttransitive-verb\tpositive\n"
    "enjoys\tn.r s n.l\ttransitive-verb\tpositive\n"
    "hates\tn.r s n.l\ttransitive-verb\tnegative\n"
    "dislikes\tn.r s n.l\ttransitive-verb\tnegative\n";

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool has_both_labels(const std::vector<Example> &ex,
                     const std::vector<std::size_t> &idx) {
  bool zero = false, one = false;
  for (auto i : idx) (ex[i].label == 0 ? zero : one) = true;
  return zero && one;
}

}  // namespace

std::string Example::sentence() const {
  std::string out;
  for (const auto &t : tokens) {
    if (!out.empty()) out += ' ';
    out += t;
  }
  return out;
}

void Split::validate(std::size_t n) const {
  std::vector<int> seen(n, 0);
  for (const auto *part : {&train, &dev, &test}) {
    for (auto i : *part) {
      if (i >= n) throw ConfigError("split index out of range");
      if (seen[i]++) throw ConfigError("splits overlap at example " +
                                       std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen[i]) {
      throw ConfigError("example " + std::to_string(i) + " is in no split");
    }
  }
}

std::string Dataset::serialize() const {
  std::string out;
  for (const auto &e : examples) {
    out += std::to_string(e.label) + '\t' + e.sentence() + '\n';
  }
  return out;
}

std::string Dataset::serialize_split() const {
  std::string out;
  const std::pair<const char *, const std::vector<std::size_t> *> parts[] = {
      {"train", &split.train}, {"dev", &split.dev}, {"test", &split.test}};
  for (const auto &[name, idx] : parts) {
    out += name;
    out += '\t';
    for (std::size_t i = 0; i < idx->size(); ++i) {
      if (i) out += ' ';
      out += std::to_string((*idx)[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<Example> Dataset::parse_examples(std::string_view text) {
  std::vector<Example> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const auto label = line.substr(0, tab);
    if (tab == std::string::npos || (label != "0" && label != "1")) {
      throw ParseError("dataset line " + std::to_string(line_no) +
                       ": expected label<TAB>sentence with label 0 or 1");
    }
    Example e;
    e.label = label == "1" ? 1 : 0;
    e.tokens = split_words(std::string_view(line).substr(tab + 1));
    if (e.tokens.empty()) {
      throw ParseError("dataset line " + std::to_string(line_no) +
                       ": empty sentence");
    }
    out.push_back(std::move(e));
  }
  return out;
}

Split Dataset::parse_split(std::string_view text) {
  Split split;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const auto name = line.substr(0, tab);
    std::vector<std::size_t> *target = nullptr;
    if (name == "train") target = &split.train;
    if (name == "dev") target = &split.dev;
    if (name == "test") target = &split.test;
    if (target == nullptr) {
      throw ParseError("unknown split \"" + name + "\"");
    }
    if (tab == std::string::npos) continue;
    for (const auto &tok : split_words(std::string_view(line).substr(tab + 1))) {
      std::size_t v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError("bad split index \"" + tok + "\"");
      }
      target->push_back(v);
    }
  }
  return split;
}

std::string_view default_lexicon_text() { return kDefaultLexicon; }

Lexicon default_lexicon() { return Lexicon::parse(kDefaultLexicon); }

std::vector<Example> enumerate_templates(const Lexicon &lexicon) {
  const auto nouns = lexicon.words(PartOfSpeech::Noun);
  const auto adjectives = lexicon.words(PartOfSpeech::Adjective);
  const auto verbs = lexicon.words(PartOfSpeech::TransitiveVerb);
  const auto label_of = [&](const std::string &verb) {
    return lexicon.find(verb)->polarity == Polarity::Positive ? 0 : 1;
  };
  std::vector<Example> out;
  for (const auto &s : nouns) {
    for (const auto &v : verbs) {
      for (const auto &o : nouns) out.push_back({{s, v, o}, label_of(v)});
    }
  }
  for (const auto &s : nouns) {
    for (const auto &v : verbs) {
      for (const auto &a : adjectives) {
        for (const auto &o : nouns) {
          out.push_back({{s, v, a, o}, label_of(v)});
        }
      }
    }
  }
  return out;
}

Split stratified_split(const std::vector<Example> &examples, std::size_t train,
                       std::size_t dev, std::size_t test, std::uint64_t seed) {
  if (train + dev + test != examples.size()) {
    throw ConfigError("split sizes " + std::to_string(train) + "/" +
                      std::to_string(dev) + "/" + std::to_string(test) +
                      " do not sum to " + std::to_string(examples.size()));
  }
  std::mt19937_64 rng(seed ^ 0x5eedf00dULL);
  std::vector<std::size_t> by_label[2];
  for (std::size_t i = 0; i < examples.size(); ++i) {
    by_label[examples[i].label].push_back(i);
  }
  for (auto &group : by_label) std::shuffle(group.begin(), group.end(), rng);

  // Alternate labels so each contiguous block is balanced.
  std::vector<std::size_t> order;
  std::size_t next[2] = {0, 0};
  for (int turn = 0; order.size() < examples.size(); turn ^= 1) {
    const int pick = next[turn] < by_label[turn].size() ? turn : turn ^ 1;
    order.push_back(by_label[pick][next[pick]++]);
  }
  Split split;
  split.train.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(train));
  split.dev.assign(order.begin() + static_cast<std::ptrdiff_t>(train),
                   order.begin() + static_cast<std::ptrdiff_t>(train + dev));
  split.test.assign(order.begin() + static_cast<std::ptrdiff_t>(train + dev),
                    order.end());
  for (auto *part : {&split.train, &split.dev, &split.test}) {
    std::sort(part->begin(), part->end());
    if (!has_both_labels(examples, *part)) {
      throw ConfigError("every split needs both labels; split sizes " +
                        std::to_string(train) + "/" + std::to_string(dev) +
                        "/" + std::to_string(test) + " cannot provide them");
    }
  }
  return split;
}

Dataset gen_data(const Lexicon &lexicon, const GenConfig &cfg) {
  if (lexicon.words(PartOfSpeech::Noun).empty() ||
      lexicon.words(PartOfSpeech::TransitiveVerb).empty()) {
    throw ConfigError("lexicon needs at least one noun and one verb");
  }
  auto all = enumerate_templates(lexicon);
  if (cfg.count > all.size()) {
    throw ConfigError("cannot draw " + std::to_string(cfg.count) +
                      " distinct sentences; the templates allow at most " +
                      std::to_string(all.size()));
  }
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::size_t> by_label[2];
  for (std::size_t i = 0; i < all.size(); ++i) {
    by_label[all[i].label].push_back(i);
  }
  for (auto &group : by_label) std::shuffle(group.begin(), group.end(), rng);

  std::size_t want[2] = {(cfg.count + 1) / 2, cfg.count / 2};
  for (int l = 0; l < 2; ++l) {
    const int other = l ^ 1;
    if (want[l] > by_label[l].size()) {
      want[other] += want[l] - by_label[l].size();
      want[l] = by_label[l].size();
    }
  }
  std::vector<std::size_t> chosen;
  for (int l = 0; l < 2; ++l) {
    chosen.insert(chosen.end(), by_label[l].begin(),
                  by_label[l].begin() + static_cast<std::ptrdiff_t>(want[l]));
  }
  std::shuffle(chosen.begin(), chosen.end(), rng);

  Dataset ds;
  for (auto i : chosen) ds.examples.push_back(all[i]);
  ds.split = stratified_split(ds.examples, cfg.train, cfg.dev, cfg.test,
                              cfg.seed);
  return ds;
}

}  // namespace qnlp

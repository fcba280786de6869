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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/pregroup.hpp"

namespace qnlp {

struct Example {
  std::vector<std::string> tokens;
  int label = 0;  // 0 = positive sentiment, 1 = negative

  std::string sentence() const;
  friend bool operator==(const Example &, const Example &) = default;
};

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> dev;
  std::vector<std::size_t> test;

  /// Throws ConfigError unless the three sets are disjoint and cover
  /// [0, n) exactly.
  void validate(std::size_t n) const;
  friend bool operator==(const Split &, const Split &) = default;
};

struct Dataset {
  std::vector<Example> examples;
  Split split;

  /// `label<TAB>sentence` per line.
  std::string serialize() const;
  /// One line per split: `train<TAB>i j k ...`.
  std::string serialize_split() const;

  static std::vector<Example> parse_examples(std::string_view text);
  static Split parse_split(std::string_view text);
};

/// The bundled 7-noun, 3-adjective, 5-verb vocabulary.
std::string_view default_lexicon_text();
Lexicon default_lexicon();

/// Every distinct sentence of the templates NOUN VERB NOUN and
/// NOUN VERB ADJ NOUN, labelled 0 iff the verb is positive.
std::vector<Example> enumerate_templates(const Lexicon &lexicon);

struct GenConfig {
  std::size_t count = 130;
  std::size_t train = 70;
  std::size_t dev = 30;
  std::size_t test = 30;
  std::uint64_t seed = 0;
};

/// Draws `count` distinct template sentences with balanced labels and splits
/// them so every split holds both labels. Deterministic in the seed.
Dataset gen_data(const Lexicon &lexicon, const GenConfig &cfg);

/// Label-balanced split of `examples` with the given sizes; the rows keep
/// their order and the manifest interleaves labels across splits.
Split stratified_split(const std::vector<Example> &examples, std::size_t train,
                       std::size_t dev, std::size_t test, std::uint64_t seed);

}  // namespace qnlp

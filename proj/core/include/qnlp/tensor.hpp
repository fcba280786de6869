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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qnlp/diagram.hpp"
#include "qnlp/pregroup.hpp"

namespace qnlp {

/// A word's real tensor: one 2-dimensional index per wire of its type,
/// row-major with the first wire most significant.
struct WordTensor {
  std::size_t rank = 0;
  std::vector<double> entries;  // 2^rank

  friend bool operator==(const WordTensor &, const WordTensor &) = default;
};

class TensorStore {
 public:
  /// Uniform entries on [low, high) for every lexicon word.
  static TensorStore random(const Lexicon &lexicon, std::uint64_t seed,
                            double low = 0.0, double high = 1.0);
  /// All entries zero, shaped after the lexicon.
  static TensorStore zeros(const Lexicon &lexicon);

  void set(std::string word, WordTensor tensor);
  const WordTensor *find(std::string_view word) const;
  WordTensor &at(std::string_view word);
  const WordTensor &at(std::string_view word) const;
  const std::map<std::string, WordTensor, std::less<>> &tensors() const {
    return tensors_;
  }
  std::map<std::string, WordTensor, std::less<>> &tensors() {
    return tensors_;
  }

  /// `word` line followed by one line of whitespace-separated entries.
  std::string serialize() const;
  static TensorStore parse(std::string_view text);

  friend bool operator==(const TensorStore &, const TensorStore &) = default;

 private:
  std::map<std::string, WordTensor, std::less<>> tensors_;
};

enum class ContractionOrder { LeftToRight, RightToLeft };

/// Contracts the sentence network: cups sum over their shared index, leaving
/// the 2-vector on the open `s` wire. Requires an un-rewritten diagram.
std::array<double, 2> evaluate(const StringDiagram &diagram,
                               const TensorStore &store,
                               ContractionOrder order = ContractionOrder::LeftToRight);

/// Softmax of the two logits.
std::array<double, 2> predict_classical(const std::array<double, 2> &logits);

/// d(-log p_label)/d(entry) for every tensor in the store; words absent from
/// the diagram get zero cotensors.
std::map<std::string, std::vector<double>, std::less<>> gradient(
    const StringDiagram &diagram, const TensorStore &store, int label);

}  // namespace qnlp

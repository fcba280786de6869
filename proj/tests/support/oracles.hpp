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


// Brute-force reference implementations shared by the unit and acceptance
// suites. They are deliberately naive and share no code with core/.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "qnlp/diagram.hpp"
#include "qnlp/pregroup.hpp"
#include "qnlp/tensor.hpp"

namespace qnlp::oracle {

namespace detail {

inline bool derives_sentence(std::vector<SimpleType> &seq) {
  if (seq.size() == 1) {
    return seq[0].base == AtomicType::S && seq[0].winding == 0;
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i].base != seq[i + 1].base ||
        seq[i + 1].winding != seq[i].winding + 1) {
      continue;
    }
    std::vector<SimpleType> next;
    next.reserve(seq.size() - 2);
    next.insert(next.end(), seq.begin(), seq.begin() + i);
    next.insert(next.end(), seq.begin() + i + 2, seq.end());
    if (derives_sentence(next)) return true;
  }
  return false;
}

}  // namespace detail

// Grammatical iff some order of adjacent cancellations x^z x^{z+1} -> 1
// leaves exactly [s]. Tries every order.
inline bool grammatical(std::span<const SimpleType> types) {
  std::vector<SimpleType> seq(types.begin(), types.end());
  return detail::derives_sentence(seq);
}

// Replays the witness innermost-first: each pair must be adjacent among the
// survivors when it is cancelled.
inline bool replays_adjacently(std::span<const SimpleType> types,
                               const ReductionWitness &w) {
  auto pairs = w.contractions;
  std::sort(pairs.begin(), pairs.end(), [](const auto &a, const auto &b) {
    return a.second - a.first < b.second - b.first;
  });
  std::vector<bool> alive(types.size(), true);
  for (const auto &[i, j] : pairs) {
    if (!alive[i] || !alive[j]) return false;
    for (std::size_t k = i + 1; k < j; ++k) {
      if (alive[k]) return false;
    }
    if (types[i].base != types[j].base ||
        types[j].winding != types[i].winding + 1) {
      return false;
    }
    alive[i] = alive[j] = false;
  }
  std::vector<std::size_t> rest;
  for (std::size_t k = 0; k < types.size(); ++k) {
    if (alive[k]) rest.push_back(k);
  }
  return rest == w.residual;
}

// Sums over every assignment of a 0/1 value to every wire, keeping only
// assignments where cupped wires agree. Requires an un-rewritten diagram with
// one open wire. Tensor entries are row-major over the box's wires.
inline std::array<double, 2> contract_by_loops(const StringDiagram &d,
                                               const TensorStore &store) {
  const std::size_t n = d.wires.size();
  std::array<double, 2> out{0.0, 0.0};
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    auto value = [&](std::size_t w) { return (bits >> w) & 1; };
    bool consistent = true;
    for (const auto &cup : d.cups) {
      if (value(cup.left) != value(cup.right)) consistent = false;
    }
    if (!consistent) continue;
    double term = 1.0;
    for (const auto &box : d.boxes) {
      std::size_t idx = 0;
      for (std::size_t p = 0; p < box.type.size(); ++p) {
        idx = 2 * idx + value(box.first_wire + p);
      }
      term *= store.at(box.word).entries[idx];
    }
    out[value(d.open_wires.at(0))] += term;
  }
  return out;
}

}  // namespace qnlp::oracle

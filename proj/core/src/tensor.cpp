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

#include "qnlp/tensor.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <random>
#include <sstream>

#include "qnlp/error.hpp"

namespace qnlp {

namespace {

// Dense real tensor with a 2-dimensional index per label, row-major (first
// label most significant).
struct Labeled {
  std::vector<std::size_t> labels;
  std::vector<double> data{1.0};

  double at(const std::map<std::size_t, int> &assignment) const {
    std::size_t idx = 0;
    for (auto l : labels) idx = (idx << 1) | assignment.at(l);
    return data[idx];
  }
};

// Sums over every label shared by the operands; the rest survive in order of
// first appearance.
Labeled contract(const Labeled &a, const Labeled &b) {
  std::vector<std::size_t> all;
  std::map<std::size_t, int> count;
  for (const auto *t : {&a, &b}) {
    for (auto l : t->labels) {
      if (count[l]++ == 0) all.push_back(l);
    }
  }
  Labeled out;
  out.labels.clear();
  for (auto l : all) {
    if (count[l] == 1) out.labels.push_back(l);
  }
  out.data.assign(std::size_t{1} << out.labels.size(), 0.0);

  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < all.size(); ++i) pos[all[i]] = i;
  const auto index_of = [&](const std::vector<std::size_t> &labels,
                            std::size_t assignment) {
    std::size_t idx = 0;
    for (auto l : labels) {
      idx = (idx << 1) | ((assignment >> pos[l]) & 1u);
    }
    return idx;
  };
  for (std::size_t asg = 0; asg < (std::size_t{1} << all.size()); ++asg) {
    out.data[index_of(out.labels, asg)] +=
        a.data[index_of(a.labels, asg)] * b.data[index_of(b.labels, asg)];
  }
  return out;
}

// Each box as a labeled tensor; cup endpoints share the left wire's label.
std::vector<Labeled> network(const StringDiagram &d, const TensorStore &store) {
  if (!d.bent.empty()) {
    throw StructureError("tensor evaluation needs the un-rewritten diagram");
  }
  std::vector<std::size_t> label(d.wires.size());
  for (std::size_t w = 0; w < label.size(); ++w) label[w] = w;
  for (const auto &cup : d.cups) label[cup.right] = cup.left;

  std::vector<Labeled> boxes;
  for (const auto &box : d.boxes) {
    const auto *t = store.find(box.word);
    if (t == nullptr) {
      throw Error("no tensor for word \"" + box.word + "\"");
    }
    if (t->rank != box.type.size()) {
      throw StructureError("tensor for \"" + box.word +
                           "\" has the wrong rank");
    }
    Labeled l;
    for (std::size_t p = 0; p < box.type.size(); ++p) {
      l.labels.push_back(label[box.first_wire + p]);
    }
    l.data = t->entries;
    boxes.push_back(std::move(l));
  }
  return boxes;
}

std::size_t open_label(const StringDiagram &d) {
  if (d.open_wires.size() != 1) {
    throw StructureError("sentence diagram must have exactly one open wire");
  }
  return d.open_wires[0];
}

}  // namespace

TensorStore TensorStore::random(const Lexicon &lexicon, std::uint64_t seed,
                                double low, double high) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(low, high);
  TensorStore store;
  for (const auto &[word, entry] : lexicon.entries()) {
    WordTensor t{entry.type.size(), {}};
    t.entries.resize(std::size_t{1} << t.rank);
    for (auto &e : t.entries) e = u(rng);
    store.set(word, std::move(t));
  }
  return store;
}

TensorStore TensorStore::zeros(const Lexicon &lexicon) {
  TensorStore store;
  for (const auto &[word, entry] : lexicon.entries()) {
    const auto rank = entry.type.size();
    store.set(word, {rank, std::vector<double>(std::size_t{1} << rank, 0.0)});
  }
  return store;
}

void TensorStore::set(std::string word, WordTensor tensor) {
  if (tensor.entries.size() != (std::size_t{1} << tensor.rank)) {
    throw StructureError("tensor for \"" + word + "\" needs 2^rank entries");
  }
  tensors_[std::move(word)] = std::move(tensor);
}

const WordTensor *TensorStore::find(std::string_view word) const {
  const auto it = tensors_.find(word);
  return it == tensors_.end() ? nullptr : &it->second;
}

WordTensor &TensorStore::at(std::string_view word) {
  const auto it = tensors_.find(word);
  if (it == tensors_.end()) {
    throw Error("no tensor for word \"" + std::string(word) + "\"");
  }
  return it->second;
}

const WordTensor &TensorStore::at(std::string_view word) const {
  return const_cast<TensorStore *>(this)->at(word);
}

std::string TensorStore::serialize() const {
  std::string out;
  char buf[64];
  for (const auto &[word, t] : tensors_) {
    out += word + '\n';
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
      if (i) out += ' ';
      const auto res = std::to_chars(buf, buf + sizeof(buf), t.entries[i]);
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

TensorStore TensorStore::parse(std::string_view text) {
  TensorStore store;
  std::istringstream in{std::string(text)};
  std::string word, values;
  while (std::getline(in, word)) {
    if (word.empty()) continue;
    if (!std::getline(in, values)) {
      throw ParseError("tensor \"" + word + "\" has no entry line");
    }
    std::istringstream fields(values);
    std::vector<double> entries;
    for (std::string tok; fields >> tok;) {
      double v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw ParseError("bad tensor entry \"" + tok + "\"");
      }
      entries.push_back(v);
    }
    std::size_t rank = 0;
    while ((std::size_t{1} << rank) < entries.size()) ++rank;
    if ((std::size_t{1} << rank) != entries.size()) {
      throw ParseError("tensor \"" + word + "\" entry count is not 2^rank");
    }
    store.set(word, {rank, std::move(entries)});
  }
  return store;
}

std::array<double, 2> evaluate(const StringDiagram &diagram,
                               const TensorStore &store,
                               ContractionOrder order) {
  const auto open = open_label(diagram);
  auto boxes = network(diagram, store);
  if (order == ContractionOrder::RightToLeft) {
    std::reverse(boxes.begin(), boxes.end());
  }
  Labeled acc;
  for (const auto &b : boxes) acc = contract(acc, b);
  if (acc.labels.size() != 1 || acc.labels[0] != open) {
    throw StructureError("contraction left more than the sentence wire open");
  }
  return {acc.data[0], acc.data[1]};
}

std::array<double, 2> predict_classical(const std::array<double, 2> &v) {
  const double m = std::max(v[0], v[1]);
  const double e0 = std::exp(v[0] - m);
  const double e1 = std::exp(v[1] - m);
  return {e0 / (e0 + e1), e1 / (e0 + e1)};
}

std::map<std::string, std::vector<double>, std::less<>> gradient(
    const StringDiagram &diagram, const TensorStore &store, int label) {
  std::map<std::string, std::vector<double>, std::less<>> grads;
  for (const auto &[word, t] : store.tensors()) {
    grads[word].assign(t.entries.size(), 0.0);
  }
  const auto open = open_label(diagram);
  const auto boxes = network(diagram, store);
  const auto p = predict_classical(evaluate(diagram, store));
  const std::array<double, 2> dlogit = {p[0] - (label == 0 ? 1.0 : 0.0),
                                        p[1] - (label == 1 ? 1.0 : 0.0)};

  for (std::size_t b = 0; b < boxes.size(); ++b) {
    // Environment: every other box contracted together.
    Labeled env;
    for (std::size_t o = 0; o < boxes.size(); ++o) {
      if (o != b) env = contract(env, boxes[o]);
    }
    const auto &own = boxes[b].labels;
    const bool owns_open = std::find(own.begin(), own.end(), open) != own.end();
    auto &g = grads[diagram.boxes[b].word];
    for (std::size_t idx = 0; idx < g.size(); ++idx) {
      std::map<std::size_t, int> asg;
      for (std::size_t k = 0; k < own.size(); ++k) {
        asg[own[k]] = static_cast<int>((idx >> (own.size() - 1 - k)) & 1u);
      }
      for (int o = 0; o < 2; ++o) {
        if (owns_open && asg[open] != o) continue;
        auto full = asg;
        full[open] = o;
        g[idx] += dlogit[static_cast<std::size_t>(o)] * env.at(full);
      }
    }
  }
  return grads;
}

}  // namespace qnlp

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

#include "qnlp/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qnlp/error.hpp"

namespace qnlp {

namespace {

constexpr Amplitude kI{0.0, 1.0};

std::size_t bit(std::size_t q) { return std::size_t{1} << q; }

// Independent Bernoulli events with known probabilities, sampled so that the
// common no-event case costs one uniform draw.
class EventSequence {
 public:
  explicit EventSequence(std::vector<double> probs)
      : probs_(std::move(probs)), none_from_(probs_.size() + 1, 1.0) {
    for (std::size_t i = probs_.size(); i-- > 0;) {
      none_from_[i] = none_from_[i + 1] * (1.0 - probs_[i]);
    }
  }

  template <typename Rng, typename F>
  void sample(Rng &rng, F &&on_event) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    if (probs_.empty() || u(rng) < none_from_[0]) return;
    // Conditioned on at least one event: walk to the first one.
    std::size_t i = 0;
    for (; i < probs_.size(); ++i) {
      const double p_at = probs_[i] / (1.0 - none_from_[i]);
      if (u(rng) < p_at) break;
    }
    if (i == probs_.size()) i = probs_.size() - 1;  // rounding guard
    on_event(i);
    for (++i; i < probs_.size(); ++i) {
      if (u(rng) < probs_[i]) on_event(i);
    }
  }

 private:
  std::vector<double> probs_;
  std::vector<double> none_from_;
};

std::vector<double> cumulative(const StateVector &psi) {
  std::vector<double> cdf(psi.amplitudes().size());
  double acc = 0;
  for (std::size_t i = 0; i < cdf.size(); ++i) {
    acc += std::norm(psi[i]);
    cdf[i] = acc;
  }
  return cdf;
}

template <typename Rng>
std::size_t sample_index(const std::vector<double> &cdf, Rng &rng) {
  std::uniform_real_distribution<double> u(0.0, cdf.back());
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u(rng));
  return std::min<std::size_t>(it - cdf.begin(), cdf.size() - 1);
}

}  // namespace

StateVector::StateVector(std::size_t n_qubits)
    : n_qubits_(n_qubits), amps_(bit(n_qubits), Amplitude{0.0, 0.0}) {
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Amplitude> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (amps_.size() != bit(n_qubits_)) {
    throw StructureError("amplitude count does not match 2^n");
  }
}

double StateVector::norm() const {
  double s = 0;
  for (const auto &a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::apply_1q(std::size_t q, const Amplitude m[2][2]) {
  const std::size_t mask = bit(q);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & mask) continue;
    const Amplitude a0 = amps_[i];
    const Amplitude a1 = amps_[i | mask];
    amps_[i] = m[0][0] * a0 + m[0][1] * a1;
    amps_[i | mask] = m[1][0] * a0 + m[1][1] * a1;
  }
}

void StateVector::apply(const Gate &g) {
  if (!g.is_bound()) {
    throw BindingError("gate " + std::string(to_string(g.kind)) +
                       " has an unbound parameter");
  }
  for (std::size_t i = 0; i < g.arity(); ++i) {
    if (g.qubits[i] >= n_qubits_) throw StructureError("qubit out of range");
  }
  const double half = 0.5 * g.value();
  switch (g.kind) {
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      const Amplitude m[2][2] = {{r, r}, {r, -r}};
      apply_1q(g.qubits[0], m);
      break;
    }
    case GateKind::RX: {
      const Amplitude c = std::cos(half);
      const Amplitude s = -kI * std::sin(half);
      const Amplitude m[2][2] = {{c, s}, {s, c}};
      apply_1q(g.qubits[0], m);
      break;
    }
    case GateKind::RZ: {
      const Amplitude m[2][2] = {{std::polar(1.0, -half), 0.0},
                                 {0.0, std::polar(1.0, half)}};
      apply_1q(g.qubits[0], m);
      break;
    }
    case GateKind::CRZ: {
      const std::size_t c = bit(g.qubits[0]);
      const std::size_t t = bit(g.qubits[1]);
      const Amplitude ph0 = std::polar(1.0, -half);
      const Amplitude ph1 = std::polar(1.0, half);
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & c) amps_[i] *= (i & t) ? ph1 : ph0;
      }
      break;
    }
    case GateKind::CX: {
      const std::size_t c = bit(g.qubits[0]);
      const std::size_t t = bit(g.qubits[1]);
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & c) && !(i & t)) std::swap(amps_[i], amps_[i | t]);
      }
      break;
    }
  }
}

void StateVector::apply_pauli(std::size_t qubit, int pauli) {
  const std::size_t mask = bit(qubit);
  switch (pauli) {
    case 0:
      return;
    case 1:
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (!(i & mask)) std::swap(amps_[i], amps_[i | mask]);
      }
      return;
    case 2:
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) continue;
        const Amplitude a0 = amps_[i];
        amps_[i] = -kI * amps_[i | mask];
        amps_[i | mask] = kI * a0;
      }
      return;
    case 3:
      for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & mask) amps_[i] = -amps_[i];
      }
      return;
    default:
      throw StructureError("unknown Pauli index");
  }
}

void StateVector::project(std::size_t qubit, int outcome) {
  const std::size_t mask = bit(qubit);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (((i & mask) != 0) != (outcome != 0)) amps_[i] = 0.0;
  }
}

OutcomePair make_outcome(double p0_raw, double p1_raw) {
  OutcomePair out;
  out.p0_raw = p0_raw;
  out.p1_raw = p1_raw;
  out.postselect_mass = p0_raw + p1_raw;
  if (out.postselect_mass > 0) {
    out.p0 = p0_raw / out.postselect_mass;
    out.p1 = p1_raw / out.postselect_mass;
  }
  return out;
}

StateVector simulate(const Circuit &bound) {
  StateVector psi(bound.n_qubits);
  for (const auto &g : bound.gates) psi.apply(g);
  return psi;
}

OutcomePair run_exact(const Circuit &bound) {
  StateVector psi = simulate(bound);
  for (const auto &[q, outcome] : bound.postselect) psi.project(q, outcome);
  const std::size_t mask = bit(bound.measured);
  double p0 = 0, p1 = 0;
  const auto amps = psi.amplitudes();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    (i & mask ? p1 : p0) += std::norm(amps[i]);
  }
  return make_outcome(p0, p1);
}

OutcomePair run_exact(const Circuit &circuit, const ParameterValues &values) {
  return run_exact(bind(circuit, values));
}

void NoiseModel::validate() const {
  const auto in01 = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!in01(p1) || !in01(p2)) {
    throw ConfigError("depolarizing probabilities must lie in [0, 1]");
  }
  if (!(readout_flip >= 0.0 && readout_flip <= 0.5)) {
    throw ConfigError("readout flip probability must lie in [0, 0.5]");
  }
  if (shots < 1) throw ConfigError("shots must be >= 1");
}

OutcomePair run_noisy(const Circuit &bound, const NoiseModel &noise) {
  noise.validate();
  for (const auto &g : bound.gates) {
    if (!g.is_bound()) {
      throw BindingError("gate " + std::string(to_string(g.kind)) +
                         " has an unbound parameter");
    }
  }
  std::mt19937_64 rng(noise.seed);

  std::vector<double> gate_p;
  gate_p.reserve(bound.gates.size());
  for (const auto &g : bound.gates) {
    gate_p.push_back(g.arity() == 2 ? noise.p2 : noise.p1);
  }
  const EventSequence gate_errors(std::move(gate_p));
  const EventSequence readout_errors(
      std::vector<double>(bound.n_qubits, noise.readout_flip));

  const auto ideal_cdf = cumulative(simulate(bound));
  std::size_t accept_mask = 0, accept_value = 0;
  for (const auto &[q, outcome] : bound.postselect) {
    accept_mask |= bit(q);
    if (outcome) accept_value |= bit(q);
  }
  const std::size_t measured = bit(bound.measured);

  std::uniform_int_distribution<int> pauli1(1, 3);
  std::uniform_int_distribution<int> pauli2(1, 15);
  std::vector<std::pair<std::size_t, int>> strikes;  // (gate, pauli code)
  std::size_t count0 = 0, count1 = 0;
  for (std::size_t shot = 0; shot < noise.shots; ++shot) {
    strikes.clear();
    gate_errors.sample(rng, [&](std::size_t g) {
      strikes.emplace_back(g, bound.gates[g].arity() == 2 ? pauli2(rng)
                                                          : pauli1(rng));
    });
    std::size_t outcome;
    if (strikes.empty()) {
      outcome = sample_index(ideal_cdf, rng);
    } else {
      StateVector psi(bound.n_qubits);
      std::size_t next = 0;
      for (std::size_t g = 0; g < bound.gates.size(); ++g) {
        const auto &gate = bound.gates[g];
        psi.apply(gate);
        for (; next < strikes.size() && strikes[next].first == g; ++next) {
          const int code = strikes[next].second;
          if (gate.arity() == 2) {
            psi.apply_pauli(gate.qubits[0], code % 4);
            psi.apply_pauli(gate.qubits[1], code / 4);
          } else {
            psi.apply_pauli(gate.qubits[0], code);
          }
        }
      }
      outcome = sample_index(cumulative(psi), rng);
    }
    readout_errors.sample(rng, [&](std::size_t q) { outcome ^= bit(q); });
    if ((outcome & accept_mask) != accept_value) continue;
    ++(outcome & measured ? count1 : count0);
  }
  const double shots = static_cast<double>(noise.shots);
  return make_outcome(static_cast<double>(count0) / shots,
                      static_cast<double>(count1) / shots);
}

OutcomePair run_noisy(const Circuit &circuit, const ParameterValues &values,
                      const NoiseModel &noise) {
  return run_noisy(bind(circuit, values), noise);
}

}  // namespace qnlp

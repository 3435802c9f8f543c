// Copyright 2026 The vff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vff/simcore.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "vff/rng.hpp"

namespace vff {

namespace {

constexpr Complex kI{0.0, 1.0};

struct GateInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  bool has_angle;
};

constexpr std::array<GateInfo, 6> kGateTable{{
    {GateKind::RX, "RX", 1, true},
    {GateKind::RY, "RY", 1, true},
    {GateKind::P, "P", 1, true},
    {GateKind::RZZ, "RZZ", 2, true},
    {GateKind::CNOT, "CNOT", 2, false},
    {GateKind::H, "H", 1, false},
}};

const GateInfo& info(GateKind kind) {
  for (const auto& g : kGateTable) {
    if (g.kind == kind) return g;
  }
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace

std::string_view gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view name) {
  for (const auto& g : kGateTable) {
    if (g.name == name) return g.kind;
  }
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

int gate_arity(GateKind kind) { return info(kind).arity; }
bool gate_has_angle(GateKind kind) { return info(kind).has_angle; }

Mat2 single_qubit_matrix(GateKind kind, double angle) {
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  switch (kind) {
    case GateKind::RX:
      return {c, kI * s, kI * s, c};
    case GateKind::RY:
      // exp(i a Y / 2) = cos I + i sin Y, and iY = [[0, 1], [-1, 0]].
      return {c, s, -s, c};
    case GateKind::P:
      return {1.0, 0.0, 0.0, std::polar(1.0, angle)};
    case GateKind::H: {
      const double r = 1.0 / std::sqrt(2.0);
      return {r, r, r, -r};
    }
    default:
      throw std::invalid_argument("not a single-qubit gate: " + std::string(gate_name(kind)));
  }
}

void check_qubits(int n_qubits, std::span<const int> qubits) {
  for (std::size_t i = 0; i < qubits.size(); ++i) {
    if (qubits[i] < 0 || qubits[i] >= n_qubits) {
      throw std::invalid_argument("qubit index " + std::to_string(qubits[i]) +
                                  " out of range for " + std::to_string(n_qubits) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (qubits[i] == qubits[j]) {
        throw std::invalid_argument("duplicated qubit index " + std::to_string(qubits[i]));
      }
    }
  }
}

StateVector StateVector::zero(int n_qubits) { return basis(n_qubits, 0); }

StateVector StateVector::basis(int n_qubits, std::size_t index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits must be in [1, " + std::to_string(kMaxQubits) +
                                "], got " + std::to_string(n_qubits));
  }
  StateVector s;
  s.n_qubits_ = n_qubits;
  s.amps_.assign(std::size_t{1} << n_qubits, Complex{});
  if (index >= s.amps_.size()) throw std::invalid_argument("basis index out of range");
  s.amps_[index] = 1.0;
  return s;
}

StateVector::StateVector(int n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("n_qubits out of range");
  }
  if (amps_.size() != (std::size_t{1} << n_qubits)) {
    throw std::invalid_argument("amplitude vector length must be 2^n_qubits");
  }
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return acc;
}

void StateVector::apply(const Gate& gate) {
  const int arity = gate_arity(gate.kind);
  check_qubits(n_qubits_, std::span<const int>(gate.qubits.data(), arity));
  const bool par = n_qubits_ >= kParallelMinQubits;
  switch (gate.kind) {
    case GateKind::RZZ: {
      const Complex e = std::polar(1.0, gate.angle / 2);
      const std::array<Complex, 4> d{e, std::conj(e), std::conj(e), e};
      par ? kernels::omp::apply_diag_2q(amps_, n_qubits_, gate.qubits[0], gate.qubits[1], d)
          : kernels::serial::apply_diag_2q(amps_, n_qubits_, gate.qubits[0], gate.qubits[1], d);
      return;
    }
    case GateKind::CNOT:
      par ? kernels::omp::apply_cnot(amps_, n_qubits_, gate.qubits[0], gate.qubits[1])
          : kernels::serial::apply_cnot(amps_, n_qubits_, gate.qubits[0], gate.qubits[1]);
      return;
    default: {
      const Mat2 m = single_qubit_matrix(gate.kind, gate.angle);
      par ? kernels::omp::apply_1q(amps_, n_qubits_, gate.qubits[0], m)
          : kernels::serial::apply_1q(amps_, n_qubits_, gate.qubits[0], m);
      return;
    }
  }
}

StateVector apply_gate(StateVector state, const Gate& gate) {
  state.apply(gate);
  return state;
}

std::vector<double> probabilities(const StateVector& state, std::span<const int> qubits) {
  check_qubits(state.n_qubits(), qubits);
  std::vector<double> out(std::size_t{1} << qubits.size());
  if (state.n_qubits() >= kParallelMinQubits) {
    kernels::omp::marginal(state.amplitudes(), state.n_qubits(), qubits, out);
  } else {
    kernels::serial::marginal(state.amplitudes(), state.n_qubits(), qubits, out);
  }
  return out;
}

std::vector<double> cumulative(std::span<const double> probs) {
  std::vector<double> cdf(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    cdf[i] = acc;
  }
  return cdf;
}

std::uint32_t draw_outcome(std::span<const double> cdf, Rng& rng) {
  // Scale by the total so rounding in the table cannot leave a gap at 1.
  const double u = rng.uniform() * cdf.back();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  const auto idx = static_cast<std::uint32_t>(it - cdf.begin());
  return std::min<std::uint32_t>(idx, static_cast<std::uint32_t>(cdf.size() - 1));
}

std::vector<MeasurementOutcome> sample(const StateVector& state, std::span<const int> qubits,
                                       std::uint64_t shots, std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  const std::vector<double> cdf = cumulative(probabilities(state, qubits));
  std::vector<std::uint64_t> counts(cdf.size(), 0);
  Rng rng(seed);
  for (std::uint64_t s = 0; s < shots; ++s) ++counts[draw_outcome(cdf, rng)];
  std::vector<MeasurementOutcome> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) out.push_back({static_cast<std::uint32_t>(i), counts[i]});
  }
  return out;
}

}  // namespace vff

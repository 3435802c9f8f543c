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

#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "vff/kernels.hpp"

namespace vff {

inline constexpr double kPi = 3.14159265358979323846;

enum class GateKind { RX, RY, P, RZZ, CNOT, H };

std::string_view gate_name(GateKind kind);
/// Throws std::invalid_argument for unknown names.
GateKind gate_kind_from_name(std::string_view name);
int gate_arity(GateKind kind);
bool gate_has_angle(GateKind kind);

/// A gate with a concrete angle, ready to act on a state.
///
/// Conventions: RX(a) = exp(i a X / 2), RY(a) = exp(i a Y / 2),
/// P(a) = diag(1, e^{i a}), RZZ(a) = exp(i a Z(x)Z / 2). For CNOT,
/// qubits[0] is the control.
struct Gate {
  GateKind kind = GateKind::H;
  std::array<int, 2> qubits{0, -1};
  double angle = 0.0;
};

/// 2x2 matrix of a one-qubit gate. Throws for two-qubit kinds.
Mat2 single_qubit_matrix(GateKind kind, double angle);

inline constexpr int kMaxQubits = 12;

/// Dense amplitude vector over n qubits. Basis index bit (n-1-q) holds
/// qubit q, so qubit 0 is the leftmost character of an outcome label.
class StateVector {
 public:
  /// |0...0>. Throws std::invalid_argument unless 1 <= n_qubits <= 12.
  static StateVector zero(int n_qubits);
  /// Basis state |index>.
  static StateVector basis(int n_qubits, std::size_t index);
  /// Takes amplitudes as given; length must be 2^n_qubits.
  StateVector(int n_qubits, std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  std::span<Complex> amplitudes() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const;

  /// Applies a gate in place. Throws std::invalid_argument on invalid or
  /// duplicated qubit indices.
  void apply(const Gate& gate);

 private:
  StateVector() = default;

  int n_qubits_ = 0;
  std::vector<Complex> amps_;
};

/// Kernel dispatch. States with at least this many qubits use the OpenMP
/// kernels; smaller ones use the serial reference.
inline constexpr int kParallelMinQubits = 10;

StateVector apply_gate(StateVector state, const Gate& gate);

/// Marginal distribution over `qubits` (qubits[0] is the most significant
/// outcome bit). 2^|qubits| entries.
std::vector<double> probabilities(const StateVector& state, std::span<const int> qubits);

struct MeasurementOutcome {
  std::uint32_t bits = 0;
  std::uint64_t count = 0;

  bool operator==(const MeasurementOutcome&) const = default;
};

/// Draws `shots` independent outcomes over `qubits` from a stream seeded
/// with `seed`. Returns the outcomes with nonzero count, ascending by bits.
std::vector<MeasurementOutcome> sample(const StateVector& state, std::span<const int> qubits,
                                       std::uint64_t shots, std::uint64_t seed);

/// Per-shot categorical draw against a probability table. Used by `sample`
/// and by the noisy sampler. Returns an outcome index.
class Rng;
std::uint32_t draw_outcome(std::span<const double> cumulative, Rng& rng);
std::vector<double> cumulative(std::span<const double> probs);

/// Validates indices: each < n_qubits, non-negative and pairwise distinct.
void check_qubits(int n_qubits, std::span<const int> qubits);

}  // namespace vff

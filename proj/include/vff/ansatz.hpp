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
#include <span>
#include <string>

#include <nlohmann/json.hpp>

#include "vff/circuit.hpp"

namespace vff {

/// Parameters of the two-qubit spectral ansatz V = W D W^dagger.
///
/// W has three layers; layer l (0-based) holds theta[6l .. 6l+5] applied as
/// RX, RY, P on qubit 0 then RX, RY, P on qubit 1, with CNOT(0 -> 1)
/// between consecutive layers. D is RZZ(gamma[0]) then P(gamma[1]) on
/// qubit 0 and P(gamma[2]) on qubit 1.
struct SpectralAnsatz {
  static constexpr int kNumTheta = 18;
  static constexpr int kNumGamma = 3;
  static constexpr int kNumParams = kNumTheta + kNumGamma;

  std::array<double, kNumTheta> theta{};
  std::array<double, kNumGamma> gamma{};

  /// (theta_1..theta_18, gamma_1..gamma_3).
  std::array<double, kNumParams> flat() const;
  static SpectralAnsatz from_flat(std::span<const double> values);

  bool operator==(const SpectralAnsatz&) const = default;
};

struct ThetaSlot {
  int layer;  // 0..2
  int qubit;  // 0..1
  GateKind kind;
};

/// Position of theta index k (0-based) in the W circuit.
ThetaSlot theta_slot(int k);

/// Parameter names, 0-based index: "theta_1".."theta_18", "gamma_1".."gamma_3".
std::string theta_name(int k);
std::string gamma_name(int l);
/// Name of flat parameter index i in [0, 21).
std::string param_name(int i);

ParamCircuit build_D(std::span<const double, 3> gamma);
ParamCircuit build_W(std::span<const double, 18> theta);
ParamCircuit build_V(const SpectralAnsatz& a);
/// V with gamma scaled by t/dt. Depth does not depend on t. Throws when dt == 0.
ParamCircuit build_V_fast_forward(const SpectralAnsatz& a, double t, double dt);

/// Diagonal of D(gamma) in the computational basis.
std::array<Complex, 4> diagonal_of_D(std::span<const double, 3> gamma);

nlohmann::json to_json(const SpectralAnsatz& a);
/// Expects {"theta": [18 numbers], "gamma": [3 numbers]}.
SpectralAnsatz ansatz_from_json(const nlohmann::json& j);

}  // namespace vff

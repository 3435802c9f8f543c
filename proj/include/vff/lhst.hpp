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

// Local Hilbert-Schmidt test for a two-qubit target U and model V.
//
// Register A = qubits (0, 1) carries U, register B = qubits (2, 3) carries
// conj(V). Pair j is (A_j, B_j) = (j, j + 2). Both test circuits prepare Bell
// pairs on (A_0, B_0) and (A_1, B_1); circuit j then undoes the Bell
// preparation on pair j only and measures it. The cost is
//
//   C = 1 - (Pr(00)_pair0 + Pr(00)_pair1) / 2,
//
// which vanishes exactly when V equals U up to a global phase.

#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include <nlohmann/json.hpp>

#include "vff/circuit.hpp"

namespace vff {

enum class CostMode { Analytic, Sampled };

std::string_view to_string(CostMode mode);

struct CostEstimate {
  double value = 0.0;
  double pr00_pair1 = 0.0;  // pair j = 0
  double pr00_pair2 = 0.0;  // pair j = 1
  CostMode mode = CostMode::Analytic;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;

  bool operator==(const CostEstimate&) const = default;
};

/// Builds value from the two pair probabilities.
CostEstimate make_estimate(double pr00_pair1, double pr00_pair2, CostMode mode,
                           std::uint64_t shots, std::uint64_t seed);

/// The two 4-qubit test circuits; [j] tests pair j.
std::array<ParamCircuit, 2> build_lhst_circuits(const ParamCircuit& u, const ParamCircuit& v);

/// Qubits measured by test circuit j: {j, j + 2}.
std::array<int, 2> lhst_measured_qubits(int pair);

CostEstimate cost_analytic(const ParamCircuit& u, const ParamCircuit& v);

/// Shot estimate. Circuit j samples from the stream Rng::derive(seed, {j}).
CostEstimate cost_sampled(const ParamCircuit& u, const ParamCircuit& v, std::uint64_t shots,
                          std::uint64_t seed);

/// Global test 1 - |Tr(U V^dagger)|^2 / d^2 computed from the dense unitaries.
double hst_global(const ParamCircuit& u, const ParamCircuit& v);

nlohmann::json to_json(const CostEstimate& c);

}  // namespace vff

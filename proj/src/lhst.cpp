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

#include "vff/lhst.hpp"

#include <algorithm>
#include <stdexcept>

#include "vff/rng.hpp"

namespace vff {

std::string_view to_string(CostMode mode) {
  return mode == CostMode::Analytic ? "analytic" : "sampled";
}

CostEstimate make_estimate(double pr00_pair1, double pr00_pair2, CostMode mode,
                           std::uint64_t shots, std::uint64_t seed) {
  CostEstimate c;
  c.pr00_pair1 = pr00_pair1;
  c.pr00_pair2 = pr00_pair2;
  c.value = std::clamp(1.0 - 0.5 * (pr00_pair1 + pr00_pair2), 0.0, 1.0);
  c.mode = mode;
  c.shots = shots;
  c.seed = seed;
  return c;
}

std::array<int, 2> lhst_measured_qubits(int pair) { return {pair, pair + 2}; }

std::array<ParamCircuit, 2> build_lhst_circuits(const ParamCircuit& u, const ParamCircuit& v) {
  if (u.n_qubits() != 2 || v.n_qubits() != 2) {
    throw std::invalid_argument("local Hilbert-Schmidt test needs two-qubit U and V");
  }
  // U enters with literal angles so its parameter names cannot clash with V's.
  const ParamCircuit u_fixed = u.frozen();
  const ParamCircuit v_conj = v.conjugate();
  auto make = [&](int tested) {
    ParamCircuit c(4);
    for (int j = 0; j < 2; ++j) {
      c.add_gate(GateKind::H, {j});
      c.add_gate(GateKind::CNOT, {j, j + 2});
    }
    c.append(u_fixed, {0, 1});
    c.append(v_conj, {2, 3});
    c.add_gate(GateKind::CNOT, {tested, tested + 2});
    c.add_gate(GateKind::H, {tested});
    return c;
  };
  return {make(0), make(1)};
}

CostEstimate cost_analytic(const ParamCircuit& u, const ParamCircuit& v) {
  const auto circuits = build_lhst_circuits(u, v);
  std::array<double, 2> pr{};
  for (int j = 0; j < 2; ++j) {
    const StateVector out = run(circuits[j], StateVector::zero(4));
    const auto q = lhst_measured_qubits(j);
    pr[j] = probabilities(out, q)[0];
  }
  return make_estimate(pr[0], pr[1], CostMode::Analytic, 0, 0);
}

CostEstimate cost_sampled(const ParamCircuit& u, const ParamCircuit& v, std::uint64_t shots,
                          std::uint64_t seed) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  const auto circuits = build_lhst_circuits(u, v);
  std::array<double, 2> pr{};
  for (int j = 0; j < 2; ++j) {
    const StateVector out = run(circuits[j], StateVector::zero(4));
    const auto q = lhst_measured_qubits(j);
    const auto outcomes = sample(out, q, shots, Rng::derive(seed, {static_cast<std::uint64_t>(j)}));
    std::uint64_t zeros = 0;
    if (!outcomes.empty() && outcomes.front().bits == 0) zeros = outcomes.front().count;
    pr[j] = static_cast<double>(zeros) / static_cast<double>(shots);
  }
  return make_estimate(pr[0], pr[1], CostMode::Sampled, shots, seed);
}

double hst_global(const ParamCircuit& u, const ParamCircuit& v) {
  if (u.n_qubits() != 2 || v.n_qubits() != 2) {
    throw std::invalid_argument("hst_global needs two-qubit U and V");
  }
  const CMatrix um = unitary_of(u);
  const CMatrix vm = unitary_of(v);
  const double d = static_cast<double>(um.rows());
  const double overlap = std::norm((um * vm.adjoint()).trace()) / (d * d);
  return std::clamp(1.0 - overlap, 0.0, 1.0);
}

nlohmann::json to_json(const CostEstimate& c) {
  return nlohmann::json{{"value", c.value},           {"pr00_pair1", c.pr00_pair1},
                        {"pr00_pair2", c.pr00_pair2}, {"mode", std::string(to_string(c.mode))},
                        {"shots", c.shots},           {"seed", c.seed}};
}

}  // namespace vff

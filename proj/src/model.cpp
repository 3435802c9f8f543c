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

#include "vff/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

namespace vff {

namespace {

constexpr int kMaxSpins = 6;

std::vector<std::pair<int, int>> ring_bonds(int n) {
  std::vector<std::pair<int, int>> bonds;
  for (int i = 0; i < n; ++i) bonds.emplace_back(i, (i + 1) % n);
  return bonds;
}

}  // namespace

void validate(const IsingParams& p) {
  if (p.n_spins < 2 || p.n_spins > kMaxSpins) {
    throw std::invalid_argument("n_spins must be in [2, " + std::to_string(kMaxSpins) +
                                "], got " + std::to_string(p.n_spins));
  }
  if (!(p.dt > 0.0) || !std::isfinite(p.dt)) throw std::invalid_argument("dt must be > 0");
  if (!std::isfinite(p.J) || !std::isfinite(p.B)) throw std::invalid_argument("J and B must be finite");
}

CMatrix build_hamiltonian(const IsingParams& p) {
  validate(p);
  const int n = p.n_spins;
  const std::size_t dim = std::size_t{1} << n;
  CMatrix h = CMatrix::Zero(dim, dim);
  const auto z = [n](std::size_t idx, int q) {
    return ((idx >> (n - 1 - q)) & 1u) ? -1.0 : 1.0;
  };
  for (std::size_t i = 0; i < dim; ++i) {
    for (const auto& [a, b] : ring_bonds(n)) h(i, i) += p.J * z(i, a) * z(i, b);
    for (int q = 0; q < n; ++q) h(i ^ kernels::bit_of(n, q), i) += p.B;
  }
  return h;
}

ParamCircuit trotter_step_circuit(const IsingParams& p) {
  // dt = 0 is accepted here and yields the identity.
  IsingParams checked = p;
  if (p.dt == 0.0) checked.dt = 1.0;
  validate(checked);
  const int n = p.n_spins;
  // RX(a) = exp(i a X/2), so exp(-i B (dt/4) X) is RX(-B dt/2); likewise
  // exp(-i J (dt/2) ZZ) is RZZ(-J dt) per bond occurrence.
  const double theta_b = p.B * p.dt / 2;
  const double theta_j = 2 * p.J * p.dt / 2;
  ParamCircuit c(n);
  for (int half = 0; half < 2; ++half) {
    for (int q = 0; q < n; ++q) c.add_gate(GateKind::RX, {q}, -theta_b);
    for (const auto& [a, b] : ring_bonds(n)) c.add_gate(GateKind::RZZ, {a, b}, -theta_j);
    for (int q = 0; q < n; ++q) c.add_gate(GateKind::RX, {q}, -theta_b);
  }
  return c;
}

ParamCircuit trotterized_evolution(const IsingParams& p, int k_steps) {
  if (k_steps < 0) throw std::invalid_argument("k_steps must be >= 0");
  const ParamCircuit step = trotter_step_circuit(p);
  ParamCircuit c(p.n_spins);
  for (int k = 0; k < k_steps; ++k) c.append(step);
  return c;
}

CMatrix exact_evolution(const CMatrix& hamiltonian, double t) {
  if (hamiltonian.rows() != hamiltonian.cols()) throw std::invalid_argument("H must be square");
  const double scale = std::max(1.0, hamiltonian.cwiseAbs().maxCoeff());
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw std::invalid_argument("H is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hamiltonian);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigendecomposition failed");
  const Eigen::VectorXcd phases =
      es.eigenvalues().unaryExpr([t](double e) { return std::polar(1.0, -e * t); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

StateVector plus_state(int n_qubits) {
  StateVector s = StateVector::zero(n_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  for (auto& x : s.amplitudes()) x = a;
  return s;
}

}  // namespace vff

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

#include "vff/circuit.hpp"

namespace vff {

/// Transverse-field Ising ring. Defaults are the reproduction values.
struct IsingParams {
  int n_spins = 2;
  double J = 1.0;
  double B = 1.0;
  double dt = 0.2;
};

/// Throws std::invalid_argument unless 2 <= n_spins <= 6 and dt > 0.
void validate(const IsingParams& p);

/// H = J sum_i Z_i Z_{i+1} + B sum_i X_i with periodic index i+1. For two
/// spins the wrap repeats the bond, giving 2J Z_0 Z_1.
CMatrix build_hamiltonian(const IsingParams& p);

/// Symmetric second-order step approximating exp(-i H dt): two half-step
/// brackets, each RX(-B dt/2) on every spin, RZZ(-J dt) on every ring bond
/// (both orientations of the single bond when n = 2), then RX(-B dt/2) again.
ParamCircuit trotter_step_circuit(const IsingParams& p);

/// k_steps consecutive Trotter steps; k_steps = 0 is the empty circuit.
ParamCircuit trotterized_evolution(const IsingParams& p, int k_steps);

/// exp(-i H t) by Hermitian eigendecomposition. Throws for non-Hermitian H.
CMatrix exact_evolution(const CMatrix& hamiltonian, double t);

/// |+>^{n}.
StateVector plus_state(int n_qubits);

}  // namespace vff

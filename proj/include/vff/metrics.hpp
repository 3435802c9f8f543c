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

#include "vff/circuit.hpp"

namespace vff {

struct PhaseDistance {
  double distance = 0.0;
  double best_phase = 0.0;  // radians, in (-pi, pi]
};

/// min over phi of ||U - e^{i phi} V||_F, via
/// distance^2 = ||U||^2 + ||V||^2 - 2 |Tr(U^dagger V)|, phi* = -arg Tr(U^dagger V).
PhaseDistance frobenius_phase_distance(const CMatrix& u, const CMatrix& v);

using Spectrum4 = std::array<Complex, 4>;

struct SpectrumComparison {
  Spectrum4 exact_eigenvalues{};
  Spectrum4 learned_eigenvalues{};
  double best_phase = 0.0;
  /// learned index compared against exact index i.
  std::array<int, 4> best_permutation{0, 1, 2, 3};
  double distance = 0.0;
};

/// min over permutations chi and phases phi of
/// ||D_exact - e^{i phi} chi D_learned chi^dagger||_F, by enumerating all 24
/// permutations with the closed-form phase for each. Entries must have unit
/// modulus within 1e-6.
SpectrumComparison eigenvalue_error(const Spectrum4& exact, const Spectrum4& learned);

/// Eigenvalues of a 4x4 unitary ordered by ascending phase in (-pi, pi].
Spectrum4 unitary_spectrum(const CMatrix& u);

/// Angle in degrees between two vectors. Throws std::domain_error if either
/// has zero norm.
double gradient_angle(std::span<const double> measured, std::span<const double> exact);

/// |<psi|phi>|^2. Throws std::invalid_argument for mismatched sizes or
/// inputs whose norm differs from 1 by more than 1e-8.
double state_fidelity(const StateVector& psi, const StateVector& phi);

}  // namespace vff

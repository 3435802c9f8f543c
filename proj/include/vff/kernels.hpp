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

// Amplitude-level kernels. Two implementations with identical signatures:
// `serial` is the reference and `omp` parallelizes the outer index loop.
// Qubit q lives at bit position (n_qubits - 1 - q) of the basis index, so
// qubit 0 is the most significant (leftmost) bit.

#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace vff {

using Complex = std::complex<double>;

/// Row-major 2x2 matrix {m00, m01, m10, m11}.
using Mat2 = std::array<Complex, 4>;

namespace kernels {

inline constexpr std::size_t bit_of(int n_qubits, int qubit) {
  return std::size_t{1} << (n_qubits - 1 - qubit);
}

namespace serial {
void apply_1q(std::span<Complex> amps, int n_qubits, int qubit, const Mat2& m);
/// Diagonal two-qubit gate; d is indexed by (bit(q0) << 1) | bit(q1).
void apply_diag_2q(std::span<Complex> amps, int n_qubits, int q0, int q1,
                   const std::array<Complex, 4>& d);
void apply_cnot(std::span<Complex> amps, int n_qubits, int control, int target);
/// Marginal distribution over `qubits`; out has 2^|qubits| entries with
/// qubits[0] as the most significant bit of the outcome index.
void marginal(std::span<const Complex> amps, int n_qubits, std::span<const int> qubits,
              std::span<double> out);
}  // namespace serial

namespace omp {
void apply_1q(std::span<Complex> amps, int n_qubits, int qubit, const Mat2& m);
void apply_diag_2q(std::span<Complex> amps, int n_qubits, int q0, int q1,
                   const std::array<Complex, 4>& d);
void apply_cnot(std::span<Complex> amps, int n_qubits, int control, int target);
void marginal(std::span<const Complex> amps, int n_qubits, std::span<const int> qubits,
              std::span<double> out);
}  // namespace omp

}  // namespace kernels
}  // namespace vff

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

#include <algorithm>

#include "vff/kernels.hpp"

namespace vff::kernels::serial {

void apply_1q(std::span<Complex> amps, int n_qubits, int qubit, const Mat2& m) {
  const std::size_t mask = bit_of(n_qubits, qubit);
  const std::size_t lo = mask - 1;
  const std::size_t half = amps.size() >> 1;
  for (std::size_t i = 0; i < half; ++i) {
    const std::size_t i0 = ((i & ~lo) << 1) | (i & lo);
    const std::size_t i1 = i0 | mask;
    const Complex a0 = amps[i0];
    const Complex a1 = amps[i1];
    amps[i0] = m[0] * a0 + m[1] * a1;
    amps[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_diag_2q(std::span<Complex> amps, int n_qubits, int q0, int q1,
                   const std::array<Complex, 4>& d) {
  const std::size_t m0 = bit_of(n_qubits, q0);
  const std::size_t m1 = bit_of(n_qubits, q1);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    const std::size_t k = ((i & m0) ? 2u : 0u) | ((i & m1) ? 1u : 0u);
    amps[i] *= d[k];
  }
}

void apply_cnot(std::span<Complex> amps, int n_qubits, int control, int target) {
  const std::size_t mc = bit_of(n_qubits, control);
  const std::size_t mt = bit_of(n_qubits, target);
  for (std::size_t i = 0; i < amps.size(); ++i) {
    if ((i & mc) && !(i & mt)) std::swap(amps[i], amps[i | mt]);
  }
}

void marginal(std::span<const Complex> amps, int n_qubits, std::span<const int> qubits,
              std::span<double> out) {
  std::fill(out.begin(), out.end(), 0.0);
  const std::size_t k = qubits.size();
  for (std::size_t i = 0; i < amps.size(); ++i) {
    std::size_t pattern = 0;
    for (std::size_t j = 0; j < k; ++j) {
      pattern = (pattern << 1) | ((i & bit_of(n_qubits, qubits[j])) ? 1u : 0u);
    }
    out[pattern] += std::norm(amps[i]);
  }
}

}  // namespace vff::kernels::serial

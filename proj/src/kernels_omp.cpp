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
#include <cstdint>
#include <vector>

#include "vff/kernels.hpp"

namespace vff::kernels::omp {

using index_t = std::int64_t;

void apply_1q(std::span<Complex> amps, int n_qubits, int qubit, const Mat2& m) {
  const std::size_t mask = bit_of(n_qubits, qubit);
  const std::size_t lo = mask - 1;
  const index_t half = static_cast<index_t>(amps.size() >> 1);
  Complex* a = amps.data();
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < half; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t i0 = ((u & ~lo) << 1) | (u & lo);
    const std::size_t i1 = i0 | mask;
    const Complex a0 = a[i0];
    const Complex a1 = a[i1];
    a[i0] = m[0] * a0 + m[1] * a1;
    a[i1] = m[2] * a0 + m[3] * a1;
  }
}

void apply_diag_2q(std::span<Complex> amps, int n_qubits, int q0, int q1,
                   const std::array<Complex, 4>& d) {
  const std::size_t m0 = bit_of(n_qubits, q0);
  const std::size_t m1 = bit_of(n_qubits, q1);
  const index_t dim = static_cast<index_t>(amps.size());
  Complex* a = amps.data();
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < dim; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    const std::size_t k = ((u & m0) ? 2u : 0u) | ((u & m1) ? 1u : 0u);
    a[u] *= d[k];
  }
}

void apply_cnot(std::span<Complex> amps, int n_qubits, int control, int target) {
  const std::size_t mc = bit_of(n_qubits, control);
  const std::size_t mt = bit_of(n_qubits, target);
  const index_t dim = static_cast<index_t>(amps.size());
  Complex* a = amps.data();
  // Each swap pair is owned by its index with the target bit clear.
#pragma omp parallel for schedule(static)
  for (index_t i = 0; i < dim; ++i) {
    const std::size_t u = static_cast<std::size_t>(i);
    if ((u & mc) && !(u & mt)) std::swap(a[u], a[u | mt]);
  }
}

void marginal(std::span<const Complex> amps, int n_qubits, std::span<const int> qubits,
              std::span<double> out) {
  const std::size_t k = qubits.size();
  // Measured bit positions, ascending, for bit-deposit of the rest index.
  std::vector<std::size_t> positions(k);
  for (std::size_t j = 0; j < k; ++j) positions[j] = bit_of(n_qubits, qubits[j]);
  std::vector<std::size_t> sorted = positions;
  std::sort(sorted.begin(), sorted.end());

  const index_t n_patterns = static_cast<index_t>(out.size());
  const std::size_t n_rest = amps.size() >> k;
  const Complex* a = amps.data();
  double* o = out.data();
  // One output entry per iteration; each sum runs over ascending basis
  // index, the same order as the serial kernel, so results match bitwise.
#pragma omp parallel for schedule(static)
  for (index_t p = 0; p < n_patterns; ++p) {
    std::size_t fixed = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((static_cast<std::size_t>(p) >> (k - 1 - j)) & 1u) fixed |= positions[j];
    }
    double acc = 0.0;
    for (std::size_t r = 0; r < n_rest; ++r) {
      std::size_t idx = r;
      for (std::size_t bit : sorted) {
        const std::size_t lo = bit - 1;
        idx = ((idx & ~lo) << 1) | (idx & lo);
      }
      acc += std::norm(a[idx | fixed]);
    }
    o[p] = acc;
  }
}

}  // namespace vff::kernels::omp

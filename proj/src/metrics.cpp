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

#include "vff/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace vff {

PhaseDistance frobenius_phase_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("frobenius_phase_distance: dimension mismatch");
  }
  const Complex overlap = (u.adjoint() * v).trace();
  const double d2 = u.squaredNorm() + v.squaredNorm() - 2.0 * std::abs(overlap);
  PhaseDistance out;
  out.distance = std::sqrt(std::max(d2, 0.0));
  out.best_phase = std::abs(overlap) > 0.0 ? -std::arg(overlap) : 0.0;
  return out;
}

SpectrumComparison eigenvalue_error(const Spectrum4& exact, const Spectrum4& learned) {
  for (const auto* s : {&exact, &learned}) {
    for (const auto& z : *s) {
      if (std::abs(std::abs(z) - 1.0) > 1e-6) {
        throw std::invalid_argument("eigenvalue_error: entries must have unit modulus");
      }
    }
  }
  SpectrumComparison best;
  best.exact_eigenvalues = exact;
  best.learned_eigenvalues = learned;
  best.distance = INFINITY;
  double norms = 0.0;
  for (int i = 0; i < 4; ++i) norms += std::norm(exact[i]) + std::norm(learned[i]);

  std::array<int, 4> perm{0, 1, 2, 3};
  do {
    Complex overlap{};
    for (int i = 0; i < 4; ++i) overlap += std::conj(exact[i]) * learned[perm[i]];
    const double d = std::sqrt(std::max(norms - 2.0 * std::abs(overlap), 0.0));
    if (d < best.distance) {
      best.distance = d;
      best.best_permutation = perm;
      best.best_phase = std::abs(overlap) > 0.0 ? -std::arg(overlap) : 0.0;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Spectrum4 unitary_spectrum(const CMatrix& u) {
  if (u.rows() != 4 || u.cols() != 4) throw std::invalid_argument("unitary_spectrum expects 4x4");
  Eigen::ComplexEigenSolver<CMatrix> es(u, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  Spectrum4 out;
  for (int i = 0; i < 4; ++i) out[i] = es.eigenvalues()[i];
  std::sort(out.begin(), out.end(),
            [](const Complex& a, const Complex& b) { return std::arg(a) < std::arg(b); });
  return out;
}

double gradient_angle(std::span<const double> measured, std::span<const double> exact) {
  if (measured.size() != exact.size()) throw std::invalid_argument("gradient_angle: size mismatch");
  const double na = std::sqrt(std::inner_product(measured.begin(), measured.end(), measured.begin(), 0.0));
  const double nb = std::sqrt(std::inner_product(exact.begin(), exact.end(), exact.begin(), 0.0));
  if (na == 0.0 || nb == 0.0) throw std::domain_error("gradient_angle: zero vector");
  // 2 atan2(|a - b|, |a + b|) on unit vectors; acos loses precision near 0 and 180.
  double diff = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < measured.size(); ++i) {
    const double x = measured[i] / na, y = exact[i] / nb;
    diff += (x - y) * (x - y);
    sum += (x + y) * (x + y);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum)) * 180.0 / kPi;
}

double state_fidelity(const StateVector& psi, const StateVector& phi) {
  if (psi.dim() != phi.dim()) throw std::invalid_argument("state_fidelity: dimension mismatch");
  if (std::abs(psi.norm_squared() - 1.0) > 1e-8 || std::abs(phi.norm_squared() - 1.0) > 1e-8) {
    throw std::invalid_argument("state_fidelity: states must be normalized");
  }
  Complex overlap{};
  for (std::size_t i = 0; i < psi.dim(); ++i) overlap += std::conj(psi[i]) * phi[i];
  return std::clamp(std::norm(overlap), 0.0, 1.0);
}

}  // namespace vff

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
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vff/ansatz.hpp"

namespace vff {
namespace {

using testing::max_abs_diff;

CMatrix power_oracle(const CMatrix& u, double k) {
  Eigen::ComplexEigenSolver<CMatrix> es(u);
  const CMatrix s = es.eigenvectors();
  Eigen::VectorXcd lam(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::polar(1.0, k * std::arg(es.eigenvalues()[i]));
  return s * lam.asDiagonal() * s.inverse();
}

SpectralAnsatz small_gamma(std::mt19937_64& g) {
  auto a = testing::random_ansatz(g);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (auto& x : a.gamma) x = d(g);
  return a;
}

TEST(BuildD, ZeroIsIdentity) {
  const std::array<double, 3> z{};
  EXPECT_LT(max_abs_diff(unitary_of(build_D(z)), testing::eye(4)), 1e-15);
}

TEST(BuildD, AlwaysDiagonal) {
  std::mt19937_64 g(1);
  for (int i = 0; i < 100; ++i) {
    const std::array<double, 3> gm{testing::rand_angle(g), testing::rand_angle(g), testing::rand_angle(g)};
    CMatrix u = unitary_of(build_D(gm));
    const auto d = diagonal_of_D(gm);
    for (int r = 0; r < 4; ++r) {
      EXPECT_NEAR(std::abs(u(r, r) - d[r]), 0.0, 1e-12);
      u(r, r) = 0;
    }
    EXPECT_LE(u.cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(BuildD, FirstParameterIsRzz) {
  const double th = 0.83;
  const std::array<double, 3> gm{th, 0, 0};
  const CMatrix oracle = testing::expi_half(testing::kron(testing::pauli_z(), testing::pauli_z()), th);
  EXPECT_LT(max_abs_diff(unitary_of(build_D(gm)), oracle), 1e-12);
}

TEST(BuildW, ZeroIsIdentityUpToCnots) {
  // With every angle 0 the two CNOTs cancel.
  const std::array<double, 18> z{};
  EXPECT_LT(max_abs_diff(unitary_of(build_W(z)), testing::eye(4)), 1e-15);
}

TEST(BuildW, UnitaryAndCounts) {
  std::mt19937_64 g(2);
  const auto a = testing::random_ansatz(g);
  const auto w = build_W(a.theta);
  const CMatrix u = unitary_of(w);
  EXPECT_LE((u.adjoint() * u - testing::eye(4)).norm(), 1e-10);
  EXPECT_EQ(w.count(GateKind::CNOT), 2u);
  EXPECT_EQ(w.parameterized_gate_count(), 18u);
}

TEST(BuildW, LayoutMatchesThetaSlots) {
  std::mt19937_64 g(3);
  const auto a = testing::random_ansatz(g);
  const auto w = build_W(a.theta);
  for (int k = 0; k < 18; ++k) {
    const auto occ = w.occurrences_of(theta_name(k));
    ASSERT_EQ(occ.size(), 1u);
    const auto& gi = w.occurrence(occ[0]);
    const auto slot = theta_slot(k);
    EXPECT_EQ(gi.kind, slot.kind);
    EXPECT_EQ(gi.qubits[0], slot.qubit);
  }
  EXPECT_EQ(theta_slot(0).kind, GateKind::RX);
  EXPECT_EQ(theta_slot(4).kind, GateKind::RY);
  EXPECT_EQ(theta_slot(4).qubit, 1);
  EXPECT_EQ(theta_slot(17).layer, 2);
}

TEST(BuildV, ZeroIsIdentity) {
  EXPECT_LT(max_abs_diff(unitary_of(build_V(SpectralAnsatz{})), testing::eye(4)), 1e-15);
}

TEST(BuildV, MatrixProductOracle) {
  std::mt19937_64 g(4);
  for (int i = 0; i < 10; ++i) {
    const auto a = testing::random_ansatz(g);
    const CMatrix w = unitary_of(build_W(a.theta));
    const CMatrix d = unitary_of(build_D(a.gamma));
    EXPECT_LT(max_abs_diff(unitary_of(build_V(a)), w * d * w.adjoint()), 1e-10);
  }
}

TEST(BuildV, EigenvaluesAreDiagonalOfD) {
  std::mt19937_64 g(5);
  for (int i = 0; i < 10; ++i) {
    const auto a = testing::random_ansatz(g);
    Eigen::ComplexEigenSolver<CMatrix> es(unitary_of(build_V(a)));
    auto d = diagonal_of_D(a.gamma);
    std::vector<Complex> ev(es.eigenvalues().data(), es.eigenvalues().data() + 4);
    for (const auto& lam : d) {
      auto it = std::min_element(ev.begin(), ev.end(), [&](Complex x, Complex y) {
        return std::abs(x - lam) < std::abs(y - lam);
      });
      EXPECT_LT(std::abs(*it - lam), 1e-9);
      ev.erase(it);
    }
  }
}

TEST(BuildV, StructureAndSharing) {
  std::mt19937_64 g(6);
  const auto v = build_V(testing::random_ansatz(g));
  // RZZ compiles to two CNOTs; the total is 6.
  EXPECT_EQ(v.count(GateKind::CNOT), 4u);
  EXPECT_EQ(v.count(GateKind::CNOT) + 2 * v.count(GateKind::RZZ), 6u);
  EXPECT_EQ(v.parameterized_gate_count(), 39u);
  for (int k = 0; k < 18; ++k) EXPECT_EQ(v.occurrences_of(theta_name(k)).size(), 2u);
  for (int l = 0; l < 3; ++l) EXPECT_EQ(v.occurrences_of(gamma_name(l)).size(), 1u);
  const auto occ = v.occurrences_of("theta_5");
  EXPECT_NE(occ[0], occ[1]);
}

TEST(BuildV, PerturbingThetaMovesBothSegments) {
  std::mt19937_64 g(7);
  auto a = testing::random_ansatz(g);
  const auto v0 = build_V(a);
  a.theta[4] += 0.1;
  const auto v1 = build_V(a);
  for (int occ : v0.occurrences_of("theta_5")) {
    EXPECT_NEAR(std::abs(v1.effective_angle(v1.occurrence(occ)) - v0.effective_angle(v0.occurrence(occ))),
                0.1, 1e-12);
  }
}

TEST(FastForward, OneStepIsV) {
  std::mt19937_64 g(8);
  const auto a = testing::random_ansatz(g);
  EXPECT_LT(max_abs_diff(unitary_of(build_V_fast_forward(a, 0.2, 0.2)), unitary_of(build_V(a))), 1e-14);
}

TEST(FastForward, SpectralPowering) {
  std::mt19937_64 g(9);
  const double dt = 0.2;
  for (int trial = 0; trial < 5; ++trial) {
    const auto a = small_gamma(g);
    const CMatrix v = unitary_of(build_V(a));
    for (double k : {-2.0, -1.0, 0.5, 1.0, 2.0, 7.0}) {
      const CMatrix ff = unitary_of(build_V_fast_forward(a, k * dt, dt));
      EXPECT_LT(max_abs_diff(ff, power_oracle(v, k)), 1e-8) << "k=" << k;
    }
    EXPECT_LT(max_abs_diff(unitary_of(build_V_fast_forward(a, 2 * dt, dt)), v * v), 1e-9);
    EXPECT_LT(max_abs_diff(unitary_of(build_V_fast_forward(a, -dt, dt)), v.adjoint()), 1e-9);
  }
}

TEST(FastForward, DepthIndependentOfTime) {
  std::mt19937_64 g(10);
  const auto a = testing::random_ansatz(g);
  EXPECT_EQ(build_V_fast_forward(a, 0.2, 0.2).gates().size(),
            build_V_fast_forward(a, 96 * 0.2, 0.2).gates().size());
  EXPECT_THROW(build_V_fast_forward(a, 1.0, 0.0), std::invalid_argument);
}

TEST(AnsatzJson, RoundTripAndErrors) {
  std::mt19937_64 g(11);
  const auto a = testing::random_ansatz(g);
  EXPECT_EQ(ansatz_from_json(to_json(a)), a);
  EXPECT_EQ(ansatz_from_json(nlohmann::json::parse(to_json(a).dump())), a);
  EXPECT_THROW(ansatz_from_json(nlohmann::json{{"theta", {1, 2}}, {"gamma", {1, 2, 3}}}), std::invalid_argument);
  EXPECT_THROW(ansatz_from_json(nlohmann::json::object()), std::invalid_argument);
  std::vector<double> bad(21, 0.0);
  bad[3] = std::nan("");
  EXPECT_THROW(SpectralAnsatz::from_flat(bad), std::invalid_argument);
}

TEST(AnsatzNames, FlatOrder) {
  EXPECT_EQ(param_name(0), "theta_1");
  EXPECT_EQ(param_name(17), "theta_18");
  EXPECT_EQ(param_name(18), "gamma_1");
  EXPECT_EQ(param_name(20), "gamma_3");
}

}  // namespace
}  // namespace vff

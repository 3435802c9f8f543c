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


#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vff/noise.hpp"

namespace vff {
namespace {

using nlohmann::json;

json table_doc() {
  return json::parse(R"({
    "qubits": [
      {"id": 0, "t1_us": 136.6, "t2_us": 178.0, "spam": 0.056, "u2_error": 3.70e-4},
      {"id": 1, "t1_us": 132.3, "t2_us": 117.4, "spam": 0.045, "u2_error": 2.01e-4},
      {"id": 2, "t1_us": 65.4, "t2_us": 132.4, "spam": 0.024, "u2_error": 2.48e-4},
      {"id": 3, "t1_us": 103.6, "t2_us": 158.3, "spam": 0.020, "u2_error": 4.74e-4}],
    "cnot": [
      {"pair": [0, 1], "error": 1.04e-3}, {"pair": [1, 0], "error": 1.04e-3},
      {"pair": [1, 2], "error": 8.12e-3}, {"pair": [2, 1], "error": 8.12e-3},
      {"pair": [2, 3], "error": 3.81e-2}, {"pair": [3, 2], "error": 3.81e-2}]})");
}

NoiseModel table_model() { return NoiseModel::from_calibration(load_calibration(table_doc()), {0, 1, 2, 3}); }

TEST(LoadCalibration, TableValues) {
  const auto t = load_calibration(table_doc());
  EXPECT_DOUBLE_EQ(t.qubit(0).t1_us, 136.6);
  EXPECT_DOUBLE_EQ(t.qubit(0).t2_us, 178.0);
  EXPECT_DOUBLE_EQ(t.qubit(0).spam, 0.056);
  EXPECT_DOUBLE_EQ(t.qubit(0).u2_error, 3.70e-4);
  EXPECT_DOUBLE_EQ(*t.cnot_error(2, 3), 3.81e-2);
  EXPECT_FALSE(t.cnot_error(0, 3).has_value());
}

TEST(LoadCalibration, ShippedFileMatchesTable) {
  const auto shipped = load_calibration_file(VFF_DATA_DIR "/calibration_4q.json");
  const auto ref = load_calibration(table_doc());
  for (int q = 0; q < 4; ++q) {
    EXPECT_DOUBLE_EQ(shipped.qubit(q).spam, ref.qubit(q).spam);
    EXPECT_DOUBLE_EQ(shipped.qubit(q).u2_error, ref.qubit(q).u2_error);
  }
  EXPECT_DOUBLE_EQ(*shipped.cnot_error(1, 2), 8.12e-3);
}

TEST(LoadCalibration, SpamFromAsymmetricRates) {
  auto doc = table_doc();
  doc["qubits"][1].erase("spam");
  doc["qubits"][1]["p0_given_1"] = 0.06;
  doc["qubits"][1]["p1_given_0"] = 0.05;
  EXPECT_NEAR(load_calibration(doc).qubit(1).spam, 0.055, 1e-12);
  EXPECT_NEAR(spam_from_asymmetric(0.06, 0.05), 0.055, 1e-15);
  doc["qubits"][1]["spam"] = 0.2;
  EXPECT_THROW(load_calibration(doc), std::invalid_argument);
}

TEST(LoadCalibration, RejectsMalformed) {
  auto missing = table_doc();
  missing["qubits"].erase(2);
  EXPECT_THROW(load_calibration(missing), std::invalid_argument);
  auto bad_prob = table_doc();
  bad_prob["qubits"][0]["spam"] = 1.5;
  EXPECT_THROW(load_calibration(bad_prob), std::invalid_argument);
  auto bad_t1 = table_doc();
  bad_t1["qubits"][0]["t1_us"] = 0.0;
  EXPECT_THROW(load_calibration(bad_t1), std::invalid_argument);
  auto bad_pair = table_doc();
  bad_pair["cnot"][0]["pair"] = json::array({0, 9});
  EXPECT_THROW(load_calibration(bad_pair), std::invalid_argument);
  EXPECT_THROW(load_calibration(json::array()), std::invalid_argument);
  EXPECT_THROW(load_calibration_file("/nonexistent/calibration.json"), std::invalid_argument);
}

TEST(NoiseModel, MappingAndFallback) {
  const auto t = load_calibration(table_doc());
  const auto m = NoiseModel::from_calibration(t, {1, 2});
  EXPECT_DOUBLE_EQ(m.readout_error[0], 0.045);
  EXPECT_DOUBLE_EQ(m.two_qubit_cnot_error(0, 1), 8.12e-3);
  const auto full = table_model();
  const double mean = (2 * 1.04e-3 + 2 * 8.12e-3 + 2 * 3.81e-2) / 6;
  EXPECT_NEAR(full.two_qubit_cnot_error(0, 2), mean, 1e-15);
  const double p = 8.12e-3;
  EXPECT_NEAR(full.depolarizing_probability({GateKind::RZZ, {1, 2}, 0.3}), 1 - (1 - p) * (1 - p), 1e-15);
  EXPECT_DOUBLE_EQ(full.depolarizing_probability({GateKind::RY, {3, -1}, 0.3}), 4.74e-4);
  EXPECT_TRUE(NoiseModel::ideal(3).noiseless());
  EXPECT_FALSE(full.noiseless());
  EXPECT_TRUE(full.scaled(0.0).noiseless());
  EXPECT_DOUBLE_EQ(full.scaled(2.0).readout_error[0], 0.112);
}

TEST(ApplyNoise, ZeroNoiseIsIdeal) {
  std::mt19937_64 g(1);
  const auto c = testing::random_circuit(g, 3, 30);
  Rng rng(5);
  const auto noisy = run_trajectory(c, StateVector::zero(3), NoiseModel::ideal(3), rng);
  const auto ideal = run(c, StateVector::zero(3));
  for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(noisy[i], ideal[i]);
}

TEST(ApplyNoise, FullDepolarizingGivesMaximallyMixed) {
  NoiseModel m = NoiseModel::ideal(1);
  m.one_qubit_error[0] = 1.0;
  CMatrix rho = CMatrix::Zero(2, 2);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Rng rng(Rng::derive(3, {static_cast<std::uint64_t>(i)}));
    auto s = StateVector::zero(1);
    apply_noise(s, {GateKind::RY, {0, -1}, 0.3}, m, rng);
    Eigen::Vector2cd v(s[0], s[1]);
    rho += v * v.adjoint();
  }
  rho /= n;
  EXPECT_NEAR((rho * rho).trace().real(), 0.5, 0.02);
}

TEST(ApplyReadout, HalfFlipIsUniform) {
  NoiseModel m = NoiseModel::ideal(2);
  m.readout_error = {0.5, 0.0};
  Rng rng(9);
  const std::vector<int> qs{0, 1};
  int ones = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto bits = apply_readout(0b00, qs, m, rng);
    EXPECT_EQ(bits & 1u, 0u);
    ones += (bits >> 1) & 1u;
  }
  EXPECT_NEAR(ones, n / 2, 5 * std::sqrt(n * 0.25));
}

TEST(TrajectoryAverage, MatchesDepolarizingChannel) {
  const double p = 0.3;
  NoiseModel m = NoiseModel::ideal(1);
  m.one_qubit_error[0] = p;
  ParamCircuit c(1);
  c.add_gate(GateKind::RY, {0}, 1.0);
  c.add_gate(GateKind::RX, {0}, 0.5);
  // Channel oracle on the density matrix.
  CMatrix rho = CMatrix::Zero(2, 2);
  rho(0, 0) = 1;
  for (const auto& [gen, a] : {std::pair{testing::pauli_y(), 1.0}, std::pair{testing::pauli_x(), 0.5}}) {
    const CMatrix u = testing::expi_half(gen, a);
    rho = (1 - p) * u * rho * u.adjoint() + p * testing::eye(2) / 2.0;
  }
  const std::vector<int> qs{0};
  const auto probs = trajectory_probabilities(c, m, qs, 100000, 4);
  const double tv = 0.5 * (std::abs(probs[0] - rho(0, 0).real()) + std::abs(probs[1] - rho(1, 1).real()));
  EXPECT_LT(tv, 0.01);
}

TEST(NoisyCost, NoiselessAgreesWithSampled) {
  std::mt19937_64 g(2);
  const auto u = testing::random_circuit(g, 2, 10);
  const auto v = testing::random_circuit(g, 2, 10);
  const double exact = cost_analytic(u, v).value;
  const auto c = noisy_cost(u, v, NoiseModel::ideal(4), 8000, 3, 500);
  EXPECT_NEAR(c.value, exact, 5 * std::sqrt(0.25 / 8000));
}

TEST(NoisyCost, TableModelLiftsCostAtOptimum) {
  std::mt19937_64 g(3);
  const double sigma = std::sqrt(0.25 / 8000);
  for (int i = 0; i < 20; ++i) {
    const auto u = testing::random_circuit(g, 2, 10);
    const auto c = noisy_cost(u, u, table_model(), 8000, 10 + i, 400);
    EXPECT_GE(c.value, cost_analytic(u, u).value - 5 * sigma);
    if (i == 0) EXPECT_GT(c.value, 3 * sigma);
  }
}

TEST(NoisyCost, IncreasesWithNoiseScale) {
  std::mt19937_64 g(4);
  const auto u = testing::random_circuit(g, 2, 10);
  double prev = -1.0;
  for (double f : {0.5, 1.0, 2.0}) {
    const double c = noisy_cost(u, u, table_model().scaled(f), 200000, 5, 4000).value;
    EXPECT_GT(c, 0.0);
    EXPECT_GT(c, prev);
    prev = c;
  }
}

TEST(NoisyCost, Deterministic) {
  std::mt19937_64 g(5);
  const auto u = testing::random_circuit(g, 2, 10);
  const auto v = testing::random_circuit(g, 2, 10);
  EXPECT_EQ(noisy_cost(u, v, table_model(), 2000, 8, 100), noisy_cost(u, v, table_model(), 2000, 8, 100));
}

TEST(TrajectoryFidelity, IdealModelGivesPureOverlap) {
  ParamCircuit c(2);
  c.add_gate(GateKind::H, {0});
  c.add_gate(GateKind::H, {1});
  const auto target = run(c, StateVector::zero(2));
  EXPECT_NEAR(trajectory_fidelity(c, StateVector::zero(2), target, NoiseModel::ideal(2), 10, 1), 1.0, 1e-12);
}

}  // namespace
}  // namespace vff

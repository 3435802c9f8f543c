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
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "test_util.hpp"
#include "vff/metrics.hpp"
#include "vff/trainer.hpp"

namespace vff {
namespace {

double cost_at(const ParamCircuit& u, const SpectralAnsatz& a) { return cost_analytic(u, build_V(a)).value; }

TEST(Schedule, ReferenceValues) {
  const LearningSchedule s;
  EXPECT_DOUBLE_EQ(s.eta(0), 1.1);
  EXPECT_NEAR(s.eta(12), 1.1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.eta(12), 0.7778, 1e-4);
  for (int j = 0; j < 100; ++j) EXPECT_LE(s.eta(j + 1), s.eta(j));
  LearningSchedule bad;
  bad.delta = 0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = LearningSchedule{};
  bad.n_steps = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
}

TEST(ShiftTerms, ThirtyNineTermsInFlatOrder) {
  std::mt19937_64 g(1);
  const auto terms = shift_terms(build_V(testing::random_ansatz(g)));
  ASSERT_EQ(terms.size(), 39u);
  int neg = 0;
  for (std::size_t t = 0; t + 1 < terms.size(); ++t) EXPECT_LE(terms[t].param, terms[t + 1].param);
  for (const auto& t : terms) neg += t.sign < 0;
  EXPECT_EQ(neg, 18);
}

TEST(Gradient, MatchesCentralFiniteDifferences) {
  const ParamCircuit u = trotter_step_circuit(IsingParams{});
  std::mt19937_64 g(2);
  const double h = 1e-5;
  for (int point = 0; point < 20; ++point) {
    const auto a = testing::random_ansatz(g);
    const auto grad = gradient(u, a, CostMode::Analytic, 0, 0);
    const auto x = a.flat();
    for (int i = 0; i < SpectralAnsatz::kNumParams; ++i) {
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const double fd = (cost_at(u, SpectralAnsatz::from_flat(xp)) - cost_at(u, SpectralAnsatz::from_flat(xm))) / (2 * h);
      EXPECT_NEAR(grad[i], fd, 1e-5) << "point " << point << " param " << param_name(i);
    }
  }
}

TEST(Gradient, SumOfSingleOccurrenceDerivatives) {
  const ParamCircuit u = trotter_step_circuit(IsingParams{});
  std::mt19937_64 g(3);
  const auto a = testing::random_ansatz(g);
  const auto grad = gradient(u, a, CostMode::Analytic, 0, 0);
  const ParamCircuit v = build_V(a);
  const double h = 1e-5;
  for (int k : {0, 4, 13, 17}) {
    double sum = 0;
    for (int occ : v.occurrences_of(theta_name(k))) {
      // Finite difference in the parameter through this occurrence alone.
      const double sign = std::get<ParamRef>(v.occurrence(occ).angle).sign;
      const double cp = cost_analytic(u, v.shift_occurrence(occ, sign * h)).value;
      const double cm = cost_analytic(u, v.shift_occurrence(occ, -sign * h)).value;
      sum += (cp - cm) / (2 * h);
    }
    EXPECT_NEAR(grad[k], sum, 1e-5) << theta_name(k);
  }
}

TEST(Gradient, VanishesAtExactMatch) {
  std::mt19937_64 g(4);
  const auto a = testing::random_ansatz(g);
  const ParamCircuit u = build_V(a).frozen();
  for (double x : gradient(u, a, CostMode::Analytic, 0, 0)) EXPECT_NEAR(x, 0.0, 1e-8);
}

TEST(Gradient, CountsCircuits) {
  const ParamCircuit u = trotter_step_circuit(IsingParams{});
  std::mt19937_64 g(5);
  const auto a = testing::random_ansatz(g);
  for (const auto* ev : {new CostEvaluator(CostEvaluator::analytic()), new CostEvaluator(CostEvaluator::sampled(100))}) {
    gradient(u, a, *ev, 1);
    EXPECT_EQ(ev->circuits_executed(), 156u);
    delete ev;
  }
}

TEST(Gradient, SampledIsDeterministicAndClose) {
  const ParamCircuit u = trotter_step_circuit(IsingParams{});
  std::mt19937_64 g(6);
  const auto a = testing::random_ansatz(g);
  const auto g1 = gradient(u, a, CostMode::Sampled, 8000, 42);
  EXPECT_EQ(g1, gradient(u, a, CostMode::Sampled, 8000, 42));
  const auto exact = gradient(u, a, CostMode::Analytic, 0, 0);
  EXPECT_LT(gradient_angle(g1, exact), 30.0);
}

TEST(InitParams, ReachesToleranceDeterministically) {
  const IsingParams p;
  const auto r = init_params(p, 7);
  IsingParams free_field = p;
  free_field.J = 0;
  EXPECT_LE(cost_analytic(trotter_step_circuit(free_field), build_V(r.ansatz)).value, 1e-3);
  EXPECT_EQ(init_params(p, 7).ansatz, r.ansatz);
}

TEST(InitParams, WMapsBasisIntoFreeFieldEigenspaces) {
  // U0 = exp(-i B dt (X1 + X2)) has eigenvalues exp(-2i B dt), 1 (twice),
  // exp(2i B dt) on the +-X product basis. Each W|b> must lie in the
  // eigenspace selected by the matching learned eigenvalue d_b.
  IsingParams p;
  const auto a = init_params(p, 8).ansatz;
  p.J = 0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(build_hamiltonian(p));
  const CMatrix w = unitary_of(build_W(a.theta));
  const auto d = diagonal_of_D(a.gamma);
  const auto cmp = eigenvalue_error(unitary_spectrum(exact_evolution(build_hamiltonian(p), p.dt)),
                                    Spectrum4{d[0], d[1], d[2], d[3]});
  const Complex phase = std::polar(1.0, cmp.best_phase);
  for (int b = 0; b < 4; ++b) {
    // Target eigenvalue of U0 for this column.
    const Complex lam = phase * d[b];
    double proj = 0;
    for (int k = 0; k < 4; ++k) {
      const Complex mu = std::polar(1.0, -es.eigenvalues()[k] * p.dt);
      if (std::abs(mu - lam) < 0.1) proj += std::norm(es.eigenvectors().col(k).dot(w.col(b)));
    }
    EXPECT_GE(proj, 0.99) << "column " << b;
  }
}

TEST(InitParams, FailureReportsBest) {
  InitOptions opts;
  opts.max_steps = 0;
  opts.restarts = 2;
  opts.tolerance = 1e-12;
  try {
    init_params(IsingParams{}, 1, opts);
    FAIL() << "expected NumericalFailure";
  } catch (const NumericalFailure& e) {
    EXPECT_GT(e.best_cost(), 1e-12);
    EXPECT_NE(std::string(e.what()).find("best"), std::string::npos);
  }
}

TEST(Train, ZeroRateKeepsParameters) {
  const ParamCircuit u = trotter_step_circuit(IsingParams{});
  std::mt19937_64 g(9);
  const auto a = testing::random_ansatz(g);
  LearningSchedule s;
  s.eta0 = 0;
  s.n_steps = 3;
  TrainOptions o;
  o.shots = 8000;
  o.seed = 3;
  const auto tr = train(u, a, s, o);
  ASSERT_EQ(tr.rows.size(), 4u);
  for (const auto& r : tr.rows) {
    EXPECT_EQ(r.params, a.flat());
    EXPECT_EQ(r.ideal_cost, tr.rows[0].ideal_cost);
    EXPECT_NEAR(r.raw_cost, r.ideal_cost, 5 * std::sqrt(0.25 / 8000));
  }
  EXPECT_EQ(tr.final_ansatz, a);
}

TEST(Train, AnalyticRunConverges) {
  const IsingParams p;
  const auto a0 = init_params(p, 0).ansatz;
  TrainOptions o;
  o.analytic = true;
  const auto tr = train(trotter_step_circuit(p), a0, LearningSchedule{}, o);
  ASSERT_EQ(tr.rows.size(), 17u);
  EXPECT_LE(tr.rows.back().ideal_cost, 0.05);
  EXPECT_LT(tr.rows.back().eig_err, tr.rows.front().eig_err);
  for (const auto& r : tr.rows) {
    EXPECT_EQ(r.raw_cost, r.ideal_cost);
    EXPECT_EQ(r.grad_circuits, 156u);
    EXPECT_EQ(r.cost_circuits, 2u);
  }
  EXPECT_EQ(SpectralAnsatz::from_flat(tr.rows.back().params), tr.final_ansatz);
}

TEST(Train, StepUsesRecordedGradientAndRate) {
  const IsingParams p;
  std::mt19937_64 g(10);
  const auto a0 = testing::random_ansatz(g);
  LearningSchedule s;
  s.n_steps = 2;
  TrainOptions o;
  o.shots = 1000;
  const auto tr = train(trotter_step_circuit(p), a0, s, o);
  for (int j = 0; j < 2; ++j) {
    for (int i = 0; i < SpectralAnsatz::kNumParams; ++i) {
      EXPECT_DOUBLE_EQ(tr.rows[j + 1].params[i], tr.rows[j].params[i] - tr.rows[j].eta * tr.rows[j].grad[i]);
    }
  }
}

TEST(Train, NoisyRawCostAboveIdeal) {
  const IsingParams p;
  const auto a0 = init_params(p, 0).ansatz;
  const auto table = load_calibration_file(VFF_DATA_DIR "/calibration_4q.json");
  LearningSchedule s;
  s.n_steps = 2;
  TrainOptions o;
  o.shots = 8000;
  o.trajectories = 400;
  o.noise = NoiseModel::from_calibration(table, {0, 1, 2, 3});
  const auto tr = train(trotter_step_circuit(p), a0, s, o);
  for (const auto& r : tr.rows) EXPECT_GE(r.raw_cost, r.ideal_cost) << "step " << r.j;
}

TEST(Train, DeterministicTrace) {
  const IsingParams p;
  std::mt19937_64 g(11);
  const auto a0 = testing::random_ansatz(g);
  LearningSchedule s;
  s.n_steps = 3;
  TrainOptions o;
  o.shots = 2000;
  o.seed = 99;
  std::ostringstream x, y;
  write_trace_csv(x, train(trotter_step_circuit(p), a0, s, o));
  write_trace_csv(y, train(trotter_step_circuit(p), a0, s, o));
  EXPECT_EQ(x.str(), y.str());
  EXPECT_EQ(to_json(train(trotter_step_circuit(p), a0, s, o)).dump(),
            to_json(train(trotter_step_circuit(p), a0, s, o)).dump());
}

TEST(Train, CsvLayout) {
  LearningSchedule s;
  s.n_steps = 1;
  TrainOptions o;
  o.analytic = true;
  std::ostringstream os;
  write_trace_csv(os, train(trotter_step_circuit(IsingParams{}), SpectralAnsatz{}, s, o));
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  EXPECT_EQ(header.rfind("j,eta,raw_cost,ideal_cost,theta_1,", 0), 0u);
  EXPECT_NE(header.find(",gamma_3,grad_theta_1,"), std::string::npos);
  EXPECT_NE(header.find(",grad_gamma_3,frob_uv,eig_err,grad_angle_deg,grad_circuits"), std::string::npos);
  int rows = 0;
  while (std::getline(is, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), std::count(header.begin(), header.end(), ','));
  }
  EXPECT_EQ(rows, 2);
}

}  // namespace
}  // namespace vff

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
#include <atomic>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "vff/ansatz.hpp"
#include "vff/lhst.hpp"
#include "vff/model.hpp"
#include "vff/noise.hpp"

namespace vff {

/// Raised when an optimization cannot meet its postcondition.
class NumericalFailure : public std::runtime_error {
 public:
  NumericalFailure(const std::string& what, double best_cost)
      : std::runtime_error(what), best_cost_(best_cost) {}
  double best_cost() const { return best_cost_; }

 private:
  double best_cost_;
};

/// eta(j) = eta0 / (1 + j / delta)^kappa.
struct LearningSchedule {
  double eta0 = 1.1;
  double kappa = 0.5;
  double delta = 12.0;
  int n_steps = 16;

  double eta(int j) const;
  void validate() const;
};

using GradientVector = std::array<double, SpectralAnsatz::kNumParams>;

/// Evaluates the cost for (U, V) and counts executed circuits (two per
/// evaluation). Thread-safe; not copyable because of the counter.
class CostEvaluator {
 public:
  static CostEvaluator analytic();
  static CostEvaluator sampled(std::uint64_t shots);
  static CostEvaluator noisy(NoiseModel model, std::uint64_t shots, std::uint64_t trajectories);

  CostEvaluator(const CostEvaluator&) = delete;
  CostEvaluator& operator=(const CostEvaluator&) = delete;
  CostEvaluator(CostEvaluator&& other) noexcept;

  CostEstimate operator()(const ParamCircuit& u, const ParamCircuit& v, std::uint64_t seed) const;

  CostMode mode() const { return mode_; }
  std::uint64_t shots() const { return shots_; }
  std::uint64_t circuits_executed() const { return counter_.load(); }
  void reset_counter() { counter_.store(0); }

 private:
  CostEvaluator(CostMode mode, std::uint64_t shots, std::optional<NoiseModel> noise,
                std::uint64_t trajectories);

  CostMode mode_;
  std::uint64_t shots_;
  std::optional<NoiseModel> noise_;
  std::uint64_t trajectories_;
  mutable std::atomic<std::uint64_t> counter_{0};
};

/// One shifted-cost pair of the parameter-shift rule.
struct ShiftTerm {
  int param;       // flat index (theta_1..theta_18, gamma_1..gamma_3)
  int occurrence;  // occurrence id in build_V
  double sign;     // d(effective angle) / d(parameter)
};

/// All (parameter, occurrence) terms of build_V in flat-parameter order:
/// two per theta (W and W^dagger), one per gamma. 39 terms, 78 evaluations.
std::vector<ShiftTerm> shift_terms(const ParamCircuit& v);

/// Parameter-shift gradient of the cost with respect to the 21 ansatz
/// parameters. For each occurrence o of a parameter the effective angle is
/// shifted by +pi/2 and -pi/2 and the term sign_o * (C+ - C-) / 2 is
/// accumulated. Evaluation t of the term list uses seed
/// Rng::derive(seed, {t, 0}) for +pi/2 and Rng::derive(seed, {t, 1}) for
/// -pi/2. Evaluations run in parallel; the sum is taken in term order.
GradientVector gradient(const ParamCircuit& u, const SpectralAnsatz& a,
                        const CostEvaluator& evaluator, std::uint64_t seed);

GradientVector gradient(const ParamCircuit& u, const SpectralAnsatz& a, CostMode mode,
                        std::uint64_t shots, std::uint64_t seed);

struct InitOptions {
  int max_steps = 500;
  int restarts = 10;
  /// Starting angles are uniform in [-init_scale, init_scale].
  double init_scale = kPi;
  /// Postcondition on the J = 0 cost.
  double tolerance = 1e-3;
  /// Inner loop stops early once the cost falls below this.
  double converged_cost = 1e-12;
};

struct InitResult {
  SpectralAnsatz ansatz;
  double cost = 1.0;
  int restarts_used = 0;
  int steps = 0;
};

/// Learns the decomposition of the J = 0 Trotter step (a product of X
/// rotations) by gradient descent on the analytic cost, restarting from
/// fresh random angles until the cost is within tolerance. Throws
/// NumericalFailure carrying the best cost when every restart fails.
InitResult init_params(const IsingParams& p, std::uint64_t seed, const InitOptions& opts = {});

struct TrainOptions {
  std::uint64_t shots = 8000;
  std::uint64_t seed = 0;
  bool analytic = false;
  std::optional<NoiseModel> noise;  // over the four test-circuit qubits
  std::uint64_t trajectories = 2000;
};

struct TraceRow {
  int j = 0;
  double eta = 0.0;
  double raw_cost = 0.0;
  double ideal_cost = 0.0;
  std::array<double, SpectralAnsatz::kNumParams> params{};
  GradientVector grad{};
  double frob_uv = 0.0;
  double eig_err = 0.0;
  double grad_angle_deg = 0.0;  // NaN when either gradient vanishes
  std::uint64_t grad_circuits = 0;
  std::uint64_t cost_circuits = 0;
};

struct TrainingTrace {
  std::vector<TraceRow> rows;
  SpectralAnsatz final_ansatz;
};

/// Gradient descent for sched.n_steps updates. Row j holds the parameters
/// before update j, the measured (raw) cost and gradient there, the
/// noise-free cost and metrics as a classical side channel, and eta(j).
/// The last row (j = n_steps) records the final parameters; no update
/// follows it.
TrainingTrace train(const ParamCircuit& u, const SpectralAnsatz& a0, const LearningSchedule& sched,
                    const TrainOptions& opts);

/// Column order: j, eta, raw_cost, ideal_cost, theta_1..theta_18,
/// gamma_1..gamma_3, grad_theta_1..grad_theta_18, grad_gamma_1..grad_gamma_3,
/// frob_uv, eig_err, grad_angle_deg, grad_circuits.
void write_trace_csv(std::ostream& os, const TrainingTrace& trace);
nlohmann::json to_json(const TrainingTrace& trace);

}  // namespace vff

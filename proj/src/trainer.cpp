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

#include "vff/trainer.hpp"

#include <cmath>
#include <limits>

#include "vff/circuit_io.hpp"
#include "vff/metrics.hpp"
#include "vff/rng.hpp"

namespace vff {

double LearningSchedule::eta(int j) const {
  return eta0 / std::pow(1.0 + static_cast<double>(j) / delta, kappa);
}

void LearningSchedule::validate() const {
  if (!(eta0 >= 0.0) || !std::isfinite(eta0)) throw std::invalid_argument("eta0 must be >= 0");
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be >= 0");
  if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("delta must be > 0");
  if (n_steps < 0) throw std::invalid_argument("steps must be >= 0");
}

CostEvaluator::CostEvaluator(CostMode mode, std::uint64_t shots, std::optional<NoiseModel> noise,
                             std::uint64_t trajectories)
    : mode_(mode), shots_(shots), noise_(std::move(noise)), trajectories_(trajectories) {}

CostEvaluator::CostEvaluator(CostEvaluator&& other) noexcept
    : mode_(other.mode_),
      shots_(other.shots_),
      noise_(std::move(other.noise_)),
      trajectories_(other.trajectories_),
      counter_(other.counter_.load()) {}

CostEvaluator CostEvaluator::analytic() { return {CostMode::Analytic, 0, std::nullopt, 0}; }

CostEvaluator CostEvaluator::sampled(std::uint64_t shots) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  return {CostMode::Sampled, shots, std::nullopt, 0};
}

CostEvaluator CostEvaluator::noisy(NoiseModel model, std::uint64_t shots,
                                   std::uint64_t trajectories) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (trajectories == 0) throw std::invalid_argument("trajectories must be >= 1");
  if (model.n_qubits() < 4) throw std::invalid_argument("noise model must cover 4 qubits");
  return {CostMode::Sampled, shots, std::move(model), trajectories};
}

CostEstimate CostEvaluator::operator()(const ParamCircuit& u, const ParamCircuit& v,
                                       std::uint64_t seed) const {
  counter_.fetch_add(2);
  if (mode_ == CostMode::Analytic) return cost_analytic(u, v);
  if (noise_) return noisy_cost(u, v, *noise_, shots_, seed, trajectories_);
  return cost_sampled(u, v, shots_, seed);
}

std::vector<ShiftTerm> shift_terms(const ParamCircuit& v) {
  std::vector<ShiftTerm> terms;
  for (int i = 0; i < SpectralAnsatz::kNumParams; ++i) {
    for (int occ : v.occurrences_of(param_name(i))) {
      const auto& ref = std::get<ParamRef>(v.occurrence(occ).angle);
      terms.push_back({i, occ, ref.sign});
    }
  }
  return terms;
}

GradientVector gradient(const ParamCircuit& u, const SpectralAnsatz& a,
                        const CostEvaluator& evaluator, std::uint64_t seed) {
  const ParamCircuit v = build_V(a);
  const auto terms = shift_terms(v);
  const auto n = static_cast<std::int64_t>(terms.size());
  std::vector<double> diff(terms.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t t = 0; t < n; ++t) {
    const auto& term = terms[static_cast<std::size_t>(t)];
    const auto ut = static_cast<std::uint64_t>(t);
    const double plus =
        evaluator(u, v.shift_occurrence(term.occurrence, kPi / 2), Rng::derive(seed, {ut, 0})).value;
    const double minus =
        evaluator(u, v.shift_occurrence(term.occurrence, -kPi / 2), Rng::derive(seed, {ut, 1})).value;
    diff[static_cast<std::size_t>(t)] = term.sign * 0.5 * (plus - minus);
  }
  GradientVector g{};
  for (std::size_t t = 0; t < terms.size(); ++t) g[terms[t].param] += diff[t];
  return g;
}

GradientVector gradient(const ParamCircuit& u, const SpectralAnsatz& a, CostMode mode,
                        std::uint64_t shots, std::uint64_t seed) {
  const CostEvaluator ev =
      mode == CostMode::Analytic ? CostEvaluator::analytic() : CostEvaluator::sampled(shots);
  return gradient(u, a, ev, seed);
}

namespace {

SpectralAnsatz step(const SpectralAnsatz& a, const GradientVector& g, double eta) {
  auto p = a.flat();
  for (std::size_t i = 0; i < p.size(); ++i) p[i] -= eta * g[i];
  return SpectralAnsatz::from_flat(p);
}

}  // namespace

InitResult init_params(const IsingParams& p, std::uint64_t seed, const InitOptions& opts) {
  IsingParams free_field = p;
  free_field.J = 0.0;
  const ParamCircuit target = trotter_step_circuit(free_field);
  const LearningSchedule sched;
  const CostEvaluator ev = CostEvaluator::analytic();

  InitResult best;
  best.cost = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(Rng::derive(seed, {0x1417, static_cast<std::uint64_t>(r)}));
    std::array<double, SpectralAnsatz::kNumParams> x{};
    for (auto& v : x) v = opts.init_scale * (2.0 * rng.uniform() - 1.0);
    SpectralAnsatz a = SpectralAnsatz::from_flat(x);

    double cost = cost_analytic(target, build_V(a)).value;
    int steps = 0;
    for (; steps < opts.max_steps && cost > opts.converged_cost; ++steps) {
      a = step(a, gradient(target, a, ev, 0), sched.eta(steps));
      cost = cost_analytic(target, build_V(a)).value;
    }
    if (cost < best.cost) best = {a, cost, r + 1, steps};
    if (best.cost <= opts.tolerance) return best;
  }
  throw NumericalFailure("J = 0 initialization did not reach cost <= " +
                             format_double(opts.tolerance) + " (best " +
                             format_double(best.cost) + ")",
                         best.cost);
}

TrainingTrace train(const ParamCircuit& u, const SpectralAnsatz& a0, const LearningSchedule& sched,
                    const TrainOptions& opts) {
  sched.validate();
  const CostEvaluator measured =
      opts.analytic ? CostEvaluator::analytic()
      : opts.noise  ? CostEvaluator::noisy(*opts.noise, opts.shots, opts.trajectories)
                    : CostEvaluator::sampled(opts.shots);
  const CostEvaluator exact = CostEvaluator::analytic();
  const CMatrix u_mat = unitary_of(u);
  const Spectrum4 exact_spectrum = unitary_spectrum(u_mat);

  TrainingTrace trace;
  SpectralAnsatz a = a0;
  for (int j = 0; j <= sched.n_steps; ++j) {
    const auto uj = static_cast<std::uint64_t>(j);
    TraceRow row;
    row.j = j;
    row.eta = sched.eta(j);
    row.params = a.flat();

    const ParamCircuit v = build_V(a);
    const std::uint64_t before = measured.circuits_executed();
    row.raw_cost = measured(u, v, Rng::derive(opts.seed, {uj, 0})).value;
    row.cost_circuits = measured.circuits_executed() - before;
    row.grad = gradient(u, a, measured, Rng::derive(opts.seed, {uj, 1}));
    row.grad_circuits = measured.circuits_executed() - before - row.cost_circuits;

    row.ideal_cost = opts.analytic ? row.raw_cost : exact(u, v, 0).value;
    const GradientVector g_exact = opts.analytic ? row.grad : gradient(u, a, exact, 0);
    try {
      row.grad_angle_deg = gradient_angle(row.grad, g_exact);
    } catch (const std::domain_error&) {
      row.grad_angle_deg = std::numeric_limits<double>::quiet_NaN();
    }
    row.frob_uv = frobenius_phase_distance(u_mat, unitary_of(v)).distance;
    const auto d = diagonal_of_D(a.gamma);
    row.eig_err = eigenvalue_error(exact_spectrum, Spectrum4{d[0], d[1], d[2], d[3]}).distance;

    trace.rows.push_back(row);
    if (j < sched.n_steps) a = step(a, row.grad, row.eta);
  }
  trace.final_ansatz = a;
  return trace;
}

void write_trace_csv(std::ostream& os, const TrainingTrace& trace) {
  os << "j,eta,raw_cost,ideal_cost";
  for (int i = 0; i < SpectralAnsatz::kNumParams; ++i) os << ',' << param_name(i);
  for (int i = 0; i < SpectralAnsatz::kNumParams; ++i) os << ",grad_" << param_name(i);
  os << ",frob_uv,eig_err,grad_angle_deg,grad_circuits\n";
  for (const auto& r : trace.rows) {
    os << r.j << ',' << format_double(r.eta) << ',' << format_double(r.raw_cost) << ','
       << format_double(r.ideal_cost);
    for (double x : r.params) os << ',' << format_double(x);
    for (double x : r.grad) os << ',' << format_double(x);
    os << ',' << format_double(r.frob_uv) << ',' << format_double(r.eig_err) << ','
       << format_double(r.grad_angle_deg) << ',' << r.grad_circuits << '\n';
  }
}

nlohmann::json to_json(const TrainingTrace& trace) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : trace.rows) {
    nlohmann::json row{{"j", r.j},
                       {"eta", r.eta},
                       {"raw_cost", r.raw_cost},
                       {"ideal_cost", r.ideal_cost},
                       {"params", r.params},
                       {"grad", r.grad},
                       {"frob_uv", r.frob_uv},
                       {"eig_err", r.eig_err},
                       {"grad_circuits", r.grad_circuits},
                       {"cost_circuits", r.cost_circuits}};
    // JSON has no NaN; an undefined angle is null.
    row["grad_angle_deg"] =
        std::isnan(r.grad_angle_deg) ? nlohmann::json(nullptr) : nlohmann::json(r.grad_angle_deg);
    rows.push_back(std::move(row));
  }
  return nlohmann::json{{"rows", rows}, {"final_ansatz", to_json(trace.final_ansatz)}};
}

}  // namespace vff

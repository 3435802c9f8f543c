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

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "vff/metrics.hpp"
#include "vff/trainer.hpp"

namespace vff {

/// Invalid or unreadable configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// End-to-end experiment settings. Every JSON key is optional; the defaults
/// are the reproduction values.
///
///   {"ising":    {"n_spins", "J", "B", "dt"},
///    "schedule": {"eta0", "kappa", "delta", "steps"},
///    "init":     {"max_steps", "restarts", "init_scale", "tolerance"},
///    "shots", "seed", "analytic", "trajectories", "noise", "output_dir",
///    "times", "dump_circuits", "lhst_physical_qubits", "ff_physical_qubits"}
struct ExperimentConfig {
  IsingParams ising;
  LearningSchedule schedule;
  InitOptions init;
  std::uint64_t shots = 8000;
  std::uint64_t seed = 0;
  bool analytic = false;
  std::uint64_t trajectories = 2000;
  std::optional<std::string> noise;
  std::string output_dir = "out";
  /// Empty means default_times(ising.dt).
  std::vector<double> times;
  bool dump_circuits = false;
  std::vector<int> lhst_physical_qubits{0, 1, 2, 3};
  std::vector<int> ff_physical_qubits{1, 2};

  std::vector<double> effective_times() const;
  /// Throws ConfigError naming the offending key.
  void validate() const;
};

/// k * 8 * dt for k = 0..12.
std::vector<double> default_times(double dt);

/// Unknown keys and wrong types are ConfigErrors.
ExperimentConfig config_from_json(const nlohmann::json& doc);
/// Effective configuration with the time list written out.
nlohmann::json to_json(const ExperimentConfig& cfg);
/// Parse errors report the line and column.
ExperimentConfig load_config_file(const std::string& path);

/// Noise model over the four test-circuit qubits, if a calibration is set.
std::optional<NoiseModel> training_noise(const ExperimentConfig& cfg);
/// Noise model over the two fast-forward qubits, if a calibration is set.
std::optional<NoiseModel> fast_forward_noise(const ExperimentConfig& cfg);

struct TrainRun {
  InitResult init;
  TrainingTrace trace;
};

/// init_params followed by train. Propagates NumericalFailure.
TrainRun run_training(const ExperimentConfig& cfg);

/// trace.csv, trace.json, ansatz.json and, with dump_circuits, circuits.txt.
void write_training_outputs(const ExperimentConfig& cfg, const TrainRun& run);

struct FidelityRow {
  double t = 0.0;
  double vff_ideal = 0.0;
  /// Empty when t is not an integer multiple of dt.
  std::optional<double> trotter_ideal;
  std::optional<double> vff_noisy;
  std::optional<double> trotter_noisy;
};

/// Fidelity of VFF and Trotterized evolution of |+>|+> against
/// exp(-iHt)|+>|+> at each configured time. Noisy columns are filled when a
/// calibration is configured; row r uses streams derive(seed, {r, 0}) for
/// VFF and derive(seed, {r, 1}) for Trotter.
std::vector<FidelityRow> run_fast_forward(const ExperimentConfig& cfg, const SpectralAnsatz& a);

/// Columns: t, fidelity_vff_ideal, fidelity_trotter_ideal and, when
/// `noisy`, fidelity_vff_noisy, fidelity_trotter_noisy.
void write_fidelity_csv(std::ostream& os, const std::vector<FidelityRow>& rows, bool noisy);

struct SpectrumReport {
  SpectrumComparison comparison;
  /// sum_i |exact_i - e^{i phi} learned_{chi(i)}|^2, evaluated directly.
  double direct_sum_squares = 0.0;
  double frob_uv = 0.0;
  double ideal_cost = 0.0;
};

SpectrumReport spectrum_report(const IsingParams& p, const SpectralAnsatz& a);
nlohmann::json to_json(const SpectrumReport& r);

}  // namespace vff

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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "vff/circuit.hpp"
#include "vff/lhst.hpp"
#include "vff/rng.hpp"

namespace vff {

struct QubitCalibration {
  int id = 0;
  double t1_us = 0.0;
  double t2_us = 0.0;
  double spam = 0.0;  // mean readout misclassification (T(0|1) + T(1|0)) / 2
  double u2_error = 0.0;
};

struct CnotCalibration {
  int control = 0;
  int target = 0;
  double error = 0.0;
};

/// Device calibration snapshot. T1/T2 are carried as metadata only.
struct CalibrationTable {
  std::vector<QubitCalibration> qubits;  // sorted by id, ids 0..n-1
  std::vector<CnotCalibration> cnots;

  const QubitCalibration& qubit(int id) const;
  std::optional<double> cnot_error(int control, int target) const;
  double mean_cnot_error() const;
};

double spam_from_asymmetric(double p0_given_1, double p1_given_0);

/// Parses
///   {"qubits": [{"id", "t1_us", "t2_us", "spam", "u2_error",
///                optional "p0_given_1", "p1_given_0"}...],
///    "cnot":   [{"pair": [control, target], "error"}...]}
/// When both asymmetric readout rates are present, spam is recomputed from
/// them (and must agree with an explicit "spam" within 1e-9). Throws
/// std::invalid_argument on malformed input, missing qubit rows or
/// probabilities outside [0, 1].
CalibrationTable load_calibration(const nlohmann::json& doc);
CalibrationTable load_calibration_file(const std::string& path);

/// Gate-level depolarizing and readout-flip noise over the logical qubits
/// of a circuit.
///
/// A gate with depolarizing probability p is followed, with probability p,
/// by a Pauli drawn uniformly from all 4^k Paulis on its k qubits
/// (identity included), which averages to rho -> (1 - p) rho + p I / 2^k.
struct NoiseModel {
  std::vector<double> one_qubit_error;  // RX, RY, P, H
  std::vector<double> readout_error;
  std::map<std::pair<int, int>, double> cnot_error;  // directed (control, target)
  /// Used for pairs with no calibration entry.
  double default_cnot_error = 0.0;

  static NoiseModel ideal(int n_qubits);
  /// Logical qubit i takes the calibration of physical qubit physical[i].
  /// Uncalibrated pairs fall back to the mean calibrated CNOT error.
  static NoiseModel from_calibration(const CalibrationTable& table,
                                     const std::vector<int>& physical);

  int n_qubits() const { return static_cast<int>(one_qubit_error.size()); }
  /// All probabilities multiplied by `factor`, clamped to [0, 1].
  NoiseModel scaled(double factor) const;
  bool noiseless() const;

  double two_qubit_cnot_error(int control, int target) const;
  /// RZZ is charged as two CNOTs: 1 - (1 - p_cx)^2.
  double depolarizing_probability(const Gate& gate) const;
};

/// Applies the ideal gate, then a depolarizing event drawn from `rng`.
void apply_noise(StateVector& state, const Gate& gate, const NoiseModel& model, Rng& rng);

StateVector run_trajectory(const ParamCircuit& circ, StateVector input, const NoiseModel& model,
                           Rng& rng);

/// Readout: each measured bit flips with its qubit's readout error.
std::uint32_t apply_readout(std::uint32_t bits, std::span<const int> qubits,
                            const NoiseModel& model, Rng& rng);

/// Shot-sampled cost under trajectory noise. Shots are spread as evenly as
/// possible over min(trajectories, shots) trajectories; trajectory i of
/// circuit j uses stream Rng::derive(seed, {j, i}).
CostEstimate noisy_cost(const ParamCircuit& u, const ParamCircuit& v, const NoiseModel& model,
                        std::uint64_t shots, std::uint64_t seed, std::uint64_t trajectories);

/// Mean over trajectories of |<target|psi_traj>|^2, i.e. <target|rho|target>
/// for the trajectory ensemble rho. No readout error.
double trajectory_fidelity(const ParamCircuit& circ, const StateVector& input,
                           const StateVector& target, const NoiseModel& model,
                           std::uint64_t trajectories, std::uint64_t seed);

/// Trajectory-averaged marginal distribution (no readout error).
std::vector<double> trajectory_probabilities(const ParamCircuit& circ, const NoiseModel& model,
                                             std::span<const int> qubits,
                                             std::uint64_t trajectories, std::uint64_t seed);

}  // namespace vff

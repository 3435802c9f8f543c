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

#include "vff/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace vff {

namespace {

double probability_field(const nlohmann::json& row, const char* key, const std::string& where) {
  if (!row.contains(key) || !row.at(key).is_number()) {
    throw std::invalid_argument(where + ": missing numeric '" + key + "'");
  }
  const double p = row.at(key).get<double>();
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::invalid_argument(where + ": '" + key + "' must be a probability in [0, 1]");
  }
  return p;
}

double positive_field(const nlohmann::json& row, const char* key, const std::string& where) {
  if (!row.contains(key) || !row.at(key).is_number()) {
    throw std::invalid_argument(where + ": missing numeric '" + key + "'");
  }
  const double v = row.at(key).get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(where + ": '" + key + "' must be > 0");
  return v;
}

constexpr Mat2 kPauliX{0.0, 1.0, 1.0, 0.0};
constexpr Mat2 kPauliY{0.0, Complex{0.0, -1.0}, Complex{0.0, 1.0}, 0.0};
constexpr Mat2 kPauliZ{1.0, 0.0, 0.0, -1.0};

void apply_pauli(StateVector& s, int qubit, unsigned which) {
  // which: 0 = I, 1 = X, 2 = Y, 3 = Z
  static const std::array<const Mat2*, 4> table{nullptr, &kPauliX, &kPauliY, &kPauliZ};
  if (which == 0) return;
  if (s.n_qubits() >= kParallelMinQubits) {
    kernels::omp::apply_1q(s.amplitudes(), s.n_qubits(), qubit, *table[which]);
  } else {
    kernels::serial::apply_1q(s.amplitudes(), s.n_qubits(), qubit, *table[which]);
  }
}

}  // namespace

const QubitCalibration& CalibrationTable::qubit(int id) const {
  if (id < 0 || id >= static_cast<int>(qubits.size())) {
    throw std::invalid_argument("no calibration row for qubit " + std::to_string(id));
  }
  return qubits[id];
}

std::optional<double> CalibrationTable::cnot_error(int control, int target) const {
  for (const auto& c : cnots) {
    if (c.control == control && c.target == target) return c.error;
  }
  return std::nullopt;
}

double CalibrationTable::mean_cnot_error() const {
  if (cnots.empty()) return 0.0;
  double acc = 0.0;
  for (const auto& c : cnots) acc += c.error;
  return acc / static_cast<double>(cnots.size());
}

double spam_from_asymmetric(double p0_given_1, double p1_given_0) {
  return 0.5 * (p0_given_1 + p1_given_0);
}

CalibrationTable load_calibration(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("qubits") || !doc.at("qubits").is_array()) {
    throw std::invalid_argument("calibration document needs a 'qubits' array");
  }
  CalibrationTable table;
  for (const auto& row : doc.at("qubits")) {
    if (!row.is_object() || !row.contains("id") || !row.at("id").is_number_integer()) {
      throw std::invalid_argument("qubit row needs an integer 'id'");
    }
    QubitCalibration q;
    q.id = row.at("id").get<int>();
    const std::string where = "qubit " + std::to_string(q.id);
    q.t1_us = positive_field(row, "t1_us", where);
    q.t2_us = positive_field(row, "t2_us", where);
    q.u2_error = probability_field(row, "u2_error", where);
    const bool asym = row.contains("p0_given_1") && row.contains("p1_given_0");
    if (asym) {
      q.spam = spam_from_asymmetric(probability_field(row, "p0_given_1", where),
                                    probability_field(row, "p1_given_0", where));
      if (row.contains("spam") &&
          std::abs(probability_field(row, "spam", where) - q.spam) > 1e-9) {
        throw std::invalid_argument(where + ": 'spam' disagrees with the asymmetric readout rates");
      }
    } else {
      q.spam = probability_field(row, "spam", where);
    }
    table.qubits.push_back(q);
  }
  std::sort(table.qubits.begin(), table.qubits.end(),
            [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < table.qubits.size(); ++i) {
    if (table.qubits[i].id != static_cast<int>(i)) {
      throw std::invalid_argument("qubit rows must cover ids 0.." +
                                  std::to_string(table.qubits.size() - 1) +
                                  " exactly once (missing or duplicate id near " +
                                  std::to_string(i) + ")");
    }
  }
  if (doc.contains("cnot")) {
    if (!doc.at("cnot").is_array()) throw std::invalid_argument("'cnot' must be an array");
    for (const auto& row : doc.at("cnot")) {
      if (!row.is_object() || !row.contains("pair") || !row.at("pair").is_array() ||
          row.at("pair").size() != 2) {
        throw std::invalid_argument("cnot row needs 'pair': [control, target]");
      }
      CnotCalibration c;
      c.control = row.at("pair")[0].get<int>();
      c.target = row.at("pair")[1].get<int>();
      const std::string where = "cnot " + std::to_string(c.control) + "," + std::to_string(c.target);
      if (c.control == c.target) throw std::invalid_argument(where + ": control equals target");
      table.qubit(c.control);
      table.qubit(c.target);
      c.error = probability_field(row, "error", where);
      table.cnots.push_back(c);
    }
  }
  return table;
}

CalibrationTable load_calibration_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open calibration file '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return load_calibration(doc);
}

NoiseModel NoiseModel::ideal(int n_qubits) {
  NoiseModel m;
  m.one_qubit_error.assign(n_qubits, 0.0);
  m.readout_error.assign(n_qubits, 0.0);
  return m;
}

NoiseModel NoiseModel::from_calibration(const CalibrationTable& table,
                                        const std::vector<int>& physical) {
  NoiseModel m;
  for (int p : physical) {
    const auto& q = table.qubit(p);
    m.one_qubit_error.push_back(q.u2_error);
    m.readout_error.push_back(q.spam);
  }
  for (std::size_t a = 0; a < physical.size(); ++a) {
    for (std::size_t b = 0; b < physical.size(); ++b) {
      if (a == b) continue;
      if (auto e = table.cnot_error(physical[a], physical[b])) {
        m.cnot_error[{static_cast<int>(a), static_cast<int>(b)}] = *e;
      }
    }
  }
  m.default_cnot_error = table.mean_cnot_error();
  return m;
}

NoiseModel NoiseModel::scaled(double factor) const {
  if (!(factor >= 0.0)) throw std::invalid_argument("noise scale must be >= 0");
  const auto f = [factor](double p) { return std::clamp(p * factor, 0.0, 1.0); };
  NoiseModel m = *this;
  for (auto& p : m.one_qubit_error) p = f(p);
  for (auto& p : m.readout_error) p = f(p);
  for (auto& [k, p] : m.cnot_error) p = f(p);
  m.default_cnot_error = f(m.default_cnot_error);
  return m;
}

bool NoiseModel::noiseless() const {
  const auto zero = [](double p) { return p == 0.0; };
  return std::all_of(one_qubit_error.begin(), one_qubit_error.end(), zero) &&
         std::all_of(readout_error.begin(), readout_error.end(), zero) &&
         std::all_of(cnot_error.begin(), cnot_error.end(),
                     [](const auto& kv) { return kv.second == 0.0; }) &&
         default_cnot_error == 0.0;
}

double NoiseModel::two_qubit_cnot_error(int control, int target) const {
  const auto it = cnot_error.find({control, target});
  return it != cnot_error.end() ? it->second : default_cnot_error;
}

double NoiseModel::depolarizing_probability(const Gate& gate) const {
  const int q0 = gate.qubits[0];
  if (q0 < 0 || q0 >= n_qubits()) {
    throw std::invalid_argument("noise model does not cover qubit " + std::to_string(q0));
  }
  switch (gate.kind) {
    case GateKind::CNOT:
      return two_qubit_cnot_error(q0, gate.qubits[1]);
    case GateKind::RZZ: {
      const double p = two_qubit_cnot_error(q0, gate.qubits[1]);
      return 1.0 - (1.0 - p) * (1.0 - p);
    }
    default:
      return one_qubit_error[q0];
  }
}

void apply_noise(StateVector& state, const Gate& gate, const NoiseModel& model, Rng& rng) {
  state.apply(gate);
  const double p = model.depolarizing_probability(gate);
  if (p <= 0.0 || rng.uniform() >= p) return;
  const int arity = gate_arity(gate.kind);
  const auto which = static_cast<unsigned>(rng.uniform_index(arity == 2 ? 16 : 4));
  if (arity == 2) {
    apply_pauli(state, gate.qubits[0], which >> 2);
    apply_pauli(state, gate.qubits[1], which & 3u);
  } else {
    apply_pauli(state, gate.qubits[0], which);
  }
}

StateVector run_trajectory(const ParamCircuit& circ, StateVector input, const NoiseModel& model,
                           Rng& rng) {
  if (input.n_qubits() != circ.n_qubits()) throw std::invalid_argument("state/circuit width mismatch");
  if (model.n_qubits() < circ.n_qubits()) {
    throw std::invalid_argument("noise model covers fewer qubits than the circuit");
  }
  for (const auto& g : circ.resolved()) apply_noise(input, g, model, rng);
  return input;
}

std::uint32_t apply_readout(std::uint32_t bits, std::span<const int> qubits,
                            const NoiseModel& model, Rng& rng) {
  const std::size_t k = qubits.size();
  for (std::size_t j = 0; j < k; ++j) {
    const double eps = model.readout_error[qubits[j]];
    if (eps > 0.0 && rng.uniform() < eps) bits ^= 1u << (k - 1 - j);
  }
  return bits;
}

CostEstimate noisy_cost(const ParamCircuit& u, const ParamCircuit& v, const NoiseModel& model,
                        std::uint64_t shots, std::uint64_t seed, std::uint64_t trajectories) {
  if (shots == 0) throw std::invalid_argument("shots must be >= 1");
  if (trajectories == 0) throw std::invalid_argument("trajectories must be >= 1");
  const auto circuits = build_lhst_circuits(u, v);
  const std::uint64_t n_traj = std::min(trajectories, shots);
  std::array<double, 2> pr{};
  for (int j = 0; j < 2; ++j) {
    const auto q = lhst_measured_qubits(j);
    std::vector<std::uint64_t> zeros(n_traj, 0);
    const auto n = static_cast<std::int64_t>(n_traj);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::int64_t i = 0; i < n; ++i) {
      const auto ui = static_cast<std::uint64_t>(i);
      Rng rng(Rng::derive(seed, {static_cast<std::uint64_t>(j), ui}));
      const StateVector out = run_trajectory(circuits[j], StateVector::zero(4), model, rng);
      const auto cdf = cumulative(probabilities(out, q));
      const std::uint64_t my_shots = shots / n_traj + (ui < shots % n_traj ? 1 : 0);
      std::uint64_t z = 0;
      for (std::uint64_t s = 0; s < my_shots; ++s) {
        if (apply_readout(draw_outcome(cdf, rng), q, model, rng) == 0) ++z;
      }
      zeros[ui] = z;
    }
    std::uint64_t total = 0;
    for (auto z : zeros) total += z;
    pr[j] = static_cast<double>(total) / static_cast<double>(shots);
  }
  return make_estimate(pr[0], pr[1], CostMode::Sampled, shots, seed);
}

double trajectory_fidelity(const ParamCircuit& circ, const StateVector& input,
                           const StateVector& target, const NoiseModel& model,
                           std::uint64_t trajectories, std::uint64_t seed) {
  if (trajectories == 0) throw std::invalid_argument("trajectories must be >= 1");
  if (target.n_qubits() != circ.n_qubits()) throw std::invalid_argument("target width mismatch");
  std::vector<double> f(trajectories);
  const auto n = static_cast<std::int64_t>(trajectories);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng(Rng::derive(seed, {static_cast<std::uint64_t>(i)}));
    const StateVector out = run_trajectory(circ, input, model, rng);
    Complex overlap{};
    for (std::size_t k = 0; k < out.dim(); ++k) overlap += std::conj(target[k]) * out[k];
    f[static_cast<std::size_t>(i)] = std::norm(overlap);
  }
  double acc = 0.0;
  for (double x : f) acc += x;
  return acc / static_cast<double>(trajectories);
}

std::vector<double> trajectory_probabilities(const ParamCircuit& circ, const NoiseModel& model,
                                             std::span<const int> qubits,
                                             std::uint64_t trajectories, std::uint64_t seed) {
  if (trajectories == 0) throw std::invalid_argument("trajectories must be >= 1");
  const std::size_t k = std::size_t{1} << qubits.size();
  std::vector<double> per(trajectories * k);
  const auto n = static_cast<std::int64_t>(trajectories);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::int64_t i = 0; i < n; ++i) {
    Rng rng(Rng::derive(seed, {static_cast<std::uint64_t>(i)}));
    const StateVector out = run_trajectory(circ, StateVector::zero(circ.n_qubits()), model, rng);
    const auto p = probabilities(out, qubits);
    std::copy(p.begin(), p.end(), per.begin() + static_cast<std::ptrdiff_t>(i) * static_cast<std::ptrdiff_t>(k));
  }
  std::vector<double> mean(k, 0.0);
  for (std::uint64_t i = 0; i < trajectories; ++i) {
    for (std::size_t b = 0; b < k; ++b) mean[b] += per[i * k + b];
  }
  for (auto& m : mean) m /= static_cast<double>(trajectories);
  return mean;
}

}  // namespace vff

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


#include "vff/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "vff/circuit_io.hpp"

namespace vff {

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

std::string key_path(const std::string& where, const std::string& key) {
  return where.empty() ? key : where + "." + key;
}

void read(const json& obj, const std::string& where, const std::string& key, double& out) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(key_path(where, key) + ": expected a number");
  out = v.get<double>();
}

void read(const json& obj, const std::string& where, const std::string& key, int& out) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(key_path(where, key) + ": expected an integer");
  out = v.get<int>();
}

void read(const json& obj, const std::string& where, const std::string& key, std::uint64_t& out) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(key_path(where, key) + ": expected a non-negative integer");
  }
  out = v.get<std::uint64_t>();
}

void read(const json& obj, const std::string& where, const std::string& key, bool& out) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_boolean()) throw ConfigError(key_path(where, key) + ": expected true or false");
  out = v.get<bool>();
}

void read(const json& obj, const std::string& where, const std::string& key, std::string& out) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(key_path(where, key) + ": expected a string");
  out = v.get<std::string>();
}

template <class T>
void read_list(const json& obj, const std::string& key, std::vector<T>& out) {
  if (!obj.contains(key)) return;
  const auto& v = obj.at(key);
  if (!v.is_array()) throw ConfigError(key + ": expected an array");
  out.clear();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& e = v[i];
    const bool ok = std::is_integral_v<T> ? e.is_number_integer() : e.is_number();
    if (!ok) throw ConfigError(key + "[" + std::to_string(i) + "]: wrong type");
    out.push_back(e.get<T>());
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write " + path.string());
  os << text;
  if (!os) throw ConfigError("failed writing " + path.string());
}

bool is_step_multiple(double t, double dt, int& k) {
  const double ratio = t / dt;
  const double r = std::round(ratio);
  if (r < 0 || std::abs(ratio - r) > 1e-9 * std::max(1.0, std::abs(ratio))) return false;
  k = static_cast<int>(r);
  return true;
}

ParamCircuit prepared(const ParamCircuit& body) {
  ParamCircuit c(body.n_qubits());
  for (int q = 0; q < body.n_qubits(); ++q) c.add_gate(GateKind::H, {q});
  c.append(body);
  return c;
}

}  // namespace

std::vector<double> default_times(double dt) {
  std::vector<double> t;
  for (int k = 0; k <= 12; ++k) t.push_back(k * 8 * dt);
  return t;
}

std::vector<double> ExperimentConfig::effective_times() const {
  return times.empty() ? default_times(ising.dt) : times;
}

void ExperimentConfig::validate() const {
  try {
    vff::validate(ising);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("ising: ") + e.what());
  }
  try {
    schedule.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("schedule: ") + e.what());
  }
  if (ising.n_spins != 2) throw ConfigError("ising.n_spins: the spectral ansatz supports 2 spins");
  if (!std::isfinite(ising.J) || !std::isfinite(ising.B)) throw ConfigError("ising: J and B must be finite");
  if (shots == 0) throw ConfigError("shots: must be >= 1");
  if (trajectories == 0) throw ConfigError("trajectories: must be >= 1");
  if (init.max_steps < 0) throw ConfigError("init.max_steps: must be >= 0");
  if (init.restarts < 1) throw ConfigError("init.restarts: must be >= 1");
  if (!(init.tolerance > 0.0)) throw ConfigError("init.tolerance: must be > 0");
  if (!(init.init_scale >= 0.0) || !std::isfinite(init.init_scale)) {
    throw ConfigError("init.init_scale: must be finite and >= 0");
  }
  for (double t : times) {
    if (!std::isfinite(t)) throw ConfigError("times: entries must be finite");
  }
  if (lhst_physical_qubits.size() != 4) throw ConfigError("lhst_physical_qubits: need 4 entries");
  if (ff_physical_qubits.size() != 2) throw ConfigError("ff_physical_qubits: need 2 entries");
  if (output_dir.empty()) throw ConfigError("output_dir: must not be empty");
}

ExperimentConfig config_from_json(const json& doc) {
  ExperimentConfig c;
  check_keys(doc, "config",
             {"ising", "schedule", "init", "shots", "seed", "analytic", "trajectories", "noise",
              "output_dir", "times", "dump_circuits", "lhst_physical_qubits",
              "ff_physical_qubits"});
  if (doc.contains("ising")) {
    const auto& o = doc.at("ising");
    check_keys(o, "ising", {"n_spins", "J", "B", "dt"});
    read(o, "ising", "n_spins", c.ising.n_spins);
    read(o, "ising", "J", c.ising.J);
    read(o, "ising", "B", c.ising.B);
    read(o, "ising", "dt", c.ising.dt);
  }
  if (doc.contains("schedule")) {
    const auto& o = doc.at("schedule");
    check_keys(o, "schedule", {"eta0", "kappa", "delta", "steps"});
    read(o, "schedule", "eta0", c.schedule.eta0);
    read(o, "schedule", "kappa", c.schedule.kappa);
    read(o, "schedule", "delta", c.schedule.delta);
    read(o, "schedule", "steps", c.schedule.n_steps);
  }
  if (doc.contains("init")) {
    const auto& o = doc.at("init");
    check_keys(o, "init", {"max_steps", "restarts", "init_scale", "tolerance"});
    read(o, "init", "max_steps", c.init.max_steps);
    read(o, "init", "restarts", c.init.restarts);
    read(o, "init", "init_scale", c.init.init_scale);
    read(o, "init", "tolerance", c.init.tolerance);
  }
  read(doc, "", "shots", c.shots);
  read(doc, "", "seed", c.seed);
  read(doc, "", "analytic", c.analytic);
  read(doc, "", "trajectories", c.trajectories);
  if (doc.contains("noise") && !doc.at("noise").is_null()) {
    std::string path;
    read(doc, "", "noise", path);
    c.noise = path;
  }
  read(doc, "", "output_dir", c.output_dir);
  read_list(doc, "times", c.times);
  read(doc, "", "dump_circuits", c.dump_circuits);
  read_list(doc, "lhst_physical_qubits", c.lhst_physical_qubits);
  read_list(doc, "ff_physical_qubits", c.ff_physical_qubits);
  c.validate();
  return c;
}

json to_json(const ExperimentConfig& c) {
  return json{{"ising", {{"n_spins", c.ising.n_spins}, {"J", c.ising.J}, {"B", c.ising.B}, {"dt", c.ising.dt}}},
              {"schedule",
               {{"eta0", c.schedule.eta0},
                {"kappa", c.schedule.kappa},
                {"delta", c.schedule.delta},
                {"steps", c.schedule.n_steps}}},
              {"init",
               {{"max_steps", c.init.max_steps},
                {"restarts", c.init.restarts},
                {"init_scale", c.init.init_scale},
                {"tolerance", c.init.tolerance}}},
              {"shots", c.shots},
              {"seed", c.seed},
              {"analytic", c.analytic},
              {"trajectories", c.trajectories},
              {"noise", c.noise ? json(*c.noise) : json(nullptr)},
              {"output_dir", c.output_dir},
              {"times", c.effective_times()},
              {"dump_circuits", c.dump_circuits},
              {"lhst_physical_qubits", c.lhst_physical_qubits},
              {"ff_physical_qubits", c.ff_physical_qubits}};
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(doc);
}

std::optional<NoiseModel> training_noise(const ExperimentConfig& cfg) {
  if (!cfg.noise) return std::nullopt;
  try {
    return NoiseModel::from_calibration(load_calibration_file(*cfg.noise), cfg.lhst_physical_qubits);
  } catch (const std::exception& e) {
    throw ConfigError("noise: " + std::string(e.what()));
  }
}

std::optional<NoiseModel> fast_forward_noise(const ExperimentConfig& cfg) {
  if (!cfg.noise) return std::nullopt;
  try {
    return NoiseModel::from_calibration(load_calibration_file(*cfg.noise), cfg.ff_physical_qubits);
  } catch (const std::exception& e) {
    throw ConfigError("noise: " + std::string(e.what()));
  }
}

TrainRun run_training(const ExperimentConfig& cfg) {
  cfg.validate();
  TrainRun run;
  run.init = init_params(cfg.ising, cfg.seed, cfg.init);
  TrainOptions opts;
  opts.shots = cfg.shots;
  opts.seed = cfg.seed;
  opts.analytic = cfg.analytic;
  opts.noise = training_noise(cfg);
  opts.trajectories = cfg.trajectories;
  run.trace = train(trotter_step_circuit(cfg.ising), run.init.ansatz, cfg.schedule, opts);
  return run;
}

void write_training_outputs(const ExperimentConfig& cfg, const TrainRun& run) {
  const std::filesystem::path dir(cfg.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output dir " + dir.string() + ": " + ec.message());

  std::ostringstream csv;
  write_trace_csv(csv, run.trace);
  write_file(dir / "trace.csv", csv.str());
  json trace = to_json(run.trace);
  trace["init"] = {{"cost", run.init.cost},
                   {"restarts_used", run.init.restarts_used},
                   {"steps", run.init.steps},
                   {"ansatz", to_json(run.init.ansatz)}};
  write_file(dir / "trace.json", trace.dump(2) + "\n");
  write_file(dir / "ansatz.json", to_json(run.trace.final_ansatz).dump(2) + "\n");

  if (cfg.dump_circuits) {
    const ParamCircuit u = trotter_step_circuit(cfg.ising);
    const ParamCircuit v = build_V(run.trace.final_ansatz);
    const auto lhst = build_lhst_circuits(u, v);
    std::string text = "# target U\n" + to_text(u) + "\n# ansatz V\n" + to_text(v) +
                       "\n# test circuit, pair 1\n" + to_text(lhst[0]) +
                       "\n# test circuit, pair 2\n" + to_text(lhst[1]);
    write_file(dir / "circuits.txt", text);
  }
}

std::vector<FidelityRow> run_fast_forward(const ExperimentConfig& cfg, const SpectralAnsatz& a) {
  cfg.validate();
  const auto noise = fast_forward_noise(cfg);
  const CMatrix h = build_hamiltonian(cfg.ising);
  const StateVector psi0 = plus_state(2);
  const StateVector zero = StateVector::zero(2);
  const Eigen::Map<const Eigen::VectorXcd> psi0_vec(psi0.amplitudes().data(), 4);

  std::vector<FidelityRow> rows;
  const auto times = cfg.effective_times();
  for (std::size_t r = 0; r < times.size(); ++r) {
    const double t = times[r];
    const Eigen::VectorXcd exact = exact_evolution(h, t) * psi0_vec;
    const StateVector target(2, std::vector<Complex>(exact.data(), exact.data() + exact.size()));

    FidelityRow row;
    row.t = t;
    const ParamCircuit vff = build_V_fast_forward(a, t, cfg.ising.dt);
    row.vff_ideal = state_fidelity(run(vff, psi0), target);
    int k = 0;
    const bool has_trotter = is_step_multiple(t, cfg.ising.dt, k);
    std::optional<ParamCircuit> trotter;
    if (has_trotter) {
      trotter = trotterized_evolution(cfg.ising, k);
      row.trotter_ideal = state_fidelity(run(*trotter, psi0), target);
    }
    if (noise) {
      const auto ur = static_cast<std::uint64_t>(r);
      row.vff_noisy = trajectory_fidelity(prepared(vff), zero, target, *noise, cfg.trajectories,
                                          Rng::derive(cfg.seed, {ur, 0}));
      if (trotter) {
        row.trotter_noisy = trajectory_fidelity(prepared(*trotter), zero, target, *noise,
                                                cfg.trajectories, Rng::derive(cfg.seed, {ur, 1}));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_fidelity_csv(std::ostream& os, const std::vector<FidelityRow>& rows, bool noisy) {
  const auto cell = [](const std::optional<double>& x) { return x ? format_double(*x) : std::string(); };
  os << "t,fidelity_vff_ideal,fidelity_trotter_ideal";
  if (noisy) os << ",fidelity_vff_noisy,fidelity_trotter_noisy";
  os << '\n';
  for (const auto& r : rows) {
    os << format_double(r.t) << ',' << format_double(r.vff_ideal) << ',' << cell(r.trotter_ideal);
    if (noisy) os << ',' << cell(r.vff_noisy) << ',' << cell(r.trotter_noisy);
    os << '\n';
  }
}

SpectrumReport spectrum_report(const IsingParams& p, const SpectralAnsatz& a) {
  const ParamCircuit u = trotter_step_circuit(p);
  const CMatrix u_mat = unitary_of(u);
  const auto d = diagonal_of_D(a.gamma);
  SpectrumReport r;
  r.comparison = eigenvalue_error(unitary_spectrum(u_mat), Spectrum4{d[0], d[1], d[2], d[3]});
  const Complex phase = std::polar(1.0, r.comparison.best_phase);
  for (int i = 0; i < 4; ++i) {
    r.direct_sum_squares += std::norm(r.comparison.exact_eigenvalues[i] -
                                      phase * r.comparison.learned_eigenvalues[r.comparison.best_permutation[i]]);
  }
  const ParamCircuit v = build_V(a);
  r.frob_uv = frobenius_phase_distance(u_mat, unitary_of(v)).distance;
  r.ideal_cost = cost_analytic(u, v).value;
  return r;
}

json to_json(const SpectrumReport& r) {
  const auto complex_list = [](const Spectrum4& s) {
    json out = json::array();
    for (const auto& z : s) out.push_back({{"re", z.real()}, {"im", z.imag()}, {"phase", std::arg(z)}});
    return out;
  };
  return json{{"exact_eigenvalues", complex_list(r.comparison.exact_eigenvalues)},
              {"learned_diagonal", complex_list(r.comparison.learned_eigenvalues)},
              {"best_phase", r.comparison.best_phase},
              {"best_permutation", r.comparison.best_permutation},
              {"eigenvalue_error", r.comparison.distance},
              {"direct_sum_squares", r.direct_sum_squares},
              {"frob_uv", r.frob_uv},
              {"ideal_cost", r.ideal_cost}};
}

}  // namespace vff

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


// vff: train a spectral decomposition of the Ising Trotter step and use it
// to fast-forward the dynamics.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vff/circuit_io.hpp"
#include "vff/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> shots;
  std::optional<int> steps;
  std::optional<std::string> noise;
  std::optional<std::string> out;
  std::optional<std::uint64_t> trajectories;
  bool analytic = false;
  bool dump_circuits = false;
  bool print_config = false;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--shots", o.shots, "Shots per cost circuit");
  cmd->add_option("--steps", o.steps, "Gradient-descent steps");
  cmd->add_option("--noise", o.noise, "Calibration JSON enabling the noise model");
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--trajectories", o.trajectories, "Noise trajectories");
  cmd->add_flag("--analytic", o.analytic, "Exact probabilities instead of shots");
  cmd->add_flag("--dump-circuits", o.dump_circuits, "Write circuits.txt");
  cmd->add_flag("--print-config", o.print_config, "Print the effective config and exit");
}

vff::ExperimentConfig effective_config(const Overrides& o) {
  vff::ExperimentConfig c = o.config.empty() ? vff::ExperimentConfig{} : vff::load_config_file(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.shots) c.shots = *o.shots;
  if (o.steps) c.schedule.n_steps = *o.steps;
  if (o.noise) c.noise = *o.noise;
  if (o.out) c.output_dir = *o.out;
  if (o.trajectories) c.trajectories = *o.trajectories;
  if (o.analytic) c.analytic = true;
  if (o.dump_circuits) c.dump_circuits = true;
  c.validate();
  return c;
}

std::string read_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw vff::ConfigError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

vff::SpectralAnsatz load_ansatz(const std::string& path) {
  try {
    return vff::ansatz_from_json(nlohmann::json::parse(read_text(path)));
  } catch (const vff::ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw vff::ConfigError(path + ": " + e.what());
  }
}

vff::ParamCircuit load_circuit(const std::string& path) {
  try {
    return vff::circuit_from_text(read_text(path));
  } catch (const vff::ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw vff::ConfigError(path + ": " + e.what());
  }
}

std::string default_ansatz_path(const vff::ExperimentConfig& c) {
  return (std::filesystem::path(c.output_dir) / "ansatz.json").string();
}

int cmd_train(const vff::ExperimentConfig& c) {
  const auto run = vff::run_training(c);
  vff::write_training_outputs(c, run);
  const auto& last = run.trace.rows.back();
  std::cout << "init cost " << vff::format_double(run.init.cost) << ", final raw cost "
            << vff::format_double(last.raw_cost) << ", ideal cost "
            << vff::format_double(last.ideal_cost) << ", eigenvalue error "
            << vff::format_double(last.eig_err) << "\nwrote " << c.output_dir << "\n";
  return kExitOk;
}

int cmd_fast_forward(const vff::ExperimentConfig& c, const std::string& ansatz_path) {
  const auto a = load_ansatz(ansatz_path.empty() ? default_ansatz_path(c) : ansatz_path);
  for (double t : c.effective_times()) {
    double k = t / c.ising.dt;
    if (std::abs(k - std::round(k)) > 1e-9 * std::max(1.0, std::abs(k)) || k < 0) {
      std::cerr << "warning: t=" << vff::format_double(t)
                << " is not a non-negative multiple of dt; Trotter columns left empty\n";
    }
  }
  const auto rows = vff::run_fast_forward(c, a);
  std::filesystem::create_directories(c.output_dir);
  std::ostringstream csv;
  vff::write_fidelity_csv(csv, rows, c.noise.has_value());
  const auto path = std::filesystem::path(c.output_dir) / "fidelity.csv";
  std::ofstream os(path, std::ios::binary);
  if (!os) throw vff::ConfigError("cannot write " + path.string());
  os << csv.str();
  std::cout << csv.str();
  return kExitOk;
}

int cmd_spectrum(const vff::ExperimentConfig& c, const std::string& ansatz_path) {
  const auto a = load_ansatz(ansatz_path.empty() ? default_ansatz_path(c) : ansatz_path);
  std::cout << vff::to_json(vff::spectrum_report(c.ising, a)).dump(2) << "\n";
  return kExitOk;
}

int cmd_cost(const vff::ExperimentConfig& c, const std::string& target, const std::string& model) {
  const auto u = load_circuit(target);
  const auto v = load_circuit(model);
  if (u.n_qubits() != 2 || v.n_qubits() != 2) throw vff::ConfigError("cost: circuits must have 2 qubits");
  vff::CostEstimate est;
  if (c.analytic) {
    est = vff::cost_analytic(u, v);
  } else if (const auto noise = vff::training_noise(c)) {
    est = vff::noisy_cost(u, v, *noise, c.shots, c.seed, c.trajectories);
  } else {
    est = vff::cost_sampled(u, v, c.shots, c.seed);
  }
  auto out = vff::to_json(est);
  out["hst_global"] = vff::hst_global(u, v);
  std::cout << out.dump(2) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational spectral decomposition and fast-forwarding of a 2-spin Ising model"};
  app.require_subcommand(1);
  Overrides o;
  std::string ansatz_path, target_path, model_path;

  auto* train = app.add_subcommand("train", "Initialize and train; writes trace.csv, trace.json, ansatz.json");
  add_common(train, o);
  auto* ff = app.add_subcommand("fast-forward", "Compare VFF and Trotter fidelities; writes fidelity.csv");
  add_common(ff, o);
  ff->add_option("--ansatz", ansatz_path, "Learned ansatz JSON (default <out>/ansatz.json)");
  auto* spec = app.add_subcommand("spectrum", "Compare learned and exact eigenvalues of the Trotter step");
  add_common(spec, o);
  spec->add_option("--ansatz", ansatz_path, "Learned ansatz JSON (default <out>/ansatz.json)");
  auto* cost = app.add_subcommand("cost", "Evaluate the local test cost for two circuit files");
  add_common(cost, o);
  cost->add_option("--target", target_path, "Target circuit U")->required();
  cost->add_option("--model", model_path, "Model circuit V")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    const auto cfg = effective_config(o);
    if (o.print_config) {
      std::cout << vff::to_json(cfg).dump(2) << "\n";
      return kExitOk;
    }
    if (train->parsed()) return cmd_train(cfg);
    if (ff->parsed()) return cmd_fast_forward(cfg, ansatz_path);
    if (spec->parsed()) return cmd_spectrum(cfg, ansatz_path);
    return cmd_cost(cfg, target_path, model_path);
  } catch (const vff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const vff::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

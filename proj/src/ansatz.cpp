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

#include "vff/ansatz.hpp"

#include <cmath>
#include <stdexcept>

namespace vff {

namespace {

constexpr std::array<GateKind, 3> kLayerKinds{GateKind::RX, GateKind::RY, GateKind::P};

ParamCircuit build_D_named(std::span<const double, 3> gamma) {
  ParamCircuit c(2);
  for (int l = 0; l < SpectralAnsatz::kNumGamma; ++l) c.add_parameter(gamma_name(l), gamma[l]);
  c.add_gate(GateKind::RZZ, {0, 1}, ParamRef{gamma_name(0)});
  c.add_gate(GateKind::P, {0}, ParamRef{gamma_name(1)});
  c.add_gate(GateKind::P, {1}, ParamRef{gamma_name(2)});
  return c;
}

void check_finite(std::span<const double> v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("ansatz angles must be finite");
  }
}

}  // namespace

std::array<double, SpectralAnsatz::kNumParams> SpectralAnsatz::flat() const {
  std::array<double, kNumParams> out{};
  std::copy(theta.begin(), theta.end(), out.begin());
  std::copy(gamma.begin(), gamma.end(), out.begin() + kNumTheta);
  return out;
}

SpectralAnsatz SpectralAnsatz::from_flat(std::span<const double> values) {
  if (values.size() != kNumParams) {
    throw std::invalid_argument("expected " + std::to_string(kNumParams) + " parameters");
  }
  check_finite(values);
  SpectralAnsatz a;
  std::copy(values.begin(), values.begin() + kNumTheta, a.theta.begin());
  std::copy(values.begin() + kNumTheta, values.end(), a.gamma.begin());
  return a;
}

ThetaSlot theta_slot(int k) {
  if (k < 0 || k >= SpectralAnsatz::kNumTheta) throw std::out_of_range("theta index");
  return {k / 6, (k % 6) / 3, kLayerKinds[k % 3]};
}

std::string theta_name(int k) { return "theta_" + std::to_string(k + 1); }
std::string gamma_name(int l) { return "gamma_" + std::to_string(l + 1); }

std::string param_name(int i) {
  if (i < 0 || i >= SpectralAnsatz::kNumParams) throw std::out_of_range("parameter index");
  return i < SpectralAnsatz::kNumTheta ? theta_name(i) : gamma_name(i - SpectralAnsatz::kNumTheta);
}

ParamCircuit build_D(std::span<const double, 3> gamma) {
  check_finite(gamma);
  return build_D_named(gamma);
}

ParamCircuit build_W(std::span<const double, 18> theta) {
  check_finite(theta);
  ParamCircuit c(2);
  for (int k = 0; k < SpectralAnsatz::kNumTheta; ++k) c.add_parameter(theta_name(k), theta[k]);
  for (int k = 0; k < SpectralAnsatz::kNumTheta; ++k) {
    const ThetaSlot s = theta_slot(k);
    if (k > 0 && k % 6 == 0) c.add_gate(GateKind::CNOT, {0, 1});
    c.add_gate(s.kind, {s.qubit}, ParamRef{theta_name(k)});
  }
  return c;
}

ParamCircuit build_V(const SpectralAnsatz& a) {
  const ParamCircuit w = build_W(a.theta);
  // Execution order W^dagger, D, W realizes the matrix W D W^dagger.
  ParamCircuit v(2);
  v.append(w.inverse());
  v.append(build_D(a.gamma));
  v.append(w);
  return v;
}

ParamCircuit build_V_fast_forward(const SpectralAnsatz& a, double t, double dt) {
  if (dt == 0.0) throw std::invalid_argument("dt must be nonzero");
  const double k = t / dt;
  if (!std::isfinite(k)) throw std::invalid_argument("t/dt must be finite");
  SpectralAnsatz scaled = a;
  for (auto& g : scaled.gamma) g *= k;
  return build_V(scaled);
}

std::array<Complex, 4> diagonal_of_D(std::span<const double, 3> gamma) {
  std::array<Complex, 4> d{};
  for (int idx = 0; idx < 4; ++idx) {
    const int b0 = (idx >> 1) & 1;
    const int b1 = idx & 1;
    const double zz = (b0 == b1) ? 1.0 : -1.0;
    d[idx] = std::polar(1.0, gamma[0] * zz / 2 + gamma[1] * b0 + gamma[2] * b1);
  }
  return d;
}

nlohmann::json to_json(const SpectralAnsatz& a) {
  return nlohmann::json{{"theta", a.theta}, {"gamma", a.gamma}};
}

SpectralAnsatz ansatz_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("theta") || !j.contains("gamma")) {
    throw std::invalid_argument("ansatz document needs 'theta' and 'gamma'");
  }
  const auto& th = j.at("theta");
  const auto& ga = j.at("gamma");
  if (!th.is_array() || th.size() != SpectralAnsatz::kNumTheta || !ga.is_array() ||
      ga.size() != SpectralAnsatz::kNumGamma) {
    throw std::invalid_argument("ansatz document needs 18 theta and 3 gamma values");
  }
  std::array<double, SpectralAnsatz::kNumParams> flat{};
  for (int i = 0; i < SpectralAnsatz::kNumTheta; ++i) flat[i] = th[i].get<double>();
  for (int i = 0; i < SpectralAnsatz::kNumGamma; ++i) {
    flat[SpectralAnsatz::kNumTheta + i] = ga[i].get<double>();
  }
  return SpectralAnsatz::from_flat(flat);
}

}  // namespace vff

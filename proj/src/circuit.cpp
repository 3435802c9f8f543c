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

#include "vff/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace vff {

namespace {

void negate(AngleSource& angle) {
  if (auto* lit = std::get_if<double>(&angle)) {
    *lit = -*lit;
  } else if (auto* ref = std::get_if<ParamRef>(&angle)) {
    ref->sign = -ref->sign;
    ref->shift = -ref->shift;
  }
}

}  // namespace

ParamCircuit::ParamCircuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("circuit width out of range: " + std::to_string(n_qubits));
  }
}

int ParamCircuit::param_index(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

bool ParamCircuit::has_parameter(const std::string& name) const {
  return param_index(name) >= 0;
}

std::optional<double> ParamCircuit::parameter_value(const std::string& name) const {
  const int i = param_index(name);
  if (i < 0) throw std::invalid_argument("unknown parameter '" + name + "'");
  return params_[i].value;
}

void ParamCircuit::add_parameter(const std::string& name, std::optional<double> value) {
  if (name.empty()) throw std::invalid_argument("empty parameter name");
  const int i = param_index(name);
  if (i < 0) {
    params_.push_back({name, value});
    return;
  }
  auto& existing = params_[i].value;
  if (existing && value && *existing != *value) {
    throw std::invalid_argument("parameter '" + name + "' redeclared with a different value");
  }
  if (!existing) existing = value;
}

int ParamCircuit::add_gate(GateKind kind, std::vector<int> qubits, AngleSource angle) {
  const int arity = gate_arity(kind);
  if (static_cast<int>(qubits.size()) != arity) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " takes " +
                                std::to_string(arity) + " qubit(s)");
  }
  check_qubits(n_qubits_, qubits);
  const bool has_angle = !std::holds_alternative<std::monostate>(angle);
  if (has_angle != gate_has_angle(kind)) {
    throw std::invalid_argument(std::string(gate_name(kind)) +
                                (has_angle ? " takes no angle" : " requires an angle"));
  }
  if (const auto* ref = std::get_if<ParamRef>(&angle)) {
    if (!has_parameter(ref->name)) {
      throw std::invalid_argument("gate references undeclared parameter '" + ref->name + "'");
    }
  }
  GateInstance g;
  g.kind = kind;
  g.qubits = {qubits[0], arity == 2 ? qubits[1] : -1};
  g.angle = std::move(angle);
  g.occurrence = next_occurrence_++;
  gates_.push_back(std::move(g));
  return gates_.back().occurrence;
}

void ParamCircuit::append(const ParamCircuit& other, const std::vector<int>& qubit_map) {
  if (!qubit_map.empty() && static_cast<int>(qubit_map.size()) != other.n_qubits()) {
    throw std::invalid_argument("qubit map size does not match appended circuit");
  }
  if (qubit_map.empty() && other.n_qubits() > n_qubits_) {
    throw std::invalid_argument("appended circuit is wider than the target");
  }
  for (const auto& p : other.params_) add_parameter(p.name, p.value);
  for (const auto& g : other.gates_) {
    std::vector<int> q;
    for (int k = 0; k < gate_arity(g.kind); ++k) {
      q.push_back(qubit_map.empty() ? g.qubits[k] : qubit_map[g.qubits[k]]);
    }
    add_gate(g.kind, std::move(q), g.angle);
  }
}

std::vector<int> ParamCircuit::occurrences_of(const std::string& name) const {
  std::vector<int> ids;
  for (const auto& g : gates_) {
    if (const auto* ref = std::get_if<ParamRef>(&g.angle); ref && ref->name == name) {
      ids.push_back(g.occurrence);
    }
  }
  return ids;
}

const GateInstance& ParamCircuit::occurrence(int id) const {
  for (const auto& g : gates_) {
    if (g.occurrence == id) return g;
  }
  throw std::invalid_argument("unknown occurrence id " + std::to_string(id));
}

ParamCircuit ParamCircuit::bind(const std::map<std::string, double>& values) const {
  for (const auto& [name, v] : values) {
    if (!has_parameter(name)) throw std::invalid_argument("unknown parameter '" + name + "'");
  }
  ParamCircuit out = *this;
  for (auto& p : out.params_) {
    const auto it = values.find(p.name);
    if (it == values.end()) throw std::invalid_argument("missing value for parameter '" + p.name + "'");
    p.value = it->second;
  }
  return out;
}

ParamCircuit ParamCircuit::shift_occurrence(int occurrence_id, double delta) const {
  ParamCircuit out = *this;
  for (auto& g : out.gates_) {
    if (g.occurrence != occurrence_id) continue;
    auto* ref = std::get_if<ParamRef>(&g.angle);
    if (!ref) {
      throw std::invalid_argument("occurrence " + std::to_string(occurrence_id) +
                                  " is not parameterized");
    }
    ref->shift += delta;
    return out;
  }
  throw std::invalid_argument("unknown occurrence id " + std::to_string(occurrence_id));
}

ParamCircuit ParamCircuit::conjugate() const {
  ParamCircuit out = *this;
  for (auto& g : out.gates_) {
    switch (g.kind) {
      // exp(i a X/2), P(a) and exp(i a ZZ/2) conjugate to angle -a; RY is real.
      case GateKind::RX:
      case GateKind::P:
      case GateKind::RZZ:
        negate(g.angle);
        break;
      case GateKind::RY:
      case GateKind::CNOT:
      case GateKind::H:
        break;
    }
  }
  return out;
}

ParamCircuit ParamCircuit::inverse() const {
  ParamCircuit out = *this;
  std::reverse(out.gates_.begin(), out.gates_.end());
  for (auto& g : out.gates_) {
    if (gate_has_angle(g.kind)) negate(g.angle);
  }
  return out;
}

ParamCircuit ParamCircuit::frozen() const {
  ParamCircuit out(n_qubits_);
  for (const auto& g : gates_) {
    GateInstance f = g;
    if (std::holds_alternative<ParamRef>(g.angle)) f.angle = effective_angle(g);
    out.gates_.push_back(std::move(f));
  }
  out.next_occurrence_ = next_occurrence_;
  return out;
}

double ParamCircuit::effective_angle(const GateInstance& g) const {
  if (const auto* lit = std::get_if<double>(&g.angle)) return *lit;
  if (const auto* ref = std::get_if<ParamRef>(&g.angle)) {
    const int i = param_index(ref->name);
    if (i < 0 || !params_[i].value) {
      throw std::runtime_error("unresolved parameter '" + ref->name + "'");
    }
    return ref->sign * *params_[i].value + ref->shift;
  }
  return 0.0;
}

std::vector<Gate> ParamCircuit::resolved() const {
  std::vector<Gate> out;
  out.reserve(gates_.size());
  for (const auto& g : gates_) out.push_back({g.kind, g.qubits, effective_angle(g)});
  return out;
}

std::size_t ParamCircuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [&](const auto& g) { return g.kind == kind; }));
}

std::size_t ParamCircuit::parameterized_gate_count() const {
  return static_cast<std::size_t>(std::count_if(gates_.begin(), gates_.end(), [](const auto& g) {
    return std::holds_alternative<ParamRef>(g.angle);
  }));
}

StateVector run(const ParamCircuit& circ, StateVector input) {
  if (input.n_qubits() != circ.n_qubits()) {
    throw std::invalid_argument("state has " + std::to_string(input.n_qubits()) +
                                " qubits, circuit has " + std::to_string(circ.n_qubits()));
  }
  for (const auto& g : circ.resolved()) input.apply(g);
  return input;
}

CMatrix unitary_of(const ParamCircuit& circ) {
  const int n = circ.n_qubits();
  if (n > kMaxUnitaryQubits) {
    throw std::invalid_argument("unitary_of is limited to " + std::to_string(kMaxUnitaryQubits) +
                                " qubits");
  }
  const auto gates = circ.resolved();
  const std::size_t dim = std::size_t{1} << n;
  CMatrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j) {
    StateVector s = StateVector::basis(n, j);
    for (const auto& g : gates) s.apply(g);
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = s[i];
  }
  return u;
}

}  // namespace vff

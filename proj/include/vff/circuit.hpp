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

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "vff/simcore.hpp"

namespace vff {

using CMatrix = Eigen::MatrixXcd;

/// Reference to a named parameter. The effective angle of the occurrence
/// is sign * value + shift.
struct ParamRef {
  std::string name;
  double sign = 1.0;
  double shift = 0.0;

  bool operator==(const ParamRef&) const = default;
};

/// No angle (H, CNOT), a literal angle in radians, or a parameter reference.
using AngleSource = std::variant<std::monostate, double, ParamRef>;

struct GateInstance {
  GateKind kind = GateKind::H;
  std::array<int, 2> qubits{0, -1};
  AngleSource angle;
  /// Unique within the owning circuit; assigned in construction order.
  int occurrence = -1;
};

struct Parameter {
  std::string name;
  std::optional<double> value;
};

/// Ordered gate list over named parameters that may be shared by several
/// gate occurrences. Value type; every transformation returns a new circuit.
class ParamCircuit {
 public:
  explicit ParamCircuit(int n_qubits);

  int n_qubits() const { return n_qubits_; }
  const std::vector<GateInstance>& gates() const { return gates_; }
  const std::vector<Parameter>& params() const { return params_; }

  /// Declares a parameter. Redeclaring an existing name is allowed only
  /// with the same value (or when either side is unset, which keeps the set one).
  void add_parameter(const std::string& name, std::optional<double> value = std::nullopt);

  /// Appends a gate and returns its occurrence id. Validates arity, qubit
  /// indices, that angle presence matches the kind, and that referenced
  /// parameters are declared.
  int add_gate(GateKind kind, std::vector<int> qubits, AngleSource angle = {});

  /// Appends all parameters and gates of `other` (same width), with its
  /// qubit i mapped to qubit_map[i] (identity when empty). Occurrence ids
  /// of the appended gates are renumbered.
  void append(const ParamCircuit& other, const std::vector<int>& qubit_map = {});

  bool has_parameter(const std::string& name) const;
  std::optional<double> parameter_value(const std::string& name) const;

  /// Occurrence ids of the gates that reference `name`, in gate order.
  std::vector<int> occurrences_of(const std::string& name) const;
  const GateInstance& occurrence(int id) const;

  /// Sets every parameter value. The map must name each declared
  /// parameter exactly; missing or unknown names throw std::invalid_argument.
  ParamCircuit bind(const std::map<std::string, double>& values) const;

  /// Offsets the effective angle of one parameterized occurrence by delta.
  /// Throws for unknown ids and for literal or angle-free gates.
  ParamCircuit shift_occurrence(int occurrence_id, double delta) const;

  /// Circuit whose unitary is the elementwise complex conjugate of this one.
  ParamCircuit conjugate() const;

  /// Reverse order with negated angles; CNOT and H are self-inverse.
  ParamCircuit inverse() const;

  /// Same gates with every parameter reference replaced by its effective
  /// literal angle; no parameters remain. Throws for unresolved parameters.
  ParamCircuit frozen() const;

  /// Effective angle of a gate. Throws std::runtime_error for a reference
  /// to a parameter without a value.
  double effective_angle(const GateInstance& g) const;

  /// Gates with concrete angles, in execution order.
  std::vector<Gate> resolved() const;

  std::size_t count(GateKind kind) const;
  std::size_t parameterized_gate_count() const;

 private:
  int param_index(const std::string& name) const;

  int n_qubits_;
  std::vector<GateInstance> gates_;
  std::vector<Parameter> params_;
  int next_occurrence_ = 0;
};

/// Executes the circuit on `input`. Throws on width mismatch or unresolved
/// parameters.
StateVector run(const ParamCircuit& circ, StateVector input);

/// Dense unitary; column j is the circuit applied to basis state j.
/// Resource guard: n_qubits <= 6.
CMatrix unitary_of(const ParamCircuit& circ);

inline constexpr int kMaxUnitaryQubits = 6;

}  // namespace vff

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

// Line-oriented circuit text format.
//
//   # comment
//   qubits 2
//   param theta_1 0.25        (value optional)
//   RX 0 @theta_1             parameter reference
//   RX 0 @theta_1+1.5*-1      effective angle = -1 * theta_1 + 1.5
//   RZZ 0,1 -0.2              literal angle in radians
//   CNOT 0,1                  control first
//   H 1
//
// The `qubits` line must precede gates; `param` lines must precede the
// gates that reference them. Occurrence ids are assigned in line order.

#pragma once

#include <string>
#include <string_view>

#include "vff/circuit.hpp"

namespace vff {

std::string to_text(const ParamCircuit& circ);

/// Throws std::invalid_argument with a "line N: ..." message on bad input.
ParamCircuit circuit_from_text(std::string_view text);

/// Shortest round-trip decimal representation used by every text and CSV
/// writer in the project.
std::string format_double(double x);

}  // namespace vff

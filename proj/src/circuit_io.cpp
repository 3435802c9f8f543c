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

#include "vff/circuit_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vff {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string angle_text(const AngleSource& angle) {
  if (const auto* lit = std::get_if<double>(&angle)) return format_double(*lit);
  const auto& ref = std::get<ParamRef>(angle);
  std::string s = "@" + ref.name;
  if (ref.shift != 0.0) s += (ref.shift > 0 ? "+" : "") + format_double(ref.shift);
  if (ref.sign != 1.0) s += "*" + format_double(ref.sign);
  return s;
}

[[noreturn]] void fail(int line, const std::string& msg) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
}

double parse_number(std::string_view s, int line) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) fail(line, "bad number '" + std::string(s) + "'");
  if (!std::isfinite(v)) fail(line, "non-finite number");
  return v;
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '.';
}

AngleSource parse_angle(std::string_view tok, int line) {
  if (tok.empty() || tok[0] != '@') return parse_number(tok, line);
  std::size_t i = 1;
  while (i < tok.size() && is_name_char(tok[i])) ++i;
  ParamRef ref;
  ref.name = std::string(tok.substr(1, i - 1));
  if (ref.name.empty()) fail(line, "empty parameter name");
  const std::size_t star = tok.find('*', i);
  const std::string_view shift = tok.substr(i, star == std::string_view::npos ? tok.npos : star - i);
  if (!shift.empty()) {
    if (shift[0] != '+' && shift[0] != '-') fail(line, "expected +shift or -shift after name");
    ref.shift = parse_number(shift[0] == '+' ? shift.substr(1) : shift, line);
  }
  if (star != std::string_view::npos) ref.sign = parse_number(tok.substr(star + 1), line);
  return ref;
}

std::vector<int> parse_qubits(const std::string& tok, int line) {
  std::vector<int> q;
  std::stringstream ss(tok);
  std::string part;
  while (std::getline(ss, part, ',')) {
    int v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size()) {
      fail(line, "bad qubit index '" + part + "'");
    }
    q.push_back(v);
  }
  return q;
}

}  // namespace

std::string to_text(const ParamCircuit& circ) {
  std::ostringstream os;
  os << "qubits " << circ.n_qubits() << '\n';
  for (const auto& p : circ.params()) {
    os << "param " << p.name;
    if (p.value) os << ' ' << format_double(*p.value);
    os << '\n';
  }
  for (const auto& g : circ.gates()) {
    os << gate_name(g.kind) << ' ' << g.qubits[0];
    if (gate_arity(g.kind) == 2) os << ',' << g.qubits[1];
    if (gate_has_angle(g.kind)) os << ' ' << angle_text(g.angle);
    os << '\n';
  }
  return os.str();
}

ParamCircuit circuit_from_text(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string raw;
  std::optional<ParamCircuit> circ;
  int line = 0;
  while (std::getline(is, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    if (tok[0] == "qubits") {
      if (circ) fail(line, "duplicate 'qubits' line");
      if (tok.size() != 2) fail(line, "expected 'qubits N'");
      try {
        circ.emplace(static_cast<int>(parse_number(tok[1], line)));
      } catch (const std::invalid_argument& e) {
        fail(line, e.what());
      }
      continue;
    }
    if (!circ) fail(line, "'qubits N' must come first");
    try {
      if (tok[0] == "param") {
        if (tok.size() < 2 || tok.size() > 3) fail(line, "expected 'param NAME [VALUE]'");
        std::optional<double> v;
        if (tok.size() == 3) v = parse_number(tok[2], line);
        circ->add_parameter(tok[1], v);
        continue;
      }
      const GateKind kind = gate_kind_from_name(tok[0]);
      const std::size_t expected = gate_has_angle(kind) ? 3 : 2;
      if (tok.size() != expected) fail(line, "wrong number of fields for " + tok[0]);
      AngleSource angle;
      if (gate_has_angle(kind)) angle = parse_angle(tok[2], line);
      circ->add_gate(kind, parse_qubits(tok[1], line), std::move(angle));
    } catch (const std::invalid_argument& e) {
      const std::string msg = e.what();
      if (msg.rfind("line ", 0) == 0) throw;
      fail(line, msg);
    }
  }
  if (!circ) throw std::invalid_argument("missing 'qubits N' line");
  return *std::move(circ);
}

}  // namespace vff

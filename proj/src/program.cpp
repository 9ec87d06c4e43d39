// Copyright 2026 The spinmol Authors
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

#include "spinmol/program.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"

namespace spinmol {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_ion(int ion, int n, std::size_t index) {
  if (ion < 0 || ion >= n) {
    throw InvalidArgument("op " + std::to_string(index) + ": ion " + std::to_string(ion) +
                          " out of range for " + std::to_string(n) + " qutrits");
  }
}

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_int(std::string_view s, int& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

struct Token {
  std::string_view text;
  int column = 1;
};

std::string upper(std::string_view s) {
  std::string u(s);
  std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
  return u;
}

// Shortest round-trip decimal.
std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace

void PulseProgram::validate() const {
  if (n_qutrits < 1 || n_qutrits > kMaxDiagonalQutrits) {
    throw InvalidArgument("program: n_qutrits must lie in [1, " + std::to_string(kMaxDiagonalQutrits) + "]");
  }
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::visit(Overloaded{[&](const SingleQutritOp& o) { check_ion(o.ion, n_qutrits, i); },
                          [&](const ZPhaseOp& o) { check_ion(o.ion, n_qutrits, i); },
                          [&](const MMPairOp& o) {
                            check_ion(o.ion_a, n_qutrits, i);
                            check_ion(o.ion_b, n_qutrits, i);
                            if (o.ion_a == o.ion_b) {
                              throw InvalidArgument("op " + std::to_string(i) + ": MM ions must differ");
                            }
                          },
                          [&](const MMChainOp& o) {
                            if (o.coupling && o.coupling->size() != n_qutrits) {
                              throw InvalidArgument("op " + std::to_string(i) +
                                                    ": coupling matrix size differs from register");
                            }
                          },
                          [&](const MeasureOp&) {
                            if (i + 1 != ops.size()) {
                              throw InvalidArgument("MEASURE must be the last op of a program");
                            }
                          }},
               ops[i]);
  }
}

bool PulseProgram::has_measure() const {
  return std::any_of(ops.begin(), ops.end(),
                     [](const PulseOp& op) { return std::holds_alternative<MeasureOp>(op); });
}

bool PulseProgram::needs_coupling() const {
  return std::any_of(ops.begin(), ops.end(), [](const PulseOp& op) {
    const auto* chain = std::get_if<MMChainOp>(&op);
    return chain && !chain->coupling;
  });
}

void PulseProgram::bind_coupling(const CouplingMatrix& coupling) {
  if (coupling.size() != n_qutrits) {
    throw InvalidArgument("coupling matrix is " + std::to_string(coupling.size()) + "x" +
                          std::to_string(coupling.size()) + " but the register has " +
                          std::to_string(n_qutrits) + " qutrits");
  }
  for (auto& op : ops) {
    if (auto* chain = std::get_if<MMChainOp>(&op)) chain->coupling = coupling;
  }
}

SingleQutritOp x_pulse(Transition t, int ion) { return {ion, t, constants::kPi / 2.0, 0.0}; }

namespace {

// Calls gate(g, ion) or diagonal(phases) for each unitary op, in order.
template <class GateFn, class DiagFn>
void for_each_unitary(const PulseProgram& program, const RunOptions& options, GateFn&& gate,
                      DiagFn&& diagonal) {
  program.validate();
  const int n = program.n_qutrits;
  for (const auto& op : program.ops) {
    std::visit(Overloaded{[&](const SingleQutritOp& o) { gate(rotation(o.transition, o.theta, o.phi), o.ion); },
                          [&](const ZPhaseOp& o) { gate(z_rot(o.transition, o.rho), o.ion); },
                          [&](const MMPairOp& o) {
                            diagonal(mm_pair_phases(o.theta, o.ion_a, o.ion_b, n, options.m));
                          },
                          [&](const MMChainOp& o) {
                            if (!o.coupling) throw InvalidArgument("MMALL needs a coupling matrix (no chain bound)");
                            diagonal(mm_chain_phases(o.duration, *o.coupling, n, options.m));
                          },
                          [&](const MeasureOp&) {}},
               op);
  }
}

}  // namespace

RegisterUnitary run_program(const PulseProgram& program, const RunOptions& options) {
  RegisterUnitary u = RegisterUnitary::identity(program.n_qutrits);
  if (options.force_dense) u.promote();
  for_each_unitary(
      program, options, [&](const Gate3& g, int ion) { u.apply_gate(g, ion); },
      [&](const Eigen::VectorXcd& d) { u.apply_diagonal(d); });
  return u;
}

RegisterState apply_program(const PulseProgram& program, RegisterState state, const RunOptions& options) {
  if (state.qutrits() != program.n_qutrits) throw InvalidArgument("apply_program: register size mismatch");
  for_each_unitary(
      program, options, [&](const Gate3& g, int ion) { state.apply_gate(g, ion); },
      [&](const Eigen::VectorXcd& d) { state.apply_diagonal(d); });
  return state;
}

std::optional<double> parse_angle(std::string_view token) {
  std::string lower(token);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  std::string_view s = lower;
  double scale = 1.0;
  if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
    scale = constants::kPi;
    s.remove_suffix(2);
    if (s.empty() || s == "+") return scale;
    if (s == "-") return -scale;
  } else if (s.size() >= 3 && s.substr(s.size() - 3) == "rad") {
    s.remove_suffix(3);
  }
  double v = 0.0;
  if (!parse_double(s, v)) return std::nullopt;
  return v * scale;
}

PulseProgram parse_program(std::string_view text, int n_qutrits) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      // byte offset -> line/column
      const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
      int line = 1, column = 1;
      for (std::size_t i = 0; i < at; ++i) {
        if (text[i] == '\n') {
          ++line;
          column = 1;
        } else {
          ++column;
        }
      }
      throw ParseError(e.what(), line, column);
    }
    return program_from_json(doc, n_qutrits);
  }

  PulseProgram program;
  int line_no = 0;
  std::size_t pos = 0;
  int largest_ion = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::vector<Token> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.push_back({line.substr(start, i - start), static_cast<int>(start) + 1});
    }
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    const auto fail = [&](const std::string& msg, const Token& at) -> void {
      throw ParseError(msg, line_no, at.column);
    };
    const auto expect_count = [&](std::size_t n) {
      if (tokens.size() != n) {
        const Token& at = tokens.size() > n ? tokens[n] : tokens.back();
        fail("'" + upper(tokens[0].text) + "' takes " + std::to_string(n - 1) + " argument(s)", at);
      }
    };
    const auto transition = [&](const Token& t) {
      try {
        return parse_transition(t.text);
      } catch (const InvalidArgument&) {
        fail("expected a transition 01, 12 or 02, got '" + std::string(t.text) + "'", t);
      }
      return Transition::k01;
    };
    const auto ion = [&](const Token& t) {
      int v = 0;
      if (!parse_int(t.text, v) || v < 0) fail("expected a non-negative ion index, got '" + std::string(t.text) + "'", t);
      largest_ion = std::max(largest_ion, v);
      return v;
    };
    const auto angle = [&](const Token& t) {
      const auto v = parse_angle(t.text);
      if (!v) fail("expected an angle such as 0.25pi or 0.785398rad, got '" + std::string(t.text) + "'", t);
      return v.value_or(0.0);
    };

    const std::string keyword = upper(tokens[0].text);
    if (keyword == "X") {
      expect_count(3);
      program.ops.emplace_back(x_pulse(transition(tokens[1]), ion(tokens[2])));
    } else if (keyword == "U") {
      expect_count(5);
      program.ops.emplace_back(
          SingleQutritOp{ion(tokens[2]), transition(tokens[1]), angle(tokens[3]), angle(tokens[4])});
    } else if (keyword == "Z") {
      expect_count(4);
      program.ops.emplace_back(ZPhaseOp{ion(tokens[2]), transition(tokens[1]), angle(tokens[3])});
    } else if (keyword == "MM") {
      expect_count(4);
      const int a = ion(tokens[1]);
      const int b = ion(tokens[2]);
      if (a == b) fail("MM needs two different ions", tokens[2]);
      program.ops.emplace_back(MMPairOp{a, b, angle(tokens[3])});
    } else if (keyword == "MMALL") {
      expect_count(2);
      double duration = 0.0;
      if (!parse_double(tokens[1].text, duration) || duration < 0.0) {
        fail("expected a non-negative duration in seconds", tokens[1]);
      }
      program.ops.emplace_back(MMChainOp{duration, std::nullopt});
    } else if (keyword == "MEASURE") {
      expect_count(1);
      program.ops.emplace_back(MeasureOp{});
    } else {
      fail("unknown op '" + std::string(tokens[0].text) + "'", tokens[0]);
    }
    if (end == text.size()) break;
  }

  program.n_qutrits = n_qutrits > 0 ? n_qutrits : largest_ion + 1;
  if (program.n_qutrits <= largest_ion) {
    throw InvalidArgument("program addresses ion " + std::to_string(largest_ion) + " but the register has " +
                          std::to_string(program.n_qutrits) + " qutrits");
  }
  program.validate();
  return program;
}

PulseProgram program_from_json(const nlohmann::json& doc, int n_qutrits) {
  using nlohmann::json;
  if (!doc.is_object() || !doc.contains("ops") || !doc["ops"].is_array()) {
    throw ParseError("program JSON needs an \"ops\" array", 1, 1);
  }
  PulseProgram program;
  int largest_ion = 0;
  int index = 0;
  for (const auto& op : doc["ops"]) {
    ++index;
    const auto fail = [&](const std::string& msg) -> void {
      throw ParseError("ops[" + std::to_string(index - 1) + "]: " + msg, 1, 1);
    };
    if (!op.is_object() || !op.contains("op") || !op["op"].is_string()) fail("missing \"op\"");
    const auto int_field = [&](const char* key) {
      if (!op.contains(key) || !op[key].is_number_integer() || op[key].get<int>() < 0) {
        fail(std::string("needs a non-negative integer \"") + key + "\"");
      }
      return op[key].get<int>();
    };
    const auto angle_field = [&](const char* key) {
      if (!op.contains(key)) fail(std::string("missing \"") + key + "\"");
      const json& v = op[key];
      if (v.is_number()) return v.get<double>();
      if (v.is_string()) {
        if (auto a = parse_angle(v.get<std::string>())) return *a;
      }
      fail(std::string("bad angle \"") + key + "\"");
      return 0.0;
    };
    const auto transition_field = [&]() {
      if (!op.contains("ij") || !op["ij"].is_string()) fail("missing \"ij\"");
      try {
        return parse_transition(op["ij"].get<std::string>());
      } catch (const InvalidArgument& e) {
        fail(e.what());
      }
      return Transition::k01;
    };
    const std::string kind = upper(op["op"].get<std::string>());
    if (kind == "X") {
      const int ion = int_field("ion");
      program.ops.emplace_back(x_pulse(transition_field(), ion));
      largest_ion = std::max(largest_ion, ion);
    } else if (kind == "U") {
      const int ion = int_field("ion");
      program.ops.emplace_back(SingleQutritOp{ion, transition_field(), angle_field("theta"), angle_field("phi")});
      largest_ion = std::max(largest_ion, ion);
    } else if (kind == "Z") {
      const int ion = int_field("ion");
      program.ops.emplace_back(ZPhaseOp{ion, transition_field(), angle_field("rho")});
      largest_ion = std::max(largest_ion, ion);
    } else if (kind == "MM") {
      const int a = int_field("ion_a");
      const int b = int_field("ion_b");
      if (a == b) fail("MM needs two different ions");
      program.ops.emplace_back(MMPairOp{a, b, angle_field("theta")});
      largest_ion = std::max({largest_ion, a, b});
    } else if (kind == "MMALL") {
      if (!op.contains("duration_s") || !op["duration_s"].is_number() || op["duration_s"].get<double>() < 0.0) {
        fail("needs a non-negative \"duration_s\"");
      }
      program.ops.emplace_back(MMChainOp{op["duration_s"].get<double>(), std::nullopt});
    } else if (kind == "MEASURE") {
      program.ops.emplace_back(MeasureOp{});
    } else {
      fail("unknown op '" + op["op"].get<std::string>() + "'");
    }
  }
  int declared = n_qutrits;
  if (declared <= 0 && doc.contains("n_qutrits")) {
    if (!doc["n_qutrits"].is_number_integer()) throw ParseError("\"n_qutrits\" must be an integer", 1, 1);
    declared = doc["n_qutrits"].get<int>();
  }
  program.n_qutrits = declared > 0 ? declared : largest_ion + 1;
  if (program.n_qutrits <= largest_ion) {
    throw InvalidArgument("program addresses ion " + std::to_string(largest_ion) + " but the register has " +
                          std::to_string(program.n_qutrits) + " qutrits");
  }
  program.validate();
  return program;
}

std::string program_to_text(const PulseProgram& program) {
  std::ostringstream out;
  out << "# " << program.n_qutrits << " qutrits\n";
  for (const auto& op : program.ops) {
    std::visit(Overloaded{[&](const SingleQutritOp& o) {
                            out << "U " << to_string(o.transition) << ' ' << o.ion << ' '
                                << format_double(o.theta) << "rad " << format_double(o.phi) << "rad\n";
                          },
                          [&](const ZPhaseOp& o) {
                            out << "Z " << to_string(o.transition) << ' ' << o.ion << ' '
                                << format_double(o.rho) << "rad\n";
                          },
                          [&](const MMPairOp& o) {
                            out << "MM " << o.ion_a << ' ' << o.ion_b << ' ' << format_double(o.theta) << "rad\n";
                          },
                          [&](const MMChainOp& o) { out << "MMALL " << format_double(o.duration) << '\n'; },
                          [&](const MeasureOp&) { out << "MEASURE\n"; }},
               op);
  }
  return out.str();
}

nlohmann::json program_to_json(const PulseProgram& program) {
  using nlohmann::json;
  json ops = json::array();
  for (const auto& op : program.ops) {
    ops.push_back(std::visit(
        Overloaded{[](const SingleQutritOp& o) {
                     return json{{"op", "U"}, {"ij", to_string(o.transition)}, {"ion", o.ion},
                                 {"theta", o.theta}, {"phi", o.phi}};
                   },
                   [](const ZPhaseOp& o) {
                     return json{{"op", "Z"}, {"ij", to_string(o.transition)}, {"ion", o.ion}, {"rho", o.rho}};
                   },
                   [](const MMPairOp& o) {
                     return json{{"op", "MM"}, {"ion_a", o.ion_a}, {"ion_b", o.ion_b}, {"theta", o.theta}};
                   },
                   [](const MMChainOp& o) { return json{{"op", "MMALL"}, {"duration_s", o.duration}}; },
                   [](const MeasureOp&) { return json{{"op", "MEASURE"}}; }},
        op));
  }
  return {{"n_qutrits", program.n_qutrits}, {"ops", ops}};
}

}  // namespace spinmol

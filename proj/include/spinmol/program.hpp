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

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "spinmol/chain.hpp"
#include "spinmol/qutrit.hpp"
#include "spinmol/register.hpp"

namespace spinmol {

struct SingleQutritOp {
  int ion = 0;
  Transition transition = Transition::k01;
  double theta = 0.0;
  double phi = 0.0;
};

struct ZPhaseOp {
  int ion = 0;
  Transition transition = Transition::k01;
  double rho = 0.0;
};

/// exp(-i theta M_a M_b).
struct MMPairOp {
  int ion_a = 0;
  int ion_b = 1;
  double theta = 0.0;
};

/// Free evolution of the whole chain; the coupling is bound before running.
struct MMChainOp {
  double duration = 0.0;  // s
  std::optional<CouplingMatrix> coupling;
};

struct MeasureOp {};

using PulseOp = std::variant<SingleQutritOp, ZPhaseOp, MMPairOp, MMChainOp, MeasureOp>;

/// Ops in chronological order: ops.front() acts first.
struct PulseProgram {
  int n_qutrits = 1;
  std::vector<PulseOp> ops;

  /// Index ranges, distinct MM ions, MEASURE only as the last op.
  void validate() const;
  bool has_measure() const;
  bool needs_coupling() const;
  void bind_coupling(const CouplingMatrix& coupling);
};

SingleQutritOp x_pulse(Transition t, int ion);

struct RunOptions {
  /// Promote to dense before the first op (oracle path for tests).
  bool force_dense = false;
  std::array<double, 3> m = m_ideal_diagonal();
};

/// Ordered product of the op unitaries, first op rightmost. A trailing
/// MEASURE is not part of the unitary and is skipped.
RegisterUnitary run_program(const PulseProgram& program, const RunOptions& options = {});

/// Applies the unitary part of `program` to `state`.
RegisterState apply_program(const PulseProgram& program, RegisterState state,
                            const RunOptions& options = {});

/// Parses the line format
///   X <ij> <ion> | U <ij> <ion> <theta> <phi> | Z <ij> <ion> <rho>
///   MM <ion_a> <ion_b> <theta> | MMALL <duration_s> | MEASURE
/// with '#' comments and angles written as 0.25pi, 0.785398rad or plain
/// radians. Text starting with '{' is read as the JSON mirror instead.
/// `n_qutrits` = 0 infers the size from the largest ion index.
/// Throws ParseError with the 1-based line and column of the offending token.
PulseProgram parse_program(std::string_view text, int n_qutrits = 0);
PulseProgram program_from_json(const nlohmann::json& doc, int n_qutrits = 0);

/// Parses "0.25pi", "pi", "-1.5rad" or "0.3".
std::optional<double> parse_angle(std::string_view token);

std::string program_to_text(const PulseProgram& program);
nlohmann::json program_to_json(const PulseProgram& program);

}  // namespace spinmol

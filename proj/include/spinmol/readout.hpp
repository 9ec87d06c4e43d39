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
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinmol/register.hpp"

namespace spinmol {

inline constexpr int kMaxJointOutcomeQutrits = 12;

struct ReadoutResult {
  int shots = 0;
  std::uint64_t seed = 0;
  /// counts[ion][level]
  std::vector<std::array<long long, 3>> counts;
  /// Joint outcomes keyed by the digit string, qutrit 0 first. Empty for
  /// registers above kMaxJointOutcomeQutrits.
  std::map<std::string, long long> joint;
};

/// Two-step fluorescence readout. Step 1 makes ions in |2> bright; then an
/// X12 pulse moves |1> to |2> and step 2 makes those bright. Dark in both
/// steps reads |0>. Deterministic given (state, shots, seed).
ReadoutResult measure_register(const RegisterState& state, int shots, std::uint64_t seed);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(std::uint64_t bits);

}  // namespace spinmol

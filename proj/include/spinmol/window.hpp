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

#include "spinmol/chain.hpp"
#include "spinmol/species.hpp"

namespace spinmol {

struct GradientBounds {
  double b_min = 0.0;  // T/m
  double b_max = 0.0;  // T/m, +inf when unbounded
  bool feasible = false;
  bool b_max_unbounded = false;
};

/// Feasible field-gradient range for a chain.
///
/// The first-principles bounds are the authoritative ones:
///   b_max: the middle M entry may vary across the chain by at most epsilon_m
///          (peak-to-peak over the ions, exact Breit-Rabi at |B0 + b z_n|);
///   b_min: the smallest neighbour separation of omega01 must reach the
///          motional band 2 nu_N + nu_1.
/// The closed-form estimates 0.03 N^-0.441 nu1^(2/3) and
/// 1.5e-9 nu1^(5/3) (3.2 N^0.559 + 0.5 N^1.559) are also evaluated, once with
/// nu1 in Hz and once in rad/s, because their unit convention is ambiguous.
struct GradientWindow {
  double b_min = 0.0;
  double b_max = 0.0;
  bool feasible = false;
  bool b_max_unbounded = false;
  /// Largest N whose first-principles window contains trap.b (0 if none).
  int max_ions_estimate = 0;

  double epsilon_m = 0.0;
  double motional_band = 0.0;  // 2 nu_N + nu_1, rad/s
  GradientBounds closed_form_hz;
  GradientBounds closed_form_rad_s;
};

struct WindowOptions {
  double b_probe_max = 1e8;  // T/m; beyond this b_max is reported unbounded
  int max_ions_scan = 200;
};

GradientBounds first_principles_bounds(const ChainSolution& chain, const IonSpecies& species,
                                       double b0, double epsilon_m,
                                       const WindowOptions& options = {});

GradientBounds closed_form_bounds(int n_ions, double nu1_value);

/// Requires epsilon_m in (0, 1).
GradientWindow gradient_window(const IonSpecies& species, const TrapConfig& trap, double epsilon_m,
                               const WindowOptions& options = {});

/// Gradient-term coupling over the vibrational zero-point energy, worst mode:
/// max_l (g_J mu_B b / hbar) max|M| |sum_n D_ln| q_zpf,l / nu_l with
/// q_zpf,l = sqrt(hbar / (2 m nu_l)). Small values justify treating the
/// gradient term as a perturbation of the normal modes.
double perturbation_ratio(const ChainSolution& chain, const IonSpecies& species,
                          const TrapConfig& trap);

}  // namespace spinmol

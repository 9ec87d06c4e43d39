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
#include <vector>

#include "spinmol/chain.hpp"
#include "spinmol/species.hpp"

namespace spinmol {

// Hyperfine Zeeman structure of a J = 1/2, I = 1/2 ground state. The qutrit
// lives in the F = 1 triplet with |0> = (F=1, m=-1), |1> = (F=1, m=0) and
// |2> = (F=1, m=+1). Arrays indexed by qutrit level use that ascending order.
//
// Zeeman Hamiltonian mu_B B (g_J J_z + g_I I_z), so x = (g_J - g_I) mu_B B / dW
// with dW = hbar A the zero-field splitting.

struct BreitRabiPoint {
  double field = 0.0;  // T
  double x = 0.0;
  std::array<double, 3> level_energies{};  // J, per qutrit level
  double f0_energy = 0.0;                  // J
  double omega01 = 0.0;                    // rad/s
  double omega12 = 0.0;
  double sum = 0.0;         // omega01 + omega12, from the stretched states
  double difference = 0.0;  // omega01 - omega12
  double d_omega01_db = 0.0;  // rad/(s T)
  double d_omega12_db = 0.0;
  /// Diagonal of dZ/dB / (g_J mu_B / hbar); ideal (-1, 1/sqrt2, 1) at x = 1.
  std::array<double, 3> m_diag{};
  /// False when x is outside [0.5, 2], where the 1/sqrt2 middle entry degrades.
  bool in_breit_rabi_region = false;
};

/// Throws UnsupportedSpecies for I != 1/2, InvalidArgument for B < 0.
BreitRabiPoint breit_rabi_energies(const IonSpecies& species, double field);

struct TransitionGradients {
  double d_sum_db = 0.0;         // d(omega01 + omega12)/dB
  double d_difference_db = 0.0;  // d(omega01 - omega12)/dB
  double d_omega01_db = 0.0;
  double d_omega12_db = 0.0;
};

TransitionGradients transition_gradients(const IonSpecies& species, double field);

/// Exact diagonal M operator at `field` in the ascending qutrit basis.
std::array<double, 3> m_operator(const IonSpecies& species, double field);

/// Field at which x reaches the given value.
double field_for_x(const IonSpecies& species, double x);

struct SiteFrequency {
  double z = 0.0;      // m
  double field = 0.0;  // |B0 + b z|, T
  double omega01 = 0.0;
  double omega12 = 0.0;
  std::array<double, 3> m_diag{};
};

struct SiteTable {
  std::vector<SiteFrequency> sites;
  /// omega(n+1) - omega(n) for neighbouring ions.
  std::vector<double> neighbour_d_omega01;
  std::vector<double> neighbour_d_omega12;
  /// Smallest |neighbour difference|; the hardest pair to resolve.
  double min_neighbour_d_omega01 = 0.0;
  double min_neighbour_d_omega12 = 0.0;
};

SiteTable site_frequencies(const ChainSolution& chain, const IonSpecies& species,
                           const TrapConfig& trap);
SiteTable site_frequencies(const ChainSolution& chain, const IonSpecies& species, double b0,
                           double b);

/// max_n |M_11(ion n) - M_11(chain centre)|.
double m_uniformity(const ChainSolution& chain, const IonSpecies& species, const TrapConfig& trap);

/// max_n M_11 - min_n M_11 over the chain.
double m_spread(const ChainSolution& chain, const IonSpecies& species, double b0, double b);

}  // namespace spinmol

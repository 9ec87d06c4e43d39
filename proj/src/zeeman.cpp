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

#include "spinmol/zeeman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"

namespace spinmol {
namespace {

using constants::kBohrMagneton;
using constants::kHbar;

void check_species(const IonSpecies& species) {
  species.validate();
  if (species.nuclear_spin != 0.5) {
    throw UnsupportedSpecies("Breit-Rabi model implemented for nuclear spin 1/2 only (species '" +
                             species.name + "')");
  }
}

}  // namespace

BreitRabiPoint breit_rabi_energies(const IonSpecies& species, double field) {
  check_species(species);
  if (!(field >= 0.0) || !std::isfinite(field)) {
    throw InvalidArgument("breit_rabi_energies: field must be non-negative");
  }
  const double dw = kHbar * species.hyperfine_a;
  const double x = (species.g_j - species.g_i) * kBohrMagneton * field / dw;
  const double root = std::sqrt(1.0 + x * x);
  const double stretched = 0.5 * (species.g_j + species.g_i) * kBohrMagneton * field;

  BreitRabiPoint p;
  p.field = field;
  p.x = x;
  p.level_energies = {dw / 4.0 - stretched, -dw / 4.0 + 0.5 * dw * root, dw / 4.0 + stretched};
  p.f0_energy = -dw / 4.0 - 0.5 * dw * root;
  const auto& e = p.level_energies;
  p.omega01 = (e[1] - e[0]) / kHbar;
  p.omega12 = (e[2] - e[1]) / kHbar;
  p.sum = (e[2] - e[0]) / kHbar;
  p.difference = (2.0 * e[1] - e[0] - e[2]) / kHbar;

  const TransitionGradients g = transition_gradients(species, field);
  p.d_omega01_db = g.d_omega01_db;
  p.d_omega12_db = g.d_omega12_db;
  p.m_diag = m_operator(species, field);
  p.in_breit_rabi_region = x >= 0.5 && x <= 2.0;
  return p;
}

TransitionGradients transition_gradients(const IonSpecies& species, double field) {
  check_species(species);
  if (!(field >= 0.0)) throw InvalidArgument("transition_gradients: field must be non-negative");
  const double dw = kHbar * species.hyperfine_a;
  const double slope_x = (species.g_j - species.g_i) * kBohrMagneton / dw;
  const double x = slope_x * field;
  const double de_stretched = 0.5 * (species.g_j + species.g_i) * kBohrMagneton;
  const double de_middle = 0.5 * dw * slope_x * x / std::sqrt(1.0 + x * x);

  TransitionGradients g;
  g.d_omega01_db = (de_middle + de_stretched) / kHbar;
  g.d_omega12_db = (de_stretched - de_middle) / kHbar;
  g.d_sum_db = 2.0 * de_stretched / kHbar;
  g.d_difference_db = 2.0 * de_middle / kHbar;
  return g;
}

std::array<double, 3> m_operator(const IonSpecies& species, double field) {
  const TransitionGradients g = transition_gradients(species, field);
  const double unit = species.g_j * kBohrMagneton / kHbar;
  return {-g.d_sum_db / unit, g.d_difference_db / unit, g.d_sum_db / unit};
}

double field_for_x(const IonSpecies& species, double x) {
  check_species(species);
  const double denom = (species.g_j - species.g_i) * kBohrMagneton;
  if (denom == 0.0) throw InvalidArgument("field_for_x: g_J equals g_I");
  return x * kHbar * species.hyperfine_a / denom;
}

SiteTable site_frequencies(const ChainSolution& chain, const IonSpecies& species, double b0,
                           double b) {
  SiteTable t;
  t.sites.reserve(chain.z0.size());
  for (double z : chain.z0) {
    SiteFrequency s;
    s.z = z;
    s.field = std::abs(b0 + b * z);
    const BreitRabiPoint p = breit_rabi_energies(species, s.field);
    s.omega01 = p.omega01;
    s.omega12 = p.omega12;
    s.m_diag = p.m_diag;
    t.sites.push_back(s);
  }
  double min01 = std::numeric_limits<double>::infinity();
  double min12 = min01;
  for (std::size_t i = 1; i < t.sites.size(); ++i) {
    const double d01 = t.sites[i].omega01 - t.sites[i - 1].omega01;
    const double d12 = t.sites[i].omega12 - t.sites[i - 1].omega12;
    t.neighbour_d_omega01.push_back(d01);
    t.neighbour_d_omega12.push_back(d12);
    min01 = std::min(min01, std::abs(d01));
    min12 = std::min(min12, std::abs(d12));
  }
  if (t.sites.size() > 1) {
    t.min_neighbour_d_omega01 = min01;
    t.min_neighbour_d_omega12 = min12;
  }
  return t;
}

SiteTable site_frequencies(const ChainSolution& chain, const IonSpecies& species,
                           const TrapConfig& trap) {
  return site_frequencies(chain, species, trap.b0, trap.b);
}

double m_uniformity(const ChainSolution& chain, const IonSpecies& species, const TrapConfig& trap) {
  const double centre = m_operator(species, std::abs(trap.b0))[1];
  double worst = 0.0;
  for (double z : chain.z0) {
    worst = std::max(worst, std::abs(m_operator(species, std::abs(trap.b0 + trap.b * z))[1] - centre));
  }
  return worst;
}

double m_spread(const ChainSolution& chain, const IonSpecies& species, double b0, double b) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double z : chain.z0) {
    const double m = m_operator(species, std::abs(b0 + b * z))[1];
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  return chain.z0.empty() ? 0.0 : hi - lo;
}

}  // namespace spinmol

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

#include "spinmol/window.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"
#include "spinmol/zeeman.hpp"

namespace spinmol {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Smallest b in (0, cap] with exceeds(b) true, assuming exceeds flips once;
// +inf if it never does.
double threshold(const std::function<bool(double)>& exceeds, double cap) {
  double lo = 0.0;
  double hi = 1e-6;
  while (!exceeds(hi)) {
    lo = hi;
    if (hi >= cap) return kInf;
    hi = std::min(2.0 * hi, cap);
  }
  for (int i = 0; i < 200 && hi - lo > 1e-13 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (exceeds(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

GradientBounds first_principles_bounds(const ChainSolution& chain, const IonSpecies& species,
                                       double b0, double epsilon_m, const WindowOptions& options) {
  GradientBounds out;
  const double band = 2.0 * chain.mode_freqs[chain.size() - 1] + chain.nu1;
  if (chain.size() > 1) {
    out.b_min = threshold(
        [&](double b) {
          return site_frequencies(chain, species, b0, b).min_neighbour_d_omega01 >= band;
        },
        options.b_probe_max);
  }
  out.b_max = threshold([&](double b) { return m_spread(chain, species, b0, b) > epsilon_m; },
                        options.b_probe_max);
  out.b_max_unbounded = std::isinf(out.b_max);
  out.feasible = out.b_min <= out.b_max;
  return out;
}

GradientBounds closed_form_bounds(int n_ions, double nu1_value) {
  const double n = n_ions;
  GradientBounds out;
  out.b_max = 0.03 * std::pow(n, -0.441) * std::pow(nu1_value, 2.0 / 3.0);
  out.b_min = 1.5e-9 * std::pow(nu1_value, 5.0 / 3.0) *
              (3.2 * std::pow(n, 0.559) + 0.5 * std::pow(n, 1.559));
  out.feasible = out.b_min <= out.b_max;
  return out;
}

GradientWindow gradient_window(const IonSpecies& species, const TrapConfig& trap, double epsilon_m,
                               const WindowOptions& options) {
  if (!(epsilon_m > 0.0 && epsilon_m < 1.0)) {
    throw InvalidArgument("gradient_window: epsilon_M must lie in (0, 1)");
  }
  const ChainSolution chain = solve_chain(species, trap);
  const GradientBounds fp = first_principles_bounds(chain, species, trap.b0, epsilon_m, options);

  GradientWindow w;
  w.b_min = fp.b_min;
  w.b_max = fp.b_max;
  w.feasible = fp.feasible;
  w.b_max_unbounded = fp.b_max_unbounded;
  w.epsilon_m = epsilon_m;
  w.motional_band = 2.0 * chain.mode_freqs[chain.size() - 1] + chain.nu1;
  w.closed_form_hz = closed_form_bounds(trap.n_ions, trap.nu1 / constants::kTwoPi);
  w.closed_form_rad_s = closed_form_bounds(trap.n_ions, trap.nu1);

  for (int n = 2; n <= options.max_ions_scan; ++n) {
    TrapConfig probe = trap;
    probe.n_ions = n;
    const ChainSolution c = n == trap.n_ions ? chain : solve_chain(species, probe);
    const GradientBounds b = first_principles_bounds(c, species, trap.b0, epsilon_m, options);
    if (b.b_min > trap.b) break;  // b_min only grows with N
    if (trap.b <= b.b_max) w.max_ions_estimate = n;
  }
  return w;
}

double perturbation_ratio(const ChainSolution& chain, const IonSpecies& species,
                          const TrapConfig& trap) {
  if (chain.size() != trap.n_ions) throw InvalidArgument("perturbation_ratio: chain size mismatch");
  const auto m = m_operator(species, std::abs(trap.b0));
  const double m_max = std::max({std::abs(m[0]), std::abs(m[1]), std::abs(m[2])});
  const double gradient = species.g_j * constants::kBohrMagneton * trap.b / constants::kHbar;
  double worst = 0.0;
  for (int l = 0; l < chain.size(); ++l) {
    const double nu = chain.mode_freqs[l];
    const double zpf = std::sqrt(constants::kHbar / (2.0 * species.mass_kg * nu));
    const double overlap = std::abs(chain.mode_matrix.row(l).sum());
    worst = std::max(worst, gradient * m_max * overlap * zpf / nu);
  }
  return worst;
}

}  // namespace spinmol

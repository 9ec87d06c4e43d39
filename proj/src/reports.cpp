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

#include "spinmol/reports.hpp"

#include <cmath>
#include <limits>

#include "spinmol/constants.hpp"
#include "spinmol/zeeman.hpp"

namespace spinmol {
namespace {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

// JSON has no infinity.
json bound_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json bounds_json(const GradientBounds& b) {
  return {{"b_min_T_per_m", bound_json(b.b_min)},
          {"b_max_T_per_m", bound_json(b.b_max)},
          {"feasible", b.feasible},
          {"b_max_unbounded", b.b_max_unbounded}};
}

json trap_json(const TrapConfig& trap) {
  return {{"n_ions", trap.n_ions},
          {"nu1_rad_s", trap.nu1},
          {"b0_T", trap.b0},
          {"gradient_T_per_m", trap.b}};
}

json gradient_window_json(const TrapConfig& trap, const ChainSolution& chain, const GradientWindow& w) {
  const Spacing spacing = min_spacing(trap.n_ions, chain.length_scale_gamma);
  return {{"epsilon_m", w.epsilon_m},
          {"motional_band_rad_s", w.motional_band},
          {"first_principles", {{"b_min_T_per_m", bound_json(w.b_min)},
                                {"b_max_T_per_m", bound_json(w.b_max)},
                                {"feasible", w.feasible},
                                {"b_max_unbounded", w.b_max_unbounded}}},
          {"closed_form_nu1_hz", bounds_json(w.closed_form_hz)},
          {"closed_form_nu1_rad_s", bounds_json(w.closed_form_rad_s)},
          {"max_ions_estimate", w.max_ions_estimate},
          {"gradient_T_per_m", trap.b},
          {"min_spacing_fit_m", spacing.minimum},
          {"min_spacing_conservative_m", spacing.conservative}};
}

}  // namespace

json chain_report(const IonSpecies& species, const TrapConfig& trap, const ChainSolution& chain,
                  const CouplingMatrix& coupling, const GradientWindow& window) {
  Eigen::VectorXd ratios = chain.mode_freqs / chain.nu1;
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < chain.z0.size(); ++i) min_gap = std::min(min_gap, chain.z0[i] - chain.z0[i - 1]);
  return {{"species", species.name},
          {"trap", trap_json(trap)},
          {"length_scale_m", chain.length_scale_gamma},
          {"u", chain.u},
          {"z0_m", chain.z0},
          {"min_neighbour_distance_m", chain.z0.size() > 1 ? json(min_gap) : json(nullptr)},
          {"mode_freqs_rad_s", vector_json(chain.mode_freqs)},
          {"mode_freq_ratios", vector_json(ratios)},
          {"mode_matrix", matrix_json(chain.mode_matrix)},
          {"j_matrix_rad_s", matrix_json(coupling.j)},
          {"gradient_window", gradient_window_json(trap, chain, window)}};
}

json coupling_report(const TrapConfig& trap, const CouplingMatrix& coupling) {
  json nn_rad = json::array();
  json nn_hz = json::array();
  for (int i = 0; i + 1 < coupling.size(); ++i) {
    nn_rad.push_back(coupling.j(i, i + 1));
    nn_hz.push_back(coupling.j(i, i + 1) / constants::kTwoPi);
  }
  return {{"trap", trap_json(trap)},
          {"j_matrix_rad_s", matrix_json(coupling.j)},
          {"nearest_neighbour_j_rad_s", nn_rad},
          {"nearest_neighbour_j_hz", nn_hz}};
}

json breit_rabi_report(const IonSpecies& species, const TrapConfig& trap, const ChainSolution& chain) {
  const BreitRabiPoint p = breit_rabi_energies(species, trap.b0);
  const SiteTable table = site_frequencies(chain, species, trap);
  json ions = json::array();
  for (const auto& s : table.sites) {
    ions.push_back({{"z_m", s.z},
                    {"B_T", s.field},
                    {"omega01_rad_s", s.omega01},
                    {"omega12_rad_s", s.omega12},
                    {"m_diag", s.m_diag}});
  }
  return {{"species", species.name},
          {"trap", trap_json(trap)},
          {"centre",
           {{"B_T", p.field},
            {"x", p.x},
            {"in_breit_rabi_region", p.in_breit_rabi_region},
            {"level_energies_J", p.level_energies},
            {"f0_energy_J", p.f0_energy},
            {"omega01_rad_s", p.omega01},
            {"omega12_rad_s", p.omega12},
            {"omega01_hz", p.omega01 / constants::kTwoPi},
            {"omega12_hz", p.omega12 / constants::kTwoPi},
            {"sum_rad_s", p.sum},
            {"difference_rad_s", p.difference},
            {"d_omega01_dB_rad_s_per_T", p.d_omega01_db},
            {"d_omega12_dB_rad_s_per_T", p.d_omega12_db},
            {"m_diag", p.m_diag}}},
          {"ions", ions},
          {"neighbour_d_omega01_rad_s", table.neighbour_d_omega01},
          {"neighbour_d_omega12_rad_s", table.neighbour_d_omega12},
          {"min_neighbour_d_omega01_rad_s", table.min_neighbour_d_omega01},
          {"min_neighbour_d_omega12_rad_s", table.min_neighbour_d_omega12}};
}

json window_report(const IonSpecies& species, const TrapConfig& trap, const ChainSolution& chain,
                   const GradientWindow& window) {
  json out = gradient_window_json(trap, chain, window);
  out["species"] = species.name;
  out["trap"] = trap_json(trap);
  out["perturbation_ratio"] = perturbation_ratio(chain, species, trap);
  out["m_spread_at_gradient"] = m_spread(chain, species, trap.b0, trap.b);
  return out;
}

json unitary_json(const RegisterUnitary& u) {
  json out{{"n_qutrits", u.qutrits()},
           {"dimension", u.dimension()},
           {"representation", u.is_diagonal() ? "diagonal" : "dense"}};
  if (u.is_diagonal()) {
    json d = json::array();
    for (Eigen::Index i = 0; i < u.dimension(); ++i) d.push_back({u.diagonal()(i).real(), u.diagonal()(i).imag()});
    out["diagonal"] = std::move(d);
  } else {
    const Eigen::MatrixXcd m = u.to_dense();
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(std::move(row));
    }
    out["matrix"] = std::move(rows);
  }
  return out;
}

json readout_json(const ReadoutResult& result) {
  json ions = json::array();
  for (std::size_t q = 0; q < result.counts.size(); ++q) {
    const auto& c = result.counts[q];
    ions.push_back({{"ion", q},
                    {"counts", c},
                    {"frequencies", {static_cast<double>(c[0]) / result.shots, static_cast<double>(c[1]) / result.shots,
                                     static_cast<double>(c[2]) / result.shots}}});
  }
  json out{{"shots", result.shots}, {"seed", result.seed}, {"ions", ions}};
  if (!result.joint.empty()) out["joint_counts"] = result.joint;
  return out;
}

}  // namespace spinmol

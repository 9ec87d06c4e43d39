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

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spinmol/species.hpp"

namespace spinmol {

// Axial mechanics of N ions in a harmonic trap. Positions are expressed in
// units of the length scale gamma = (q^2 / (4 pi eps0 m nu1^2))^(1/3), in
// which the potential is sum(u^2)/2 + sum_{n<m} 1/|u_n - u_m|.

struct EquilibriumOptions {
  int max_iterations = 200;
  /// Target for the largest force component.
  double tolerance = 1e-13;
};

/// Dimensionless equilibrium positions, ascending and antisymmetric about 0.
/// Damped Newton on the force; throws ConvergenceError at the iteration cap.
std::vector<double> solve_equilibrium(int n_ions, const EquilibriumOptions& options = {});

/// Largest force component at `u` (zero at equilibrium).
double equilibrium_residual(std::span<const double> u);

/// gamma in meters.
double length_scale(const IonSpecies& species, double nu1);

/// Dimensionless Hessian of the potential at `u`; throws on coincident ions.
Eigen::MatrixXd hessian(std::span<const double> u);

struct NormalModes {
  /// nu_l / nu1, ascending.
  Eigen::VectorXd frequency_ratios;
  /// Row l is the l-th eigenvector, so hessian = D^T diag(ratio^2) D. The
  /// largest-magnitude entry of each row (first one on ties) is positive.
  Eigen::MatrixXd mode_matrix;
};

/// Diagonalises a symmetric positive-definite Hessian.
NormalModes normal_modes(const Eigen::MatrixXd& hessian);

struct ChainSolution {
  std::vector<double> u;
  double length_scale_gamma = 0.0;
  std::vector<double> z0;  // meters
  Eigen::MatrixXd hessian;
  Eigen::VectorXd mode_freqs;  // rad/s, ascending
  Eigen::MatrixXd mode_matrix;
  double nu1 = 0.0;

  int size() const { return static_cast<int>(u.size()); }
};

ChainSolution solve_chain(const IonSpecies& species, const TrapConfig& trap);

/// Pairwise couplings J_nm in rad/s, zero diagonal.
struct CouplingMatrix {
  Eigen::MatrixXd j;

  int size() const { return static_cast<int>(j.rows()); }
};

/// Mode-sum form J_nm = (g_J mu_B b)^2 / (2 m hbar) sum_l D_ln D_lm / nu_l^2,
/// checked against the Hessian-inverse form to 1e-10 relative.
CouplingMatrix coupling_matrix(const ChainSolution& chain, const IonSpecies& species,
                               const TrapConfig& trap);

/// (g_J mu_B b)^2 / (2 hbar) * (m nu1^2 hessian)^-1, off-diagonal part.
CouplingMatrix coupling_from_hessian_inverse(const ChainSolution& chain,
                                             const IonSpecies& species, const TrapConfig& trap);

struct Spacing {
  double minimum = 0.0;       // 2.018 gamma N^-0.559
  double conservative = 0.0;  // 1.5 x minimum
};

Spacing min_spacing(int n_ions, double gamma);

}  // namespace spinmol

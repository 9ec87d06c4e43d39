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

#include "spinmol/chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"

namespace spinmol {
namespace {

std::vector<double> forces(std::span<const double> u) {
  const auto n = u.size();
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    double f = u[i];
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      const double d = u[i] - u[k];
      f += (k < i ? -1.0 : 1.0) / (d * d);
    }
    g[i] = f;
  }
  return g;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double potential(std::span<const double> u) {
  double v = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    v += 0.5 * u[i] * u[i];
    for (std::size_t k = i + 1; k < u.size(); ++k) v += 1.0 / std::abs(u[k] - u[i]);
  }
  return v;
}

bool strictly_increasing(const std::vector<double>& u) {
  for (std::size_t i = 1; i < u.size(); ++i) {
    if (!(u[i] > u[i - 1])) return false;
  }
  return true;
}

}  // namespace

double equilibrium_residual(std::span<const double> u) { return max_abs(forces(u)); }

std::vector<double> solve_equilibrium(int n_ions, const EquilibriumOptions& options) {
  if (n_ions < 1) throw InvalidArgument("solve_equilibrium: n_ions must be at least 1");
  if (n_ions == 1) return {0.0};

  const int n = n_ions;
  std::vector<double> u(n);
  const double half = 0.25 * n;
  for (int i = 0; i < n; ++i) u[i] = -half + 2.0 * half * i / (n - 1);

  std::vector<double> g = forces(u);
  double residual = max_abs(g);
  int stalled = 0;
  for (int iter = 0; iter < options.max_iterations && residual > options.tolerance; ++iter) {
    const Eigen::MatrixXd h = hessian(u);
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(g.data(), n);
    const Eigen::VectorXd step = -h.llt().solve(rhs);

    const double v0 = potential(u);
    const double slope = rhs.dot(step);
    double t = 1.0;
    std::vector<double> trial(n);
    bool accepted = false;
    for (int k = 0; k < 60; ++k, t *= 0.5) {
      for (int i = 0; i < n; ++i) trial[i] = u[i] + t * step[i];
      if (!strictly_increasing(trial)) continue;
      const auto gt = forces(trial);
      // Near the root the potential is flat to rounding, so a shrinking force
      // is accepted as well as an Armijo decrease.
      if (potential(trial) <= v0 + 1e-4 * t * slope || max_abs(gt) < residual) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    const double previous = residual;
    u = trial;
    g = forces(u);
    residual = max_abs(g);
    if (residual >= previous) {
      if (++stalled >= 3) break;
    } else {
      stalled = 0;
    }
  }

  // Enforce the mirror symmetry of the exact solution.
  std::vector<double> sym(n);
  for (int i = 0; i < n; ++i) sym[i] = 0.5 * (u[i] - u[n - 1 - i]);
  if (n % 2 == 1) sym[n / 2] = 0.0;
  residual = equilibrium_residual(sym);
  if (!(residual <= 1e-12)) {
    throw ConvergenceError("solve_equilibrium: no convergence for N=" + std::to_string(n) +
                               " (residual " + std::to_string(residual) + ")",
                           residual);
  }
  return sym;
}

double length_scale(const IonSpecies& species, double nu1) {
  species.validate();
  if (!(nu1 > 0.0)) throw InvalidArgument("length_scale: nu1 must be positive");
  const double q2 = species.charge_c * species.charge_c;
  return std::cbrt(q2 / (4.0 * constants::kPi * constants::kVacuumPermittivity * species.mass_kg *
                         nu1 * nu1));
}

Eigen::MatrixXd hessian(std::span<const double> u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = i + 1; k < n; ++k) {
      const double d = std::abs(u[i] - u[k]);
      if (!(d > 0.0)) throw InvalidArgument("hessian: coincident ion positions");
      const double c = 2.0 / (d * d * d);
      h(i, k) = -c;
      h(k, i) = -c;
      h(i, i) += c;
      h(k, k) += c;
    }
  }
  return h;
}

NormalModes normal_modes(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() == 0) throw InvalidArgument("normal_modes: square matrix required");
  if (!h.isApprox(h.transpose(), 1e-12)) throw InvalidArgument("normal_modes: Hessian not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw StructuralError("normal_modes: eigensolver failed");
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  if (!(lambda.minCoeff() > 0.0)) {
    throw InvalidArgument("normal_modes: non-positive eigenvalue, not an equilibrium");
  }
  NormalModes modes;
  modes.frequency_ratios = lambda.array().sqrt();
  modes.mode_matrix = solver.eigenvectors().transpose();
  for (Eigen::Index l = 0; l < modes.mode_matrix.rows(); ++l) {
    auto row = modes.mode_matrix.row(l);
    const double peak = row.cwiseAbs().maxCoeff();
    for (Eigen::Index k = 0; k < row.size(); ++k) {
      if (std::abs(row(k)) >= peak * (1.0 - 1e-9)) {
        if (row(k) < 0.0) row *= -1.0;
        break;
      }
    }
  }
  return modes;
}

ChainSolution solve_chain(const IonSpecies& species, const TrapConfig& trap) {
  species.validate();
  trap.validate();
  ChainSolution c;
  c.nu1 = trap.nu1;
  c.u = solve_equilibrium(trap.n_ions);
  c.length_scale_gamma = length_scale(species, trap.nu1);
  c.z0.resize(c.u.size());
  std::transform(c.u.begin(), c.u.end(), c.z0.begin(),
                 [&](double x) { return x * c.length_scale_gamma; });
  c.hessian = hessian(c.u);
  NormalModes modes = normal_modes(c.hessian);
  c.mode_freqs = modes.frequency_ratios * trap.nu1;
  c.mode_matrix = std::move(modes.mode_matrix);
  return c;
}

namespace {

double coupling_prefactor(const IonSpecies& species, const TrapConfig& trap) {
  const double force = species.g_j * constants::kBohrMagneton * trap.b;
  return force * force / (2.0 * constants::kHbar);
}

void check_chain(const ChainSolution& chain, const TrapConfig& trap) {
  if (chain.size() != trap.n_ions) throw InvalidArgument("coupling: chain size differs from trap.n_ions");
  if (chain.mode_matrix.rows() != chain.size()) throw InvalidArgument("coupling: chain has no modes");
}

}  // namespace

CouplingMatrix coupling_from_hessian_inverse(const ChainSolution& chain, const IonSpecies& species,
                                             const TrapConfig& trap) {
  check_chain(chain, trap);
  const Eigen::MatrixXd stiffness = species.mass_kg * trap.nu1 * trap.nu1 * chain.hessian;
  CouplingMatrix out;
  out.j = coupling_prefactor(species, trap) * stiffness.inverse();
  out.j.diagonal().setZero();
  return out;
}

CouplingMatrix coupling_matrix(const ChainSolution& chain, const IonSpecies& species,
                               const TrapConfig& trap) {
  check_chain(chain, trap);
  species.validate();
  const Eigen::Index n = chain.size();
  const double pref = coupling_prefactor(species, trap) / species.mass_kg;
  const Eigen::VectorXd inv_nu2 = chain.mode_freqs.array().square().inverse();
  const Eigen::MatrixXd& d = chain.mode_matrix;
  CouplingMatrix out;
  out.j = pref * (d.transpose() * inv_nu2.asDiagonal() * d);
  out.j = 0.5 * (out.j + out.j.transpose()).eval();
  out.j.diagonal().setZero();
  if (n > 1 && pref > 0.0) {
    const Eigen::MatrixXd other = coupling_from_hessian_inverse(chain, species, trap).j;
    const double scale = other.cwiseAbs().maxCoeff();
    const double diff = (out.j - other).cwiseAbs().maxCoeff();
    if (diff > 1e-10 * scale) {
      throw StructuralError("coupling_matrix: mode-sum and Hessian-inverse forms disagree");
    }
  }
  return out;
}

Spacing min_spacing(int n_ions, double gamma) {
  if (n_ions < 2) throw InvalidArgument("min_spacing: needs at least two ions");
  if (!(gamma > 0.0)) throw InvalidArgument("min_spacing: gamma must be positive");
  Spacing s;
  s.minimum = 2.018 * gamma * std::pow(static_cast<double>(n_ions), -0.559);
  s.conservative = 1.5 * s.minimum;
  return s;
}

}  // namespace spinmol

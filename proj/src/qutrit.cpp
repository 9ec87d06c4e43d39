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

#include "spinmol/qutrit.hpp"

#include <cmath>
#include <string>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"

namespace spinmol {
namespace {

using constants::kPi;
constexpr Complex kI{0.0, 1.0};

Gate3 block_rotation(int i, int j, double theta, double phi) {
  Gate3 g = Gate3::Identity();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  g(i, i) = c;
  g(j, j) = c;
  g(i, j) = kI * std::polar(1.0, -phi) * s;
  g(j, i) = kI * std::polar(1.0, phi) * s;
  return g;
}

Gate3 strip_to_diagonal(const Gate3& g, const char* what) {
  Gate3 d = Gate3::Zero();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r != c && std::abs(g(r, c)) > 1e-14) {
        throw StructuralError(std::string(what) + ": composite is not diagonal");
      }
    }
    d(r, r) = g(r, r);
  }
  return d;
}

}  // namespace

std::string_view to_string(Transition t) {
  switch (t) {
    case Transition::k01: return "01";
    case Transition::k12: return "12";
    case Transition::k02: return "02";
  }
  return "??";
}

Transition parse_transition(std::string_view token) {
  if (token == "01") return Transition::k01;
  if (token == "12") return Transition::k12;
  if (token == "02") return Transition::k02;
  throw InvalidArgument("unknown transition '" + std::string(token) + "'");
}

Gate3 u01(double theta, double phi) { return block_rotation(0, 1, theta, phi); }
Gate3 u12(double theta, double phi) { return block_rotation(1, 2, theta, phi); }

Gate3 u02(double theta, double phi) {
  const Gate3 x = u01(kPi / 2.0, 0.0);
  return x * u12(theta, phi) * x;
}

Gate3 rotation(Transition t, double theta, double phi) {
  switch (t) {
    case Transition::k01: return u01(theta, phi);
    case Transition::k12: return u12(theta, phi);
    case Transition::k02: return u02(theta, phi);
  }
  throw InvalidArgument("rotation: bad transition");
}

Gate3 pi_pulse(Transition t) { return rotation(t, kPi / 2.0, 0.0); }
Gate3 hadamard(Transition t) { return rotation(t, kPi / 4.0, kPi / 2.0); }

Gate3 z_rot(Transition t, double rho) {
  if (t == Transition::k02) {
    const Gate3 x = pi_pulse(Transition::k01);
    return strip_to_diagonal(x.adjoint() * z_rot(Transition::k12, rho) * x, "z_rot(02)");
  }
  const Gate3 h = hadamard(t);
  return strip_to_diagonal(h * rotation(t, rho, 0.0) * h.adjoint(), "z_rot");
}

Gate3 u_d(double rho, double sigma) {
  return z_rot(Transition::k02, rho) * z_rot(Transition::k01, sigma);
}

std::pair<double, double> u_d_phases(const Gate3& g) {
  const Complex det = g.determinant();
  const Complex unphase = std::polar(1.0, -std::arg(det) / 3.0);
  return {std::arg(g(2, 2) * unphase), std::arg(g(1, 1) * unphase)};
}

const DifferentialPhaseCalibration& u_d_calibration() {
  static const DifferentialPhaseCalibration calibration = [] {
    constexpr double probe = 0.25;
    DifferentialPhaseCalibration c;
    const auto [r1, s1] = u_d_phases(u_d(probe, 0.0));
    const auto [r2, s2] = u_d_phases(u_d(0.0, probe));
    c.forward << r1 / probe, r2 / probe, s1 / probe, s2 / probe;
    c.inverse = c.forward.inverse();
    return c;
  }();
  return calibration;
}

Gate3 u_d_for_phases(double rho_target, double sigma_target) {
  const Eigen::Vector2d angles = u_d_calibration().inverse * Eigen::Vector2d(rho_target, sigma_target);
  return u_d(angles[0], angles[1]);
}

Gate3 fourier() {
  Gate3 f;
  const double norm = 1.0 / std::sqrt(3.0);
  for (int l = 0; l < 3; ++l) {
    for (int j = 0; j < 3; ++j) f(l, j) = std::polar(norm, 2.0 * kPi * l * j / 3.0);
  }
  return f;
}

std::array<double, 3> m_ideal_diagonal() { return {-1.0, 1.0 / std::sqrt(2.0), 1.0}; }

Eigen::Matrix3cd m_ideal() {
  const auto d = m_ideal_diagonal();
  return Eigen::Vector3cd(d[0], d[1], d[2]).asDiagonal();
}

Eigen::Matrix3cd lambda3() { return Eigen::Vector3cd(0.0, -1.0, 1.0).asDiagonal(); }

Eigen::Matrix3cd lambda8() {
  const double s = 1.0 / std::sqrt(3.0);
  return Eigen::Vector3cd(-2.0 * s, s, s).asDiagonal();
}

Eigen::Matrix3cd GellMannCoeffs::reconstruct() const {
  return a0 * Eigen::Matrix3cd::Identity() + a3 * lambda3() + a8 * lambda8();
}

GellMannCoeffs gellmann_coeffs(const Eigen::Matrix3cd& m) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r != c && m(r, c) != Complex{}) throw InvalidArgument("gellmann_coeffs: matrix is not diagonal");
    }
    if (m(r, r).imag() != 0.0) throw InvalidArgument("gellmann_coeffs: diagonal is not real");
  }
  GellMannCoeffs g;
  g.a0 = m.trace().real() / 3.0;
  g.a3 = (m * lambda3()).trace().real() / 2.0;
  g.a8 = (m * lambda8()).trace().real() / 2.0;
  return g;
}

double unitarity_error(const Eigen::MatrixXcd& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

Gate3 Su3Decomposition::reconstruct() const {
  Gate3 u = Gate3::Identity();
  for (const auto& r : rotations) u = u * r.matrix();
  return std::polar(1.0, global_phase) * u * z_rot(Transition::k01, z01) * z_rot(Transition::k12, z12);
}

Su3Decomposition su3_decompose(const Gate3& u) {
  if (!(unitarity_error(u) <= 1e-9)) throw InvalidArgument("su3_decompose: input is not unitary");

  Su3Decomposition out;
  Gate3 w = u;
  // Zero w(j, col) against the pivot w(i, col) with a rotation on rows (i, j).
  auto eliminate = [&](Transition t, int i, int j, int col) {
    const Complex a = w(i, col);
    const Complex b = w(j, col);
    if (std::abs(b) == 0.0) return;
    const double theta = std::atan2(std::abs(b), std::abs(a));
    const Complex a_phase = std::abs(a) > 0.0 ? a / std::abs(a) : Complex{1.0};
    const double phi = std::arg(kI * (b / std::abs(b)) / a_phase);
    w = rotation(t, theta, phi) * w;
    out.rotations.push_back({t, -theta, phi});  // the inverse rotation
  };
  eliminate(Transition::k12, 1, 2, 0);
  eliminate(Transition::k01, 0, 1, 0);
  eliminate(Transition::k12, 1, 2, 1);

  // w is now diagonal up to rounding: split off the global phase and express
  // the SU(3) remainder as Z01(a) Z12(b) = diag(e^{ia}, e^{i(b-a)}, e^{-ib}).
  const Complex det = w(0, 0) * w(1, 1) * w(2, 2);
  out.global_phase = std::arg(det) / 3.0;
  const Complex unphase = std::polar(1.0, -out.global_phase);
  out.z01 = std::arg(w(0, 0) * unphase);
  out.z12 = -std::arg(w(2, 2) * unphase);
  return out;
}

nlohmann::json gate_to_json(const Gate3& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int r = 0; r < 3; ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (int c = 0; c < 3; ++c) row.push_back({g(r, c).real(), g(r, c).imag()});
    rows.push_back(row);
  }
  return {{"basis", "ascending"}, {"convention", "cos-theta"}, {"matrix", rows}};
}

}  // namespace spinmol

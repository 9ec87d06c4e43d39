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
#include <complex>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace spinmol {

// Single-qutrit gates in the ascending basis |0>, |1>, |2>.
//
// Two-level rotations use the full-angle convention
//   U_ij(theta, phi) = [[cos theta, i e^{-i phi} sin theta],
//                       [i e^{+i phi} sin theta, cos theta]]   on (|i>, |j>), i < j,
// which is the printed |2>,|1>,|0> form with the basis reversed and theta/2
// replaced by theta. With it U(pi/2, 0) swaps populations and
// U(pi/4, pi/2) is a Hadamard that turns U(rho, 0) into a diagonal phase.

using Gate3 = Eigen::Matrix3cd;
using Complex = std::complex<double>;

enum class Transition { k01, k12, k02 };

std::string_view to_string(Transition t);
/// Accepts "01", "12", "02"; throws InvalidArgument otherwise.
Transition parse_transition(std::string_view token);

Gate3 u01(double theta, double phi);
Gate3 u12(double theta, double phi);
/// u01(pi/2, 0) * u12(theta, phi) * u01(pi/2, 0): the |0> <-> |2> rotation
/// through the forbidden transition, with sandwich phases on |0> and |1>.
Gate3 u02(double theta, double phi);
Gate3 rotation(Transition t, double theta, double phi);

Gate3 pi_pulse(Transition t);
Gate3 hadamard(Transition t);

/// Diagonal phase diag(e^{+i rho}, e^{-i rho}) on the (lower, upper) level of
/// the pair, identity on the third. 01 and 12 are built as H U(rho, 0) H^dagger;
/// 02 is the 12 phase conjugated by the 01 pi-pulse, X01^dagger Z12 X01.
Gate3 z_rot(Transition t, double rho);

/// Differential phase Z02(rho) Z01(sigma).
Gate3 u_d(double rho, double sigma);

/// Linear map between the z_rot angles fed to u_d and the phases it realises,
/// read as diag(e^{-i(rho'+sigma')}, e^{i sigma'}, e^{i rho'}). Measured once
/// numerically from u_d itself.
struct DifferentialPhaseCalibration {
  Eigen::Matrix2d forward;  // (rho, sigma) -> (rho', sigma')
  Eigen::Matrix2d inverse;
};

const DifferentialPhaseCalibration& u_d_calibration();
/// (rho', sigma') realised by a diagonal gate, after removing its global phase.
std::pair<double, double> u_d_phases(const Gate3& diagonal_gate);
/// u_d gate realising the requested (rho', sigma').
Gate3 u_d_for_phases(double rho_target, double sigma_target);

/// F|j> = (1/sqrt3) sum_l e^{2 pi i l j / 3} |l>.
Gate3 fourier();

/// Idealised coupling operator diag(-1, 1/sqrt2, 1).
Eigen::Matrix3cd m_ideal();
std::array<double, 3> m_ideal_diagonal();

/// Diagonal Gell-Mann generators in the ascending basis (the printed
/// diag(1,-1,0) and diag(1,1,-2)/sqrt3 with the basis reversed).
Eigen::Matrix3cd lambda3();
Eigen::Matrix3cd lambda8();

struct GellMannCoeffs {
  double a0 = 0.0;
  double a3 = 0.0;
  double a8 = 0.0;

  Eigen::Matrix3cd reconstruct() const;
};

/// Throws InvalidArgument unless `m` is real diagonal.
GellMannCoeffs gellmann_coeffs(const Eigen::Matrix3cd& m);

/// max |U^dagger U - 1|.
double unitarity_error(const Eigen::MatrixXcd& u);

struct TwoLevelRotation {
  Transition transition = Transition::k01;
  double theta = 0.0;
  double phi = 0.0;

  Gate3 matrix() const { return rotation(transition, theta, phi); }
};

/// U = e^{i global_phase} R_1 R_2 ... Z01(z01) Z12(z12).
struct Su3Decomposition {
  std::vector<TwoLevelRotation> rotations;  // at most three, product order
  double z01 = 0.0;
  double z12 = 0.0;
  double global_phase = 0.0;

  Gate3 reconstruct() const;
};

/// Givens elimination with u01 / u12 rotations; throws InvalidArgument for a
/// non-unitary input.
Su3Decomposition su3_decompose(const Gate3& u);

nlohmann::json gate_to_json(const Gate3& g);

}  // namespace spinmol

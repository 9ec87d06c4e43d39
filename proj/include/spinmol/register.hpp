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

#include <Eigen/Dense>

#include "spinmol/chain.hpp"
#include "spinmol/qutrit.hpp"

namespace spinmol {

// N-qutrit registers. Qutrit 0 is the most significant base-3 digit of a
// basis index, so |j, k> of two qutrits has index 3 j + k.

inline constexpr int kMaxDiagonalQutrits = 15;
inline constexpr int kMaxDenseQutrits = 7;

Eigen::Index register_dimension(int n_qutrits);
/// Base-3 digit of `index` belonging to `qutrit`.
int qutrit_digit(Eigen::Index index, int qutrit, int n_qutrits);

/// 3^N x 3^N unitary stored as a diagonal while every factor was diagonal,
/// promoted to a dense matrix on the first non-diagonal composition.
class RegisterUnitary {
 public:
  static RegisterUnitary identity(int n_qutrits);
  static RegisterUnitary from_diagonal(int n_qutrits, Eigen::VectorXcd diagonal);
  static RegisterUnitary from_dense(int n_qutrits, Eigen::MatrixXcd matrix);

  int qutrits() const { return n_; }
  Eigen::Index dimension() const { return register_dimension(n_); }
  bool is_diagonal() const { return diagonal_; }

  /// Throws if the unitary is dense.
  const Eigen::VectorXcd& diagonal() const;
  Eigen::MatrixXcd to_dense() const;
  Complex operator()(Eigen::Index row, Eigen::Index col) const;

  void promote();
  /// this <- embed(gate, qutrit) * this
  void apply_gate(const Gate3& gate, int qutrit);
  /// this <- diag(phases) * this
  void apply_diagonal(const Eigen::VectorXcd& phases);

  RegisterUnitary operator*(const RegisterUnitary& rhs) const;
  RegisterUnitary adjoint() const;
  double unitarity_error() const;

 private:
  RegisterUnitary(int n, bool diagonal) : n_(n), diagonal_(diagonal) {}

  int n_ = 0;
  bool diagonal_ = true;
  Eigen::VectorXcd d_;
  Eigen::MatrixXcd m_;
};

RegisterUnitary embed(const Gate3& gate, int qutrit, int n_qutrits);

/// exp(-i theta M_a M_b), diagonal.
RegisterUnitary mm_pair(double theta, int qutrit_a, int qutrit_b, int n_qutrits,
                        const std::array<double, 3>& m = m_ideal_diagonal());
Eigen::VectorXcd mm_pair_phases(double theta, int qutrit_a, int qutrit_b, int n_qutrits,
                                const std::array<double, 3>& m);

/// exp(-i duration sum_{n<m} J_nm M_n M_m) with J in rad/s, diagonal.
RegisterUnitary mm_chain(double duration, const CouplingMatrix& coupling, int n_qutrits,
                         const std::array<double, 3>& m = m_ideal_diagonal());
Eigen::VectorXcd mm_chain_phases(double duration, const CouplingMatrix& coupling, int n_qutrits,
                                 const std::array<double, 3>& m);

/// |tr(U^dagger V)| / d.
double fidelity_up_to_global_phase(const RegisterUnitary& u, const RegisterUnitary& v);

/// Largest entrywise |u - v|.
double max_deviation(const RegisterUnitary& u, const RegisterUnitary& v);

/// Largest entrywise |u - e^{i a} 1| with a = arg tr(u); a is stored in
/// `phase` when given.
double identity_deviation_up_to_phase(const RegisterUnitary& u, double* phase = nullptr);

struct LocalPhaseMatch {
  bool equal = false;
  double fidelity = 0.0;  // of (L_1 x ... x L_N) U against the target
  /// Per-qutrit diagonal corrections e^{i phases[q][level]}, level 0 fixed at 0.
  std::vector<std::array<double, 3>> phases;
  double global_phase = 0.0;
};

/// Searches diagonal local gates L such that fidelity(L U, target) >= 1 - tol.
/// Coordinate ascent on the phases; deterministic.
LocalPhaseMatch equal_up_to_local_phases(const RegisterUnitary& u, const RegisterUnitary& target,
                                         double tol = 1e-9);

/// Product of per-qutrit diagonal phase gates as a register diagonal.
RegisterUnitary local_phase_gate(const std::vector<std::array<double, 3>>& phases);

class RegisterState {
 public:
  /// Basis state |digits...>, qutrit 0 first.
  static RegisterState basis(int n_qutrits, const std::vector<int>& digits = {});
  static RegisterState from_amplitudes(int n_qutrits, Eigen::VectorXcd amplitudes);

  int qutrits() const { return n_; }
  const Eigen::VectorXcd& amplitudes() const { return a_; }
  double norm() const { return a_.norm(); }

  void apply_gate(const Gate3& gate, int qutrit);
  void apply_diagonal(const Eigen::VectorXcd& phases);

 private:
  int n_ = 0;
  Eigen::VectorXcd a_;
};

}  // namespace spinmol

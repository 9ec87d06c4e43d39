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

#include "spinmol/register.hpp"

#include <cmath>
#include <string>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"

namespace spinmol {
namespace {

void check_qutrits(int n, int limit, const char* what) {
  if (n < 1 || n > limit) {
    throw InvalidArgument(std::string(what) + ": register size must lie in [1, " +
                          std::to_string(limit) + "]");
  }
}

void check_index(int qutrit, int n, const char* what) {
  if (qutrit < 0 || qutrit >= n) {
    throw InvalidArgument(std::string(what) + ": qutrit index " + std::to_string(qutrit) +
                          " out of range for " + std::to_string(n) + " qutrits");
  }
}

Eigen::Index stride_of(int qutrit, int n) { return register_dimension(n - 1 - qutrit); }

bool gate_is_diagonal(const Gate3& g) {
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      if (r != c && g(r, c) != Complex{}) return false;
    }
  }
  return true;
}

// v <- G v on every triple of entries that differ only in one digit. `data`
// holds `count` contiguous vectors of length `dim`.
void apply_gate_strided(Complex* data, Eigen::Index dim, Eigen::Index count, const Gate3& g,
                        Eigen::Index stride) {
  const Eigen::Index block = 3 * stride;
  for (Eigen::Index v = 0; v < count; ++v) {
    Complex* col = data + v * dim;
    for (Eigen::Index outer = 0; outer < dim; outer += block) {
      for (Eigen::Index inner = 0; inner < stride; ++inner) {
        Complex* p0 = col + outer + inner;
        Complex* p1 = p0 + stride;
        Complex* p2 = p1 + stride;
        const Complex x0 = *p0, x1 = *p1, x2 = *p2;
        *p0 = g(0, 0) * x0 + g(0, 1) * x1 + g(0, 2) * x2;
        *p1 = g(1, 0) * x0 + g(1, 1) * x1 + g(1, 2) * x2;
        *p2 = g(2, 0) * x0 + g(2, 1) * x1 + g(2, 2) * x2;
      }
    }
  }
}

Eigen::VectorXcd embedded_diagonal(const Gate3& g, int qutrit, int n) {
  const Eigen::Index dim = register_dimension(n);
  Eigen::VectorXcd d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const int k = qutrit_digit(i, qutrit, n);
    d[i] = g(k, k);
  }
  return d;
}

}  // namespace

Eigen::Index register_dimension(int n_qutrits) {
  Eigen::Index d = 1;
  for (int i = 0; i < n_qutrits; ++i) d *= 3;
  return d;
}

int qutrit_digit(Eigen::Index index, int qutrit, int n_qutrits) {
  return static_cast<int>((index / register_dimension(n_qutrits - 1 - qutrit)) % 3);
}

RegisterUnitary RegisterUnitary::identity(int n) {
  check_qutrits(n, kMaxDiagonalQutrits, "RegisterUnitary");
  RegisterUnitary u(n, true);
  u.d_ = Eigen::VectorXcd::Ones(register_dimension(n));
  return u;
}

RegisterUnitary RegisterUnitary::from_diagonal(int n, Eigen::VectorXcd diagonal) {
  check_qutrits(n, kMaxDiagonalQutrits, "RegisterUnitary");
  if (diagonal.size() != register_dimension(n)) throw InvalidArgument("RegisterUnitary: diagonal size mismatch");
  RegisterUnitary u(n, true);
  u.d_ = std::move(diagonal);
  return u;
}

RegisterUnitary RegisterUnitary::from_dense(int n, Eigen::MatrixXcd matrix) {
  check_qutrits(n, kMaxDenseQutrits, "RegisterUnitary (dense)");
  const Eigen::Index dim = register_dimension(n);
  if (matrix.rows() != dim || matrix.cols() != dim) throw InvalidArgument("RegisterUnitary: matrix size mismatch");
  RegisterUnitary u(n, false);
  u.m_ = std::move(matrix);
  return u;
}

const Eigen::VectorXcd& RegisterUnitary::diagonal() const {
  if (!diagonal_) throw InvalidArgument("RegisterUnitary: dense unitary has no diagonal form");
  return d_;
}

Eigen::MatrixXcd RegisterUnitary::to_dense() const {
  if (!diagonal_) return m_;
  check_qutrits(n_, kMaxDenseQutrits, "RegisterUnitary::to_dense");
  return d_.asDiagonal();
}

Complex RegisterUnitary::operator()(Eigen::Index row, Eigen::Index col) const {
  if (diagonal_) return row == col ? d_[row] : Complex{};
  return m_(row, col);
}

void RegisterUnitary::promote() {
  if (!diagonal_) return;
  m_ = to_dense();
  d_.resize(0);
  diagonal_ = false;
}

void RegisterUnitary::apply_gate(const Gate3& gate, int qutrit) {
  check_index(qutrit, n_, "apply_gate");
  if (gate_is_diagonal(gate)) {
    apply_diagonal(embedded_diagonal(gate, qutrit, n_));
    return;
  }
  promote();
  apply_gate_strided(m_.data(), m_.rows(), m_.cols(), gate, stride_of(qutrit, n_));
}

void RegisterUnitary::apply_diagonal(const Eigen::VectorXcd& phases) {
  if (phases.size() != dimension()) throw InvalidArgument("apply_diagonal: size mismatch");
  if (diagonal_) {
    d_ = d_.cwiseProduct(phases);
  } else {
    m_ = phases.asDiagonal() * m_;
  }
}

RegisterUnitary RegisterUnitary::operator*(const RegisterUnitary& rhs) const {
  if (n_ != rhs.n_) throw InvalidArgument("RegisterUnitary: register size mismatch");
  if (diagonal_ && rhs.diagonal_) return from_diagonal(n_, d_.cwiseProduct(rhs.d_));
  if (diagonal_) return from_dense(n_, d_.asDiagonal() * rhs.m_);
  if (rhs.diagonal_) return from_dense(n_, m_ * rhs.d_.asDiagonal());
  return from_dense(n_, m_ * rhs.m_);
}

RegisterUnitary RegisterUnitary::adjoint() const {
  if (diagonal_) return from_diagonal(n_, d_.conjugate());
  return from_dense(n_, m_.adjoint());
}

double RegisterUnitary::unitarity_error() const {
  if (diagonal_) return (d_.cwiseAbs().array() - 1.0).abs().maxCoeff();
  return spinmol::unitarity_error(m_);
}

RegisterUnitary embed(const Gate3& gate, int qutrit, int n) {
  RegisterUnitary u = RegisterUnitary::identity(n);
  u.apply_gate(gate, qutrit);
  return u;
}

Eigen::VectorXcd mm_pair_phases(double theta, int a, int b, int n, const std::array<double, 3>& m) {
  check_qutrits(n, kMaxDiagonalQutrits, "mm_pair");
  check_index(a, n, "mm_pair");
  check_index(b, n, "mm_pair");
  if (a == b) throw InvalidArgument("mm_pair: qutrits must differ");
  const Eigen::Index dim = register_dimension(n);
  Eigen::VectorXcd d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    d[i] = std::polar(1.0, -theta * m[qutrit_digit(i, a, n)] * m[qutrit_digit(i, b, n)]);
  }
  return d;
}

RegisterUnitary mm_pair(double theta, int a, int b, int n, const std::array<double, 3>& m) {
  return RegisterUnitary::from_diagonal(n, mm_pair_phases(theta, a, b, n, m));
}

Eigen::VectorXcd mm_chain_phases(double duration, const CouplingMatrix& coupling, int n,
                                 const std::array<double, 3>& m) {
  check_qutrits(n, kMaxDiagonalQutrits, "mm_chain");
  if (coupling.size() != n) throw InvalidArgument("mm_chain: coupling matrix size differs from register");
  const Eigen::Index dim = register_dimension(n);
  std::vector<int> digits(n);
  std::vector<double> mv(n);
  Eigen::VectorXcd d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index rest = i;
    for (int q = n - 1; q >= 0; --q) {
      digits[q] = static_cast<int>(rest % 3);
      rest /= 3;
      mv[q] = m[digits[q]];
    }
    double energy = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) energy += coupling.j(p, q) * mv[p] * mv[q];
    }
    d[i] = std::polar(1.0, -duration * energy);
  }
  return d;
}

RegisterUnitary mm_chain(double duration, const CouplingMatrix& coupling, int n,
                         const std::array<double, 3>& m) {
  return RegisterUnitary::from_diagonal(n, mm_chain_phases(duration, coupling, n, m));
}

namespace {

// g_r = sum_c conj(U_rc) T_rc, so tr(U^dagger L^dagger T) = sum_r conj(L_r) g_r.
Eigen::VectorXcd overlap_rows(const RegisterUnitary& u, const RegisterUnitary& t) {
  const Eigen::Index dim = u.dimension();
  if (u.is_diagonal() && t.is_diagonal()) return u.diagonal().conjugate().cwiseProduct(t.diagonal());
  const Eigen::MatrixXcd um = u.to_dense();
  const Eigen::MatrixXcd tm = t.to_dense();
  Eigen::VectorXcd g(dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    Complex s{};
    for (Eigen::Index c = 0; c < dim; ++c) s += std::conj(um(r, c)) * tm(r, c);
    g[r] = s;
  }
  return g;
}

}  // namespace

double fidelity_up_to_global_phase(const RegisterUnitary& u, const RegisterUnitary& v) {
  if (u.qutrits() != v.qutrits()) throw InvalidArgument("fidelity: dimension mismatch");
  return std::abs(overlap_rows(u, v).sum()) / static_cast<double>(u.dimension());
}

double max_deviation(const RegisterUnitary& u, const RegisterUnitary& v) {
  if (u.qutrits() != v.qutrits()) throw InvalidArgument("max_deviation: dimension mismatch");
  if (u.is_diagonal() && v.is_diagonal()) return (u.diagonal() - v.diagonal()).cwiseAbs().maxCoeff();
  return (u.to_dense() - v.to_dense()).cwiseAbs().maxCoeff();
}

double identity_deviation_up_to_phase(const RegisterUnitary& u, double* phase) {
  Complex trace = 0.0;
  for (Eigen::Index i = 0; i < u.dimension(); ++i) trace += u(i, i);
  const double a = std::arg(trace);
  if (phase) *phase = a;
  const Complex e = std::polar(1.0, a);
  if (u.is_diagonal()) return (u.diagonal().array() - e).abs().maxCoeff();
  Eigen::MatrixXcd d = u.to_dense();
  d.diagonal().array() -= e;
  return d.cwiseAbs().maxCoeff();
}

RegisterUnitary local_phase_gate(const std::vector<std::array<double, 3>>& phases) {
  const int n = static_cast<int>(phases.size());
  Eigen::VectorXcd d(register_dimension(n));
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    double phase = 0.0;
    for (int q = 0; q < n; ++q) phase += phases[q][qutrit_digit(i, q, n)];
    d[i] = std::polar(1.0, phase);
  }
  return RegisterUnitary::from_diagonal(n, std::move(d));
}

LocalPhaseMatch equal_up_to_local_phases(const RegisterUnitary& u, const RegisterUnitary& target,
                                         double tol) {
  if (u.qutrits() != target.qutrits()) throw InvalidArgument("equal_up_to_local_phases: dimension mismatch");
  const int n = u.qutrits();
  const Eigen::Index dim = u.dimension();
  const Eigen::VectorXcd g = overlap_rows(u, target);

  // Maximise |sum_r e^{-i l_r} g_r| with l_r = sum_q a_q(digit_q(r)); each
  // coordinate update is closed form given the others.
  std::vector<std::array<double, 3>> a(n, std::array<double, 3>{0.0, 0.0, 0.0});
  Eigen::VectorXd total = Eigen::VectorXd::Zero(dim);
  double best = -1.0;
  for (int sweep = 0; sweep < 500; ++sweep) {
    for (int q = 0; q < n; ++q) {
      for (int level = 0; level < 3; ++level) {
        Complex s{};
        for (Eigen::Index r = 0; r < dim; ++r) {
          if (qutrit_digit(r, q, n) != level) continue;
          s += std::polar(1.0, -(total[r] - a[q][level])) * g[r];
        }
        const double updated = std::abs(s) > 0.0 ? std::arg(s) : a[q][level];
        const double delta = updated - a[q][level];
        a[q][level] = updated;
        for (Eigen::Index r = 0; r < dim; ++r) {
          if (qutrit_digit(r, q, n) == level) total[r] += delta;
        }
      }
    }
    Complex s{};
    for (Eigen::Index r = 0; r < dim; ++r) s += std::polar(1.0, -total[r]) * g[r];
    const double f = std::abs(s) / static_cast<double>(dim);
    if (f <= best + 1e-15) {
      best = std::max(best, f);
      break;
    }
    best = f;
  }

  LocalPhaseMatch out;
  // |sum e^{-i l} g| is the overlap of e^{i l} U with the target.
  out.phases.resize(n);
  double global = 0.0;
  for (int q = 0; q < n; ++q) {
    for (int level = 0; level < 3; ++level) {
      out.phases[q][level] = std::remainder(a[q][level] - a[q][0], constants::kTwoPi);
    }
    global += a[q][0];
  }
  out.global_phase = std::remainder(global, constants::kTwoPi);
  out.fidelity = fidelity_up_to_global_phase(local_phase_gate(out.phases) * u, target);
  out.equal = out.fidelity >= 1.0 - tol;
  return out;
}

RegisterState RegisterState::basis(int n, const std::vector<int>& digits) {
  check_qutrits(n, kMaxDiagonalQutrits, "RegisterState");
  if (!digits.empty() && static_cast<int>(digits.size()) != n) {
    throw InvalidArgument("RegisterState::basis: digit count differs from register size");
  }
  Eigen::Index index = 0;
  for (int q = 0; q < n; ++q) {
    const int d = digits.empty() ? 0 : digits[q];
    if (d < 0 || d > 2) throw InvalidArgument("RegisterState::basis: digits must be 0, 1 or 2");
    index = 3 * index + d;
  }
  RegisterState s;
  s.n_ = n;
  s.a_ = Eigen::VectorXcd::Zero(register_dimension(n));
  s.a_[index] = 1.0;
  return s;
}

RegisterState RegisterState::from_amplitudes(int n, Eigen::VectorXcd amplitudes) {
  check_qutrits(n, kMaxDiagonalQutrits, "RegisterState");
  if (amplitudes.size() != register_dimension(n)) throw InvalidArgument("RegisterState: size mismatch");
  RegisterState s;
  s.n_ = n;
  s.a_ = std::move(amplitudes);
  return s;
}

void RegisterState::apply_gate(const Gate3& gate, int qutrit) {
  check_index(qutrit, n_, "RegisterState::apply_gate");
  apply_gate_strided(a_.data(), a_.size(), 1, gate, stride_of(qutrit, n_));
}

void RegisterState::apply_diagonal(const Eigen::VectorXcd& phases) {
  if (phases.size() != a_.size()) throw InvalidArgument("RegisterState::apply_diagonal: size mismatch");
  a_ = a_.cwiseProduct(phases);
}

}  // namespace spinmol

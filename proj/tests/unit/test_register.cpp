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

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"
#include "spinmol/program.hpp"
#include "spinmol/register.hpp"

using namespace spinmol;
using constants::kPi;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

// Dense oracle: 1 x .. x g x .. x 1 with qutrit 0 leftmost.
Eigen::MatrixXcd kron_embed(const Gate3& g, int qutrit, int n) {
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (int q = 0; q < n; ++q) {
    const Eigen::MatrixXcd f = q == qutrit ? Eigen::MatrixXcd(g) : Eigen::MatrixXcd::Identity(3, 3);
    out = Eigen::kroneckerProduct(out, f).eval();
  }
  return out;
}

// exp(-i theta M_a M_b) by exponentiating the dense Kronecker generator.
Eigen::MatrixXcd kron_mm(double theta, int a, int b, int n) {
  const Eigen::MatrixXcd gen = kron_embed(m_ideal(), a, n) * kron_embed(m_ideal(), b, n);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(gen.rows(), gen.cols());
  for (Eigen::Index i = 0; i < gen.rows(); ++i) out(i, i) = std::exp(Complex(0.0, -theta) * gen(i, i));
  CHECK(max_abs(gen - Eigen::MatrixXcd(gen.diagonal().asDiagonal())) == 0.0);
  return out;
}

PulseProgram random_program(std::mt19937_64& rng, int n, int length, bool diagonal_only) {
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  std::uniform_int_distribution<int> ion(0, n - 1);
  std::uniform_int_distribution<int> kind(0, diagonal_only ? 1 : 2);
  std::uniform_int_distribution<int> tr(0, 2);
  PulseProgram p;
  p.n_qutrits = n;
  for (int k = 0; k < length; ++k) {
    const auto t = static_cast<Transition>(tr(rng));
    switch (kind(rng)) {
      case 0: p.ops.emplace_back(ZPhaseOp{ion(rng), t, angle(rng)}); break;
      case 1: {
        const int a = ion(rng);
        int b = ion(rng);
        if (b == a) b = (a + 1) % n;
        if (n > 1) p.ops.emplace_back(MMPairOp{a, b, angle(rng)});
        break;
      }
      default: p.ops.emplace_back(SingleQutritOp{ion(rng), t, angle(rng), angle(rng)}); break;
    }
  }
  return p;
}

Eigen::MatrixXcd oracle_run(const PulseProgram& p) {
  const int n = p.n_qutrits;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(register_dimension(n), register_dimension(n));
  for (const auto& op : p.ops) {
    if (const auto* s = std::get_if<SingleQutritOp>(&op)) u = kron_embed(rotation(s->transition, s->theta, s->phi), s->ion, n) * u;
    if (const auto* z = std::get_if<ZPhaseOp>(&op)) u = kron_embed(z_rot(z->transition, z->rho), z->ion, n) * u;
    if (const auto* m = std::get_if<MMPairOp>(&op)) u = kron_mm(m->theta, m->ion_a, m->ion_b, n) * u;
  }
  return u;
}

}  // namespace

TEST_CASE("embed follows the most-significant-first tensor order") {
  CHECK(max_abs(embed(Gate3::Identity(), 1, 3).to_dense() - Eigen::MatrixXcd::Identity(27, 27)) == 0.0);
  const RegisterUnitary f0 = embed(fourier(), 0, 2);
  const double s = 1.0 / std::sqrt(3.0);
  for (int j = 0; j < 3; ++j) CHECK(std::abs(f0(3 * j, 0) - s) <= 1e-15);
  for (int r = 0; r < 9; ++r) {
    if (r % 3 != 0) CHECK(std::abs(f0(r, 0)) == 0.0);
  }
  const RegisterUnitary a = embed(u01(0.4, 0.1), 0, 2);
  const RegisterUnitary b = embed(u12(1.1, -0.3), 1, 2);
  CHECK(max_deviation(a * b, b * a) <= 1e-15);
  for (int q = 0; q < 3; ++q) {
    CHECK(max_abs(embed(u12(0.3, 0.8), q, 3).to_dense() - kron_embed(u12(0.3, 0.8), q, 3)) <= 1e-15);
  }
  CHECK_THROWS_AS(embed(fourier(), 2, 2), InvalidArgument);
}

TEST_CASE("MM pair phases") {
  CHECK(max_deviation(mm_pair(0.0, 0, 1, 2), RegisterUnitary::identity(2)) == 0.0);
  const double theta = 0.37;
  const RegisterUnitary u = mm_pair(theta, 0, 1, 2);
  CHECK(u.is_diagonal());
  // |2>|2>: M entries 1 and 1
  CHECK(std::abs(u(8, 8) - std::exp(Complex(0.0, -theta))) <= 1e-15);
  CHECK(std::abs(u(0, 0) - std::exp(Complex(0.0, -theta))) <= 1e-15);
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-5.0, 5.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double t = angle(rng);
    CHECK(max_abs(mm_pair(t, 0, 2, 3).to_dense() - kron_mm(t, 0, 2, 3)) <= 1e-12);
  }
}

TEST_CASE("MM chain reduces to a pair") {
  CouplingMatrix j{Eigen::MatrixXd::Zero(3, 3)};
  j.j(0, 2) = j.j(2, 0) = 2.0 * kPi * 1200.0;
  const double t = 1.7e-4;
  CHECK(max_deviation(mm_chain(t, j, 3), mm_pair(t * j.j(0, 2), 0, 2, 3)) <= 1e-12);
  CHECK(max_deviation(mm_chain(0.0, j, 3), RegisterUnitary::identity(3)) == 0.0);
  // |0...0> only picks up a global phase
  auto state = RegisterState::basis(3);
  state.apply_diagonal(mm_chain_phases(t, j, 3, m_ideal_diagonal()));
  CHECK(std::abs(std::abs(state.amplitudes()(0)) - 1.0) <= 1e-15);
}

TEST_CASE("diagonal fast path equals dense Kronecker evolution") {
  std::mt19937_64 rng(77);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const PulseProgram p = random_program(rng, n, 12, true);
      const RegisterUnitary fast = run_program(p);
      CHECK(fast.is_diagonal());
      CHECK(max_abs(fast.to_dense() - oracle_run(p)) <= 1e-12);
      RunOptions dense;
      dense.force_dense = true;
      CHECK(max_abs(run_program(p, dense).to_dense() - oracle_run(p)) <= 1e-12);
    }
  }
}

TEST_CASE("general programs stay unitary and match the oracle") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len(0, 40);
  std::uniform_int_distribution<int> size(1, 3);
  for (int trial = 0; trial < 100; ++trial) {
    const PulseProgram p = random_program(rng, size(rng), len(rng), false);
    const RegisterUnitary u = run_program(p);
    CHECK(u.unitarity_error() <= 1e-10);
    if (trial % 10 == 0) CHECK(max_abs(u.to_dense() - oracle_run(p)) <= 1e-12);
  }
}

TEST_CASE("MM pair ops commute") {
  PulseProgram p;
  p.n_qutrits = 3;
  p.ops = {MMPairOp{0, 1, 0.3}, MMPairOp{1, 2, -1.2}, MMPairOp{0, 2, 2.5}};
  PulseProgram q = p;
  std::swap(q.ops[0], q.ops[2]);
  CHECK(max_deviation(run_program(p), run_program(q)) <= 1e-14);
}

TEST_CASE("empty program and double pi pulse") {
  CHECK(max_deviation(run_program(PulseProgram{2, {}}), RegisterUnitary::identity(2)) == 0.0);
  PulseProgram p;
  p.n_qutrits = 1;
  p.ops = {x_pulse(Transition::k01, 0), x_pulse(Transition::k01, 0)};
  const RegisterUnitary u = run_program(p);
  const Eigen::MatrixXcd d = u.to_dense();
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Identity(3, 3);
  expected(0, 0) = expected(1, 1) = -1.0;
  CHECK(max_abs(d - expected) <= 1e-15);
}

TEST_CASE("fidelity up to global phase") {
  const RegisterUnitary u = embed(fourier(), 1, 2) * mm_pair(0.4, 0, 1, 2);
  CHECK(std::abs(fidelity_up_to_global_phase(u, u) - 1.0) <= 1e-15);
  RegisterUnitary v = u;
  v.apply_diagonal(Eigen::VectorXcd::Constant(9, std::polar(1.0, 0.77)));
  CHECK(std::abs(fidelity_up_to_global_phase(u, v) - 1.0) <= 1e-15);
  Eigen::VectorXcd p(9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) p(3 * j + k) = std::polar(1.0, 2.0 * kPi * j * k / 3.0);
  }
  const RegisterUnitary target = RegisterUnitary::from_diagonal(2, p);
  CHECK(std::abs(fidelity_up_to_global_phase(RegisterUnitary::identity(2), target) - 1.0 / 3.0) <= 1e-15);
  CHECK_THROWS_AS(fidelity_up_to_global_phase(u, RegisterUnitary::identity(3)), InvalidArgument);
}

TEST_CASE("equality up to local phases") {
  Eigen::VectorXcd p(9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) p(3 * j + k) = std::polar(1.0, 2.0 * kPi * j * k / 3.0);
  }
  const RegisterUnitary target = RegisterUnitary::from_diagonal(2, p);
  const LocalPhaseMatch same = equal_up_to_local_phases(target, target);
  CHECK(same.equal);
  for (const auto& q : same.phases) {
    for (double a : q) CHECK(std::abs(a) <= 1e-12);
  }

  // inject z phases and recover them
  const std::array<double, 3> a{0.0, 0.41, -1.3};
  const std::array<double, 3> b{0.0, -0.2, 0.9};
  RegisterUnitary injected = local_phase_gate({a, b}) * target;
  const LocalPhaseMatch m = equal_up_to_local_phases(injected, target);
  CHECK(m.equal);
  for (int l = 0; l < 3; ++l) {
    CHECK(std::abs(std::remainder(m.phases[0][l] + a[l], 2.0 * kPi)) <= 1e-10);
    CHECK(std::abs(std::remainder(m.phases[1][l] + b[l], 2.0 * kPi)) <= 1e-10);
  }

  Eigen::MatrixXcd xor_m = Eigen::MatrixXcd::Zero(9, 9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) xor_m(3 * j + (j + k) % 3, 3 * j + k) = 1.0;
  }
  CHECK_FALSE(equal_up_to_local_phases(RegisterUnitary::from_dense(2, xor_m), target).equal);
}

TEST_CASE("states evolve like the unitary") {
  std::mt19937_64 rng(8);
  const PulseProgram p = random_program(rng, 3, 20, false);
  const RegisterState s = apply_program(p, RegisterState::basis(3, {1, 0, 2}));
  const Eigen::VectorXcd col = run_program(p).to_dense().col(9 * 1 + 0 + 2);
  CHECK((s.amplitudes() - col).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(std::abs(s.norm() - 1.0) <= 1e-12);
}

TEST_CASE("ten qutrit MMALL evolution is fast") {
  CouplingMatrix j{Eigen::MatrixXd::Constant(10, 10, 2.0 * kPi * 1000.0)};
  j.j.diagonal().setZero();
  PulseProgram p;
  p.n_qutrits = 10;
  p.ops = {MMChainOp{1e-3, j}};
  const auto t0 = std::chrono::steady_clock::now();
  const RegisterUnitary u = run_program(p);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(u.is_diagonal());
  CHECK(u.dimension() == 59049);
  CHECK(seconds < 1.0);
}

TEST_CASE("register size limits") {
  CHECK_THROWS_AS(RegisterUnitary::identity(0), InvalidArgument);
  CHECK_THROWS_AS(RegisterUnitary::identity(kMaxDiagonalQutrits + 1), InvalidArgument);
  RegisterUnitary big = RegisterUnitary::identity(kMaxDenseQutrits + 1);
  CHECK_THROWS_AS(big.apply_gate(fourier(), 0), InvalidArgument);
}

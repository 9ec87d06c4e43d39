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

#include "spinmol/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "spinmol/constants.hpp"
#include "spinmol/error.hpp"
#include "spinmol/nelder_mead.hpp"
#include "spinmol/readout.hpp"

namespace spinmol {
namespace {

using constants::kPi;
using constants::kTwoPi;
using Mat9 = Eigen::Matrix<Complex, 9, 9>;
using Vec9 = Eigen::Matrix<Complex, 9, 1>;

Complex omega_power(int k) { return std::polar(1.0, kTwoPi * static_cast<double>(k % 3) / 3.0); }

// Column permutation |j,k> -> |j, (a j + k) mod 3>.
RegisterUnitary add_permutation(int a) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(9, 9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) m(3 * j + (a * j + k) % 3, 3 * j + k) = 1.0;
  }
  return RegisterUnitary::from_dense(2, std::move(m));
}

double wrap(double angle) { return std::remainder(angle, kTwoPi); }

}  // namespace

RegisterUnitary phase_gate_target() {
  Eigen::VectorXcd d(9);
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) d(3 * j + k) = omega_power(j * k);
  }
  return RegisterUnitary::from_diagonal(2, std::move(d));
}

RegisterUnitary xor_target() { return add_permutation(1); }

std::string to_string(FourierOrder order) {
  return order == FourierOrder::kInverseAfter ? "Finv*P*F" : "F*P*Finv";
}

RegisterUnitary fourier_conjugated_phase(int fourier_qutrit, FourierOrder order) {
  if (fourier_qutrit < 0 || fourier_qutrit > 1) throw InvalidArgument("fourier qutrit must be 0 or 1");
  const Gate3 f = fourier();
  const RegisterUnitary first = embed(order == FourierOrder::kInverseAfter ? f : Gate3(f.adjoint()), fourier_qutrit, 2);
  const RegisterUnitary last = embed(order == FourierOrder::kInverseAfter ? Gate3(f.adjoint()) : f, fourier_qutrit, 2);
  return last * phase_gate_target() * first;
}

nlohmann::json XorConstruction::metadata() const {
  nlohmann::json variants_json = nlohmann::json::array();
  for (const auto& [label, deviation] : variants) {
    variants_json.push_back({{"variant", label}, {"max_deviation", deviation}});
  }
  return {{"fourier_qutrit", fourier_qutrit},
          {"register", fourier_qutrit == 1 ? "target" : "control"},
          {"order", to_string(order)},
          {"max_deviation", max_deviation},
          {"variants", variants_json}};
}

XorConstruction xor_from_fourier() {
  const RegisterUnitary target = xor_target();
  XorConstruction out;
  bool found = false;
  for (int q : {1, 0}) {
    for (FourierOrder order : {FourierOrder::kInverseAfter, FourierOrder::kInverseBefore}) {
      RegisterUnitary u = fourier_conjugated_phase(q, order);
      const double dev = spinmol::max_deviation(u, target);
      out.variants.emplace_back("qutrit " + std::to_string(q) + " " + to_string(order), dev);
      if (!found && dev <= 1e-12) {
        found = true;
        out.unitary = std::move(u);
        out.fourier_qutrit = q;
        out.order = order;
        out.max_deviation = dev;
      }
    }
  }
  if (!found) throw StructuralError("no Fourier placement reproduces the XOR permutation");
  return out;
}

std::string TemplateConvention::label() const {
  return std::string(mm_sign < 0 ? "exp(-i theta MM)" : "exp(+i theta MM)") +
         (reversed ? ", operator order" : ", chronological order");
}

nlohmann::json TemplateConvention::to_json() const {
  return {{"mm_sign", mm_sign}, {"order", reversed ? "operator" : "chronological"}, {"label", label()}};
}

namespace {

struct TemplateItem {
  bool mm = false;
  bool pulse = false;
  int alpha = -1;
  int ion = 0;
  Transition transition = Transition::k01;
};

// The sequence as printed, left to right.
std::vector<TemplateItem> printed_template() {
  const auto z = [](int alpha, int ion, Transition t) { return TemplateItem{false, false, alpha, ion, t}; };
  const auto mm = [](int alpha) { return TemplateItem{true, false, alpha, 0, Transition::k01}; };
  const auto x = [](int ion, Transition t) { return TemplateItem{false, true, -1, ion, t}; };
  return {z(0, 0, Transition::k01), z(1, 0, Transition::k12), z(2, 1, Transition::k01), z(3, 1, Transition::k12),
          mm(4), x(0, Transition::k01), mm(5), x(0, Transition::k01), x(0, Transition::k12),
          mm(6), x(0, Transition::k12), x(1, Transition::k12), mm(7), x(0, Transition::k12),
          mm(8), x(0, Transition::k12), x(1, Transition::k12)};
}

std::vector<TemplateItem> chronological_template(const TemplateConvention& c) {
  auto items = printed_template();
  if (c.reversed) std::reverse(items.begin(), items.end());
  return items;
}

double template_fidelity(const Mat9& u) {
  static const Eigen::VectorXcd t = phase_gate_target().diagonal();
  Complex s = 0.0;
  for (int i = 0; i < 9; ++i) s += std::conj(t(i)) * u(i, i);
  return std::abs(s) / 9.0;
}

}  // namespace

PhaseSequenceTemplate::PhaseSequenceTemplate(TemplateConvention convention) : convention_(convention) {
  if (convention_.mm_sign != 1 && convention_.mm_sign != -1) throw InvalidArgument("mm_sign must be +1 or -1");
  Mat9 pending = Mat9::Identity();
  bool have_pending = false;
  for (const auto& item : chronological_template(convention_)) {
    if (item.pulse) {
      pending = Mat9(embed(pi_pulse(item.transition), item.ion, 2).to_dense()) * pending;
      have_pending = true;
      continue;
    }
    if (have_pending) {
      steps_.push_back(Step{true, pending});
      pending.setIdentity();
      have_pending = false;
    }
    steps_.push_back(Step{false, Mat9::Identity(), item.alpha, item.mm, item.ion, item.transition});
  }
  if (have_pending) steps_.push_back(Step{true, pending});

  skeleton_ = unitary({});
  skeleton_distance_ = 1.0 - template_fidelity(skeleton_);
}

Vec9 PhaseSequenceTemplate::step_diagonal(const Step& step, double angle) const {
  Vec9 d;
  if (step.mm) {
    const auto m = m_ideal_diagonal();
    const double theta = convention_.mm_sign < 0 ? angle : -angle;
    for (int i = 0; i < 9; ++i) d(i) = std::polar(1.0, -theta * m[i / 3] * m[i % 3]);
  } else {
    const Gate3 z = z_rot(step.transition, angle);
    for (int i = 0; i < 9; ++i) d(i) = z(qutrit_digit(i, step.ion, 2), qutrit_digit(i, step.ion, 2));
  }
  return d;
}

Mat9 PhaseSequenceTemplate::unitary(const std::array<double, kParameters>& alphas) const {
  Mat9 u = Mat9::Identity();
  for (const auto& step : steps_) {
    if (step.fixed) {
      u = step.block * u;
    } else {
      u = step_diagonal(step, alphas[static_cast<std::size_t>(step.alpha)]).asDiagonal() * u;
    }
  }
  return u;
}

double PhaseSequenceTemplate::objective(const std::array<double, kParameters>& alphas) const {
  return 1.0 - template_fidelity(unitary(alphas));
}

PulseProgram PhaseSequenceTemplate::program(const std::array<double, kParameters>& alphas) const {
  PulseProgram p;
  p.n_qutrits = 2;
  for (const auto& item : chronological_template(convention_)) {
    if (item.pulse) {
      p.ops.emplace_back(x_pulse(item.transition, item.ion));
    } else if (item.mm) {
      const double a = alphas[static_cast<std::size_t>(item.alpha)];
      p.ops.emplace_back(MMPairOp{0, 1, convention_.mm_sign < 0 ? a : -a});
    } else {
      p.ops.emplace_back(ZPhaseOp{item.ion, item.transition, alphas[static_cast<std::size_t>(item.alpha)]});
    }
  }
  return p;
}

std::array<double, 9> reference_alphas_pi() {
  return {-0.5628, -0.2604, -1.9045, -2.4299, -16.5854, 19.1630, -0.2738, 5.3918, 0.3045};
}

nlohmann::json PhaseGateSolution::to_json() const {
  nlohmann::json alphas_pi = nlohmann::json::array();
  for (double a : alphas) alphas_pi.push_back(a / kPi);
  nlohmann::json corr = nlohmann::json::array();
  for (std::size_t q = 0; q < corrections.size(); ++q) {
    corr.push_back({{"qutrit", q}, {"phases_rad", corrections[q]}});
  }
  return {{"alphas_pi", alphas_pi},
          {"fidelity", fidelity},
          {"infidelity", 1.0 - fidelity},
          {"converged", converged},
          {"convention", convention.to_json()},
          {"corrections", corr},
          {"restart", restart},
          {"restarts_run", restarts_run},
          {"evaluations", evaluations},
          {"seed", seed}};
}

PhaseGateSolution optimize_phase_angles(const OptimizeOptions& options) {
  if (!(options.tol > 0.0)) throw InvalidArgument("optimize: tol must be positive");
  if (options.restarts < 1) throw InvalidArgument("optimize: restarts must be positive");
  const PhaseSequenceTemplate tmpl(options.convention);
  std::mt19937_64 rng(options.seed);
  const double span = 20.0 * kPi;

  PhaseGateSolution best;
  best.convention = options.convention;
  best.seed = options.seed;
  double best_f = std::numeric_limits<double>::infinity();

  const auto to_array = [](const Eigen::VectorXd& x) {
    std::array<double, 9> a{};
    for (int i = 0; i < 9; ++i) a[static_cast<std::size_t>(i)] = x(i);
    return a;
  };
  const auto objective = [&](const Eigen::VectorXd& x) { return tmpl.objective(to_array(x)); };

  NelderMeadOptions nm;
  nm.max_evaluations = options.max_evaluations;
  nm.target = options.tol;
  nm.initial_step = 1.0;

  for (int r = 0; r < options.restarts; ++r) {
    Eigen::VectorXd x0(9);
    if (r == 0 && options.start_from_reference) {
      const auto table = reference_alphas_pi();
      for (int i = 0; i < 9; ++i) x0(i) = table[static_cast<std::size_t>(i)] * kPi;
    } else {
      for (int i = 0; i < 9; ++i) x0(i) = -span + 2.0 * span * uniform01(rng());
    }
    const NelderMeadResult res = nelder_mead(objective, x0, nm);
    best.evaluations += res.evaluations;
    best.restarts_run = r + 1;
    if (res.f < best_f) {
      best_f = res.f;
      best.alphas = to_array(res.x);
      best.restart = r;
    }
    if (res.f <= options.tol) break;
  }
  best.fidelity = 1.0 - best_f;
  best.converged = best_f <= options.tol;

  if (!best.converged) {
    const Mat9 u = tmpl.unitary(best.alphas);
    const LocalPhaseMatch match =
        equal_up_to_local_phases(RegisterUnitary::from_dense(2, Eigen::MatrixXcd(u)), phase_gate_target(), options.tol);
    if (match.equal) {
      best.converged = true;
      best.fidelity = match.fidelity;
      best.corrections = match.phases;
    }
  }
  return best;
}

std::vector<ReferenceAngleVariant> reference_angle_report() {
  std::array<double, 9> alphas{};
  const auto table = reference_alphas_pi();
  for (std::size_t i = 0; i < 9; ++i) alphas[i] = table[i] * kPi;
  std::vector<ReferenceAngleVariant> out;
  for (int sign : {-1, 1}) {
    for (bool reversed : {false, true}) {
      const PhaseSequenceTemplate tmpl(TemplateConvention{sign, reversed});
      const Mat9 u = tmpl.unitary(alphas);
      ReferenceAngleVariant v;
      v.convention = tmpl.convention();
      v.fidelity = template_fidelity(u);
      v.fidelity_local_phases =
          equal_up_to_local_phases(RegisterUnitary::from_dense(2, Eigen::MatrixXcd(u)), phase_gate_target()).fidelity;
      out.push_back(v);
    }
  }
  return out;
}

nlohmann::json reference_angle_json(const std::vector<ReferenceAngleVariant>& variants) {
  nlohmann::json rows = nlohmann::json::array();
  std::size_t best = 0;
  for (std::size_t i = 0; i < variants.size(); ++i) {
    rows.push_back({{"convention", variants[i].convention.to_json()},
                    {"fidelity", variants[i].fidelity},
                    {"fidelity_local_phases", variants[i].fidelity_local_phases}});
    if (variants[i].fidelity > variants[best].fidelity) best = i;
  }
  nlohmann::json alphas = reference_alphas_pi();
  return {{"alphas_pi", alphas},
          {"variants", rows},
          {"best_variant", best},
          {"best_fidelity", variants.empty() ? 0.0 : variants[best].fidelity}};
}

namespace {

struct PermutationPulses {
  std::vector<SingleQutritOp> open;
  std::vector<SingleQutritOp> close;
  Gate3 w = Gate3::Identity();  // product of the opening pulses
};

// Three cyclic permutations of the pulsed qutrit's levels.
std::array<PermutationPulses, 3> permutation_cycle(int ion) {
  std::array<PermutationPulses, 3> out;
  const std::array<std::array<Transition, 2>, 2> orders{
      std::array<Transition, 2>{Transition::k01, Transition::k12},
      std::array<Transition, 2>{Transition::k12, Transition::k01}};
  for (std::size_t s = 1; s < 3; ++s) {
    auto& p = out[s];
    for (Transition t : orders[s - 1]) {
      p.open.push_back(x_pulse(t, ion));
      p.w = pi_pulse(t) * p.w;
    }
    for (auto it = orders[s - 1].rbegin(); it != orders[s - 1].rend(); ++it) {
      p.close.push_back(SingleQutritOp{ion, *it, kPi / 2.0, kPi});
    }
  }
  return out;
}

void append_correction(PulseProgram& p, const RefocusCorrection& c) {
  // diag(e^{i c0}, e^{i c1}, e^{i c2}) with c0 + c1 + c2 = 0
  p.ops.emplace_back(ZPhaseOp{c.ion, Transition::k01, c.phases[0]});
  p.ops.emplace_back(ZPhaseOp{c.ion, Transition::k12, -c.phases[2]});
}

}  // namespace

PulseProgram RefocusPlan::composite() const {
  PulseProgram p;
  p.n_qutrits = n_qutrits;
  for (const auto& seg : segments) p.ops.insert(p.ops.end(), seg.ops.begin(), seg.ops.end());
  return p;
}

PulseProgram RefocusPlan::corrected() const {
  PulseProgram p = composite();
  for (const auto& c : corrections) append_correction(p, c);
  return p;
}

RefocusPlan refocus_plan(int n_qutrits, int pulsed, const std::vector<MMPairOp>& couplings) {
  if (n_qutrits < 2) throw InvalidArgument("refocus: need at least two qutrits");
  if (pulsed < 0 || pulsed >= n_qutrits) throw InvalidArgument("refocus: pulsed qutrit out of range");

  RefocusPlan plan;
  plan.n_qutrits = n_qutrits;
  plan.pulsed = pulsed;
  const auto cycle = permutation_cycle(pulsed);
  for (std::size_t s = 0; s < 3; ++s) {
    PulseProgram& seg = plan.segments[s];
    seg.n_qutrits = n_qutrits;
    for (const auto& op : cycle[s].open) seg.ops.emplace_back(op);
    for (const auto& op : couplings) seg.ops.emplace_back(op);
    for (const auto& op : cycle[s].close) seg.ops.emplace_back(op);
    seg.validate();
  }

  // Effective generator seen by the pulsed qutrit over the three periods.
  const auto m = m_ideal_diagonal();
  Eigen::Matrix3cd mdiag = Eigen::Matrix3cd::Zero();
  for (int i = 0; i < 3; ++i) mdiag(i, i) = m[static_cast<std::size_t>(i)];
  Eigen::Matrix3cd g = Eigen::Matrix3cd::Zero();
  for (const auto& p : cycle) g += p.w.adjoint() * mdiag * p.w;
  Eigen::Matrix3cd off = g;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() > 1e-12 || g.diagonal().imag().cwiseAbs().maxCoeff() > 1e-12) {
    throw StructuralError("refocus: effective generator is not diagonal");
  }
  const double gbar = g.diagonal().real().mean();
  if ((g.diagonal().real().array() - gbar).abs().maxCoeff() > 1e-12) {
    throw StructuralError("refocus: pulses do not average the pulsed qutrit's M to a multiple of identity");
  }

  std::vector<double> theta_sum(static_cast<std::size_t>(n_qutrits), 0.0);
  for (const auto& op : couplings) {
    if (op.ion_a == pulsed) theta_sum[static_cast<std::size_t>(op.ion_b)] += op.theta;
    if (op.ion_b == pulsed) theta_sum[static_cast<std::size_t>(op.ion_a)] += op.theta;
  }
  const double mbar = (m[0] + m[1] + m[2]) / 3.0;
  const Eigen::Matrix3cd l3 = lambda3();
  const Eigen::Matrix3cd l8 = lambda8();
  for (int k = 0; k < n_qutrits; ++k) {
    const double t = theta_sum[static_cast<std::size_t>(k)];
    if (k == pulsed || t == 0.0) continue;
    // spectator picks up exp(-i t gbar m); undo its traceless part
    RefocusCorrection c;
    c.ion = k;
    for (int l = 0; l < 3; ++l) {
      c.phases[static_cast<std::size_t>(l)] = gbar * t * (m[static_cast<std::size_t>(l)] - mbar);
      c.c3 += c.phases[static_cast<std::size_t>(l)] * l3(l, l).real() / 2.0;
      c.c8 += c.phases[static_cast<std::size_t>(l)] * l8(l, l).real() / 2.0;
    }
    plan.corrections.push_back(c);
    plan.global_phase += gbar * t * mbar;
  }
  plan.theta = couplings.size() == 1 ? couplings.front().theta : 0.0;
  return plan;
}

RefocusPlan refocus_plan(double theta) { return refocus_plan(2, 0, {MMPairOp{0, 1, theta}}); }

double literal_refocus_residual(double theta) {
  RefocusPlan plan = refocus_plan(theta);
  PulseProgram p;
  p.n_qutrits = 2;
  const std::array<std::array<Transition, 2>, 3> orders{
      std::array<Transition, 2>{}, std::array<Transition, 2>{Transition::k01, Transition::k12},
      std::array<Transition, 2>{Transition::k12, Transition::k01}};
  for (std::size_t s = 0; s < 3; ++s) {
    if (s > 0) {
      for (Transition t : orders[s]) p.ops.emplace_back(x_pulse(t, 0));
    }
    p.ops.emplace_back(MMPairOp{0, 1, theta});
    if (s > 0) {
      for (auto it = orders[s].rbegin(); it != orders[s].rend(); ++it) p.ops.emplace_back(x_pulse(*it, 0));
    }
  }
  for (const auto& c : plan.corrections) append_correction(p, c);
  return identity_deviation_up_to_phase(run_program(p));
}

bool VerificationReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

void VerificationReport::add(std::string name, double tolerance, double measured, bool lower_bound) {
  const bool ok = lower_bound ? measured >= tolerance : measured <= tolerance;
  checks.push_back({std::move(name), tolerance, measured, lower_bound, ok && std::isfinite(measured)});
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name},
                    {"tolerance", c.tolerance},
                    {"bound", c.lower_bound ? "lower" : "upper"},
                    {"measured", c.measured},
                    {"passed", c.passed}});
  }
  nlohmann::json out{{"check", check}, {"passed", passed()}, {"checks", rows}};
  if (!info.empty()) out["info"] = info;
  return out;
}

VerificationReport verify_xor() {
  VerificationReport report;
  report.check = "xor";
  const XorConstruction xor_gate = xor_from_fourier();
  report.add("xor_from_fourier_max_deviation", 1e-12, xor_gate.max_deviation);
  report.add("double_application_max_deviation", 1e-12,
             max_deviation(xor_gate.unitary * xor_gate.unitary, add_permutation(2)));
  double control_dev = std::numeric_limits<double>::infinity();
  for (FourierOrder order : {FourierOrder::kInverseAfter, FourierOrder::kInverseBefore}) {
    control_dev = std::min(control_dev, max_deviation(fourier_conjugated_phase(0, order), xor_target()));
  }
  report.add("control_register_variant_deviation", 0.1, control_dev, true);
  report.info = xor_gate.metadata();
  return report;
}

VerificationReport verify_refocus(double theta) {
  VerificationReport report;
  report.check = "refocus";
  const RefocusPlan plan = refocus_plan(theta);
  const RegisterUnitary u = run_program(plan.corrected());
  double arg = 0.0;
  report.add("identity_up_to_global_phase", 1e-10, identity_deviation_up_to_phase(u, &arg));
  const GellMannCoeffs a = gellmann_coeffs(m_ideal());
  const double phi = 3.0 * a.a0 * a.a0 * theta;
  // composite * R = e^{-i phi} 1
  report.add("global_phase_vs_3a0sq_theta", 1e-10, std::abs(wrap(-arg - phi)));
  report.add("solved_phase_vs_3a0sq_theta", 1e-10, std::abs(plan.global_phase - phi));
  const RefocusCorrection& c = plan.corrections.at(0);
  report.add("correction_lambda3_vs_3a0a3_theta", 1e-10, std::abs(c.c3 - 3.0 * a.a0 * a.a3 * theta));
  report.add("correction_lambda8_vs_3a0a8_theta", 1e-10, std::abs(c.c8 - 3.0 * a.a0 * a.a8 * theta));
  report.info = {{"theta", theta},
                 {"global_phase", plan.global_phase},
                 {"correction_phases", c.phases},
                 {"c3", c.c3},
                 {"c8", c.c8},
                 {"literal_closing_pulse_residual", literal_refocus_residual(theta)}};
  return report;
}

VerificationReport verify_phase_gate(const OptimizeOptions& options) {
  VerificationReport report;
  report.check = "phasegate";
  const PhaseGateSolution sol = optimize_phase_angles(options);
  report.add("phase_gate_infidelity", 1e-6, 1.0 - sol.fidelity);
  const PhaseSequenceTemplate tmpl(options.convention);
  const RegisterUnitary run = run_program(tmpl.program(sol.alphas));
  report.add("template_cache_vs_program", 1e-12,
             max_deviation(run, RegisterUnitary::from_dense(2, Eigen::MatrixXcd(tmpl.unitary(sol.alphas)))));
  report.info = {{"solution", sol.to_json()}, {"reference_angles", reference_angle_json(reference_angle_report())}};
  return report;
}

VerificationReport qubit_refocus_demo(double theta) {
  using Mat4 = Eigen::Matrix4cd;
  const auto zz = [](double t) {
    Mat4 m = Mat4::Zero();
    const double s[4] = {1, -1, -1, 1};
    for (int i = 0; i < 4; ++i) m(i, i) = std::polar(1.0, t * s[i]);
    return m;
  };
  Mat4 x1 = Mat4::Zero();  // sigma_x on the first qubit
  x1(0, 2) = x1(2, 0) = x1(1, 3) = x1(3, 1) = 1.0;
  const Mat4 identity = Mat4::Identity();

  VerificationReport report;
  report.check = "qubit_refocus";
  report.add("flip_reverses_zz", 1e-14, (x1 * zz(theta) * x1 - zz(-theta)).cwiseAbs().maxCoeff());
  // exp(-i pi/2 sigma_x) = -i sigma_x, so the sandwich carries a factor -1
  const Mat4 half = Complex(0.0, -1.0) * x1;
  report.add("exponential_form_up_to_sign", 1e-14, (half * zz(-theta) * half + zz(theta)).cwiseAbs().maxCoeff());
  report.add("evolve_flip_evolve_flip_identity", 1e-14,
             (x1 * zz(theta) * x1 * zz(theta) - identity).cwiseAbs().maxCoeff());
  report.info = {{"theta", theta}};
  return report;
}

}  // namespace spinmol

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

// Acceptance checks. Prints one line per criterion:
//   criterion <n> PASS|FAIL <name>: <measurements>
// and exits non-zero when any selected criterion fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "spinmol/chain.hpp"
#include "spinmol/constants.hpp"
#include "spinmol/program.hpp"
#include "spinmol/readout.hpp"
#include "spinmol/register.hpp"
#include "spinmol/species.hpp"
#include "spinmol/synthesis.hpp"
#include "spinmol/window.hpp"
#include "spinmol/zeeman.hpp"

namespace {

using namespace spinmol;
using constants::kPi;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Context {
  std::string cli;
  std::string golden_dir;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

TrapConfig trap(int n, double b) {
  TrapConfig t;
  t.n_ions = n;
  t.nu1 = 2.0 * kPi * 200e3;
  t.b0 = 0.45;
  t.b = b;
  return t;
}

Outcome j_coupling(const Context&) {
  const auto t0 = Clock::now();
  const IonSpecies yb = yb171();
  const TrapConfig t = trap(10, 120.0);
  const ChainSolution chain = solve_chain(yb, t);
  const CouplingMatrix j = coupling_matrix(chain, yb, t);
  const double elapsed = seconds_since(t0);
  const double target = 2.0 * kPi * 1.2e3;
  bool ok = elapsed < 1.0;
  double worst = 0.0;
  std::string values;
  for (int n = 0; n + 1 < 10; ++n) {
    const double rel = std::abs(j.j(n, n + 1) - target) / target;
    worst = std::max(worst, rel);
    values += (n ? "," : "") + fmt(j.j(n, n + 1) / (2.0 * kPi), 5);
  }
  ok = ok && worst <= 0.2;
  return {ok, "nearest-neighbour J/2pi [Hz] = {" + values + "}, worst deviation " + fmt(100.0 * worst, 3) +
                  "% (limit 20%), runtime " + fmt(elapsed, 3) + " s"};
}

Outcome mode_fit(const Context&) {
  bool ok = true;
  std::string detail;
  for (int n = 5; n <= 10; ++n) {
    const auto u = solve_equilibrium(n);
    const NormalModes modes = normal_modes(hessian(u));
    const double ratio = modes.frequency_ratios(n - 1);
    const double fit = 2.7 + 0.5 * n;
    const double rel = std::abs(ratio - fit) / fit;
    ok = ok && rel <= 0.03;
    detail += (n > 5 ? "; " : "") + ("N=" + std::to_string(n)) + " nu_N/nu_1=" + fmt(ratio, 5) + " fit=" +
              fmt(fit, 3) + " dev=" + fmt(100.0 * rel, 3) + "%";
  }
  return {ok, detail + " (limit 3%)"};
}

Outcome analytic_chain(const Context&) {
  double worst = 0.0;
  const auto u2 = solve_equilibrium(2);
  const auto m2 = normal_modes(hessian(u2)).frequency_ratios;
  worst = std::max({worst, std::abs(u2[0] + std::pow(0.5, 2.0 / 3.0)), std::abs(u2[1] - std::pow(0.5, 2.0 / 3.0)),
                    std::abs(m2(0) - 1.0), std::abs(m2(1) - std::sqrt(3.0))});
  const auto u3 = solve_equilibrium(3);
  const auto m3 = normal_modes(hessian(u3)).frequency_ratios;
  const double a = std::cbrt(5.0 / 4.0);
  worst = std::max({worst, std::abs(u3[0] + a), std::abs(u3[1]), std::abs(u3[2] - a), std::abs(m3(0) - 1.0),
                    std::abs(m3(1) - std::sqrt(3.0)), std::abs(m3(2) - std::sqrt(29.0 / 5.0))});
  return {worst <= 1e-10, "max deviation from closed forms " + fmt(worst, 3) + " (limit 1e-10)"};
}

Outcome breit_rabi(const Context&) {
  const IonSpecies yb = yb171();
  const double field = field_for_x(yb, 1.0);
  const BreitRabiPoint p = breit_rabi_energies(yb, field);
  const double ghz = 2.0 * kPi * 1e9;
  const double sum = (p.omega01 + p.omega12) / ghz;
  const double lo = std::min(p.omega01, p.omega12) / ghz;
  const double hi = std::max(p.omega01, p.omega12) / ghz;
  const bool sum_ok = std::abs(sum - 12.6) / 12.6 <= 0.005;
  const bool pair_ok = std::abs(lo - 3.7) / 3.7 <= 0.05 && std::abs(hi - 8.9) / 8.9 <= 0.05;

  const TrapConfig t = trap(10, 100.0);
  const ChainSolution chain = solve_chain(yb, t);
  const SiteTable sites = site_frequencies(chain, yb, t);
  const double mhz = 2.0 * kPi * 1e6;
  const double d01 = sites.min_neighbour_d_omega01 / mhz;
  const double d12 = sites.min_neighbour_d_omega12 / mhz;
  const double big = std::max(d01, d12);
  const double small = std::min(d01, d12);
  const bool split_ok = std::abs(big - 11.0) / 11.0 <= 0.3 && std::abs(small - 2.0) / 2.0 <= 0.3;
  const double ratio = small / big;
  const bool ratio_ok = std::abs(ratio - 0.17) <= 0.03;
  return {sum_ok && pair_ok && split_ok && ratio_ok,
          "B(x=1)=" + fmt(field, 5) + " T, sum=" + fmt(sum, 5) + " GHz, pair={" + fmt(lo, 4) + "," + fmt(hi, 4) +
              "} GHz, neighbour splittings={" + fmt(big, 4) + "," + fmt(small, 4) + "} MHz, ratio=" + fmt(ratio, 4)};
}

Outcome gradient_window_check(const Context&) {
  const IonSpecies yb = yb171();
  const GradientWindow w = gradient_window(yb, trap(10, 120.0), 0.01);
  const bool lo_ok = w.b_min >= 15.0 && w.b_min <= 60.0;
  const bool hi_ok = !w.b_max_unbounded && w.b_max >= 100.0 && w.b_max <= 400.0;
  const bool ions_ok = std::abs(w.max_ions_estimate - 30) <= 5;
  return {w.feasible && lo_ok && hi_ok && ions_ok,
          "window [" + fmt(w.b_min, 5) + ", " + fmt(w.b_max, 5) + "] T/m (targets 30 and 200 within 2x), feasible=" +
              (w.feasible ? "yes" : "no") + ", max ions at 120 T/m=" + std::to_string(w.max_ions_estimate)};
}

Outcome phase_gate(const Context& ctx) {
  const auto t0 = Clock::now();
  OptimizeOptions o;
  o.seed = 2024;
  o.restarts = 64;
  o.start_from_reference = false;
  const PhaseGateSolution s = optimize_phase_angles(o);
  const double elapsed = seconds_since(t0);
  const bool opt_ok = s.fidelity >= 1.0 - 1e-6 && elapsed < 60.0;

  std::ifstream in(ctx.golden_dir + "/reference_angles.json");
  if (!in) return {false, "cannot open golden file in " + ctx.golden_dir};
  const nlohmann::json golden = nlohmann::json::parse(in);
  const double tol = golden["tolerance"].get<double>();
  const auto report = reference_angle_report();
  const nlohmann::json summary = reference_angle_json(report);
  bool golden_ok = report.size() == golden["variants"].size();
  for (const auto& g : golden["variants"]) {
    bool found = false;
    for (const auto& v : report) {
      if (v.convention.mm_sign == g["mm_sign"].get<int>() && v.convention.reversed == g["reversed"].get<bool>()) {
        found = std::abs(v.fidelity - g["fidelity"].get<double>()) <= tol;
      }
    }
    golden_ok = golden_ok && found;
  }
  return {opt_ok && golden_ok,
          "optimizer fidelity " + fmt(s.fidelity, 15) + " (restart " + std::to_string(s.restart) + " of " +
              std::to_string(s.restarts_run) + ", " + fmt(elapsed, 3) + " s); printed-angle best variant '" +
              summary["variants"][summary["best_variant"].get<std::size_t>()]["convention"]["label"].get<std::string>() + "' fidelity " +
              fmt(summary["best_fidelity"].get<double>(), 10) + ", golden " + (golden_ok ? "match" : "MISMATCH")};
}

Outcome refocusing(const Context&) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> angle(-3.0 * kPi, 3.0 * kPi);
  const GellMannCoeffs a = gellmann_coeffs(m_ideal());
  double worst_dev = 0.0, worst_phase = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = angle(rng);
    const RefocusPlan plan = refocus_plan(theta);
    double arg = 0.0;
    worst_dev = std::max(worst_dev, identity_deviation_up_to_phase(run_program(plan.corrected()), &arg));
    // composite * corrections = exp(-i phi) 1
    worst_phase = std::max(worst_phase, std::abs(std::remainder(-arg - 3.0 * a.a0 * a.a0 * theta, 2.0 * kPi)));
  }
  return {worst_dev <= 1e-10 && worst_phase <= 1e-10,
          "50 angles: max deviation from identity " + fmt(worst_dev, 3) + ", max |phase - 3 a0^2 theta| " +
              fmt(worst_phase, 3) + " (limit 1e-10)"};
}

Outcome xor_identity(const Context&) {
  const XorConstruction c = xor_from_fourier();
  return {c.max_deviation <= 1e-12, "Fourier on qutrit " + std::to_string(c.fourier_qutrit) + " (" +
                                        to_string(c.order) + "), max entry deviation " + fmt(c.max_deviation, 3) +
                                        " (limit 1e-12)"};
}

Gate3 haar_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Gate3 z;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) z(r, c) = Complex(g(rng), g(rng));
  }
  const Eigen::HouseholderQR<Gate3> qr(z);
  const Gate3 q = qr.householderQ();
  const Gate3 rr = qr.matrixQR().triangularView<Eigen::Upper>();
  Gate3 d = Gate3::Zero();
  for (int i = 0; i < 3; ++i) d(i, i) = rr(i, i) / std::abs(rr(i, i));
  return q * d;
}

Outcome su3(const Context&) {
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  std::size_t most = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Gate3 u = haar_unitary(rng);
    const Su3Decomposition d = su3_decompose(u);
    most = std::max(most, d.rotations.size());
    worst = std::max(worst, (d.reconstruct() - u).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10 && most <= 3, "100 Haar unitaries: max reconstruction error " + fmt(worst, 3) +
                                           ", most rotations " + std::to_string(most) + " (limits 1e-10, 3)"};
}

Outcome simulator(const Context&) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  std::uniform_int_distribution<int> tr(0, 2);
  double worst = 0.0;
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      PulseProgram p;
      p.n_qutrits = n;
      std::uniform_int_distribution<int> ion(0, n - 1);
      for (int k = 0; k < 16; ++k) {
        const int a = ion(rng);
        if (k % 2 == 0 || n == 1) {
          p.ops.emplace_back(ZPhaseOp{a, static_cast<Transition>(tr(rng)), angle(rng)});
        } else {
          p.ops.emplace_back(MMPairOp{a, (a + 1) % n, angle(rng)});
        }
      }
      RunOptions dense;
      dense.force_dense = true;
      worst = std::max(worst, max_deviation(run_program(p), run_program(p, dense)));
    }
  }

  CouplingMatrix j{Eigen::MatrixXd::Constant(10, 10, 2.0 * kPi * 1.2e3)};
  j.j.diagonal().setZero();
  PulseProgram big;
  big.n_qutrits = 10;
  big.ops = {MMChainOp{1e-3, j}};
  const auto t0 = Clock::now();
  const RegisterUnitary u = run_program(big);
  const double elapsed = seconds_since(t0);

  RegisterState s = RegisterState::basis(1);
  s.apply_gate(fourier(), 0);
  const int shots = 30000;
  const ReadoutResult r = measure_register(s, shots, 12345);
  const double sigma = std::sqrt(shots * (1.0 / 3.0) * (2.0 / 3.0));
  double worst_sigma = 0.0;
  for (int level = 0; level < 3; ++level) {
    worst_sigma = std::max(worst_sigma, std::abs(r.counts[0][level] - shots / 3.0) / sigma);
  }
  return {worst <= 1e-12 && u.is_diagonal() && elapsed < 1.0 && worst_sigma <= 3.0,
          "fast vs dense max deviation " + fmt(worst, 3) + " (limit 1e-12); 10-qutrit MMALL " + fmt(elapsed, 3) +
              " s; F|0> counts {" + std::to_string(r.counts[0][0]) + "," + std::to_string(r.counts[0][1]) + "," +
              std::to_string(r.counts[0][2]) + "}, worst " + fmt(worst_sigma, 3) + " sigma"};
}

std::string run_capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome determinism(const Context& ctx) {
  if (ctx.cli.empty()) return {false, "no CLI path given"};
  const auto dir = std::filesystem::temp_directory_path() / ("spinmol_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto prog = dir / "ghz.prog";
  const auto chainprog = dir / "chain.prog";
  {
    std::ofstream(prog) << "U 01 0 0.3pi 0.1\nX 12 1\nMM 0 1 0.25pi\nZ 02 1 0.7\nMEASURE\n";
    std::ofstream(chainprog) << "X 01 1\nMMALL 2e-4\nX 01 1\n";
  }
  const std::string cli = "\"" + ctx.cli + "\"";
  const std::vector<std::string> commands{
      cli + " chain --ions 6 --b 80",
      cli + " --out csv chain --ions 4",
      cli + " jmatrix --ions 10 --b 120",
      cli + " bounds --ions 10 --b 120",
      cli + " breitrabi --ions 5 --b 100",
      cli + " --seed 5 simulate " + prog.string(),
      cli + " simulate " + chainprog.string() + " --ions 2 --b 100",
      cli + " --seed 5 measure " + prog.string() + " --shots 2000",
      cli + " verify xor",
      cli + " verify refocus --theta 0.7",
      cli + " --seed 3 verify phasegate --restarts 4",
      cli + " verify qubit-refocus",
      cli + " --seed 3 optimize-phase --restarts 4",
  };
  bool ok = true;
  std::string failed;
  for (const auto& c : commands) {
    int s1 = 0, s2 = 0;
    const std::string a = run_capture(c + " 2>&1", s1);
    const std::string b = run_capture(c + " 2>&1", s2);
    if (a != b || s1 != s2 || s1 != 0 || a.empty()) {
      ok = false;
      failed += " [" + c.substr(cli.size() + 1) + " status " + std::to_string(s1) + "/" + std::to_string(s2) + "]";
    }
  }
  std::filesystem::remove_all(dir);
  return {ok, std::to_string(commands.size()) + " commands run twice" +
                  (ok ? std::string(", all byte-identical") : ", differing or failing:" + failed)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinmol acceptance checks"};
  int only = 0;
  Context ctx;
  ctx.golden_dir = SPINMOL_GOLDEN_DIR;
  app.add_option("--criterion", only, "Run only this criterion (1-11)")->check(CLI::Range(0, 11));
  app.add_option("--cli", ctx.cli, "Path to the spinmol CLI");
  app.add_option("--golden", ctx.golden_dir, "Directory with golden files");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome(const Context&)>>> criteria{
      {"j-coupling", j_coupling},
      {"mode-fit", mode_fit},
      {"analytic-chain", analytic_chain},
      {"breit-rabi", breit_rabi},
      {"gradient-window", gradient_window_check},
      {"phase-gate", phase_gate},
      {"refocusing", refocusing},
      {"xor-identity", xor_identity},
      {"su3-decomposition", su3},
      {"simulator", simulator},
      {"determinism", determinism},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int number = static_cast<int>(i) + 1;
    if (only != 0 && only != number) continue;
    Outcome o;
    try {
      o = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << "criterion " << number << ' ' << (o.passed ? "PASS" : "FAIL") << ' ' << criteria[i].first << ": "
              << o.detail << std::endl;
    failures += o.passed ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}

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
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinmol/program.hpp"
#include "spinmol/register.hpp"

namespace spinmol {

/// diag over |j,k> of exp(2 pi i j k / 3).
RegisterUnitary phase_gate_target();

/// |j,k> -> |j, j+k mod 3>.
RegisterUnitary xor_target();

enum class FourierOrder {
  kInverseAfter,   // F^-1 P F: F acts first
  kInverseBefore,  // F P F^-1
};

std::string to_string(FourierOrder order);

/// Phase gate conjugated by the Fourier gate on one register.
RegisterUnitary fourier_conjugated_phase(int fourier_qutrit, FourierOrder order);

struct XorConstruction {
  RegisterUnitary unitary = RegisterUnitary::identity(2);
  int fourier_qutrit = 1;
  FourierOrder order = FourierOrder::kInverseAfter;
  double max_deviation = 0.0;
  /// Deviation from xor_target for each (qutrit, order) variant.
  std::vector<std::pair<std::string, double>> variants;

  nlohmann::json metadata() const;
};

/// Picks the placement whose product equals xor_target; throws
/// StructuralError if none does.
XorConstruction xor_from_fourier();

/// MM sign: -1 for exp(-i theta MM), +1 for exp(+i theta MM). Reversed
/// order treats the printed sequence as an operator product (rightmost first).
struct TemplateConvention {
  int mm_sign = -1;
  bool reversed = false;

  std::string label() const;
  nlohmann::json to_json() const;
};

/// Four Z phases then five MM periods between fixed pi-pulses, on qutrits
/// 0 and 1.
class PhaseSequenceTemplate {
 public:
  static constexpr int kParameters = 9;
  static constexpr int kMMSegments = 5;

  explicit PhaseSequenceTemplate(TemplateConvention convention = {});

  const TemplateConvention& convention() const { return convention_; }

  /// Printed order, angles in radians.
  PulseProgram program(const std::array<double, kParameters>& alphas) const;

  /// Same unitary as run_program(program(alphas)), using the cached pulses.
  Eigen::Matrix<Complex, 9, 9> unitary(const std::array<double, kParameters>& alphas) const;

  /// 1 - fidelity against the phase gate target.
  double objective(const std::array<double, kParameters>& alphas) const;

  /// The alpha = 0 program: fixed pulses only.
  const Eigen::Matrix<Complex, 9, 9>& skeleton() const { return skeleton_; }
  double skeleton_distance() const { return skeleton_distance_; }

  int mm_segment_count() const { return kMMSegments; }

 private:
  using Mat9 = Eigen::Matrix<Complex, 9, 9>;

  // Chronological steps: fixed pulse blocks are pre-multiplied, angle
  // bearing ops stay symbolic.
  struct Step {
    bool fixed = false;
    Mat9 block;
    int alpha = -1;
    bool mm = false;
    int ion = 0;
    Transition transition = Transition::k01;
  };

  Eigen::Matrix<Complex, 9, 1> step_diagonal(const Step& step, double angle) const;

  TemplateConvention convention_;
  std::vector<Step> steps_;
  Mat9 skeleton_;
  double skeleton_distance_ = 0.0;
};

/// Reference pulse angles in units of pi.
std::array<double, 9> reference_alphas_pi();

struct PhaseGateSolution {
  std::array<double, 9> alphas{};  // radians
  double fidelity = 0.0;
  bool converged = false;
  TemplateConvention convention;
  int restart = -1;
  int restarts_run = 0;
  long long evaluations = 0;
  std::uint64_t seed = 0;
  /// Per-qutrit diagonal phases applied after the sequence. Empty when the
  /// sequence hits the target directly.
  std::vector<std::array<double, 3>> corrections;

  nlohmann::json to_json() const;
};

struct OptimizeOptions {
  std::uint64_t seed = 0;
  int restarts = 64;
  double tol = 1e-10;
  int max_evaluations = 20000;  // per restart
  bool start_from_reference = true;
  TemplateConvention convention;
};

/// Multi-start simplex search over alpha in [-20 pi, 20 pi]^9. Restart 0
/// starts from the reference angles, the rest from seeded uniform draws. Stops at the
/// first restart reaching `tol`.
PhaseGateSolution optimize_phase_angles(const OptimizeOptions& options);

struct ReferenceAngleVariant {
  TemplateConvention convention;
  double fidelity = 0.0;
  /// Fidelity after the best per-qutrit phase corrections.
  double fidelity_local_phases = 0.0;
};

std::vector<ReferenceAngleVariant> reference_angle_report();
nlohmann::json reference_angle_json(const std::vector<ReferenceAngleVariant>& variants);

struct RefocusCorrection {
  int ion = 0;
  std::array<double, 3> phases{};  // diagonal of the correction gate
  double c3 = 0.0;                 // phases = c3 diag(lambda3) + c8 diag(lambda8)
  double c8 = 0.0;
};

struct RefocusPlan {
  double theta = 0.0;
  int n_qutrits = 2;
  int pulsed = 0;
  std::array<PulseProgram, 3> segments;
  std::vector<RefocusCorrection> corrections;
  /// composite * corrections = exp(-i global_phase) * (untouched couplings)
  double global_phase = 0.0;

  PulseProgram composite() const;
  /// composite followed by the corrections.
  PulseProgram corrected() const;
};

/// Couplings as MM pair ops with their angle per period. The pulsed qutrit
/// is cycled through three permutations; spectator corrections are derived
/// from the effective generator of the three periods.
RefocusPlan refocus_plan(int n_qutrits, int pulsed, const std::vector<MMPairOp>& couplings);

/// Two qutrits, one coupling of angle theta.
RefocusPlan refocus_plan(double theta);

/// Deviation from identity, up to global phase, of the two-qutrit sequence
/// with the closing pulses taken as the same X pulses as the opening ones
/// and the solved spectator corrections applied.
double literal_refocus_residual(double theta);

struct VerificationCheck {
  std::string name;
  double tolerance = 0.0;
  double measured = 0.0;
  bool lower_bound = false;  // pass when measured >= tolerance
  bool passed = false;
};

struct VerificationReport {
  std::string check;
  std::vector<VerificationCheck> checks;
  nlohmann::json info = nlohmann::json::object();

  bool passed() const;
  void add(std::string name, double tolerance, double measured, bool lower_bound = false);
  nlohmann::json to_json() const;
};

VerificationReport verify_xor();
VerificationReport verify_refocus(double theta);
VerificationReport verify_phase_gate(const OptimizeOptions& options);
VerificationReport qubit_refocus_demo(double theta);

}  // namespace spinmol

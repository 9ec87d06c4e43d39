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

#include "spinmol/readout.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "spinmol/error.hpp"

namespace spinmol {

double uniform01(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

ReadoutResult measure_register(const RegisterState& state, int shots, std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("measure: shots must be positive");
  const double norm = state.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw InvalidArgument("measure: state is not normalised");

  const int n = state.qutrits();
  const Eigen::VectorXcd& a = state.amplitudes();
  std::vector<double> cumulative(static_cast<std::size_t>(a.size()));
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    acc += std::norm(a(i));
    cumulative[static_cast<std::size_t>(i)] = acc;
  }

  ReadoutResult result;
  result.shots = shots;
  result.seed = seed;
  result.counts.assign(static_cast<std::size_t>(n), {0, 0, 0});

  std::mt19937_64 rng(seed);
  std::string key(static_cast<std::size_t>(n), '0');
  for (int shot = 0; shot < shots; ++shot) {
    const double r = uniform01(rng()) * acc;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    if (it == cumulative.end()) --it;
    const auto index = static_cast<Eigen::Index>(it - cumulative.begin());
    for (int q = 0; q < n; ++q) {
      int level = qutrit_digit(index, q, n);
      const bool bright_first = level == 2;
      // X12 swaps |1> and |2> before the second exposure.
      if (!bright_first) level = level == 1 ? 2 : level;
      const bool bright_second = !bright_first && level == 2;
      const int outcome = bright_first ? 2 : (bright_second ? 1 : 0);
      ++result.counts[static_cast<std::size_t>(q)][static_cast<std::size_t>(outcome)];
      key[static_cast<std::size_t>(q)] = static_cast<char>('0' + outcome);
    }
    if (n <= kMaxJointOutcomeQutrits) ++result.joint[key];
  }
  return result;
}

}  // namespace spinmol

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

#include <functional>

#include <Eigen/Dense>

namespace spinmol {

struct NelderMeadOptions {
  int max_evaluations = 20000;
  double f_tolerance = 1e-14;  // spread of simplex values
  double x_tolerance = 1e-12;
  double initial_step = 0.5;
  /// Stop as soon as f <= target.
  double target = -1e300;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Simplex minimiser with dimension-adapted coefficients (Gao and Han).
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options = {});

}  // namespace spinmol

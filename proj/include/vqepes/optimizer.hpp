// Copyright 2026 The vqepes Authors
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

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqepes {

struct BfgsOptions {
  std::size_t max_iterations = 1000;
  double f_tol = 1e-8;  // stop when |f_k - f_{k-1}| < f_tol
  double g_tol = 1e-6;  // stop when max |g_i| < g_tol
  double c1 = 1e-4;
  double c2 = 0.9;
  std::size_t max_line_search = 40;
};

struct OptimizeResult {
  Eigen::VectorXd x;
  double f = 0.0;
  Eigen::VectorXd gradient;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;  // calls of the objective
  std::vector<double> history;  // f at the start and after each iteration
  bool converged = false;
  std::string message;
};

/// Returns f(x) and writes the gradient into `grad`.
using ValueAndGradient = std::function<double(const Eigen::VectorXd& x, Eigen::VectorXd& grad)>;

/// BFGS on the inverse Hessian with a strong-Wolfe line search. The result
/// holds the lowest point seen; a failed line search ends the run with
/// converged = false.
OptimizeResult minimize_bfgs(const ValueAndGradient& fn, const Eigen::VectorXd& x0, const BfgsOptions& options = {});

}  // namespace vqepes

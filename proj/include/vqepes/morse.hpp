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
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace vqepes {

inline constexpr double kKjPerMolPerHartree = 2625.4996;

struct PesPoint {
  double distance = 0.0;   // Angstrom
  double energy = 0.0;     // Hartree
  double std_error = 0.0;  // Hartree, 0 for exact methods
};

struct MorseParams {
  double de = 0.0;      // well depth, Ha
  double a = 1.0;       // 1/Angstrom
  double re = 0.0;      // Angstrom
  double offset = 0.0;  // E(r -> infinity), Ha

  Eigen::Vector4d vec() const { return {de, a, re, offset}; }
  static MorseParams from(const Eigen::Vector4d& v) { return {v[0], v[1], v[2], v[3]}; }
};

/// E(r) = De (1 - exp(-a (r - re)))^2 - De + offset
double morse_energy(const MorseParams& p, double r);

/// re at the lowest energy (smaller distance on ties), offset at the largest
/// distance, De = offset - min E floored at 1e-4, a = 1.
MorseParams initial_guess(const std::vector<PesPoint>& points);

struct MorseFitOptions {
  std::size_t max_iterations = 2000;
  double max_damping = 1e16;
  /// Use 1/stderr^2 weights when every point has stderr > 0.
  bool weighted = true;
};

struct MorseFit {
  MorseParams params;
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();
  Eigen::Vector4d sigma = Eigen::Vector4d::Zero();
  bool weighted = false;
  bool converged = false;
  bool singular = false;
  bool low_confidence = false;
  std::size_t iterations = 0;
  std::size_t n_points = 0;
  double chi2 = 0.0;          // weighted sum of squared residuals
  double rms_residual = 0.0;  // unweighted, Ha
  double final_damping = 0.0;
  std::string message;

  std::pair<double, double> equilibrium_distance() const { return {params.re, sigma[2]}; }
  /// E(re) - E(inf) = -De, with sigma(De).
  std::pair<double, double> binding_energy() const { return {-params.de, sigma[0]}; }
};

/// Levenberg-Marquardt least squares. Covariance is (J^T W J)^-1 for weighted
/// fits and (J^T J)^-1 s^2 with s^2 = RSS / (N - 4) otherwise. Throws with
/// fewer than 4 points.
MorseFit fit_morse(const std::vector<PesPoint>& points, const MorseFitOptions& options = {});

/// Drops points whose energy lies more than `max_wall_ha` above the energy at
/// the largest distance.
std::vector<PesPoint> window_points(const std::vector<PesPoint>& points, double max_wall_ha);

/// (r, E_model(r)) at `step` spacing over [r_min, r_max].
std::vector<std::pair<double, double>> sample_curve(const MorseParams& p, double r_min, double r_max,
                                                    double step = 0.01);

}  // namespace vqepes

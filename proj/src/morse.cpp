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

#include "vqepes/morse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

void check_points(const std::vector<PesPoint>& points) {
  if (points.size() < 4) throw Error(fmt::format("Morse fit needs at least 4 points, got {}", points.size()));
  for (const auto& p : points) {
    if (!std::isfinite(p.distance) || !std::isfinite(p.energy) || !std::isfinite(p.std_error) || p.std_error < 0) {
      throw Error("Morse fit input contains non-finite values or negative standard errors");
    }
  }
}

Eigen::Vector4d gradient_row(const MorseParams& p, double r) {
  const double e = std::exp(-p.a * (r - p.re));
  const double u = 1.0 - e;
  return {u * u - 1.0, 2.0 * p.de * u * e * (r - p.re), -2.0 * p.de * u * e * p.a, 1.0};
}

}  // namespace

double morse_energy(const MorseParams& p, double r) {
  const double u = 1.0 - std::exp(-p.a * (r - p.re));
  return p.de * u * u - p.de + p.offset;
}

MorseParams initial_guess(const std::vector<PesPoint>& points) {
  check_points(points);
  const PesPoint* lowest = &points.front();
  const PesPoint* farthest = &points.front();
  for (const auto& p : points) {
    if (p.energy < lowest->energy || (p.energy == lowest->energy && p.distance < lowest->distance)) lowest = &p;
    if (p.distance > farthest->distance) farthest = &p;
  }
  MorseParams g;
  g.re = lowest->distance;
  g.offset = farthest->energy;
  g.de = std::max(g.offset - lowest->energy, 1e-4);
  g.a = 1.0;
  return g;
}

MorseFit fit_morse(const std::vector<PesPoint>& points, const MorseFitOptions& options) {
  check_points(points);
  const std::size_t n = points.size();
  MorseFit fit;
  fit.n_points = n;
  fit.weighted = options.weighted && std::all_of(points.begin(), points.end(), [](const PesPoint& p) {
                   return p.std_error > 0.0;
                 });
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    w[Eigen::Index(i)] = fit.weighted ? 1.0 / (points[i].std_error * points[i].std_error) : 1.0;
  }

  auto chi2_of = [&](const MorseParams& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = points[i].energy - morse_energy(p, points[i].distance);
      s += w[Eigen::Index(i)] * r * r;
    }
    return s;
  };
  auto normal_equations = [&](const MorseParams& p, Eigen::Matrix4d& jtj, Eigen::Vector4d& jtr) {
    jtj.setZero();
    jtr.setZero();
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::Vector4d row = gradient_row(p, points[i].distance);
      const double r = points[i].energy - morse_energy(p, points[i].distance);
      jtj.noalias() += w[Eigen::Index(i)] * row * row.transpose();
      jtr.noalias() += w[Eigen::Index(i)] * r * row;
    }
  };

  const MorseParams guess = initial_guess(points);
  MorseParams p = guess;
  double chi2 = chi2_of(p);
  double lambda = 1e-3;
  Eigen::Matrix4d jtj;
  Eigen::Vector4d jtr;
  normal_equations(p, jtj, jtr);
  const double scale = std::max(1.0, chi2);
  for (fit.iterations = 0; fit.iterations < options.max_iterations; ++fit.iterations) {
    if (jtr.lpNorm<Eigen::Infinity>() <= 1e-15 * scale) {
      fit.converged = true;
      fit.message = "gradient vanished";
      break;
    }
    bool accepted = false;
    Eigen::Vector4d step = Eigen::Vector4d::Zero();
    double trial_chi2 = chi2;
    MorseParams trial = p;
    while (lambda <= options.max_damping) {
      Eigen::Matrix4d a = jtj;
      for (int k = 0; k < 4; ++k) a(k, k) += lambda * std::max(jtj(k, k), 1e-300);
      step = a.ldlt().solve(jtr);
      trial = MorseParams::from(p.vec() + step);
      trial_chi2 = chi2_of(trial);
      if (std::isfinite(trial_chi2) && trial_chi2 <= chi2) {
        accepted = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!accepted) {
      fit.converged = step.norm() <= 1e-12 * (p.vec().norm() + 1e-12);
      fit.message = fit.converged ? "step below tolerance" : "damping limit reached without improvement";
      break;
    }
    const double drop = chi2 - trial_chi2;
    p = trial;
    chi2 = trial_chi2;
    lambda = std::max(lambda / 10.0, 1e-12);
    normal_equations(p, jtj, jtr);
    if (step.norm() <= 1e-12 * (p.vec().norm() + 1e-12) || drop <= 1e-16 * std::max(chi2, 1e-300)) {
      fit.converged = true;
      fit.message = "converged";
      break;
    }
  }
  if (fit.iterations >= options.max_iterations) fit.message = "iteration cap reached";
  fit.final_damping = lambda;
  fit.params = p;
  fit.chi2 = chi2;
  double rss = 0.0;
  for (const auto& q : points) {
    const double r = q.energy - morse_energy(p, q.distance);
    rss += r * r;
  }
  fit.rms_residual = std::sqrt(rss / double(n));

  Eigen::FullPivLU<Eigen::Matrix4d> lu(jtj);
  const double max_pivot = lu.maxPivot();
  lu.setThreshold(1e-14);
  if (lu.rank() < 4 || !(max_pivot > 0.0)) {
    fit.singular = true;
    fit.covariance.setConstant(std::numeric_limits<double>::quiet_NaN());
    fit.sigma.setConstant(std::numeric_limits<double>::quiet_NaN());
  } else {
    fit.covariance = lu.inverse();
    if (!fit.weighted) fit.covariance *= chi2 / double(std::max<std::size_t>(n - 4, 1));
    for (int k = 0; k < 4; ++k) fit.sigma[k] = std::sqrt(std::max(fit.covariance(k, k), 0.0));
  }

  double r_min = points.front().distance;
  double r_max = r_min;
  for (const auto& q : points) {
    r_min = std::min(r_min, q.distance);
    r_max = std::max(r_max, q.distance);
  }
  fit.low_confidence = !fit.converged || fit.singular || !(p.de > 0.0) || !(p.a > 0.0) || p.re < r_min ||
                       p.re > r_max || guess.re == r_min || guess.re == r_max;
  return fit;
}

std::vector<PesPoint> window_points(const std::vector<PesPoint>& points, double max_wall_ha) {
  if (points.empty()) return {};
  const auto far = std::max_element(points.begin(), points.end(),
                                    [](const PesPoint& a, const PesPoint& b) { return a.distance < b.distance; });
  std::vector<PesPoint> out;
  for (const auto& p : points) {
    if (p.energy - far->energy <= max_wall_ha) out.push_back(p);
  }
  return out;
}

std::vector<std::pair<double, double>> sample_curve(const MorseParams& p, double r_min, double r_max, double step) {
  if (!(step > 0.0) || r_max < r_min) throw Error("invalid curve sampling range");
  std::vector<std::pair<double, double>> out;
  const auto count = static_cast<std::size_t>(std::floor((r_max - r_min) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) {
    const double r = r_min + double(i) * step;
    out.emplace_back(r, morse_energy(p, r));
  }
  return out;
}

}  // namespace vqepes

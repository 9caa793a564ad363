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

#include "vqepes/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "vqepes/error.hpp"

namespace vqepes {

namespace {

struct Sample {
  double alpha = 0.0;
  double f = 0.0;
  double d = 0.0;  // directional derivative
  Eigen::VectorXd g;
};

class LineSearch {
 public:
  LineSearch(const ValueAndGradient& fn, const Eigen::VectorXd& x, const Eigen::VectorXd& p, const Sample& start,
             const BfgsOptions& opt, std::size_t& evaluations)
      : fn_(fn), x_(x), p_(p), s0_(start), opt_(opt), evaluations_(evaluations) {}

  std::optional<Sample> run() {
    Sample prev = s0_;
    double alpha = 1.0;
    for (std::size_t i = 0; i < opt_.max_line_search; ++i) {
      Sample cur = eval(alpha);
      if (!std::isfinite(cur.f)) {
        alpha = 0.5 * (prev.alpha + alpha);
        continue;
      }
      if (cur.f > s0_.f + opt_.c1 * alpha * s0_.d || (i > 0 && cur.f >= prev.f)) return zoom(prev, cur);
      if (std::abs(cur.d) <= -opt_.c2 * s0_.d) return cur;
      if (cur.d >= 0.0) return zoom(cur, prev);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    return std::nullopt;
  }

  const std::optional<Sample>& best() const { return best_; }

 private:
  Sample eval(double alpha) {
    Sample s;
    s.alpha = alpha;
    s.g.resize(x_.size());
    s.f = fn_(x_ + alpha * p_, s.g);
    s.d = s.g.dot(p_);
    ++evaluations_;
    if (std::isfinite(s.f) && (!best_ || s.f < best_->f)) best_ = s;
    return s;
  }

  static double cubic_min(const Sample& a, const Sample& b) {
    const double d1 = a.d + b.d - 3.0 * (a.f - b.f) / (a.alpha - b.alpha);
    const double disc = d1 * d1 - a.d * b.d;
    if (disc < 0.0) return std::numeric_limits<double>::quiet_NaN();
    const double d2 = std::copysign(std::sqrt(disc), b.alpha - a.alpha);
    return b.alpha - (b.alpha - a.alpha) * (b.d + d2 - d1) / (b.d - a.d + 2.0 * d2);
  }

  std::optional<Sample> zoom(Sample lo, Sample hi) {
    for (std::size_t i = 0; i < opt_.max_line_search; ++i) {
      const double left = std::min(lo.alpha, hi.alpha);
      const double right = std::max(lo.alpha, hi.alpha);
      const double width = right - left;
      if (width < 1e-16 * std::max(1.0, right)) break;
      double alpha = cubic_min(lo, hi);
      if (!std::isfinite(alpha) || alpha < left + 0.1 * width || alpha > right - 0.1 * width) {
        alpha = 0.5 * (left + right);
      }
      Sample cur = eval(alpha);
      if (cur.f > s0_.f + opt_.c1 * alpha * s0_.d || cur.f >= lo.f) {
        hi = std::move(cur);
        continue;
      }
      if (std::abs(cur.d) <= -opt_.c2 * s0_.d) return cur;
      if (cur.d * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
      lo = std::move(cur);
    }
    return std::nullopt;
  }

  const ValueAndGradient& fn_;
  const Eigen::VectorXd& x_;
  const Eigen::VectorXd& p_;
  Sample s0_;
  const BfgsOptions& opt_;
  std::size_t& evaluations_;
  std::optional<Sample> best_;
};

}  // namespace

OptimizeResult minimize_bfgs(const ValueAndGradient& fn, const Eigen::VectorXd& x0, const BfgsOptions& options) {
  if (!(options.f_tol > 0.0) || !(options.g_tol > 0.0)) throw Error("optimizer tolerances must be positive");
  const Eigen::Index n = x0.size();
  OptimizeResult r;
  r.x = x0;
  r.gradient.resize(n);
  r.f = fn(r.x, r.gradient);
  r.evaluations = 1;
  r.history.push_back(r.f);
  if (!std::isfinite(r.f)) throw Error("objective is not finite at the starting point");

  auto gnorm = [](const Eigen::VectorXd& g) { return g.size() == 0 ? 0.0 : g.lpNorm<Eigen::Infinity>(); };
  if (gnorm(r.gradient) < options.g_tol) {
    r.converged = true;
    r.message = "gradient below tolerance";
    return r;
  }

  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;
  while (r.iterations < options.max_iterations) {
    Eigen::VectorXd p = -h * r.gradient;
    double d0 = r.gradient.dot(p);
    if (!(d0 < 0.0)) {
      h.setIdentity();
      p = -r.gradient;
      d0 = r.gradient.dot(p);
    }
    Sample s0{0.0, r.f, d0, r.gradient};
    LineSearch ls(fn, r.x, p, s0, options, r.evaluations);
    std::optional<Sample> step = ls.run();
    if (!step) {
      if (ls.best() && ls.best()->f < r.f) {
        step = ls.best();
      } else {
        r.message = "line search failed";
        return r;
      }
    }
    const Eigen::VectorXd s = step->alpha * p;
    const Eigen::VectorXd y = step->g - r.gradient;
    const double f_prev = r.f;
    r.x += s;
    r.f = step->f;
    r.gradient = step->g;
    ++r.iterations;
    r.history.push_back(r.f);

    const double ys = y.dot(s);
    if (ys > 1e-12 * std::sqrt(y.squaredNorm() * s.squaredNorm())) {
      if (!scaled) {
        h *= ys / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / ys;
      const Eigen::VectorXd hy = h * y;
      h += (rho * rho * y.dot(hy) + rho) * s * s.transpose() - rho * (hy * s.transpose() + s * hy.transpose());
    }

    if (std::abs(f_prev - r.f) < options.f_tol) {
      r.converged = true;
      r.message = "energy change below tolerance";
      return r;
    }
    if (gnorm(r.gradient) < options.g_tol) {
      r.converged = true;
      r.message = "gradient below tolerance";
      return r;
    }
  }
  r.message = "iteration cap reached";
  return r;
}

}  // namespace vqepes

// Copyright 2026 The Depolarizer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include <Eigen/Cholesky>

#include "depol/poisson.hpp"
#include "depol/tomography.hpp"

namespace depol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
/// Weight of the (‖x‖² - 1)² term that pins the otherwise free scale of x.
constexpr double kScalePenalty = 1.0;
/// Weight of the maximally mixed state blended into the starting point.
constexpr double kStartMixing = 1e-3;
/// Extra Newton steps taken once the tolerance is met.
constexpr int kPolishSteps = 4;

Matrix2c gram_matrix(const Eigen::Vector4d& x) {
  const Complex off(x(2), x(3));
  Matrix2c a;
  a(0, 0) = x(0) * x(0) + std::norm(off);
  a(0, 1) = std::conj(off) * x(1);
  a(1, 0) = off * x(1);
  a(1, 1) = x(1) * x(1);
  return a;
}

/// ∂A/∂x_k for A = T†T.
std::array<Matrix2c, 4> gram_derivatives(const Eigen::Vector4d& x) {
  const Complex i(0.0, 1.0);
  std::array<Matrix2c, 4> d;
  d[0] << 2.0 * x(0), 0.0, 0.0, 0.0;
  d[1] << 0.0, Complex(x(2), -x(3)), Complex(x(2), x(3)), 2.0 * x(1);
  d[2] << 2.0 * x(2), x(1), x(1), 0.0;
  d[3] << 2.0 * x(3), -i * x(1), i * x(1), 0.0;
  return d;
}

struct Penalized {
  const LikelihoodObjective& f;

  double value(const Eigen::Vector4d& x) const {
    const double dev = x.squaredNorm() - 1.0;
    return f.value(x) + kScalePenalty * dev * dev;
  }
  Eigen::Vector4d gradient(const Eigen::Vector4d& x) const {
    const double dev = x.squaredNorm() - 1.0;
    return f.gradient(x) + 4.0 * kScalePenalty * dev * x;
  }
  Eigen::Matrix4d hessian(const Eigen::Vector4d& x) const {
    const double h = 1e-5 * std::max(1.0, x.norm());
    Eigen::Matrix4d hess;
    for (int k = 0; k < 4; ++k) {
      Eigen::Vector4d up = x, down = x;
      up(k) += h;
      down(k) -= h;
      hess.col(k) = (gradient(up) - gradient(down)) / (2.0 * h);
    }
    return 0.5 * (hess + hess.transpose());
  }
};

/// ‖∇f‖ at the unit-norm representative of x.
double stationarity(const LikelihoodObjective& f, const Eigen::Vector4d& x) {
  const Eigen::Vector4d unit = x.normalized();
  Eigen::Vector4d g = f.gradient(unit);
  g -= g.dot(unit) * unit;
  return g.norm();
}

struct Attempt {
  Eigen::Vector4d x;
  double value = kInf;
  double gradient_norm = kInf;
  int iterations = 0;
  bool converged = false;
};

Attempt damped_newton(const LikelihoodObjective& f, Eigen::Vector4d x, const MleOptions& opt) {
  const Penalized obj{f};
  x.normalize();
  Attempt out;
  double fx = obj.value(x);
  double damping = 0.0;
  int polish = 0;
  Eigen::Vector4d best_x = x;
  double best_gn = kInf;
  for (int iter = 0; iter < opt.max_iterations + kPolishSteps; ++iter) {
    const double gn = stationarity(f, x);
    if (gn < opt.gradient_tolerance) {
      if (gn < best_gn) {
        best_gn = gn;
        best_x = x;
      }
      if (!out.converged) out.iterations = iter;
      out.converged = true;
      if (polish++ == kPolishSteps || gn == 0.0) break;
    } else if (iter >= opt.max_iterations) {
      break;
    } else {
      out.iterations = iter + 1;
    }
    const Eigen::Vector4d g = obj.gradient(x);
    const Eigen::Matrix4d hess = obj.hessian(x);
    const double hess_scale = std::max(1e-12, hess.cwiseAbs().maxCoeff());

    bool accepted = false;
    for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
      const Eigen::LDLT<Eigen::Matrix4d> ldlt(hess + damping * Eigen::Matrix4d::Identity());
      Eigen::Vector4d step;
      const bool usable = ldlt.info() == Eigen::Success && ldlt.isPositive();
      if (usable) step = ldlt.solve(-g);
      if (!usable || !step.allFinite() || step.dot(g) >= 0.0) {
        damping = std::max(10.0 * damping, 1e-10 * hess_scale);
        continue;
      }
      const Eigen::Vector4d trial = x + step;
      const double f_trial = obj.value(trial);
      const bool decreased = f_trial < fx;
      // Below the rounding floor of f, progress is judged on the gradient.
      const bool flat = std::abs(f_trial - fx) <= 1e-14 * (1.0 + std::abs(fx)) &&
                        obj.gradient(trial).norm() < g.norm();
      if (std::isfinite(f_trial) && (decreased || flat)) {
        x = trial;
        fx = f_trial;
        damping *= 0.1;
        if (damping < 1e-14 * hess_scale) damping = 0.0;
        accepted = true;
      } else {
        damping = std::max(10.0 * damping, 1e-10 * hess_scale);
      }
    }
    if (!accepted) break;
  }
  if (out.converged && stationarity(f, x) > best_gn) x = best_x;
  out.x = x.normalized();
  out.value = f.value(out.x);
  out.gradient_norm = stationarity(f, out.x);
  out.converged = out.converged || out.gradient_norm < opt.gradient_tolerance;
  return out;
}

Eigen::Vector4d random_start(std::mt19937_64& gen) {
  Eigen::Vector4d x;
  for (int k = 0; k < 4; k += 2) {
    // Box-Muller on the portable uniform source.
    const double r = std::sqrt(-2.0 * std::log(uniform_open01(gen)));
    const double phi = 2.0 * std::numbers::pi * uniform_open01(gen);
    x(k) = r * std::cos(phi);
    x(k + 1) = r * std::sin(phi);
  }
  return x;
}

MleResult to_result(const LikelihoodObjective& f, const Attempt& a, int restarts_used) {
  MleResult r;
  r.rho = LikelihoodObjective::state(a.x);
  r.log_likelihood = f.log_likelihood(r.rho);
  r.gradient_norm = a.gradient_norm;
  r.iterations = a.iterations;
  r.restarts_used = restarts_used;
  return r;
}

}  // namespace

LikelihoodObjective::LikelihoodObjective(const MeasurementRecord& rec)
    : shots_(static_cast<double>(rec.shots)) {
  if (rec.settings.size() != rec.counts.size() || rec.settings.empty()) {
    throw EstimateError("record has mismatched or empty settings");
  }
  if (rec.shots == 0) throw EstimateError("record has zero shots per setting");
  for (std::size_t j = 0; j < rec.settings.size(); ++j) {
    projectors_.push_back(projector(rec.settings[j]));
    counts_.push_back(static_cast<double>(rec.counts[j]));
  }
  scale_ = shots_ * static_cast<double>(rec.settings.size());
}

DensityMatrix LikelihoodObjective::state(const Eigen::Vector4d& x) {
  const Matrix2c a = gram_matrix(x);
  const double tr = a.trace().real();
  if (!(tr > 0.0)) throw EstimateError("zero parameter vector has no state");
  Matrix2c rho = a / tr;
  rho(0, 0) = rho(0, 0).real();
  rho(1, 1) = 1.0 - rho(0, 0).real();
  rho(1, 0) = std::conj(rho(0, 1));
  return DensityMatrix(rho);
}

Eigen::Vector4d LikelihoodObjective::parameters(const DensityMatrix& rho) {
  const double a11 = rho(1, 1).real();
  if (!(a11 > 0.0)) throw EstimateError("parameters() needs a full-rank state");
  const double x1 = std::sqrt(a11);
  const Complex off = rho(1, 0) / x1;
  const double x0 = std::sqrt(std::max(rho(0, 0).real() - std::norm(off), 0.0));
  return {x0, x1, off.real(), off.imag()};
}

double LikelihoodObjective::value(const Eigen::Vector4d& x) const {
  const Matrix2c a = gram_matrix(x);
  const double s = a.trace().real();
  if (!(s > 0.0)) return kInf;
  double total = 0.0;
  for (std::size_t j = 0; j < projectors_.size(); ++j) {
    const double p = (a * projectors_[j]).trace().real() / s;
    if (counts_[j] > 0.0) {
      if (!(p > 0.0)) return kInf;
      total += counts_[j] * std::log(p);
    }
    total -= shots_ * p;
  }
  return -total / scale_;
}

Eigen::Vector4d LikelihoodObjective::gradient(const Eigen::Vector4d& x) const {
  const Matrix2c a = gram_matrix(x);
  const double s = a.trace().real();
  const auto da = gram_derivatives(x);
  Eigen::Vector4d g = Eigen::Vector4d::Zero();
  for (std::size_t j = 0; j < projectors_.size(); ++j) {
    const double p = (a * projectors_[j]).trace().real() / s;
    double weight = -shots_;
    if (counts_[j] > 0.0) {
      if (!(p > 0.0)) return Eigen::Vector4d::Constant(std::numeric_limits<double>::quiet_NaN());
      weight += counts_[j] / p;
    }
    for (int k = 0; k < 4; ++k) {
      const double dq = (da[k] * projectors_[j]).trace().real();
      g(k) += weight * (dq - 2.0 * x(k) * p) / s;
    }
  }
  return -g / scale_;
}

double LikelihoodObjective::log_likelihood(const DensityMatrix& rho) const {
  double total = 0.0;
  for (std::size_t j = 0; j < projectors_.size(); ++j) {
    const double mean = shots_ * std::clamp((rho.matrix() * projectors_[j]).trace().real(), 0.0, 1.0);
    if (counts_[j] > 0.0) {
      if (!(mean > 0.0)) return -kInf;
      total += counts_[j] * std::log(mean);
    }
    total -= mean;
  }
  return total;
}

ConvergenceError::ConvergenceError(const std::string& what, MleResult best)
    : Error(what), best_(std::move(best)) {}

MleResult qst_mle_detailed(const MeasurementRecord& rec, const MleOptions& options) {
  const LikelihoodObjective f(rec);
  const LinearEstimate lin = qst_linear(rec);
  const Matrix2c start_rho = (1.0 - kStartMixing) * lin.projected().matrix() +
                             kStartMixing * 0.5 * Matrix2c::Identity();
  Attempt best = damped_newton(f, LikelihoodObjective::parameters(DensityMatrix(start_rho)), options);
  if (best.converged) return to_result(f, best, 0);

  std::mt19937_64 gen(options.restart_seed);
  bool any_converged = false;
  int used = 0;
  for (int k = 1; k <= options.restarts; ++k) {
    used = k;
    const Attempt trial = damped_newton(f, random_start(gen), options);
    // Converged attempts win; among equals the lower objective, then the
    // earlier restart.
    const bool better = (trial.converged && !any_converged) ||
                        (trial.converged == any_converged && trial.value < best.value);
    if (better) {
      best = trial;
      any_converged = any_converged || trial.converged;
    }
  }
  if (any_converged) return to_result(f, best, used);
  throw ConvergenceError("maximum-likelihood fit did not reach gradient norm " +
                             std::to_string(options.gradient_tolerance) + " (best " +
                             std::to_string(best.gradient_norm) + ")",
                         to_result(f, best, used));
}

DensityMatrix qst_mle(const MeasurementRecord& rec, const MleOptions& options) {
  return qst_mle_detailed(rec, options).rho;
}

}  // namespace depol

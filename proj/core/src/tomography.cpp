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

#include "depol/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "depol/temporal.hpp"

namespace depol {

namespace {

double min_eigenvalue(const Matrix2c& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
}

Eigen::Vector3d stokes_of_matrix(const Matrix2c& m) {
  const auto& ops = stokes_operators();
  return {(m * ops[0]).trace().real(), (m * ops[1]).trace().real(),
          (m * ops[2]).trace().real()};
}

}  // namespace

DensityMatrix LinearEstimate::projected() const {
  Eigen::SelfAdjointEigenSolver<Matrix2c> eig(0.5 * (matrix + matrix.adjoint()));
  const Eigen::Vector2d clipped = eig.eigenvalues().cwiseMax(0.0);
  const double total = clipped.sum();
  if (!(total > 0.0)) {
    throw EstimateError("linear estimate has no positive spectrum");
  }
  const Matrix2c rho =
      eig.eigenvectors() * (clipped / total).cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  return DensityMatrix(0.5 * (rho + rho.adjoint()));
}

LinearEstimate qst_linear(const MeasurementRecord& rec) {
  if (rec.settings.size() != rec.counts.size()) {
    throw EstimateError("record has mismatched settings and counts");
  }
  std::map<Projector, double> totals;
  for (std::size_t j = 0; j < rec.settings.size(); ++j) {
    totals[rec.settings[j]] += static_cast<double>(rec.counts[j]);
  }
  for (Projector p : six_settings()) {
    if (!totals.contains(p)) {
      throw EstimateError("record lacks the '" + std::string(label(p)) + "' setting");
    }
  }
  auto contrast = [&totals](Projector plus, Projector minus) {
    const double n_plus = totals[plus];
    const double n_minus = totals[minus];
    if (n_plus + n_minus <= 0.0) {
      throw EstimateError("zero total counts for analyzer pair " + std::string(label(plus)) + "/" +
                          std::string(label(minus)));
    }
    return (n_plus - n_minus) / (n_plus + n_minus);
  };
  LinearEstimate est;
  est.stokes = {contrast(Projector::h, Projector::v), contrast(Projector::p, Projector::m),
                contrast(Projector::r, Projector::l)};
  const auto& ops = stokes_operators();
  est.matrix = 0.5 * (Matrix2c::Identity() + est.stokes.s1 * ops[0] + est.stokes.s2 * ops[1] +
                      est.stokes.s3 * ops[2]);
  est.min_eigenvalue = min_eigenvalue(est.matrix);
  est.physical = est.min_eigenvalue >= -kPsdTolerance;
  return est;
}

const std::array<Matrix2c, 4>& chi_basis() {
  static const std::array<Matrix2c, 4> basis = [] {
    const auto& s = stokes_operators();
    return std::array<Matrix2c, 4>{Matrix2c::Identity(), s[1], s[2], s[0]};
  }();
  return basis;
}

ChiMatrix qpt(const std::array<DensityMatrix, 4>& outputs) {
  const Complex i(0.0, 1.0);
  const Matrix2c& out_h = outputs[0].matrix();
  const Matrix2c& out_v = outputs[1].matrix();
  const Matrix2c& out_p = outputs[2].matrix();
  const Matrix2c& out_r = outputs[3].matrix();

  // Images of the matrix units |a><b|, using linearity:
  // |0><1| = |p><p| + i|r><r| - (1+i)/2 (|h><h| + |v><v|).
  std::array<Matrix2c, 4> images;
  images[0] = out_h;                                                  // |0><0|
  images[1] = out_p + i * out_r - 0.5 * (1.0 + i) * (out_h + out_v);  // |0><1|
  images[2] = images[1].adjoint();                                    // |1><0|
  images[3] = out_v;                                                  // |1><1|

  const auto& e = chi_basis();
  Eigen::Matrix<Complex, 16, 16> system;
  Eigen::Matrix<Complex, 16, 1> rhs;
  for (int k = 0; k < 4; ++k) {
    Matrix2c unit = Matrix2c::Zero();
    unit(k / 2, k % 2) = 1.0;
    for (int row = 0; row < 4; ++row) {
      const int eq = 4 * k + row;
      rhs(eq) = images[k](row / 2, row % 2);
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          system(eq, 4 * m + n) = (e[m] * unit * e[n].adjoint())(row / 2, row % 2);
        }
      }
    }
  }
  const Eigen::Matrix<Complex, 16, 1> sol = system.fullPivLu().solve(rhs);
  Eigen::Matrix4cd raw;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) raw(m, n) = sol(4 * m + n);
  }
  raw = 0.5 * (raw + raw.adjoint());

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(raw);
  Eigen::Vector4d spectrum = eig.eigenvalues();
  double clipped = 0.0;
  for (int k = 0; k < 4; ++k) {
    if (spectrum(k) < 0.0) {
      clipped -= spectrum(k);
      spectrum(k) = 0.0;
    }
  }
  const double total = spectrum.sum();
  if (!(total > 0.0)) {
    throw EstimateError("process matrix has no positive spectrum");
  }
  ChiMatrix chi;
  chi.entries = eig.eigenvectors() * (spectrum / total).cast<Complex>().asDiagonal() *
                eig.eigenvectors().adjoint();
  chi.entries = 0.5 * (chi.entries + chi.entries.adjoint());
  chi.clipped_mass = clipped;
  chi.warning = clipped > kChiWarningMass;
  return chi;
}

ChiMatrix chi_from_kraus(std::span<const Matrix2c> kraus) {
  const auto& e = chi_basis();
  ChiMatrix chi;
  for (const Matrix2c& k : kraus) {
    Eigen::Vector4cd c;
    for (int m = 0; m < 4; ++m) c(m) = 0.5 * (e[m].adjoint() * k).trace();
    chi.entries += c * c.adjoint();
  }
  return chi;
}

ChiMatrix theory_chi(const SchemeConfig& cfg) {
  if (cfg.coherence == 0.0) {
    const std::vector<Matrix2c> ops = kraus_operators(cfg);
    return chi_from_kraus(ops);
  }
  return qpt(qpt_outputs(cfg));
}

Matrix2c apply_chi(const ChiMatrix& chi, const Matrix2c& rho) {
  const auto& e = chi_basis();
  Matrix2c out = Matrix2c::Zero();
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      out += chi.entries(m, n) * (e[m] * rho * e[n].adjoint());
    }
  }
  return out;
}

double process_fidelity(const ChiMatrix& a, const ChiMatrix& b) {
  const double ta = a.entries.trace().real();
  const double tb = b.entries.trace().real();
  if (!(ta > 0.0) || !(tb > 0.0)) {
    throw DomainError("process fidelity needs χ matrices with positive trace");
  }
  return uhlmann_fidelity(a.entries / ta, b.entries / tb);
}

StokesChannel channel_from_chi(const ChiMatrix& chi) {
  const Eigen::Vector3d sh = stokes_of_matrix(apply_chi(chi, density_from_jones(basis::h()).matrix()));
  const Eigen::Vector3d sv = stokes_of_matrix(apply_chi(chi, density_from_jones(basis::v()).matrix()));
  const Eigen::Vector3d sp = stokes_of_matrix(apply_chi(chi, density_from_jones(basis::p()).matrix()));
  const Eigen::Vector3d sr = stokes_of_matrix(apply_chi(chi, density_from_jones(basis::r()).matrix()));
  StokesChannel c;
  c.b = 0.5 * (sh + sv);
  c.m.col(0) = sh - c.b;
  c.m.col(1) = sp - c.b;
  c.m.col(2) = sr - c.b;
  return c;
}

double trace_preservation_residual(const ChiMatrix& chi) {
  const auto& e = chi_basis();
  Matrix2c sum = Matrix2c::Zero();
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) sum += chi.entries(m, n) * (e[n].adjoint() * e[m]);
  }
  return (sum - Matrix2c::Identity()).norm();
}

}  // namespace depol

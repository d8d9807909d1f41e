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

#include "depol/polarization.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "depol/errors.hpp"
#include "test_util.hpp"

using namespace depol;
using depol::testing::max_abs_diff;

namespace {

Matrix2c mat(Complex a, Complex b, Complex c, Complex d) {
  Matrix2c m;
  m << a, b, c, d;
  return m;
}

const Complex kI(0.0, 1.0);

}  // namespace

TEST(JonesVector, rejects_unnormalized_amplitudes) {
  EXPECT_THROW(JonesVector(1.0, 1.0), NormalizationError);
  EXPECT_THROW(JonesVector::normalized(0.0, 0.0), NormalizationError);
  EXPECT_NO_THROW(JonesVector(0.6, Complex(0.0, 0.8)));
}

TEST(JonesVector, label_lookup) {
  EXPECT_EQ(jones_from_label("r").amplitudes(), basis::r().amplitudes());
  EXPECT_THROW(jones_from_label("x"), DomainError);
}

TEST(DensityFromJones, basis_examples) {
  EXPECT_LT(max_abs_diff(density_from_jones(basis::h()).matrix(), mat(1, 0, 0, 0)), 1e-15);
  EXPECT_LT(max_abs_diff(density_from_jones(basis::p()).matrix(), mat(.5, .5, .5, .5)), 1e-15);
  EXPECT_LT(max_abs_diff(density_from_jones(basis::r()).matrix(), mat(.5, -0.5 * kI, 0.5 * kI, .5)),
            1e-15);
}

TEST(StokesFromDensity, examples) {
  const StokesVector h = stokes_from_density(density_from_jones(basis::h()));
  EXPECT_NEAR(h.s1, 1.0, 1e-15);
  EXPECT_NEAR(h.s2, 0.0, 1e-15);
  EXPECT_NEAR(h.s3, 0.0, 1e-15);
  EXPECT_NEAR(stokes_from_density(DensityMatrix::maximally_mixed()).norm(), 0.0, 1e-15);
  const StokesVector r = stokes_from_density(density_from_jones(basis::r()));
  EXPECT_NEAR(r.s3, 1.0, 1e-15);
  EXPECT_NEAR(r.s1, 0.0, 1e-15);
}

TEST(StokesFromDensity, cardinal_states_follow_convention) {
  struct Case {
    JonesVector j;
    Eigen::Vector3d s;
  };
  const Case cases[] = {{basis::h(), {1, 0, 0}}, {basis::v(), {-1, 0, 0}}, {basis::p(), {0, 1, 0}},
                        {basis::m(), {0, -1, 0}}, {basis::r(), {0, 0, 1}}, {basis::l(), {0, 0, -1}}};
  for (const auto& c : cases) {
    EXPECT_LT((stokes_from_density(density_from_jones(c.j)).vec() - c.s).norm(), 1e-15);
  }
}

TEST(DensityFromStokes, examples) {
  EXPECT_LT(max_abs_diff(density_from_stokes({0, 0, 0}).matrix(), 0.5 * Matrix2c::Identity()), 1e-15);
  EXPECT_LT(max_abs_diff(density_from_stokes({1, 0, 0}).matrix(), density_from_jones(basis::h()).matrix()),
            1e-15);
  const double c = 1.0 / std::sqrt(3.0);
  const DensityMatrix pure = density_from_stokes({c, c, c});
  EXPECT_NEAR(std::abs(pure.matrix().determinant()), 0.0, 1e-12);
}

TEST(DensityFromStokes, rejects_vectors_outside_ball) {
  EXPECT_THROW(density_from_stokes({1.0, 0.1, 0.0}), InvalidStateError);
  EXPECT_NO_THROW(density_from_stokes({1.0 + 5e-11, 0.0, 0.0}));
}

TEST(DensityMatrix, validates_invariants) {
  EXPECT_THROW(DensityMatrix(mat(0.5, 0.1, 0.2, 0.5)), InvalidStateError);  // not Hermitian
  EXPECT_THROW(DensityMatrix(mat(0.6, 0.0, 0.0, 0.5)), InvalidStateError);  // trace
  EXPECT_THROW(DensityMatrix(mat(1.1, 0.0, 0.0, -0.1)), InvalidStateError); // negative
  EXPECT_NO_THROW(DensityMatrix(mat(1.0 + 5e-11, 0.0, 0.0, -5e-11)));
}

TEST(Dop, examples) {
  EXPECT_NEAR(dop(DensityMatrix::maximally_mixed()), 0.0, 1e-15);
  EXPECT_NEAR(dop(density_from_jones(basis::h())), 1.0, 1e-15);
  // diag(2/3, 1/3): √(1 - 4·2/9) = 1/3 and |S| = |2/3 - 1/3| = 1/3.
  const DensityMatrix rho(mat(2.0 / 3.0, 0, 0, 1.0 / 3.0));
  EXPECT_NEAR(dop(rho), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(dop_from_determinant(rho), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::sqrt(1.0 - 8.0 / 9.0), 1.0 / 3.0, 1e-15);
}

TEST(Dop, determinant_route_clamps_at_zero) {
  EXPECT_EQ(dop_from_determinant(DensityMatrix::maximally_mixed()), 0.0);
}

TEST(StateFidelity, examples) {
  const DensityMatrix h = density_from_jones(basis::h());
  const DensityMatrix v = density_from_jones(basis::v());
  EXPECT_NEAR(state_fidelity(h, h), 1.0, 1e-15);
  EXPECT_NEAR(state_fidelity(h, v), 0.0, 1e-15);
  EXPECT_NEAR(state_fidelity(h, DensityMatrix::maximally_mixed()), 0.5, 1e-15);
}

TEST(StateFidelity, closed_form_matches_matrix_square_root_route) {
  std::mt19937_64 gen(11);
  for (int k = 0; k < 500; ++k) {
    const DensityMatrix a = depol::testing::random_mixed(gen);
    const DensityMatrix b = depol::testing::random_mixed(gen);
    const double closed = state_fidelity(a, b);
    EXPECT_NEAR(closed, uhlmann_fidelity(a.matrix(), b.matrix()), 1e-10);
    EXPECT_NEAR(closed, state_fidelity(b, a), 1e-10);
  }
}

TEST(PolarizationProperties, determinant_identity_on_random_states) {
  std::mt19937_64 gen(1);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const DensityMatrix rho = depol::testing::random_mixed(gen);
    worst = std::max(worst, std::abs(stokes_from_density(rho).norm() - dop_from_determinant(rho)));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(PolarizationProperties, stokes_round_trip) {
  std::mt19937_64 gen(2);
  for (int k = 0; k < 2000; ++k) {
    const DensityMatrix rho = depol::testing::random_mixed(gen);
    const DensityMatrix back = density_from_stokes(stokes_from_density(rho));
    EXPECT_LT(max_abs_diff(rho.matrix(), back.matrix()), 1e-12);
  }
}

TEST(PolarizationProperties, dop_is_unitarily_invariant) {
  std::mt19937_64 gen(3);
  for (int k = 0; k < 2000; ++k) {
    const DensityMatrix rho = depol::testing::random_mixed(gen);
    const Matrix2c u = depol::testing::random_unitary(gen);
    const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
    EXPECT_NEAR(dop(rho), dop(rotated), 1e-10);
  }
}

TEST(JonesFromStokes, reproduces_the_direction) {
  std::mt19937_64 gen(4);
  for (int k = 0; k < 500; ++k) {
    const JonesVector j = depol::testing::random_pure(gen);
    const StokesVector s = stokes_from_density(density_from_jones(j));
    const JonesVector back = jones_from_stokes(s);
    EXPECT_NEAR(state_fidelity(density_from_jones(j), density_from_jones(back)), 1.0, 1e-12);
    EXPECT_GE(back.amp_h().real(), 0.0);
    EXPECT_NEAR(back.amp_h().imag(), 0.0, 1e-15);
  }
  EXPECT_THROW(jones_from_stokes({0.5, 0.0, 0.0}), InvalidStateError);
}

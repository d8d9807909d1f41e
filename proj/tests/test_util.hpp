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

#ifndef DEPOL_TESTS_TEST_UTIL_HPP
#define DEPOL_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <random>

#include "depol/polarization.hpp"
#include "depol/temporal.hpp"

namespace depol::testing {

inline JonesVector random_pure(std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  return JonesVector::normalized(Complex(n(gen), n(gen)), Complex(n(gen), n(gen)));
}

/// Ginibre-distributed mixed state G G† / tr.
inline DensityMatrix random_mixed(std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  Matrix2c g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = Complex(n(gen), n(gen));
  const Matrix2c a = g * g.adjoint();
  return DensityMatrix(a / a.trace().real());
}

inline Matrix2c random_unitary(std::mt19937_64& gen) {
  std::normal_distribution<double> n;
  Matrix2c g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g(r, c) = Complex(n(gen), n(gen));
  Eigen::HouseholderQR<Matrix2c> qr(g);
  return qr.householderQ() * Matrix2c::Identity();
}

/// Random element list mixing crystals, plates and general unitaries.
inline SchemeConfig random_config(std::mt19937_64& gen, int max_elements = 6) {
  std::uniform_int_distribution<int> count(1, max_elements);
  std::uniform_int_distribution<int> kind(0, 3);
  std::uniform_int_distribution<int> delay(1, 4);
  std::uniform_real_distribution<double> angle(-180.0, 180.0);
  SchemeConfig cfg;
  const int n = count(gen);
  for (int k = 0; k < n; ++k) {
    switch (kind(gen)) {
      case 0: cfg.elements.push_back(OpticalElement::crystal(angle(gen), delay(gen))); break;
      case 1: cfg.elements.push_back(OpticalElement::half_wave_plate(angle(gen))); break;
      case 2: cfg.elements.push_back(OpticalElement::quarter_wave_plate(angle(gen))); break;
      default: cfg.elements.push_back(OpticalElement::general(random_unitary(gen))); break;
    }
  }
  return cfg;
}

inline double max_abs_diff(const Matrix2c& a, const Matrix2c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace depol::testing

#endif  // DEPOL_TESTS_TEST_UTIL_HPP

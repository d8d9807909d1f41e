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

#ifndef DEPOL_POISSON_HPP
#define DEPOL_POISSON_HPP

#include <cstdint>
#include <random>

namespace depol {

/// Uniform double in (0, 1) from the top 53 bits of one generator output.
double uniform_open01(std::mt19937_64& gen);

/// Poisson variate with the given mean. Sequential inversion below mean 10,
/// Hörmann's transformed rejection (PTRS) above. The algorithm is fixed here
/// rather than delegated to std::poisson_distribution, whose output is
/// implementation-defined.
std::uint64_t sample_poisson(std::mt19937_64& gen, double mean);

}  // namespace depol

#endif  // DEPOL_POISSON_HPP

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

#ifndef DEPOL_ERRORS_HPP
#define DEPOL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace depol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A Jones vector or time-bin state does not have unit norm.
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// Matrix or Stokes vector outside the physical state space.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

/// Malformed optical element or scheme configuration.
class InvalidElementError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Measurement data cannot support the requested estimate.
class EstimateError : public Error {
 public:
  using Error::Error;
};

}  // namespace depol

#endif  // DEPOL_ERRORS_HPP

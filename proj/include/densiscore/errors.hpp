// Copyright 2026 The densiscore authors
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

#include <stdexcept>
#include <string>

namespace densiscore {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input data has zero spread in some dimension (no density can be fitted).
struct DegenerateSample : Error {
  using Error::Error;
};

/// Every bandwidth candidate produced an invalid objective value.
struct OptimizationFailed : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

/// A density value of zero made an inverse weight non-finite.
struct NonFiniteWeight : Error {
  using Error::Error;
};

/// A relative metric's denominator is zero (constant actual values).
struct ZeroDenominator : Error {
  using Error::Error;
};

/// The kernel ridge system could not be solved.
struct SingularSystem : Error {
  using Error::Error;
};

struct TooFewSamples : Error {
  using Error::Error;
};

/// Malformed or unreadable CSV input.
struct CsvError : Error {
  using Error::Error;
};

}  // namespace densiscore

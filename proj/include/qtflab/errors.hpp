// Copyright 2026 The qtflab Authors
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

#ifndef QTFLAB_ERRORS_HPP
#define QTFLAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qtflab {

/// Shapes of two operands do not fit together (register sizes, bit lengths).
class DimensionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// A request would exceed one of the dense-representation caps.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A value violates a type invariant (norm, Hermiticity, PSD, ...).
class InvariantError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller-supplied argument outside the accepted domain.
class ArgumentError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kNorm = 1e-9;
inline constexpr double kHermitian = 1e-10;
inline constexpr double kPsdFloor = -1e-10;
inline constexpr double kTrace = 1e-9;
inline constexpr double kWeightSum = 1e-9;
inline constexpr double kKernelRelative = 1e-10;
inline constexpr double kPovmCompleteness = 1e-8;
inline constexpr double kTwirlGap = 1e-10;
}  // namespace tol

/// Dense caps. State vectors are bounded by amplitude count, operators by
/// their side length. Both are process-wide and may be overridden at start-up
/// (the CLI reads QTFLAB_MAX_DIM into the state cap).
inline constexpr std::size_t kDefaultMaxStateDim = std::size_t{1} << 20;
inline constexpr std::size_t kDefaultMaxOperatorDim = 2048;
inline constexpr int kDefaultMaxTableBits = 12;

std::size_t max_state_dim();
void set_max_state_dim(std::size_t dim);
std::size_t max_operator_dim();
void set_max_operator_dim(std::size_t dim);
int max_table_bits();
void set_max_table_bits(int n);

/// Reads QTFLAB_MAX_DIM (if set) into the state cap. Returns false when the
/// variable is present but malformed.
bool load_caps_from_env();

void require_state_dim(std::size_t dim, const char *what);
void require_operator_dim(std::size_t dim, const char *what);

/// dim = base^exp, throwing ResourceError when it exceeds `cap`.
std::size_t checked_pow(std::size_t base, std::size_t exp, std::size_t cap, const char *what);

}  // namespace qtflab

#endif

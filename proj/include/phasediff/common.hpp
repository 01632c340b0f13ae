// Copyright 2026 The phasediff Authors
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

#ifndef PHASEDIFF_COMMON_HPP
#define PHASEDIFF_COMMON_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace phasediff {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Global positive-semidefiniteness tolerance. Validators take an override.
inline constexpr double kPsdTol = 1e-10;
/// Tolerance for unit-norm checks on Gram vectors and Fourier functions.
inline constexpr double kUnitTol = 1e-10;

enum class ErrorCode {
    InvalidArgument,
    NonHermitianInput,
    NonUnitVector,
    NonUnitNorm,
    DimensionTooSmall,
    MissingLabel,
    ValidationFailed,
    CutoffMismatch,
    MalformedMoment,
    TailTooLarge,
    CutoffOverBudget,
    ConfigError,
    IoError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Max-norm of a complex matrix (largest entry modulus).
double max_abs(const Matrix& m);

/// Max-norm of A - A^dagger.
double hermiticity_residual(const Matrix& m);

/// Smallest eigenvalue of the Hermitian part of `m`. Empty matrices report 0.
double min_hermitian_eigenvalue(const Matrix& m);

/// Wraps an angle into [0, 2pi).
double wrap_angle(double theta);

// Worker count used by the block-parallel loops. Results never depend on it:
// every loop writes into a preallocated slot and reductions run in index order.
void set_thread_count(int threads);
int thread_count();

/// Runs body(i) for i in [0, count) on up to thread_count() workers.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace phasediff

#endif  // PHASEDIFF_COMMON_HPP

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

// Single-mode phase observables E(X) = sum c_{n,m} w_{n-m}(X) |n><m|, where
// c is a phase kernel (Gram matrix of unit vectors) and w_q(X) is the Fourier
// weight (1/2pi) int_X exp(i q theta) dtheta.

#ifndef PHASEDIFF_PHASE1_HPP
#define PHASEDIFF_PHASE1_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "phasediff/common.hpp"

namespace phasediff {

/// Finite disjoint union of half-open intervals [a, b) inside [0, 2pi).
///
/// Construction normalizes: bounds are reduced modulo 2pi (an interval that
/// crosses the wrap point is split), overlapping or touching pieces are
/// merged, and the pieces are sorted.
class IntervalSet {
public:
    IntervalSet() = default;
    explicit IntervalSet(const std::vector<std::pair<double, double>>& intervals);

    static IntervalSet full_circle();
    /// [a, b) with a < b, b - a <= 2pi; any real a.
    static IntervalSet interval(double a, double b);
    /// Equispaced partition of [0, 2pi) into `cells` pieces.
    static std::vector<IntervalSet> partition(int cells);

    const std::vector<std::pair<double, double>>& intervals() const { return intervals_; }
    double length() const;
    bool is_full() const;
    bool empty() const { return intervals_.empty(); }

    /// X + t (mod 2pi).
    IntervalSet shifted(double t) const;
    /// Union with another set.
    IntervalSet united(const IntervalSet& other) const;

private:
    std::vector<std::pair<double, double>> intervals_;
};

/// (1/2pi) int_X exp(i q theta) dtheta in closed form.
Complex fourier_weight(int q, const IntervalSet& x);

/// Unit-diagonal, Hermitian, positive semidefinite matrix c_{n,m} = <phi_n|phi_m>.
class PhaseKernel {
public:
    /// Validates the kernel invariants; throws ValidationFailed.
    explicit PhaseKernel(Matrix entries, double tol = kPsdTol);

    int dim() const { return static_cast<int>(entries_.rows()); }
    int cutoff() const { return dim() - 1; }
    const Matrix& entries() const { return entries_; }
    Complex operator()(int n, int m) const { return entries_(n, m); }

    /// Leading (dim x dim) principal submatrix.
    PhaseKernel truncated(int dim) const;

private:
    Matrix entries_;
};

struct PhaseKernelReport {
    double min_eigenvalue = 0.0;
    double max_diagonal_deviation = 0.0;
    double hermiticity_residual = 0.0;
    double max_modulus = 0.0;
    bool passed = false;
};

/// Non-throwing check of the phase-kernel invariants.
PhaseKernelReport check_phase_kernel(const Matrix& entries, double tol = kPsdTol);

/// All-ones kernel of the canonical phase observable.
PhaseKernel kernel_canonical(int N);
/// Identity kernel (orthonormal vectors): the diagonal, trivial observable.
PhaseKernel kernel_identity(int N);
/// Gram matrix of unit vectors; throws NonUnitVector.
PhaseKernel kernel_from_vectors(const std::vector<Vector>& phis);
/// c_{n,m} = Gamma((n+m)/2 + 1) / sqrt(n! m!), evaluated via log-gamma.
PhaseKernel kernel_coherent_vacuum(int N);

/// Recipe for a phase kernel that can be materialized at any size, used
/// where the required truncation is only known at run time.
struct PhaseKernelSpec {
    enum class Type { Canonical, CoherentVacuum, Identity, Gram };
    Type type = Type::Canonical;
    std::vector<Vector> vectors;  // Gram only

    static PhaseKernelSpec canonical() { return {Type::Canonical, {}}; }
    static PhaseKernelSpec coherent_vacuum() { return {Type::CoherentVacuum, {}}; }
    static PhaseKernelSpec identity() { return {Type::Identity, {}}; }
    static PhaseKernelSpec gram(std::vector<Vector> v) { return {Type::Gram, std::move(v)}; }

    /// Kernel of dimension `dim`; Gram specs throw DimensionTooSmall when they
    /// hold fewer vectors.
    PhaseKernel materialize(int dim) const;
    std::string name() const;
};

/// Matrix of E(X) in the number basis |0>..|N>.
Matrix eval_phase(const PhaseKernel& kernel, const IntervalSet& x);

/// Density g(theta) = sum c_{n,m} exp(i(n-m)theta) <m|T|n> of the
/// distribution X -> tr(T E(X)) with respect to dtheta/2pi.
double phase_density(const PhaseKernel& kernel, const Matrix& state, double theta);

/// Fourier coefficients a_q (q = -N..N, index q + N) of the single-mode
/// density: g(theta) = sum_q a_q exp(i q theta), tr(T E(X)) = sum_q a_q w_q(X).
std::vector<Complex> phase_fourier_coefficients(const PhaseKernel& kernel, const Matrix& state);

/// Same, for a pure state (coefficients in the number basis).
std::vector<Complex> phase_fourier_coefficients(const PhaseKernel& kernel, const Vector& psi);

/// tr(T E(X)) = <psi|E(X)|psi> for a pure single-mode state.
double phase_prob(const PhaseKernel& kernel, const Vector& psi, const IntervalSet& x);

/// Single-mode phase shift U_theta = diag(exp(i n theta)).
Matrix phase_shift(double theta, int dim);

/// Dirac "observable" X -> delta_alpha(X) I modelling a classical reference
/// field of known phase.
struct FixedPhase {
    double alpha = 0.0;
    explicit FixedPhase(double a);
    bool contains(const IntervalSet& x) const;
};

}  // namespace phasediff

#endif  // PHASEDIFF_PHASE1_HPP

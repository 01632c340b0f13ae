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

// Densities of phase-difference distributions, the Barnett-Pegg form for
// product states, and the first and cyclic moment operators.

#ifndef PHASEDIFF_ANALYSIS_HPP
#define PHASEDIFF_ANALYSIS_HPP

#include <vector>

#include "phasediff/common.hpp"
#include "phasediff/fock.hpp"
#include "phasediff/phase1.hpp"
#include "phasediff/phasediff.hpp"

namespace phasediff {

/// Boundary function of a single-mode vector with number-basis coefficients
/// phi_n, sampled as phi(x) = sum_n phi_n exp(-i n x).
struct FourierFunction {
    Vector coeffs;

    Complex operator()(double x) const;
    double norm_squared() const { return coeffs.squaredNorm(); }
};

/// g(theta) = sum_q A_q exp(i q theta); the imaginary part is dropped.
double density_diff(const DiffKernel& kernel, const TwoModeState& state, double theta);
double density_diff(const DiffKernel& kernel, const TwoModeVector& psi, double theta);

/// Two-dimensional Fourier table B_{p,r} of the joint density
/// g~(x, y) = sum_{p,r} B_{p,r} exp(i p x + i r y), p, r in [-M, M] with M
/// the largest single-mode occupation of the state.
struct JointDensity {
    int order = 0;  // M
    Matrix coeffs;  // (2M+1) x (2M+1), entry (p + M, r + M)

    double operator()(double x, double y) const;
    /// (1/2pi) int g~(x + theta, x) dx, taken exactly from the table.
    double marginal(double theta) const;
};

/// Joint density of the uncoupled tensor c~_{n,m,k,l} = <psi_{n,k}|psi_{m,l}>.
/// Throws CutoffMismatch when the family misses a label of the state.
JointDensity density_tilde(const GramFamily& family, const TwoModeState& state);
double density_tilde(const GramFamily& family, const TwoModeState& state, double x, double y);

/// <phi x psi| E_can(X) |phi x psi> from the circular correlation of |phi|^2
/// and |psi|^2, integrated over X in closed form. Throws NonUnitNorm.
double barnett_pegg_prob(const FourierFunction& phi, const FourierFunction& psi, const IntervalSet& x);

/// int theta dE(theta) on Total(S): diagonal pi, off-diagonal C i/(m - n).
TwoModeOperator first_moment(const DiffKernel& kernel);

/// Inverse of first_moment. Throws MalformedMoment unless the operator is on a
/// Total cutoff, Hermitian, block diagonal in the number sum and has pi on
/// its diagonal (all within 1e-10).
DiffKernel reconstruct_from_first_moment(const TwoModeOperator& moment);

/// int exp(i r theta) dE(theta): maps |n+r, l> to C |n, l+r>. Requires r >= 1.
TwoModeOperator cyclic_moment(const DiffKernel& kernel, int r);

}  // namespace phasediff

#endif  // PHASEDIFF_ANALYSIS_HPP

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

// Operators built around phase differences: Ban's shift D and spectral
// measure B, the doubled shift W, the cosine/sine pair, the polar form of
// a x a^dagger, and the unitary completion of the first cyclic moment.
//
// Ban's labels |k,n>> index the number difference k and the smaller of the
// two occupations n: |k,n>> = |n+k, n> for k >= 0 and |n, n-k> for k < 0.

#ifndef PHASEDIFF_COMPANIONS_HPP
#define PHASEDIFF_COMPANIONS_HPP

#include <utility>
#include <vector>

#include "phasediff/common.hpp"
#include "phasediff/fock.hpp"
#include "phasediff/phase1.hpp"
#include "phasediff/phasediff.hpp"

namespace phasediff {

struct BanLabel {
    int k = 0;  // number difference
    int n = 0;  // smaller occupation
    auto operator<=>(const BanLabel&) const = default;
};

struct BanBasisMap {
    static Label to_fock(BanLabel b);
    static BanLabel from_fock(Label l);
};

/// A shift in Ban's labels restricted to a cutoff. `boundary` lists the
/// source labels whose image falls outside; their columns are zero.
struct ShiftOperator {
    TwoModeOperator op;
    std::vector<Label> boundary;
};

/// D |k,n>> = |k-1,n>>.
ShiftOperator ban_D(const Cutoff& cutoff);

/// W |k,n>> = |k-2,n>>.
ShiftOperator factor2_projection_solution(const Cutoff& cutoff);

/// <<k,n| B(X) |l,n'>> = delta_{n,n'} w_{k-l}(X), written in the Fock basis.
TwoModeOperator ban_B(const IntervalSet& x, const Cutoff& cutoff);

struct BanCovariance {
    double factor1 = 0.0;  // vs B(X + beta)
    double factor2 = 0.0;  // vs B(X + 2 beta)
};

BanCovariance ban_covariance_residual(const IntervalSet& x, double beta, const Cutoff& cutoff);

/// Labels with total occupation at most S - margin on Total(S).
std::vector<Label> interior_labels(const Cutoff& cutoff, int margin);

struct CommutatorReport {
    double shift = 0.0;          // ([D, dN] - D) v
    double cyclic = 0.0;         // ([C1, dN] - 2 C1) v
    double single_mode = 0.0;    // ([c1, N] - c1) v, one mode
    double factor1_contrast = 0.0;  // ([C1, dN] - C1) v
    int interior = 0;
    int excluded = 0;
};

/// Residuals over interior basis vectors of `cutoff` (a Total cutoff no
/// larger than the kernel). The single-mode check uses the canonical kernel.
CommutatorReport commutator_checks(const DiffKernel& kernel, const Cutoff& cutoff, int margin = 2);

/// (tr(T x |0><0| B(X)), tr(T E_can(X))). Throws CutoffMismatch when T is
/// larger than the first-mode range of the cutoff.
std::pair<double, double> ban_vacuum_reduction(const Matrix& state, const IntervalSet& x, const Cutoff& cutoff);

/// max over interior columns of |V W V^* - e^{-2i beta} W|, V = V_Delta(beta).
double factor2_intertwining_residual(const ShiftOperator& w, double beta, int margin = 2);

/// (C12, S12) = ((V + V^dagger)/2, (V - V^dagger)/2i), V the first cyclic
/// moment of the canonical kernel on Total(S).
std::pair<TwoModeOperator, TwoModeOperator> sg_operators(int S);

/// max-norm of a x a^dagger - V sqrt(N x (N + I)) on Total(S).
double ll_polar_check(int S);

/// Sector-s block of E12 = V + sum_n |n,0><0,n|.
Matrix e12_block(int s);

/// Eigenphases of e12_block(s) in [0, 2pi), ascending.
std::vector<double> phi12_block_eigenphases(int s);

}  // namespace phasediff

#endif  // PHASEDIFF_COMPANIONS_HPP

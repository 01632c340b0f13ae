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

// Large-amplitude behaviour of two-mode coherent statistics.

#ifndef PHASEDIFF_LIMITS_HPP
#define PHASEDIFF_LIMITS_HPP

#include <variant>
#include <vector>

#include "phasediff/common.hpp"
#include "phasediff/phase1.hpp"
#include "phasediff/phasediff.hpp"

namespace phasediff {

/// Largest tolerated truncation loss of a coherent vector.
inline constexpr double kTailTol = 1e-8;

/// Per-mode cutoff ceil(|z|^2 + 6|z| + 10).
int per_mode_cutoff(double amplitude);

/// Same, throwing CutoffOverBudget above `budget`.
int per_mode_cutoff(double amplitude, int budget);

/// | <z1 e^{ia}, z2 e^{ib}| E(X) |...> - <z1, z2| E(X - (a - b)) |z1, z2> |, with
/// the product vector cut to the kernel's Total space. Throws TailTooLarge
/// when the cut drops more than kTailTol of either side's norm.
double coherent_covariance_check(const DiffKernel& kernel, Complex z1, Complex z2, double alpha, double beta,
                                 const IntervalSet& x);

struct LimitScanReport {
    std::vector<double> amplitudes;
    std::vector<double> distances;
    double shift_used = 0.0;
};

/// Second mode of a scan: a phase observable with kernel recipe, or the
/// fixed-phase reference.
using SecondMode = std::variant<PhaseKernelSpec, FixedPhase>;

/// Total-variation distance over `cells` equal cells between the two-mode
/// statistics of |z1, |z2| e^{i arg_z2}> and the single-mode statistics of
/// |z1> shifted by arg_z2 - alpha. With a fixed-phase second mode the shift is
/// its reference phase and arg_z2, alpha are unused.
LimitScanReport classical_scan(const PhaseKernelSpec& c1, const SecondMode& second, Complex z1, double arg_z2,
                               const std::vector<double>& amplitudes, double alpha, int cells = 16,
                               int budget = 400);

/// Probability of the window centred at arg_z1 - arg_z2 - alpha_prime + alpha
/// for |r e^{i arg_z1}, r e^{i arg_z2}>, one entry per amplitude r.
std::vector<double> dirac_scan(const PhaseKernelSpec& c1, const PhaseKernelSpec& c2, double arg_z1, double arg_z2,
                               const std::vector<double>& amplitudes, double alpha, double alpha_prime,
                               double window, int budget = 400);

}  // namespace phasediff

#endif  // PHASEDIFF_LIMITS_HPP

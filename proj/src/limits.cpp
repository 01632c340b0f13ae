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

#include "phasediff/limits.hpp"

#include <cmath>

namespace phasediff {

int per_mode_cutoff(double amplitude) {
    const double r = std::abs(amplitude);
    return static_cast<int>(std::ceil(r * r + 6.0 * r + 10.0));
}

int per_mode_cutoff(double amplitude, int budget) {
    const int N = per_mode_cutoff(amplitude);
    if (N > budget)
        throw Error(ErrorCode::CutoffOverBudget, "amplitude " + std::to_string(amplitude) + " needs cutoff " +
                                                     std::to_string(N) + " > budget " + std::to_string(budget));
    return N;
}

namespace {

TwoModeVector coherent_pair(Complex z1, Complex z2, int S) {
    const auto a = coherent_vector(z1, S);
    const auto b = coherent_vector(z2, S);
    auto v = TwoModeVector::product(a.coefficients, b.coefficients, Cutoff::total(S));
    const double lost = 1.0 - v.norm_squared();
    if (lost > kTailTol)
        throw Error(ErrorCode::TailTooLarge, "coherent pair loses " + std::to_string(lost) + " of its norm at S=" +
                                                 std::to_string(S));
    return v;
}

// Fourier coefficients (index q + N) of a normalized truncated coherent
// vector's single-mode density.
std::vector<Complex> coherent_coefficients(const PhaseKernel& kernel, Complex z, int N) {
    const auto v = coherent_vector(z, N);
    if (v.tail_mass > kTailTol)
        throw Error(ErrorCode::TailTooLarge, "coherent vector loses " + std::to_string(v.tail_mass));
    return phase_fourier_coefficients(kernel, Vector(v.normalized().coefficients));
}

double integrate(const std::vector<Complex>& a, const IntervalSet& x) {
    const int N = static_cast<int>(a.size() / 2);
    Complex p = 0.0;
    for (int q = -N; q <= N; ++q) p += a[static_cast<std::size_t>(q + N)] * fourier_weight(q, x);
    return p.real();
}

// A_q = a_q b_{-q}: density coefficients of a product pure state under a
// product kernel.
std::vector<Complex> product_coefficients(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    const int N = static_cast<int>(a.size() / 2);
    std::vector<Complex> out(a.size());
    for (int q = -N; q <= N; ++q)
        out[static_cast<std::size_t>(q + N)] = a[static_cast<std::size_t>(q + N)] * b[static_cast<std::size_t>(-q + N)];
    return out;
}

}  // namespace

double coherent_covariance_check(const DiffKernel& kernel, Complex z1, Complex z2, double alpha, double beta,
                                 const IntervalSet& x) {
    const int S = kernel.cutoff();
    const auto rotated = coherent_pair(z1 * std::exp(Complex(0.0, alpha)), z2 * std::exp(Complex(0.0, beta)), S);
    const auto plain = coherent_pair(z1, z2, S);
    return std::abs(prob(kernel, rotated, x) - prob(kernel, plain, x.shifted(beta - alpha)));
}

LimitScanReport classical_scan(const PhaseKernelSpec& c1, const SecondMode& second, Complex z1, double arg_z2,
                               const std::vector<double>& amplitudes, double alpha, int cells, int budget) {
    for (std::size_t i = 1; i < amplitudes.size(); ++i)
        if (!(amplitudes[i] > amplitudes[i - 1]))
            throw Error(ErrorCode::InvalidArgument, "amplitude schedule must be strictly increasing");
    LimitScanReport report;
    report.amplitudes = amplitudes;
    report.distances.assign(amplitudes.size(), 0.0);
    const auto* fixed = std::get_if<FixedPhase>(&second);
    report.shift_used = fixed ? fixed->alpha : wrap_angle(arg_z2 - alpha);
    const auto grid = IntervalSet::partition(cells);

    // Budget is checked up front so a failing scan does no work.
    std::vector<int> cutoffs(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i)
        cutoffs[i] = per_mode_cutoff(std::max(std::abs(z1), amplitudes[i]), budget);

    parallel_for(amplitudes.size(), [&](std::size_t i) {
        const int N = cutoffs[i];
        // The product form A_q = a_q b_{-q} needs no two-mode truncation.
        const PhaseKernel k1 = c1.materialize(N + 1);
        const auto a = coherent_coefficients(k1, z1, N);
        std::vector<Complex> joint;
        if (fixed) {
            joint = a;
        } else {
            const PhaseKernel k2 = std::get<PhaseKernelSpec>(second).materialize(N + 1);
            const auto b = coherent_coefficients(k2, std::polar(amplitudes[i], arg_z2), N);
            joint = product_coefficients(a, b);
        }
        double tv = 0.0;
        for (const auto& cell : grid) {
            const double two = fixed ? integrate(joint, cell.shifted(fixed->alpha)) : integrate(joint, cell);
            const double one = integrate(a, cell.shifted(report.shift_used));
            tv += std::abs(two - one);
        }
        report.distances[i] = 0.5 * tv;
    });
    return report;
}

std::vector<double> dirac_scan(const PhaseKernelSpec& c1, const PhaseKernelSpec& c2, double arg_z1, double arg_z2,
                               const std::vector<double>& amplitudes, double alpha, double alpha_prime,
                               double window, int budget) {
    if (!(window > 0.0) || window > kTwoPi + 1e-12)
        throw Error(ErrorCode::InvalidArgument, "window must lie in (0, 2pi]");
    const double centre = arg_z1 - arg_z2 - alpha_prime + alpha;
    const IntervalSet x = window >= kTwoPi ? IntervalSet::full_circle()
                                           : IntervalSet::interval(centre - 0.5 * window, centre + 0.5 * window);
    std::vector<int> cutoffs(amplitudes.size());
    for (std::size_t i = 0; i < amplitudes.size(); ++i) cutoffs[i] = per_mode_cutoff(amplitudes[i], budget);
    std::vector<double> mass(amplitudes.size());
    parallel_for(amplitudes.size(), [&](std::size_t i) {
        const int N = cutoffs[i];
        const auto a = coherent_coefficients(c1.materialize(N + 1), std::polar(amplitudes[i], arg_z1), N);
        const auto b = coherent_coefficients(c2.materialize(N + 1), std::polar(amplitudes[i], arg_z2), N);
        mass[i] = integrate(product_coefficients(a, b), x);
    });
    return mass;
}

}  // namespace phasediff

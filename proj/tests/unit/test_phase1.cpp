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


#include <cmath>

#include <gtest/gtest.h>

#include "phasediff/phase1.hpp"
#include "support.hpp"

namespace phasediff {
namespace {

TEST(IntervalSet, NormalizesWrapAndMerge) {
    const auto x = IntervalSet::interval(-1.0, 1.0);
    ASSERT_EQ(x.intervals().size(), 2u);
    EXPECT_NEAR(x.intervals()[0].first, 0.0, 0);
    EXPECT_NEAR(x.intervals()[1].second, kTwoPi, 0);
    EXPECT_NEAR(x.length(), 2.0, 1e-14);

    const IntervalSet merged({{0.0, 1.0}, {0.5, 2.0}, {2.0, 3.0}});
    ASSERT_EQ(merged.intervals().size(), 1u);
    EXPECT_NEAR(merged.length(), 3.0, 1e-15);
    EXPECT_TRUE(IntervalSet::interval(1.0, 1.0 + kTwoPi).is_full());
    EXPECT_THROW(IntervalSet({{1.0, 0.5}}), Error);
}

TEST(IntervalSet, ShiftKeepsLength) {
    testing::Rng rng(21);
    for (int trial = 0; trial < 50; ++trial) {
        const auto x = rng.interval_set();
        const double t = rng.uniform(-20, 20);
        EXPECT_NEAR(x.shifted(t).length(), x.length(), 1e-12);
    }
    EXPECT_TRUE(IntervalSet::full_circle().shifted(1.7).is_full());
}

TEST(IntervalSet, Partition) {
    const auto cells = IntervalSet::partition(16);
    ASSERT_EQ(cells.size(), 16u);
    double total = 0.0;
    for (const auto& c : cells) total += c.length();
    EXPECT_NEAR(total, kTwoPi, 1e-13);
}

TEST(FourierWeight, ClosedFormValues) {
    EXPECT_NEAR(std::abs(fourier_weight(0, IntervalSet::full_circle()) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(fourier_weight(1, IntervalSet::interval(0, kPi)) - Complex(0.0, 1.0 / kPi)), 0.0, 1e-15);
    for (int q = -7; q <= 7; ++q)
        if (q != 0) EXPECT_EQ(fourier_weight(q, IntervalSet::full_circle()), Complex{});
}

TEST(FourierWeight, MatchesQuadrature) {
    testing::Rng rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto x = rng.interval_set();
        const int q = rng.integer(-12, 12);
        EXPECT_LT(std::abs(fourier_weight(q, x) - testing::weight_by_quadrature(q, x)), 1e-11);
    }
}

TEST(FourierWeight, ShiftIdentity) {
    testing::Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto x = rng.interval_set();
        const int q = rng.integer(-20, 20);
        const double t = rng.uniform(-10, 10);
        EXPECT_LT(std::abs(fourier_weight(q, x.shifted(t)) - std::exp(Complex(0.0, q * t)) * fourier_weight(q, x)),
                  1e-13);
    }
}

TEST(Kernels, Canonical) {
    EXPECT_EQ(kernel_canonical(0).entries(), Matrix::Ones(1, 1));
    const auto ev = hermitian_eigenvalues(kernel_canonical(2).entries());
    EXPECT_NEAR(ev[0], 0.0, 1e-14);
    EXPECT_NEAR(ev[1], 0.0, 1e-14);
    EXPECT_NEAR(ev[2], 3.0, 1e-14);
}

TEST(Kernels, FromVectors) {
    const Vector e(Vector::Constant(2, Complex(1.0 / std::sqrt(2.0))));
    EXPECT_LT(max_abs(kernel_from_vectors({e, e, e}).entries() - Matrix::Ones(3, 3)), 1e-15);
    const std::vector<Vector> basis{Vector::Unit(3, 0), Vector::Unit(3, 1), Vector::Unit(3, 2)};
    EXPECT_EQ(kernel_from_vectors(basis).entries(), Matrix::Identity(3, 3));

    Vector p0(2), p1(2);
    p0 << 1.0, 0.0;
    p1 << Complex(0.5, 0.5), 1.0 / std::sqrt(2.0);
    const auto k = kernel_from_vectors({p0, p1});
    // <p0|p1> = conj(1) * (1+i)/2.
    EXPECT_LT(std::abs(k(0, 1) - Complex(0.5, 0.5)), 1e-15);
    EXPECT_LT(std::abs(k(1, 0) - Complex(0.5, -0.5)), 1e-15);

    Vector bad(2);
    bad << 1.0, 1.0;
    try {
        kernel_from_vectors({bad});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonUnitVector);
    }
}

TEST(Kernels, CoherentVacuumAgainstRadialQuadrature) {
    const auto k = kernel_coherent_vacuum(20);
    EXPECT_NEAR(k(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(k(1, 0).real(), std::sqrt(kPi) / 2.0, 1e-14);
    EXPECT_NEAR(k(1, 0).real(), 0.886227, 1e-6);
    EXPECT_NEAR(k(2, 0).real(), 1.0 / std::sqrt(2.0), 1e-14);
    for (int n = 0; n <= 20; n += 3)
        for (int m = 0; m <= 20; m += 4) {
            const double oracle =
                testing::radial_moment(n + m) / std::exp(0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0)));
            EXPECT_NEAR(k(n, m).real(), oracle, 1e-10 * std::max(1.0, oracle));
        }
}

TEST(Kernels, ValidationRejectsBadDiagonal) {
    Matrix m = Matrix::Ones(3, 3);
    m(1, 1) = 0.9;
    EXPECT_FALSE(check_phase_kernel(m).passed);
    EXPECT_THROW(PhaseKernel{m}, Error);
}

TEST(EvalPhase, NormalizationAndEntries) {
    testing::Rng rng(12);
    const auto k = rng.phase_kernel(6);
    EXPECT_LT(max_abs(eval_phase(k, IntervalSet::full_circle()) - Matrix::Identity(6, 6)), 1e-15);
    const Matrix e = eval_phase(kernel_canonical(3), IntervalSet::interval(0, kPi));
    EXPECT_LT(std::abs(e(0, 1) - Complex(0.0, -1.0 / kPi)), 1e-15);
    const auto x = IntervalSet::interval(0.3, 2.2);
    const Matrix f = eval_phase(k, x);
    for (int n = 0; n < 6; ++n) EXPECT_NEAR(f(n, n).real(), x.length() / kTwoPi, 1e-15);
}

TEST(EvalPhase, CovariantUnderPhaseShift) {
    testing::Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int dim = rng.integer(1, 12);
        const auto k = rng.phase_kernel(dim);
        const auto x = rng.interval_set();
        const double t = rng.uniform(-7, 7);
        const Matrix u = phase_shift(t, dim);
        EXPECT_LT(max_abs(u * eval_phase(k, x) * u.adjoint() - eval_phase(k, x.shifted(t))), 1e-12);
    }
}

TEST(EvalPhase, Positive) {
    testing::Rng rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        const auto k = rng.phase_kernel(rng.integer(1, 21), rng.integer(1, 6));
        EXPECT_GE(min_hermitian_eigenvalue(eval_phase(k, rng.interval_set())), -1e-10);
    }
}

TEST(PhaseDensity, NumberStatesAreUniform) {
    testing::Rng rng(15);
    const auto k = rng.phase_kernel(5);
    for (int s = 0; s < 5; ++s) {
        Matrix t = Matrix::Zero(5, 5);
        t(s, s) = 1.0;
        for (double theta : {0.0, 1.0, 4.0}) EXPECT_NEAR(phase_density(k, t, theta), 1.0, 1e-14);
    }
}

TEST(PhaseDensity, CoherentStateBySeparateSum) {
    const auto v = coherent_vector(1.0, 20).normalized();
    const Matrix t = v.coefficients * v.coefficients.adjoint();
    // For the canonical kernel the density at 0 is |sum_n psi_n|^2.
    const Complex s = v.coefficients.sum();
    EXPECT_NEAR(phase_density(kernel_canonical(20), t, 0.0), std::norm(s), 1e-12);
    EXPECT_NEAR(testing::circle_mean([&](double th) { return phase_density(kernel_canonical(20), t, th); }, 81), 1.0,
                1e-12);
}

TEST(PhaseProb, MatchesEvalPhase) {
    testing::Rng rng(16);
    const auto k = rng.phase_kernel(7);
    const Vector psi = rng.unit_vector(7);
    const auto x = rng.interval_set();
    const double direct = (psi.adjoint() * eval_phase(k, x) * psi)(0, 0).real();
    EXPECT_NEAR(phase_prob(k, psi, x), direct, 1e-14);
}

TEST(FixedPhase, Range) {
    EXPECT_THROW(FixedPhase{-0.1}, Error);
    EXPECT_THROW(FixedPhase{kTwoPi}, Error);
    const FixedPhase f(1.0);
    EXPECT_TRUE(f.contains(IntervalSet::interval(0.5, 1.5)));
    EXPECT_FALSE(f.contains(IntervalSet::interval(1.5, 2.5)));
}

}  // namespace
}  // namespace phasediff

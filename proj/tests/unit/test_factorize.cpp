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


#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "phasediff/phasediff.hpp"
#include "support.hpp"

namespace phasediff {
namespace {

double reproduce(const DiffKernel& k, const Factorized& f) {
    double r = 0.0;
    for (int s = 0; s <= k.cutoff(); ++s)
        for (int n = 0; n <= s; ++n)
            for (int m = 0; m <= s; ++m) r = std::max(r, std::abs(k.block(s)(n, m) - f.c1(n, m) * f.c2(s - n, s - m)));
    return r;
}

TEST(Factorize, CanonicalIsCanonicalPair) {
    const auto result = factorize(canonical_diff(6));
    const auto* f = std::get_if<Factorized>(&result);
    ASSERT_NE(f, nullptr);
    EXPECT_LT(max_abs(f->c1.entries() - Matrix::Ones(7, 7)), 1e-12);
    EXPECT_LT(max_abs(f->c2.entries() - Matrix::Ones(7, 7)), 1e-12);
    EXPECT_LE(f->residual, 1e-12);
}

TEST(Factorize, TrivialCutoff) {
    const auto result = factorize(canonical_diff(0));
    EXPECT_TRUE(std::holds_alternative<Factorized>(result));
}

TEST(Factorize, CoherentVacuumTimesCanonical) {
    for (int S : {2, 6, 12, 20}) {
        const auto k = diff_from_pair(kernel_coherent_vacuum(S), kernel_canonical(S), S);
        const auto result = factorize(k);
        const auto* f = std::get_if<Factorized>(&result);
        ASSERT_NE(f, nullptr) << "S=" << S;
        EXPECT_LE(f->residual, 1e-8);
        EXPECT_LE(reproduce(k, *f), 1e-8);
        EXPECT_TRUE(check_phase_kernel(f->c1.entries()).passed);
        EXPECT_TRUE(check_phase_kernel(f->c2.entries()).passed);
    }
}

TEST(Factorize, RandomProducts) {
    testing::Rng rng(50);
    int found = 0;
    for (int trial = 0; trial < 25; ++trial) {
        const int S = rng.integer(1, 8);
        const auto c1 = rng.phase_kernel(S + 1, S + 1);
        const auto c2 = rng.phase_kernel(S + 1, S + 1);
        const auto k = diff_from_pair(c1, c2, S);
        const auto result = factorize(k);
        ASSERT_FALSE(std::holds_alternative<NotFactorizable>(result));
        if (const auto* f = std::get_if<Factorized>(&result)) {
            ++found;
            EXPECT_LE(f->residual, 1e-8);
            EXPECT_LE(reproduce(k, *f), 1e-8);
        }
    }
    EXPECT_EQ(found, 25);
}

TEST(Factorize, PhasedFamilyIsRejected) {
    const auto k = diff_from_gram(phased_gram_family({0.0, kPi / 2, kPi / 2, kPi / 2}), 6);
    ASSERT_TRUE(validate(k).passed);
    const auto result = factorize(k);
    const auto* w = std::get_if<NotFactorizable>(&result);
    ASSERT_NE(w, nullptr);
    EXPECT_EQ(w->order, 1);
    EXPECT_GT(w->mismatch, 1.0);
    // The witness points at real coefficients of the kernel.
    const auto [a, b, c, d] = w->indices;
    EXPECT_EQ(a - b, d - c);
    const int q = w->order;
    const Complex mnk = k.coefficient(w->n + q, w->n, w->k, w->k + q);
    const Complex m00 = k.coefficient(q, 0, 0, q);
    const Complex mn0 = k.coefficient(w->n + q, w->n, 0, q);
    const Complex m0k = k.coefficient(q, 0, w->k, w->k + q);
    EXPECT_LT(std::abs(mnk * m00 - w->product_diagonal), 1e-15);
    EXPECT_LT(std::abs(mn0 * m0k - w->product_off_diagonal), 1e-15);
    EXPECT_NEAR(std::abs(w->product_diagonal - w->product_off_diagonal), w->mismatch, 1e-15);
}

TEST(Factorize, PhasedFamilyWithoutPhasesIsCanonical) {
    const auto k = diff_from_gram(phased_gram_family({0.0, 0.0, 0.0, 0.0}), 6);
    EXPECT_TRUE(std::holds_alternative<Factorized>(factorize(k)));
}

TEST(Factorize, PhasedFamilyAnySinglePhaseIsRejected) {
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> thetas{};
        thetas[static_cast<std::size_t>(i)] = 0.7;
        const auto k = diff_from_gram(phased_gram_family(thetas), 6);
        EXPECT_TRUE(std::holds_alternative<NotFactorizable>(factorize(k))) << i;
    }
}

TEST(Factorize, RejectsInvalidKernel) {
    auto blocks = canonical_diff(3).blocks();
    blocks[1](0, 0) = 0.5;
    try {
        factorize(DiffKernel(blocks));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::ValidationFailed);
    }
}

TEST(Factorize, VanishingOrderSplitsAsZero) {
    const auto k = diff_from_pair(kernel_identity(5), kernel_canonical(5), 5);
    const auto result = factorize(k);
    const auto* f = std::get_if<Factorized>(&result);
    ASSERT_NE(f, nullptr);
    EXPECT_LE(f->residual, 1e-12);
}

TEST(Factorize, MixedZerosAreIndeterminate) {
    // c1 with one vanishing first off-diagonal entry.
    const std::vector<Vector> phis{Vector::Unit(2, 0), Vector::Unit(2, 1),
                                   Vector(Vector::Constant(2, Complex(1.0 / std::sqrt(2.0))))};
    const auto k = diff_from_pair(kernel_from_vectors(phis), kernel_canonical(2), 2);
    const auto result = factorize(k);
    EXPECT_TRUE(std::holds_alternative<Indeterminate>(result));
}

}  // namespace
}  // namespace phasediff

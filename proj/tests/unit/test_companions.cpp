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

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "phasediff/analysis.hpp"
#include "phasediff/companions.hpp"
#include "support.hpp"

namespace phasediff {
namespace {

Eigen::Index at(const Cutoff& c, int n, int k) { return static_cast<Eigen::Index>(c.index_of(Label{n, k})); }

TEST(BanLabels, RoundTrip) {
    const Cutoff c = Cutoff::total(6);
    for (const auto& l : c.labels()) EXPECT_EQ(BanBasisMap::to_fock(BanBasisMap::from_fock(l)), l);
    EXPECT_EQ(BanBasisMap::to_fock({2, 1}), (Label{3, 1}));
    EXPECT_EQ(BanBasisMap::to_fock({-2, 1}), (Label{1, 3}));
    EXPECT_EQ(BanBasisMap::from_fock({0, 0}), (BanLabel{0, 0}));
}

TEST(BanShift, Examples) {
    const Cutoff c = Cutoff::total(6);
    const auto d = ban_D(c);
    // |1,0> = |1,0>> goes to |0,0>>, |0,0>> to |-1,0>> = |0,1>.
    EXPECT_EQ(d.op.matrix(at(c, 0, 0), at(c, 1, 0)), Complex(1.0));
    EXPECT_EQ(d.op.matrix(at(c, 0, 1), at(c, 0, 0)), Complex(1.0));
    EXPECT_EQ(d.op.matrix(at(c, 1, 2), at(c, 1, 1)), Complex(1.0));
    const auto w = factor2_projection_solution(c);
    EXPECT_EQ(w.op.matrix(at(c, 0, 1), at(c, 1, 0)), Complex(1.0));
    // Columns that leave the cutoff are listed and zero.
    EXPECT_FALSE(d.boundary.empty());
    for (const auto& l : d.boundary) EXPECT_EQ(d.op.matrix.col(at(c, l.n, l.k)).norm(), 0.0);
    const Matrix dd = d.op.matrix.adjoint() * d.op.matrix;
    for (const auto& l : interior_labels(c, 1)) EXPECT_EQ(dd(at(c, l.n, l.k), at(c, l.n, l.k)), Complex(1.0));
}

TEST(BanB, Structure) {
    const Cutoff c = Cutoff::total(6);
    const auto full = ban_B(IntervalSet::full_circle(), c).matrix;
    EXPECT_LT(max_abs(full - Matrix::Identity(full.rows(), full.cols())), 1e-15);
    const auto x = IntervalSet::interval(0.4, 2.0);
    const Matrix b = ban_B(x, c).matrix;
    EXPECT_LT(hermiticity_residual(b), 1e-15);
    EXPECT_GE(min_hermitian_eigenvalue(b), -1e-12);
    EXPECT_LT(std::abs(b(at(c, 0, 0), at(c, 1, 0)) - fourier_weight(-1, x)), 1e-15);
    EXPECT_EQ(b(at(c, 0, 0), at(c, 1, 1)), Complex(0.0));
    // Not projective: B(X)^2 != B(X) on a generic set.
    EXPECT_GT(max_abs(b * b - b), 1e-3);
}

TEST(BanB, IdempotenceDefectIsTruncatedTail) {
    // For the label k = 0, n the row of B runs over differences |q| <= S - 2n,
    // so (B^2 - B) there is minus the Fourier tail beyond that half-width.
    const int S = 20;
    const Cutoff c = Cutoff::total(S);
    const auto x = IntervalSet::interval(0.0, kPi);
    const Matrix b = ban_B(x, c).matrix;
    const Matrix defect = b * b - b;
    double previous = 1.0;
    for (int n = S / 2; n >= 0; --n) {
        const int half = S - 2 * n;
        double inside = 0.0;
        for (int q = -half; q <= half; ++q) inside += std::norm(testing::exact_weight(q, x));
        const double tail = 0.5 - inside;
        const Eigen::Index i = at(c, n, n);
        EXPECT_NEAR(defect(i, i).real(), -tail, 1e-12) << n;
        EXPECT_LE(tail, previous);
        previous = tail;
    }
    EXPECT_GT(previous, 1e-3);
}

TEST(VacuumReduction, PlusState) {
    const Cutoff c = Cutoff::total(4);
    Matrix plus = Matrix::Constant(2, 2, Complex(0.5));
    const auto [two, one] = ban_vacuum_reduction(plus, IntervalSet::interval(0.0, kPi), c);
    EXPECT_NEAR(two, 0.5, 1e-12);
    EXPECT_NEAR(one, 0.5, 1e-12);
    const auto [two_c, one_c] = ban_vacuum_reduction(plus, IntervalSet::interval(-kPi / 2, kPi / 2), c);
    EXPECT_NEAR(two_c, 0.5 + 1.0 / kPi, 1e-12);
    EXPECT_NEAR(one_c, 0.5 + 1.0 / kPi, 1e-12);
}

TEST(BanB, CommutesWithDifferenceProjections) {
    const Cutoff c = Cutoff::total(5);
    const Matrix b = ban_B(IntervalSet::interval(1.0, 2.5), c).matrix;
    // B is diagonal in n, so it commutes with projections onto fixed n but
    // mixes different number differences.
    const Matrix p = number_diff_projection(1, c).matrix;
    EXPECT_GT(max_abs(b * p - p * b), 1e-3);
}

TEST(BanB, Covariance) {
    testing::Rng rng(90);
    const Cutoff c = Cutoff::total(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto r = ban_covariance_residual(rng.interval_set(), rng.uniform(0.2, 3.0), c);
        EXPECT_LT(r.factor1, 1e-12);
        EXPECT_GT(r.factor2, 1e-3);
    }
}

TEST(Commutators, InteriorIdentities) {
    testing::Rng rng(91);
    const auto kernel = rng.gram_kernel(20, 3);
    const auto r = commutator_checks(kernel, Cutoff::total(20));
    EXPECT_LT(r.shift, 1e-12);
    EXPECT_LT(r.cyclic, 1e-12);
    EXPECT_LT(r.single_mode, 1e-12);
    EXPECT_GT(r.factor1_contrast, 0.1);
    EXPECT_EQ(r.interior + r.excluded, 231);
    EXPECT_THROW(commutator_checks(kernel, Cutoff::total(21)), Error);
    EXPECT_THROW(commutator_checks(kernel, Cutoff::per_mode(4)), Error);
}

TEST(VacuumReduction, MatchesSingleMode) {
    testing::Rng rng(92);
    const Cutoff c = Cutoff::total(8);
    for (int trial = 0; trial < 50; ++trial) {
        const int N = rng.integer(0, 8);
        Matrix t = Matrix::Zero(N + 1, N + 1);
        for (int r = 0; r < 2; ++r) {
            const Vector v = rng.unit_vector(N + 1);
            t += rng.uniform(0.1, 1.0) * v * v.adjoint();
        }
        t /= t.trace().real();
        t = 0.5 * (t + t.adjoint()).eval();
        const auto [two, one] = ban_vacuum_reduction(t, rng.interval_set(), c);
        EXPECT_NEAR(two, one, 1e-10);
    }
    try {
        ban_vacuum_reduction(Matrix::Identity(10, 10) / 10.0, IntervalSet::full_circle(), c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::CutoffMismatch);
    }
}

TEST(FactorTwo, Intertwining) {
    const auto w = factor2_projection_solution(Cutoff::total(20));
    for (double beta : {0.3, kPi / 4, 2.0}) EXPECT_LT(factor2_intertwining_residual(w, beta), 1e-12);
}

TEST(CosineSine, SpectrumAndNonCommutation) {
    const auto [c, s] = sg_operators(12);
    for (const auto* op : {&c, &s}) {
        const auto ev = hermitian_eigenvalues(*op);
        EXPECT_GE(ev.front(), -1.0 - 1e-10);
        EXPECT_LE(ev.back(), 1.0 + 1e-10);
    }
    EXPECT_GT(max_abs(c.matrix * s.matrix - s.matrix * c.matrix), 1e-3);
}

TEST(Polar, Residual) {
    for (int S : {1, 5, 12}) EXPECT_LT(ll_polar_check(S), 1e-12);
}

TEST(Completion, UnitaryAndSpectrum) {
    for (int s = 0; s <= 40; ++s) {
        const Matrix e = e12_block(s);
        EXPECT_LT(max_abs(e.adjoint() * e - Matrix::Identity(s + 1, s + 1)), 1e-15);
        const auto phases = phi12_block_eigenphases(s);
        ASSERT_EQ(phases.size(), static_cast<std::size_t>(s + 1));
        for (int r = 0; r <= s; ++r) EXPECT_NEAR(phases[static_cast<std::size_t>(r)], kTwoPi * r / (s + 1), 1e-10);
    }
}

TEST(Completion, DefectOfCyclicMoment) {
    // V^dagger V + T^dagger T = I with T = sum_n |n,0><0,n| the completion term.
    const int S = 6;
    const Cutoff c = Cutoff::total(S);
    const Matrix v = cyclic_moment(canonical_diff(S), 1).matrix;
    Matrix t = Matrix::Zero(v.rows(), v.cols());
    for (int n = 0; n <= S; ++n) t(at(c, n, 0), at(c, 0, n)) = 1.0;
    EXPECT_LT(max_abs(v.adjoint() * v + t.adjoint() * t - Matrix::Identity(v.rows(), v.cols())), 1e-15);
    // And the sector blocks of V + T are the completion blocks.
    const Matrix e = v + t;
    for (int s = 0; s <= S; ++s) {
        const auto base = static_cast<Eigen::Index>(total_index(0, s));
        EXPECT_LT(max_abs(e.block(base, base, s + 1, s + 1) - e12_block(s)), 1e-15);
    }
}

}  // namespace
}  // namespace phasediff

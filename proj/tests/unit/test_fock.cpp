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

#include "phasediff/fock.hpp"
#include "support.hpp"

namespace phasediff {
namespace {

TEST(Cutoff, Dimensions) {
    EXPECT_EQ(Cutoff::per_mode(3).dimension(), 16u);
    EXPECT_EQ(Cutoff::total(3).dimension(), 10u);
    EXPECT_EQ(Cutoff::total(0).dimension(), 1u);
}

TEST(Cutoff, TotalOrderingIsSectorMajor) {
    const Cutoff c = Cutoff::total(4);
    const auto labels = c.labels();
    for (std::size_t i = 0; i < labels.size(); ++i) {
        EXPECT_EQ(c.index_of(labels[i]), i);
        EXPECT_EQ(total_index(labels[i].n, labels[i].k), i);
        if (i > 0) EXPECT_LE(labels[i - 1].total(), labels[i].total());
    }
    EXPECT_FALSE(c.index_of(3, 2).has_value());
    EXPECT_THROW(c.index_of(Label{5, 0}), Error);
}

TEST(CoherentVector, Vacuum) {
    const auto v = coherent_vector(0.0, 5);
    EXPECT_DOUBLE_EQ(std::abs(v.coefficients(0)), 1.0);
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(v.coefficients(n), Complex{});
    EXPECT_EQ(v.tail_mass, 0.0);
}

TEST(CoherentVector, UnitAmplitude) {
    const auto v = coherent_vector(1.0, 20);
    EXPECT_NEAR(v.coefficients(0).real(), std::exp(-0.5), 1e-15);
    EXPECT_NEAR(v.coefficients(0).real(), 0.606531, 1e-6);
    EXPECT_LT(v.tail_mass, 1e-12);
}

TEST(CoherentVector, PartialPoissonTail) {
    const auto v = coherent_vector(2.0, 4);
    double partial = 0.0;
    double term = 1.0;
    for (int n = 0; n <= 4; ++n) {
        partial += term;
        term *= 4.0 / (n + 1);
    }
    EXPECT_NEAR(v.tail_mass, 1.0 - std::exp(-4.0) * partial, 1e-14);
}

TEST(CoherentVector, NormPlusTailIsOne) {
    testing::Rng rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const Complex z = std::polar(rng.uniform(0.0, 8.0), rng.uniform(0.0, kTwoPi));
        const auto v = coherent_vector(z, rng.integer(0, 200));
        EXPECT_NEAR(v.norm_squared() + v.tail_mass, 1.0, 1e-12);
    }
}

TEST(CoherentVector, LargeCutoffStaysFinite) {
    const auto v = coherent_vector(Complex(5.0, -5.0), 400);
    EXPECT_TRUE(v.coefficients.allFinite());
    EXPECT_NEAR(v.norm_squared(), 1.0, 1e-12);
}

TEST(ThetaUnitary, Entries) {
    const Cutoff c = Cutoff::total(3);
    EXPECT_LT(max_abs(theta_unitary(0, 0, c).matrix - Matrix::Identity(10, 10)), 1e-15);
    const auto t = theta_unitary(kPi, 0, c);
    EXPECT_NEAR(std::abs(t.element({1, 0}, {1, 0}) - Complex(-1.0)), 0.0, 1e-15);
    const auto u = theta_unitary(kPi / 2, kPi / 2, c);
    EXPECT_NEAR(std::abs(u.element({1, 1}, {1, 1}) - Complex(-1.0)), 0.0, 1e-15);
}

TEST(ThetaUnitary, InverseAndUnitarity) {
    testing::Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const double a = rng.uniform(-10, 10);
        const double b = rng.uniform(-10, 10);
        const Cutoff c = trial % 2 ? Cutoff::total(rng.integer(0, 12)) : Cutoff::per_mode(rng.integer(0, 6));
        const Matrix u = theta_unitary(a, b, c).matrix;
        const auto dim = u.rows();
        EXPECT_LT(max_abs(u * theta_unitary(-a, -b, c).matrix - Matrix::Identity(dim, dim)), 1e-13);
        EXPECT_LT(max_abs(u * u.adjoint() - Matrix::Identity(dim, dim)), 1e-14);
    }
}

TEST(Projections, SumSectors) {
    const Cutoff c = Cutoff::total(5);
    const auto dim = static_cast<Eigen::Index>(c.dimension());
    Matrix sum = Matrix::Zero(dim, dim);
    for (int s = 0; s <= 5; ++s) {
        const Matrix p = number_sum_projection(s, c).matrix;
        EXPECT_LT(max_abs(p * p - p), 1e-14);
        EXPECT_NEAR(p.trace().real(), s + 1, 0);
        sum += p;
    }
    EXPECT_EQ(max_abs(sum - Matrix::Identity(dim, dim)), 0.0);
    EXPECT_NEAR(number_sum_projection(0, c).matrix.trace().real(), 1.0, 0);
    EXPECT_NEAR(number_sum_projection(2, c).matrix.trace().real(), 3.0, 0);
}

TEST(Projections, DifferenceSectors) {
    EXPECT_EQ(number_diff_projection(0, Cutoff::per_mode(2)).matrix.trace().real(), 3.0);
    const auto m = number_diff_projection(-1, Cutoff::per_mode(1));
    EXPECT_EQ(m.matrix.trace().real(), 1.0);
    EXPECT_EQ(m.element({0, 1}, {0, 1}), Complex(1.0));
    EXPECT_EQ(max_abs(number_diff_projection(7, Cutoff::total(3)).matrix), 0.0);

    const Cutoff c = Cutoff::total(4);
    const auto dim = static_cast<Eigen::Index>(c.dimension());
    Matrix sum = Matrix::Zero(dim, dim);
    for (int k = -4; k <= 4; ++k) {
        const Matrix p = number_diff_projection(k, c).matrix;
        for (int l = k + 1; l <= 4; ++l) EXPECT_EQ(max_abs(p * number_diff_projection(l, c).matrix), 0.0);
        sum += p;
    }
    EXPECT_EQ(max_abs(sum - Matrix::Identity(dim, dim)), 0.0);
}

TEST(HermitianEigenvalues, Basics) {
    EXPECT_EQ(hermitian_eigenvalues(Matrix::Identity(4, 4)), std::vector<double>(4, 1.0));
    const auto ev = hermitian_eigenvalues(number_sum_projection(1, Cutoff::total(2)));
    ASSERT_EQ(ev.size(), 6u);
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[static_cast<std::size_t>(i)], 0.0, 1e-14);
    EXPECT_NEAR(ev[4], 1.0, 1e-14);
    EXPECT_NEAR(ev[5], 1.0, 1e-14);
    Matrix d = Matrix::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    const auto e2 = hermitian_eigenvalues(d);
    EXPECT_NEAR(e2[0], -1.0, 1e-15);
    EXPECT_NEAR(e2[1], 3.0, 1e-15);
}

TEST(HermitianEigenvalues, RejectsNonHermitian) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    try {
        hermitian_eigenvalues(m);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NonHermitianInput);
    }
}

TEST(HermitianEigenvalues, ResidualBound) {
    testing::Rng rng(5);
    Matrix a(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i)
        for (Eigen::Index j = 0; j < 8; ++j) a(i, j) = rng.complex_normal();
    a = (a + a.adjoint()).eval();
    const auto ev = hermitian_eigenvalues(a);
    Eigen::SelfAdjointEigenSolver<Matrix> s(a);
    const double norm = s.eigenvalues().cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < 8; ++i) {
        const Vector v = s.eigenvectors().col(i);
        EXPECT_LE((a * v - ev[static_cast<std::size_t>(i)] * v).norm(), 1e-9 * norm);
    }
}

TEST(TwoModeState, Validation) {
    const Cutoff c = Cutoff::total(1);
    EXPECT_THROW(TwoModeState(c, Matrix::Zero(3, 3)), Error);
    Matrix bad = Matrix::Identity(3, 3);
    EXPECT_THROW(TwoModeState(c, bad), Error);  // trace 3
    bad = Matrix::Zero(3, 3);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    EXPECT_THROW(TwoModeState(c, bad), Error);
    EXPECT_NO_THROW(TwoModeState::number(1, 0, c));
}

TEST(TwoModeVector, ProductRestrictsToCutoff) {
    Vector a(3), b(3);
    a << 1, 2, 3;
    b << 4, 5, 6;
    const auto v = TwoModeVector::product(a, b, Cutoff::total(2));
    EXPECT_EQ(v.at(1, 1), Complex(10.0));
    EXPECT_EQ(v.at(2, 2), Complex{});
    EXPECT_EQ(v.coefficients.size(), 6);
}

}  // namespace
}  // namespace phasediff

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

#include "phasediff/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace phasediff {

Cutoff::Cutoff(Scheme scheme, int bound) : scheme_(scheme), bound_(bound) {
    if (bound < 0) throw Error(ErrorCode::InvalidArgument, "cutoff bound must be nonnegative");
}

Cutoff Cutoff::per_mode(int max_occupation) { return Cutoff(Scheme::PerMode, max_occupation); }

Cutoff Cutoff::total(int max_total) { return Cutoff(Scheme::Total, max_total); }

std::size_t Cutoff::dimension() const {
    const auto b = static_cast<std::size_t>(bound_);
    return is_total() ? (b + 1) * (b + 2) / 2 : (b + 1) * (b + 1);
}

bool Cutoff::contains(int n, int k) const {
    if (n < 0 || k < 0) return false;
    return is_total() ? n + k <= bound_ : (n <= bound_ && k <= bound_);
}

std::optional<std::size_t> Cutoff::index_of(int n, int k) const {
    if (!contains(n, k)) return std::nullopt;
    if (is_total()) return total_index(n, k);
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(bound_ + 1) +
           static_cast<std::size_t>(k);
}

std::size_t Cutoff::index_of(Label l) const {
    auto idx = index_of(l.n, l.k);
    if (!idx) {
        throw Error(ErrorCode::MissingLabel,
                    "label (" + std::to_string(l.n) + "," + std::to_string(l.k) +
                        ") outside cutoff");
    }
    return *idx;
}

Label Cutoff::label_at(std::size_t index) const {
    if (is_total()) {
        // Largest s with s(s+1)/2 <= index.
        auto s = static_cast<std::size_t>((std::sqrt(8.0 * static_cast<double>(index) + 1.0) - 1.0) / 2.0);
        while (s * (s + 1) / 2 > index) --s;
        while ((s + 1) * (s + 2) / 2 <= index) ++s;
        const auto n = static_cast<int>(index - s * (s + 1) / 2);
        return {n, static_cast<int>(s) - n};
    }
    const auto width = static_cast<std::size_t>(bound_ + 1);
    return {static_cast<int>(index / width), static_cast<int>(index % width)};
}

std::vector<Label> Cutoff::labels() const {
    std::vector<Label> out;
    out.reserve(dimension());
    if (is_total()) {
        for (int s = 0; s <= bound_; ++s)
            for (int n = 0; n <= s; ++n) out.push_back({n, s - n});
    } else {
        for (int n = 0; n <= bound_; ++n)
            for (int k = 0; k <= bound_; ++k) out.push_back({n, k});
    }
    return out;
}

FockVector FockVector::normalized() const {
    FockVector out;
    const double norm = coefficients.norm();
    out.coefficients = norm > 0 ? Vector(coefficients / norm) : coefficients;
    out.tail_mass = 0.0;
    return out;
}

FockVector coherent_vector(Complex z, int N) {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "coherent_vector: N must be >= 0");
    FockVector v;
    v.coefficients = Vector::Zero(N + 1);
    const double r = std::abs(z);
    const double arg = std::arg(z);
    if (r == 0.0) {
        v.coefficients(0) = 1.0;
    } else {
        const double log_r = std::log(r);
        for (int n = 0; n <= N; ++n) {
            const double log_mod = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
            v.coefficients(n) = std::polar(std::exp(log_mod), n * arg);
        }
    }
    v.tail_mass = std::max(0.0, 1.0 - v.coefficients.squaredNorm());
    return v;
}

FockVector number_vector(int n, int N) {
    if (n < 0 || n > N) throw Error(ErrorCode::InvalidArgument, "number_vector: n outside [0, N]");
    FockVector v;
    v.coefficients = Vector::Zero(N + 1);
    v.coefficients(n) = 1.0;
    return v;
}

TwoModeVector TwoModeVector::product(const Vector& a, const Vector& b, const Cutoff& cutoff) {
    TwoModeVector v{cutoff, Vector::Zero(static_cast<Eigen::Index>(cutoff.dimension()))};
    for (Eigen::Index n = 0; n < a.size(); ++n) {
        for (Eigen::Index k = 0; k < b.size(); ++k) {
            if (auto idx = cutoff.index_of(static_cast<int>(n), static_cast<int>(k)))
                v.coefficients(static_cast<Eigen::Index>(*idx)) = a(n) * b(k);
        }
    }
    return v;
}

TwoModeVector TwoModeVector::number(int n, int k, const Cutoff& cutoff) {
    TwoModeVector v{cutoff, Vector::Zero(static_cast<Eigen::Index>(cutoff.dimension()))};
    v.coefficients(static_cast<Eigen::Index>(cutoff.index_of(Label{n, k}))) = 1.0;
    return v;
}

Complex TwoModeVector::at(int n, int k) const {
    auto idx = cutoff.index_of(n, k);
    return idx ? coefficients(static_cast<Eigen::Index>(*idx)) : Complex{};
}

TwoModeState::TwoModeState(Cutoff cutoff, Matrix matrix)
    : cutoff_(cutoff), matrix_(std::move(matrix)) {
    const auto dim = static_cast<Eigen::Index>(cutoff_.dimension());
    if (matrix_.rows() != dim || matrix_.cols() != dim)
        throw Error(ErrorCode::CutoffMismatch, "state matrix shape does not match cutoff");
    if (hermiticity_residual(matrix_) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "state is not Hermitian");
    if (min_hermitian_eigenvalue(matrix_) < -1e-12)
        throw Error(ErrorCode::InvalidArgument, "state is not positive");
    const double tr = trace();
    if (!(tr > 0.0) || tr > 1.0 + 1e-12)
        throw Error(ErrorCode::InvalidArgument, "state trace outside (0, 1]");
}

TwoModeState TwoModeState::from_vector(const TwoModeVector& v) {
    return TwoModeState(v.cutoff, v.coefficients * v.coefficients.adjoint());
}

TwoModeState TwoModeState::number(int n, int k, const Cutoff& cutoff) {
    return from_vector(TwoModeVector::number(n, k, cutoff));
}

Complex TwoModeState::element(Label a, Label b) const {
    auto i = cutoff_.index_of(a.n, a.k);
    auto j = cutoff_.index_of(b.n, b.k);
    if (!i || !j) return {};
    return matrix_(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
}

TwoModeOperator TwoModeOperator::identity(const Cutoff& cutoff) {
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    return {cutoff, Matrix::Identity(dim, dim), true};
}

Complex TwoModeOperator::element(Label a, Label b) const {
    auto i = cutoff.index_of(a.n, a.k);
    auto j = cutoff.index_of(b.n, b.k);
    if (!i || !j) return {};
    return matrix(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(*j));
}

namespace {

template <typename F>
TwoModeOperator diagonal_operator(const Cutoff& cutoff, F&& entry) {
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    TwoModeOperator op{cutoff, Matrix::Zero(dim, dim), true};
    const auto labels = cutoff.labels();
    for (Eigen::Index i = 0; i < dim; ++i) op.matrix(i, i) = entry(labels[static_cast<std::size_t>(i)]);
    return op;
}

}  // namespace

TwoModeOperator theta_unitary(double alpha, double beta, const Cutoff& cutoff) {
    return diagonal_operator(cutoff, [&](Label l) {
        return std::polar(1.0, alpha * l.n + beta * l.k);
    });
}

TwoModeOperator v_sigma(double alpha, const Cutoff& cutoff) {
    return theta_unitary(alpha, alpha, cutoff);
}

TwoModeOperator v_delta(double beta, const Cutoff& cutoff) {
    return theta_unitary(beta, -beta, cutoff);
}

TwoModeOperator number_difference(const Cutoff& cutoff) {
    auto op = diagonal_operator(cutoff, [](Label l) { return Complex(l.difference(), 0.0); });
    return op;
}

TwoModeOperator number_sum_projection(int s, const Cutoff& cutoff) {
    if (s < 0) throw Error(ErrorCode::InvalidArgument, "sector index must be >= 0");
    return diagonal_operator(cutoff, [&](Label l) { return Complex(l.total() == s ? 1.0 : 0.0); });
}

TwoModeOperator number_diff_projection(int k, const Cutoff& cutoff) {
    return diagonal_operator(cutoff,
                             [&](Label l) { return Complex(l.difference() == k ? 1.0 : 0.0); });
}

std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidArgument, "matrix is not square");
    if (m.rows() == 0) return {};
    const double residual = hermiticity_residual(m);
    if (residual > tol)
        throw Error(ErrorCode::NonHermitianInput,
                    "Hermiticity residual " + std::to_string(residual) + " exceeds tolerance");
    const Matrix h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<double> hermitian_eigenvalues(const TwoModeOperator& op, double tol) {
    return hermitian_eigenvalues(op.matrix, tol);
}

void check_single_mode_state(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(ErrorCode::InvalidArgument, "single-mode state must be a nonempty square matrix");
    if (hermiticity_residual(m) > 1e-12)
        throw Error(ErrorCode::InvalidArgument, "single-mode state is not Hermitian");
    if (min_hermitian_eigenvalue(m) < -1e-12)
        throw Error(ErrorCode::InvalidArgument, "single-mode state is not positive");
    const double tr = m.trace().real();
    if (!(tr > 0.0) || tr > 1.0 + 1e-12)
        throw Error(ErrorCode::InvalidArgument, "single-mode state trace outside (0, 1]");
}

}  // namespace phasediff

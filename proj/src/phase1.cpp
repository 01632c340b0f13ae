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

#include "phasediff/phase1.hpp"

#include <algorithm>
#include <cmath>

namespace phasediff {

namespace {

// Endpoints closer than this to 2pi are snapped onto it after wrapping.
constexpr double kWrapSnap = 1e-14;

void push_wrapped(std::vector<std::pair<double, double>>& out, double a, double b) {
    const double len = b - a;
    if (!(len > 0.0)) return;
    if (len >= kTwoPi - kWrapSnap) {
        out.emplace_back(0.0, kTwoPi);
        return;
    }
    const double start = wrap_angle(a);
    double end = start + len;
    if (std::abs(end - kTwoPi) <= kWrapSnap) end = kTwoPi;
    if (end <= kTwoPi) {
        out.emplace_back(start, end);
    } else {
        out.emplace_back(start, kTwoPi);
        out.emplace_back(0.0, end - kTwoPi);
    }
}

}  // namespace

IntervalSet::IntervalSet(const std::vector<std::pair<double, double>>& intervals) {
    std::vector<std::pair<double, double>> pieces;
    for (const auto& [a, b] : intervals) {
        if (!std::isfinite(a) || !std::isfinite(b))
            throw Error(ErrorCode::InvalidArgument, "interval bounds must be finite");
        if (b < a) throw Error(ErrorCode::InvalidArgument, "interval with b < a");
        if (b - a > kTwoPi + 1e-12)
            throw Error(ErrorCode::InvalidArgument, "interval longer than 2pi");
        push_wrapped(pieces, a, b);
    }
    std::sort(pieces.begin(), pieces.end());
    for (const auto& piece : pieces) {
        if (piece.second <= piece.first) continue;
        if (!intervals_.empty() && piece.first <= intervals_.back().second) {
            intervals_.back().second = std::max(intervals_.back().second, piece.second);
        } else {
            intervals_.push_back(piece);
        }
    }
}

IntervalSet IntervalSet::full_circle() { return IntervalSet({{0.0, kTwoPi}}); }

IntervalSet IntervalSet::interval(double a, double b) { return IntervalSet({{a, b}}); }

std::vector<IntervalSet> IntervalSet::partition(int cells) {
    if (cells < 1) throw Error(ErrorCode::InvalidArgument, "partition needs at least one cell");
    std::vector<IntervalSet> out;
    out.reserve(static_cast<std::size_t>(cells));
    for (int i = 0; i < cells; ++i) {
        const double a = kTwoPi * i / cells;
        const double b = (i + 1 == cells) ? kTwoPi : kTwoPi * (i + 1) / cells;
        out.push_back(interval(a, b));
    }
    return out;
}

double IntervalSet::length() const {
    double total = 0.0;
    for (const auto& [a, b] : intervals_) total += b - a;
    return total;
}

bool IntervalSet::is_full() const {
    return intervals_.size() == 1 && intervals_[0].first == 0.0 && intervals_[0].second == kTwoPi;
}

IntervalSet IntervalSet::shifted(double t) const {
    if (is_full()) return *this;
    std::vector<std::pair<double, double>> moved;
    moved.reserve(intervals_.size());
    for (const auto& [a, b] : intervals_) moved.emplace_back(a + t, b + t);
    return IntervalSet(moved);
}

IntervalSet IntervalSet::united(const IntervalSet& other) const {
    auto all = intervals_;
    all.insert(all.end(), other.intervals_.begin(), other.intervals_.end());
    return IntervalSet(all);
}

Complex fourier_weight(int q, const IntervalSet& x) {
    if (q == 0) return x.length() / kTwoPi;
    if (x.is_full()) return 0.0;
    Complex sum = 0.0;
    for (const auto& [a, b] : x.intervals()) sum += std::polar(1.0, q * b) - std::polar(1.0, q * a);
    return sum / Complex(0.0, kTwoPi * q);
}

PhaseKernelReport check_phase_kernel(const Matrix& entries, double tol) {
    PhaseKernelReport report;
    if (entries.rows() != entries.cols() || entries.rows() == 0) return report;
    report.hermiticity_residual = hermiticity_residual(entries);
    for (Eigen::Index n = 0; n < entries.rows(); ++n)
        report.max_diagonal_deviation =
            std::max(report.max_diagonal_deviation, std::abs(entries(n, n) - 1.0));
    report.max_modulus = max_abs(entries);
    report.min_eigenvalue = min_hermitian_eigenvalue(entries);
    report.passed = report.hermiticity_residual <= tol && report.max_diagonal_deviation <= tol &&
                    report.min_eigenvalue >= -tol &&
                    report.max_modulus <= 1.0 + std::max(1e-12, tol);
    return report;
}

PhaseKernel::PhaseKernel(Matrix entries, double tol) : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0)
        throw Error(ErrorCode::ValidationFailed, "phase kernel must be a nonempty square matrix");
    const auto report = check_phase_kernel(entries_, tol);
    if (!report.passed) {
        throw Error(ErrorCode::ValidationFailed,
                    "phase kernel invalid: min eigenvalue " + std::to_string(report.min_eigenvalue) +
                        ", diagonal deviation " + std::to_string(report.max_diagonal_deviation) +
                        ", hermiticity " + std::to_string(report.hermiticity_residual));
    }
}

PhaseKernel PhaseKernel::truncated(int dim) const {
    if (dim < 1 || dim > this->dim())
        throw Error(ErrorCode::DimensionTooSmall, "cannot truncate phase kernel to requested size");
    return PhaseKernel(entries_.topLeftCorner(dim, dim));
}

PhaseKernel kernel_canonical(int N) {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
    return PhaseKernel(Matrix::Ones(N + 1, N + 1));
}

PhaseKernel kernel_identity(int N) {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
    return PhaseKernel(Matrix::Identity(N + 1, N + 1));
}

PhaseKernel kernel_from_vectors(const std::vector<Vector>& phis) {
    if (phis.empty()) throw Error(ErrorCode::InvalidArgument, "kernel_from_vectors needs vectors");
    const auto d = phis.front().size();
    for (std::size_t n = 0; n < phis.size(); ++n) {
        if (phis[n].size() != d)
            throw Error(ErrorCode::InvalidArgument, "Gram vectors must share one dimension");
        if (std::abs(phis[n].norm() - 1.0) > kUnitTol)
            throw Error(ErrorCode::NonUnitVector, "vector " + std::to_string(n) + " is not unit norm");
    }
    const auto dim = static_cast<Eigen::Index>(phis.size());
    Matrix c(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n) {
        for (Eigen::Index m = 0; m < dim; ++m)
            c(n, m) = phis[static_cast<std::size_t>(n)].dot(phis[static_cast<std::size_t>(m)]);
        c(n, n) = 1.0;
    }
    return PhaseKernel(std::move(c));
}

PhaseKernel kernel_coherent_vacuum(int N) {
    if (N < 0) throw Error(ErrorCode::InvalidArgument, "N must be >= 0");
    Matrix c(N + 1, N + 1);
    for (int n = 0; n <= N; ++n) {
        for (int m = 0; m <= N; ++m) {
            const double log_c = std::lgamma(0.5 * (n + m) + 1.0) -
                                 0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0));
            c(n, m) = n == m ? 1.0 : std::exp(log_c);
        }
    }
    return PhaseKernel(std::move(c));
}

PhaseKernel PhaseKernelSpec::materialize(int dim) const {
    switch (type) {
        case Type::Canonical: return kernel_canonical(dim - 1);
        case Type::CoherentVacuum: return kernel_coherent_vacuum(dim - 1);
        case Type::Identity: return kernel_identity(dim - 1);
        case Type::Gram:
            if (static_cast<int>(vectors.size()) < dim)
                throw Error(ErrorCode::DimensionTooSmall,
                            "Gram kernel has " + std::to_string(vectors.size()) +
                                " vectors, need " + std::to_string(dim));
            return kernel_from_vectors(
                std::vector<Vector>(vectors.begin(), vectors.begin() + dim));
    }
    throw Error(ErrorCode::InvalidArgument, "unknown kernel type");
}

std::string PhaseKernelSpec::name() const {
    switch (type) {
        case Type::Canonical: return "canonical";
        case Type::CoherentVacuum: return "coherent_vacuum";
        case Type::Identity: return "identity";
        case Type::Gram: return "gram";
    }
    return "unknown";
}

Matrix eval_phase(const PhaseKernel& kernel, const IntervalSet& x) {
    const int dim = kernel.dim();
    std::vector<Complex> w(static_cast<std::size_t>(2 * dim - 1));
    for (int q = -(dim - 1); q <= dim - 1; ++q) w[static_cast<std::size_t>(q + dim - 1)] = fourier_weight(q, x);
    Matrix e(dim, dim);
    for (int n = 0; n < dim; ++n)
        for (int m = 0; m < dim; ++m) e(n, m) = kernel(n, m) * w[static_cast<std::size_t>(n - m + dim - 1)];
    return e;
}

std::vector<Complex> phase_fourier_coefficients(const PhaseKernel& kernel, const Matrix& state) {
    const int d = static_cast<int>(state.rows());
    if (state.cols() != d) throw Error(ErrorCode::InvalidArgument, "state must be square");
    if (d > kernel.dim())
        throw Error(ErrorCode::CutoffMismatch, "state dimension exceeds kernel dimension");
    std::vector<Complex> a(static_cast<std::size_t>(2 * d - 1), Complex{});
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) a[static_cast<std::size_t>(n - m + d - 1)] += kernel(n, m) * state(m, n);
    return a;
}

std::vector<Complex> phase_fourier_coefficients(const PhaseKernel& kernel, const Vector& psi) {
    const int d = static_cast<int>(psi.size());
    if (d > kernel.dim())
        throw Error(ErrorCode::CutoffMismatch, "state dimension exceeds kernel dimension");
    std::vector<Complex> a(static_cast<std::size_t>(2 * d - 1), Complex{});
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m)
            a[static_cast<std::size_t>(n - m + d - 1)] += kernel(n, m) * psi(m) * std::conj(psi(n));
    return a;
}

double phase_density(const PhaseKernel& kernel, const Matrix& state, double theta) {
    const auto a = phase_fourier_coefficients(kernel, state);
    const int d = static_cast<int>(state.rows());
    Complex g = 0.0;
    for (int q = -(d - 1); q <= d - 1; ++q) g += a[static_cast<std::size_t>(q + d - 1)] * std::polar(1.0, q * theta);
    return g.real();
}

double phase_prob(const PhaseKernel& kernel, const Vector& psi, const IntervalSet& x) {
    const auto a = phase_fourier_coefficients(kernel, psi);
    const int d = static_cast<int>(psi.size());
    Complex p = 0.0;
    for (int q = -(d - 1); q <= d - 1; ++q) p += a[static_cast<std::size_t>(q + d - 1)] * fourier_weight(q, x);
    return p.real();
}

Matrix phase_shift(double theta, int dim) {
    Matrix u = Matrix::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) u(n, n) = std::polar(1.0, n * theta);
    return u;
}

FixedPhase::FixedPhase(double a) : alpha(a) {
    if (!(a >= 0.0 && a < kTwoPi))
        throw Error(ErrorCode::InvalidArgument, "fixed phase must lie in [0, 2pi)");
}

bool FixedPhase::contains(const IntervalSet& x) const {
    for (const auto& [a, b] : x.intervals())
        if (alpha >= a && alpha < b) return true;
    return false;
}

}  // namespace phasediff

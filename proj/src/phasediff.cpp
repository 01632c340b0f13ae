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

#include "phasediff/phasediff.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace phasediff {

DiffKernel::DiffKernel(std::vector<Matrix> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw Error(ErrorCode::InvalidArgument, "kernel needs at least block 0");
    for (std::size_t s = 0; s < blocks_.size(); ++s) {
        const auto size = static_cast<Eigen::Index>(s + 1);
        if (blocks_[s].rows() != size || blocks_[s].cols() != size)
            throw Error(ErrorCode::InvalidArgument,
                        "block " + std::to_string(s) + " must be " + std::to_string(size) + "x" +
                            std::to_string(size));
    }
}

Complex DiffKernel::coefficient(int n, int m, int k, int l) const {
    if (n < 0 || m < 0 || k < 0 || l < 0) return {};
    if (n - m != l - k) return {};
    const int s = n + k;
    if (s > cutoff()) return {};
    return blocks_[static_cast<std::size_t>(s)](n, m);
}

DiffKernel canonical_diff(int S) {
    if (S < 0) throw Error(ErrorCode::InvalidArgument, "S must be >= 0");
    std::vector<Matrix> blocks;
    for (int s = 0; s <= S; ++s) blocks.push_back(Matrix::Ones(s + 1, s + 1));
    return DiffKernel(std::move(blocks));
}

void GramFamily::set(int n, int k, Vector v) {
    if (n < 0 || k < 0) throw Error(ErrorCode::InvalidArgument, "labels must be nonnegative");
    if (v.size() != dim_) throw Error(ErrorCode::InvalidArgument, "Gram vector has wrong dimension");
    vectors_[Label{n, k}] = std::move(v);
}

const Vector& GramFamily::at(int n, int k) const {
    auto it = vectors_.find(Label{n, k});
    if (it == vectors_.end())
        throw Error(ErrorCode::MissingLabel,
                    "Gram family has no vector for (" + std::to_string(n) + "," + std::to_string(k) + ")");
    return it->second;
}

GramFamily GramFamily::uniform(int S, const Vector& v) {
    GramFamily family(v.size());
    for (int s = 0; s <= S; ++s)
        for (int n = 0; n <= s; ++n) family.set(n, s - n, v);
    return family;
}

GramFamily GramFamily::product(const std::vector<Vector>& phi1, const std::vector<Vector>& phi2, int S) {
    if (static_cast<int>(phi1.size()) <= S || static_cast<int>(phi2.size()) <= S)
        throw Error(ErrorCode::DimensionTooSmall, "product family needs S+1 vectors per mode");
    const auto d1 = phi1.front().size();
    const auto d2 = phi2.front().size();
    GramFamily family(d1 * d2);
    for (int s = 0; s <= S; ++s) {
        for (int n = 0; n <= s; ++n) {
            const Vector& a = phi1[static_cast<std::size_t>(n)];
            const Vector& b = phi2[static_cast<std::size_t>(s - n)];
            Vector v(d1 * d2);
            for (Eigen::Index i = 0; i < d1; ++i) v.segment(i * d2, d2) = a(i) * b;
            family.set(n, s - n, std::move(v));
        }
    }
    return family;
}

GramFamily lift_by_sector(const GramFamily& family, int S) {
    const Eigen::Index d = family.dim();
    GramFamily lifted(d * (S + 1));
    for (const auto& [label, v] : family.vectors()) {
        if (label.total() > S) continue;
        Vector w = Vector::Zero(d * (S + 1));
        // v tensor |n+k>: coordinate (i, s) sits at i*(S+1) + s.
        for (Eigen::Index i = 0; i < d; ++i) w(i * (S + 1) + label.total()) = v(i);
        lifted.set(label.n, label.k, std::move(w));
    }
    return lifted;
}

GramFamily phased_gram_family(const std::array<double, 4>& thetas, int S) {
    if (S < 6) throw Error(ErrorCode::InvalidArgument, "the phased family needs S >= 6");
    Vector psi(1);
    psi(0) = 1.0;
    GramFamily family = GramFamily::uniform(S, psi);
    auto phased = [&](double t) {
        Vector v(1);
        v(0) = std::polar(1.0, t);
        return v;
    };
    family.set(0, 2, phased(thetas[0]));
    family.set(2, 2, phased(thetas[1]));
    family.set(0, 4, phased(thetas[2]));
    family.set(2, 4, phased(thetas[3]));
    return family;
}

DiffKernel diff_from_pair(const PhaseKernel& c1, const PhaseKernel& c2, int S) {
    if (S < 0) throw Error(ErrorCode::InvalidArgument, "S must be >= 0");
    if (c1.dim() < S + 1 || c2.dim() < S + 1)
        throw Error(ErrorCode::DimensionTooSmall, "phase kernels must have dimension >= S+1");
    std::vector<Matrix> blocks(static_cast<std::size_t>(S + 1));
    parallel_for(blocks.size(), [&](std::size_t si) {
        const int s = static_cast<int>(si);
        Matrix b(s + 1, s + 1);
        for (int n = 0; n <= s; ++n)
            for (int m = 0; m <= s; ++m) b(n, m) = c1(n, m) * c2(s - n, s - m);
        blocks[si] = std::move(b);
    });
    return DiffKernel(std::move(blocks));
}

namespace {

void check_family(const GramFamily& family, int S) {
    if (S < 0) throw Error(ErrorCode::InvalidArgument, "S must be >= 0");
    for (int s = 0; s <= S; ++s) {
        for (int n = 0; n <= s; ++n) {
            const Vector& v = family.at(n, s - n);
            if (std::abs(v.norm() - 1.0) > kUnitTol)
                throw Error(ErrorCode::NonUnitVector, "xi_(" + std::to_string(n) + "," +
                                                          std::to_string(s - n) + ") is not a unit vector");
        }
    }
}

}  // namespace

DiffKernel diff_from_gram(const GramFamily& family, int S) {
    check_family(family, S);
    std::vector<Matrix> blocks(static_cast<std::size_t>(S + 1));
    parallel_for(blocks.size(), [&](std::size_t si) {
        const int s = static_cast<int>(si);
        Matrix b(s + 1, s + 1);
        for (int n = 0; n <= s; ++n) {
            for (int m = 0; m <= s; ++m) b(n, m) = family.at(n, s - n).dot(family.at(m, s - m));
            b(n, n) = 1.0;
        }
        blocks[si] = std::move(b);
    });
    return DiffKernel(std::move(blocks));
}

DiffKernel diff_from_theta_covariant(const GramFamily& family, int S) {
    check_family(family, S);
    std::vector<Matrix> blocks;
    for (int s = 0; s <= S; ++s) blocks.push_back(Matrix::Zero(s + 1, s + 1));
    const auto labels = Cutoff::total(S).labels();
    for (const Label& a : labels) {
        for (const Label& b : labels) {
            if (a.n - b.n != b.k - a.k) continue;  // delta_{n-m, l-k}
            const Complex tilde = family.at(a.n, a.k).dot(family.at(b.n, b.k));
            blocks[static_cast<std::size_t>(a.total())](a.n, b.n) = a == b ? Complex(1.0) : tilde;
        }
    }
    return DiffKernel(std::move(blocks));
}

TwoModeOperator eval_diff(const DiffKernel& kernel, const IntervalSet& x) {
    const int S = kernel.cutoff();
    const Cutoff space = kernel.space();
    const auto dim = static_cast<Eigen::Index>(space.dimension());
    std::vector<Complex> w(static_cast<std::size_t>(2 * S + 1));
    for (int q = -S; q <= S; ++q) w[static_cast<std::size_t>(q + S)] = fourier_weight(q, x);
    TwoModeOperator op{space, Matrix::Zero(dim, dim), true};
    parallel_for(static_cast<std::size_t>(S + 1), [&](std::size_t si) {
        const int s = static_cast<int>(si);
        const auto offset = static_cast<Eigen::Index>(total_index(0, s));
        const Matrix& c = kernel.block(s);
        for (int n = 0; n <= s; ++n)
            for (int m = 0; m <= s; ++m)
                op.matrix(offset + n, offset + m) = c(n, m) * w[static_cast<std::size_t>(n - m + S)];
    });
    return op;
}

namespace {

double conjugation_residual(const Matrix& u, const Matrix& e, const Matrix& target) {
    return max_abs(u * e * u.adjoint() - target);
}

}  // namespace

double covariance_residual(const DiffKernel& kernel, double alpha, double beta, const IntervalSet& x) {
    const Matrix theta = theta_unitary(alpha, beta, kernel.space()).matrix;
    return conjugation_residual(theta, eval_diff(kernel, x).matrix,
                                eval_diff(kernel, x.shifted(alpha - beta)).matrix);
}

CovarianceReport covariance_report(const DiffKernel& kernel, double alpha, double beta,
                                   const IntervalSet& x) {
    const Cutoff space = kernel.space();
    const Matrix e = eval_diff(kernel, x).matrix;
    CovarianceReport r;
    r.definition = covariance_residual(kernel, alpha, beta, x);
    r.sum_invariance = conjugation_residual(v_sigma(alpha, space).matrix, e, e);
    const Matrix vd = v_delta(beta, space).matrix;
    r.difference_factor2 = conjugation_residual(vd, e, eval_diff(kernel, x.shifted(2.0 * beta)).matrix);
    r.difference_factor1 = conjugation_residual(vd, e, eval_diff(kernel, x.shifted(beta)).matrix);
    return r;
}

ValidationReport validate(const DiffKernel& kernel, double tol) {
    ValidationReport report;
    report.tolerance = tol;
    report.blocks.resize(static_cast<std::size_t>(kernel.cutoff() + 1));
    parallel_for(report.blocks.size(), [&](std::size_t si) {
        const int s = static_cast<int>(si);
        const Matrix& c = kernel.block(s);
        BlockReport b;
        b.sector = s;
        b.hermiticity_residual = hermiticity_residual(c);
        for (int n = 0; n <= s; ++n) {
            const double dev = std::abs(c(n, n) - 1.0);
            if (dev > b.max_diagonal_deviation) {
                b.max_diagonal_deviation = dev;
                b.worst_diagonal_index = n;
            }
        }
        b.min_eigenvalue = min_hermitian_eigenvalue(c);
        b.passed = b.hermiticity_residual <= tol && b.max_diagonal_deviation <= tol &&
                   b.min_eigenvalue >= -tol;
        report.blocks[si] = b;
    });
    for (const auto& b : report.blocks) {
        if (!b.passed && report.passed) {
            report.passed = false;
            report.first_failure = b.sector;
        }
    }
    return report;
}

GramFamily gram_from_kernel(const DiffKernel& kernel) {
    const auto report = validate(kernel);
    if (!report.passed)
        throw Error(ErrorCode::ValidationFailed,
                    "kernel fails validation in sector " + std::to_string(report.first_failure));
    const int S = kernel.cutoff();
    const auto total_dim = static_cast<Eigen::Index>(Cutoff::total(S).dimension());
    std::vector<Matrix> factors(static_cast<std::size_t>(S + 1));
    parallel_for(factors.size(), [&](std::size_t si) {
        const Matrix& c = kernel.block(static_cast<int>(si));
        Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (c + c.adjoint()));
        Eigen::VectorXd lambda = solver.eigenvalues();
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            if (lambda(i) < -kPsdTol)
                throw Error(ErrorCode::ValidationFailed, "block eigenvalue below -1e-10");
            lambda(i) = std::max(0.0, lambda(i));
        }
        // C = U diag(lambda) U^* = G^* G with G = diag(sqrt(lambda)) U^*.
        Matrix g = lambda.cwiseSqrt().asDiagonal() * solver.eigenvectors().adjoint();
        for (Eigen::Index col = 0; col < g.cols(); ++col) {
            const double norm = g.col(col).norm();
            if (norm > 0) g.col(col) /= norm;
        }
        factors[si] = std::move(g);
    });
    GramFamily family(total_dim);
    for (int s = 0; s <= S; ++s) {
        const auto offset = static_cast<Eigen::Index>(total_index(0, s));
        for (int n = 0; n <= s; ++n) {
            Vector v = Vector::Zero(total_dim);
            v.segment(offset, s + 1) = factors[static_cast<std::size_t>(s)].col(n);
            family.set(n, s - n, std::move(v));
        }
    }
    return family;
}

namespace {

void check_state_fits(const DiffKernel& kernel, const Cutoff& cutoff) {
    if (cutoff.max_total() > kernel.cutoff())
        throw Error(ErrorCode::CutoffMismatch,
                    "state reaches total occupation " + std::to_string(cutoff.max_total()) +
                        " but kernel stops at " + std::to_string(kernel.cutoff()));
}

}  // namespace

std::vector<Complex> diff_fourier_coefficients(const DiffKernel& kernel, const TwoModeState& state) {
    check_state_fits(kernel, state.cutoff());
    const int S = kernel.cutoff();
    const Cutoff& cutoff = state.cutoff();
    const int smax = cutoff.max_total();
    // Per-sector partial sums, combined in sector order afterwards.
    std::vector<std::vector<Complex>> partial(static_cast<std::size_t>(smax + 1),
                                              std::vector<Complex>(static_cast<std::size_t>(2 * S + 1)));
    parallel_for(partial.size(), [&](std::size_t si) {
        const int s = static_cast<int>(si);
        const Matrix& c = kernel.block(s);
        auto& acc = partial[si];
        for (int n = 0; n <= s; ++n) {
            auto a = cutoff.index_of(n, s - n);
            if (!a) continue;
            for (int m = 0; m <= s; ++m) {
                auto b = cutoff.index_of(m, s - m);
                if (!b) continue;
                acc[static_cast<std::size_t>(n - m + S)] +=
                    c(n, m) * state.matrix()(static_cast<Eigen::Index>(*b), static_cast<Eigen::Index>(*a));
            }
        }
    });
    std::vector<Complex> out(static_cast<std::size_t>(2 * S + 1));
    for (const auto& acc : partial)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += acc[i];
    return out;
}

std::vector<Complex> diff_fourier_coefficients(const DiffKernel& kernel, const TwoModeVector& psi) {
    check_state_fits(kernel, psi.cutoff);
    const int S = kernel.cutoff();
    const int smax = psi.cutoff.max_total();
    std::vector<std::vector<Complex>> partial(static_cast<std::size_t>(smax + 1),
                                              std::vector<Complex>(static_cast<std::size_t>(2 * S + 1)));
    parallel_for(partial.size(), [&](std::size_t si) {
        const int s = static_cast<int>(si);
        const Matrix& c = kernel.block(s);
        Vector sector(s + 1);
        for (int n = 0; n <= s; ++n) sector(n) = psi.at(n, s - n);
        auto& acc = partial[si];
        for (int n = 0; n <= s; ++n) {
            if (sector(n) == Complex{}) continue;
            for (int m = 0; m <= s; ++m)
                acc[static_cast<std::size_t>(n - m + S)] += std::conj(sector(n)) * c(n, m) * sector(m);
        }
    });
    std::vector<Complex> out(static_cast<std::size_t>(2 * S + 1));
    for (const auto& acc : partial)
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += acc[i];
    return out;
}

namespace {

double integrate(const std::vector<Complex>& coeffs, int S, const IntervalSet& x) {
    Complex p = 0.0;
    for (int q = -S; q <= S; ++q) p += coeffs[static_cast<std::size_t>(q + S)] * fourier_weight(q, x);
    return p.real();
}

}  // namespace

double prob(const DiffKernel& kernel, const TwoModeState& state, const IntervalSet& x) {
    return integrate(diff_fourier_coefficients(kernel, state), kernel.cutoff(), x);
}

double prob(const DiffKernel& kernel, const TwoModeVector& psi, const IntervalSet& x) {
    return integrate(diff_fourier_coefficients(kernel, psi), kernel.cutoff(), x);
}

TwoModeOperator fixed_phase_diff(const PhaseKernel& c1, double alpha, const IntervalSet& x) {
    const int N = c1.cutoff();
    const Matrix e1 = eval_phase(c1, x.shifted(alpha));
    const Cutoff cutoff = Cutoff::per_mode(N);
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    TwoModeOperator op{cutoff, Matrix::Zero(dim, dim), false};
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m)
            for (int k = 0; k <= N; ++k)
                op.matrix(static_cast<Eigen::Index>(*cutoff.index_of(n, k)),
                          static_cast<Eigen::Index>(*cutoff.index_of(m, k))) = e1(n, m);
    return op;
}

}  // namespace phasediff

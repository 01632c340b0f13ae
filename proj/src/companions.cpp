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

#include "phasediff/companions.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "phasediff/analysis.hpp"

namespace phasediff {

Label BanBasisMap::to_fock(BanLabel b) {
    return b.k >= 0 ? Label{b.n + b.k, b.n} : Label{b.n, b.n - b.k};
}

BanLabel BanBasisMap::from_fock(Label l) { return {l.n - l.k, std::min(l.n, l.k)}; }

namespace {

ShiftOperator ban_shift(const Cutoff& cutoff, int step) {
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    ShiftOperator out{{cutoff, Matrix::Zero(dim, dim), false}, {}};
    const auto labels = cutoff.labels();
    for (std::size_t j = 0; j < labels.size(); ++j) {
        BanLabel b = BanBasisMap::from_fock(labels[j]);
        b.k -= step;
        const auto i = cutoff.index_of(BanBasisMap::to_fock(b).n, BanBasisMap::to_fock(b).k);
        if (i)
            out.op.matrix(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(j)) = 1.0;
        else
            out.boundary.push_back(labels[j]);
    }
    return out;
}

Matrix conjugate(const Matrix& diag_unitary, const Matrix& m) { return diag_unitary * m * diag_unitary.adjoint(); }

double column_norm(const Matrix& m, std::size_t j) { return m.col(static_cast<Eigen::Index>(j)).norm(); }

}  // namespace

ShiftOperator ban_D(const Cutoff& cutoff) { return ban_shift(cutoff, 1); }

ShiftOperator factor2_projection_solution(const Cutoff& cutoff) { return ban_shift(cutoff, 2); }

TwoModeOperator ban_B(const IntervalSet& x, const Cutoff& cutoff) {
    const auto labels = cutoff.labels();
    const auto dim = static_cast<Eigen::Index>(labels.size());
    // Weights depend only on k - l, which ranges over [-2M, 2M].
    const int M = cutoff.max_total();
    std::vector<Complex> w(static_cast<std::size_t>(4 * M + 1));
    for (int q = -2 * M; q <= 2 * M; ++q) w[static_cast<std::size_t>(q + 2 * M)] = fourier_weight(q, x);
    TwoModeOperator op{cutoff, Matrix::Zero(dim, dim), false};
    for (Eigen::Index a = 0; a < dim; ++a) {
        const BanLabel ba = BanBasisMap::from_fock(labels[static_cast<std::size_t>(a)]);
        for (Eigen::Index b = 0; b < dim; ++b) {
            const BanLabel bb = BanBasisMap::from_fock(labels[static_cast<std::size_t>(b)]);
            if (ba.n == bb.n) op.matrix(a, b) = w[static_cast<std::size_t>(ba.k - bb.k + 2 * M)];
        }
    }
    return op;
}

BanCovariance ban_covariance_residual(const IntervalSet& x, double beta, const Cutoff& cutoff) {
    const Matrix v = v_delta(beta, cutoff).matrix;
    const Matrix rotated = conjugate(v, ban_B(x, cutoff).matrix);
    return {max_abs(rotated - ban_B(x.shifted(beta), cutoff).matrix),
            max_abs(rotated - ban_B(x.shifted(2.0 * beta), cutoff).matrix)};
}

std::vector<Label> interior_labels(const Cutoff& cutoff, int margin) {
    std::vector<Label> out;
    for (const auto& l : cutoff.labels())
        if (l.total() <= cutoff.max_total() - margin) out.push_back(l);
    return out;
}

CommutatorReport commutator_checks(const DiffKernel& kernel, const Cutoff& cutoff, int margin) {
    if (!cutoff.is_total() || cutoff.bound() > kernel.cutoff())
        throw Error(ErrorCode::CutoffMismatch, "commutator checks need a Total cutoff within the kernel");
    const int S = cutoff.bound();
    std::vector<Matrix> blocks(kernel.blocks().begin(), kernel.blocks().begin() + S + 1);
    const Matrix c1 = cyclic_moment(DiffKernel(std::move(blocks)), 1).matrix;
    const Matrix d = ban_D(cutoff).op.matrix;
    const Matrix dn = number_difference(cutoff).matrix;

    const Matrix shift_defect = d * dn - dn * d - d;
    const Matrix cyclic_comm = c1 * dn - dn * c1;
    const Matrix cyclic_defect = cyclic_comm - 2.0 * c1;
    const Matrix contrast = cyclic_comm - c1;

    // Single mode: c = sum c_{n,n+1} |n><n+1| for the canonical kernel.
    const PhaseKernel can = kernel_canonical(S);
    Matrix c(S + 1, S + 1);
    c.setZero();
    Matrix num(S + 1, S + 1);
    num.setZero();
    for (int n = 0; n <= S; ++n) {
        num(n, n) = static_cast<double>(n);
        if (n < S) c(n, n + 1) = can(n, n + 1);
    }
    const Matrix single_defect = c * num - num * c - c;

    CommutatorReport report;
    const auto inner = interior_labels(cutoff, margin);
    report.interior = static_cast<int>(inner.size());
    report.excluded = static_cast<int>(cutoff.dimension()) - report.interior;
    for (const auto& l : inner) {
        const std::size_t j = cutoff.index_of(l);
        report.shift = std::max(report.shift, column_norm(shift_defect, j));
        report.cyclic = std::max(report.cyclic, column_norm(cyclic_defect, j));
        report.factor1_contrast = std::max(report.factor1_contrast, column_norm(contrast, j));
    }
    for (int n = 0; n <= S - margin; ++n)
        report.single_mode = std::max(report.single_mode, column_norm(single_defect, static_cast<std::size_t>(n)));
    return report;
}

std::pair<double, double> ban_vacuum_reduction(const Matrix& state, const IntervalSet& x, const Cutoff& cutoff) {
    check_single_mode_state(state);
    const int N = static_cast<int>(state.rows()) - 1;
    if (N > cutoff.max_single())
        throw Error(ErrorCode::CutoffMismatch, "state needs occupation " + std::to_string(N) + " in the first mode");
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    Matrix embedded = Matrix::Zero(dim, dim);
    for (int a = 0; a <= N; ++a)
        for (int b = 0; b <= N; ++b)
            embedded(static_cast<Eigen::Index>(*cutoff.index_of(a, 0)), static_cast<Eigen::Index>(*cutoff.index_of(b, 0))) =
                state(a, b);
    const double two_mode = (embedded * ban_B(x, cutoff).matrix).trace().real();
    const double single = (state * eval_phase(kernel_canonical(N), x)).trace().real();
    return {two_mode, single};
}

double factor2_intertwining_residual(const ShiftOperator& w, double beta, int margin) {
    const Cutoff& cutoff = w.op.cutoff;
    const Matrix v = v_delta(beta, cutoff).matrix;
    const Matrix defect = conjugate(v, w.op.matrix) - std::exp(Complex(0.0, -2.0 * beta)) * w.op.matrix;
    double r = 0.0;
    for (const auto& l : interior_labels(cutoff, margin)) r = std::max(r, column_norm(defect, cutoff.index_of(l)));
    return r;
}

std::pair<TwoModeOperator, TwoModeOperator> sg_operators(int S) {
    const TwoModeOperator v = cyclic_moment(canonical_diff(S), 1);
    TwoModeOperator c{v.cutoff, 0.5 * (v.matrix + v.matrix.adjoint()), true};
    TwoModeOperator s{v.cutoff, (v.matrix - v.matrix.adjoint()) / Complex(0.0, 2.0), true};
    return {std::move(c), std::move(s)};
}

double ll_polar_check(int S) {
    const Cutoff cutoff = Cutoff::total(S);
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    Matrix a = Matrix::Zero(dim, dim);
    Matrix r = Matrix::Zero(dim, dim);
    for (const auto& l : cutoff.labels()) {
        const auto j = static_cast<Eigen::Index>(cutoff.index_of(l));
        const double amp = std::sqrt(static_cast<double>(l.n) * (l.k + 1));
        r(j, j) = amp;
        if (l.n > 0) a(static_cast<Eigen::Index>(total_index(l.n - 1, l.k + 1)), j) = amp;
    }
    const Matrix v = cyclic_moment(canonical_diff(S), 1).matrix;
    return max_abs(a - v * r);
}

Matrix e12_block(int s) {
    if (s < 0) throw Error(ErrorCode::InvalidArgument, "sector index must be nonnegative");
    // Index n stands for |n, s-n>. V lowers n by one, the completion sends
    // |0,s> to |s,0>.
    Matrix b = Matrix::Zero(s + 1, s + 1);
    for (int n = 0; n < s; ++n) b(n, n + 1) = 1.0;
    b(s, 0) += 1.0;
    return b;
}

std::vector<double> phi12_block_eigenphases(int s) {
    Eigen::ComplexEigenSolver<Matrix> solver(e12_block(s));
    std::vector<double> phases;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double p = wrap_angle(std::arg(solver.eigenvalues()(i)));
        if (kTwoPi - p < 1e-9) p = 0.0;
        phases.push_back(p);
    }
    std::sort(phases.begin(), phases.end());
    return phases;
}

}  // namespace phasediff

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

#include "phasediff/analysis.hpp"

#include <cmath>

namespace phasediff {

Complex FourierFunction::operator()(double x) const {
    Complex v = 0.0;
    for (Eigen::Index n = 0; n < coeffs.size(); ++n)
        v += coeffs(n) * std::exp(Complex(0.0, -static_cast<double>(n) * x));
    return v;
}

namespace {

double sum_series(const std::vector<Complex>& coeffs, double theta) {
    const int S = static_cast<int>(coeffs.size() / 2);
    Complex g = 0.0;
    for (int q = -S; q <= S; ++q)
        g += coeffs[static_cast<std::size_t>(q + S)] * std::exp(Complex(0.0, q * theta));
    return g.real();
}

}  // namespace

double density_diff(const DiffKernel& kernel, const TwoModeState& state, double theta) {
    return sum_series(diff_fourier_coefficients(kernel, state), theta);
}

double density_diff(const DiffKernel& kernel, const TwoModeVector& psi, double theta) {
    return sum_series(diff_fourier_coefficients(kernel, psi), theta);
}

double JointDensity::operator()(double x, double y) const {
    Complex g = 0.0;
    for (int p = -order; p <= order; ++p)
        for (int r = -order; r <= order; ++r)
            g += coeffs(p + order, r + order) * std::exp(Complex(0.0, p * x + r * y));
    return g.real();
}

double JointDensity::marginal(double theta) const {
    Complex g = 0.0;
    for (int p = -order; p <= order; ++p) g += coeffs(p + order, order - p) * std::exp(Complex(0.0, p * theta));
    return g.real();
}

JointDensity density_tilde(const GramFamily& family, const TwoModeState& state) {
    const Cutoff& cutoff = state.cutoff();
    const auto labels = cutoff.labels();
    for (const auto& l : labels)
        if (!family.contains(l.n, l.k))
            throw Error(ErrorCode::CutoffMismatch, "family has no vector for label (" + std::to_string(l.n) +
                                                       "," + std::to_string(l.k) + ")");
    JointDensity out;
    out.order = cutoff.max_single();
    const int M = out.order;
    out.coeffs = Matrix::Zero(2 * M + 1, 2 * M + 1);
    // Row-wise partials keep the summation order fixed.
    std::vector<Matrix> partial(labels.size(), Matrix::Zero(2 * M + 1, 2 * M + 1));
    parallel_for(labels.size(), [&](std::size_t ai) {
        const Label a = labels[ai];
        const Vector& xa = family.at(a.n, a.k);
        for (std::size_t bi = 0; bi < labels.size(); ++bi) {
            const Label b = labels[bi];
            const Complex t = state.matrix()(static_cast<Eigen::Index>(bi), static_cast<Eigen::Index>(ai));
            if (t == Complex{}) continue;
            partial[ai](a.n - b.n + M, a.k - b.k + M) += xa.dot(family.at(b.n, b.k)) * t;
        }
    });
    for (const auto& p : partial) out.coeffs += p;
    return out;
}

double density_tilde(const GramFamily& family, const TwoModeState& state, double x, double y) {
    return density_tilde(family, state)(x, y);
}

namespace {

// Fourier coefficients F_p, p = -N..N, of |phi(x)|^2 in the sampling
// convention of FourierFunction.
std::vector<Complex> modulus_coefficients(const Vector& c) {
    const int N = static_cast<int>(c.size()) - 1;
    std::vector<Complex> f(static_cast<std::size_t>(2 * N + 1));
    for (int n = 0; n <= N; ++n)
        for (int m = 0; m <= N; ++m) f[static_cast<std::size_t>(m - n + N)] += c(n) * std::conj(c(m));
    return f;
}

void check_unit(const FourierFunction& f, const char* name) {
    if (std::abs(f.norm_squared() - 1.0) > kUnitTol)
        throw Error(ErrorCode::NonUnitNorm, std::string(name) + " has squared norm " + std::to_string(f.norm_squared()));
}

}  // namespace

double barnett_pegg_prob(const FourierFunction& phi, const FourierFunction& psi, const IntervalSet& x) {
    check_unit(phi, "phi");
    check_unit(psi, "psi");
    const auto f = modulus_coefficients(phi.coeffs);
    const auto g = modulus_coefficients(psi.coeffs);
    const int N1 = static_cast<int>(phi.coeffs.size()) - 1;
    const int N2 = static_cast<int>(psi.coeffs.size()) - 1;
    // (1/2pi) int |phi(x+theta)|^2 |psi(x)|^2 dx = sum_p F_p G_{-p} e^{ip theta}.
    Complex p = 0.0;
    const int Q = std::min(N1, N2);
    for (int q = -Q; q <= Q; ++q)
        p += f[static_cast<std::size_t>(q + N1)] * g[static_cast<std::size_t>(-q + N2)] * fourier_weight(q, x);
    return p.real();
}

TwoModeOperator first_moment(const DiffKernel& kernel) {
    const int S = kernel.cutoff();
    const Cutoff cutoff = Cutoff::total(S);
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    TwoModeOperator op{cutoff, Matrix::Zero(dim, dim), true};
    parallel_for(static_cast<std::size_t>(S + 1), [&](std::size_t si) {
        const int s = static_cast<int>(si);
        const auto offset = static_cast<Eigen::Index>(total_index(0, s));
        const Matrix& c = kernel.block(s);
        for (int n = 0; n <= s; ++n)
            for (int m = 0; m <= s; ++m)
                op.matrix(offset + n, offset + m) = n == m ? Complex(kPi) : c(n, m) * Complex(0.0, 1.0 / (m - n));
    });
    return op;
}

DiffKernel reconstruct_from_first_moment(const TwoModeOperator& moment) {
    if (!moment.cutoff.is_total())
        throw Error(ErrorCode::MalformedMoment, "moment operator must live on a Total cutoff");
    const int S = moment.cutoff.bound();
    const Matrix& m = moment.matrix;
    if (hermiticity_residual(m) > 1e-10) throw Error(ErrorCode::MalformedMoment, "moment operator is not Hermitian");
    const auto labels = moment.cutoff.labels();
    for (std::size_t a = 0; a < labels.size(); ++a) {
        for (std::size_t b = 0; b < labels.size(); ++b) {
            const Complex v = m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (labels[a].total() != labels[b].total() && std::abs(v) > 1e-10)
                throw Error(ErrorCode::MalformedMoment, "moment operator mixes number-sum sectors");
            if (a == b && std::abs(v - kPi) > 1e-10)
                throw Error(ErrorCode::MalformedMoment, "moment diagonal differs from pi");
        }
    }
    std::vector<Matrix> blocks(static_cast<std::size_t>(S + 1));
    for (int s = 0; s <= S; ++s) {
        const auto offset = static_cast<Eigen::Index>(total_index(0, s));
        Matrix c = Matrix::Identity(s + 1, s + 1);
        for (int n = 0; n <= s; ++n)
            for (int j = 0; j <= s; ++j)
                if (n != j) c(n, j) = m(offset + n, offset + j) * Complex(0.0, -(j - n));
        blocks[static_cast<std::size_t>(s)] = std::move(c);
    }
    return DiffKernel(std::move(blocks));
}

TwoModeOperator cyclic_moment(const DiffKernel& kernel, int r) {
    if (r < 1) throw Error(ErrorCode::InvalidArgument, "cyclic moment order must be positive");
    const int S = kernel.cutoff();
    const Cutoff cutoff = Cutoff::total(S);
    const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
    TwoModeOperator op{cutoff, Matrix::Zero(dim, dim), true};
    for (int s = r; s <= S; ++s) {
        const Matrix& c = kernel.block(s);
        for (int n = 0; n + r <= s; ++n) {
            const int l = s - n - r;
            op.matrix(static_cast<Eigen::Index>(total_index(n, l + r)),
                      static_cast<Eigen::Index>(total_index(n + r, l))) = c(n, n + r);
        }
    }
    return op;
}

}  // namespace phasediff

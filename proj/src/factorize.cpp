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

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include <Eigen/Eigenvalues>

#include "phasediff/phasediff.hpp"

namespace phasediff {

namespace {

constexpr int kSearchStarts = 32;

// Order-q slice M^q_{n,k} = c_{n+q,n,k,k+q} reduced to its first column and
// normalized first row, which is all the extraction needs once the rank-one
// test has passed.
struct OrderData {
    int q = 0;
    bool vanishing = false;        // every entry of M^q below tolerance
    std::vector<Complex> column;   // M^q_{n,0}
    std::vector<Complex> row;      // M^q_{0,k} / M^q_{0,0}
    double lower = 1.0;            // |t_q| >= lower keeps |c2| <= 1
    double upper = 1.0;            // |t_q| <= upper keeps |c1| <= 1
};

Complex slice(const DiffKernel& kernel, int q, int n, int k) {
    return kernel.block(n + q + k)(n + q, n);
}

// Builds both candidate kernels for gauge t (index q-1).
std::pair<Matrix, Matrix> candidates(const std::vector<OrderData>& orders, int S,
                                     const std::vector<Complex>& t) {
    Matrix c1 = Matrix::Identity(S + 1, S + 1);
    Matrix c2 = Matrix::Identity(S + 1, S + 1);
    for (const auto& d : orders) {
        if (d.vanishing) {
            for (int n = 0; n + d.q <= S; ++n) {
                c1(n + d.q, n) = c1(n, n + d.q) = 0.0;
                c2(n, n + d.q) = c2(n + d.q, n) = 0.0;
            }
            continue;
        }
        const Complex tq = t[static_cast<std::size_t>(d.q - 1)];
        for (int n = 0; n + d.q <= S; ++n) {
            c1(n + d.q, n) = d.column[static_cast<std::size_t>(n)] * tq;
            c1(n, n + d.q) = std::conj(c1(n + d.q, n));
            c2(n, n + d.q) = d.row[static_cast<std::size_t>(n)] / tq;
            c2(n + d.q, n) = std::conj(c2(n, n + d.q));
        }
    }
    return {std::move(c1), std::move(c2)};
}

double product_residual(const DiffKernel& kernel, const Matrix& c1, const Matrix& c2) {
    double residual = 0.0;
    for (int s = 0; s <= kernel.cutoff(); ++s) {
        const Matrix& b = kernel.block(s);
        for (int n = 0; n <= s; ++n)
            for (int m = 0; m <= s; ++m)
                residual = std::max(residual, std::abs(b(n, m) - c1(n, m) * c2(s - n, s - m)));
    }
    return residual;
}

// Squared shortfall of every eigenvalue below `margin`, for both candidates,
// with its gradient in x = (log|t_1..t_S|, arg t_1..t_S).
struct Penalty {
    const std::vector<OrderData>& orders;
    int S;
    double margin;

    double operator()(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
        std::vector<Complex> t(static_cast<std::size_t>(S));
        for (int q = 1; q <= S; ++q) t[static_cast<std::size_t>(q - 1)] = std::exp(Complex(x(q - 1), x(S + q - 1)));
        auto [c1, c2] = candidates(orders, S, t);
        grad.setZero(2 * S);
        double f = 0.0;
        for (int which = 0; which < 2; ++which) {
            const Matrix& c = which == 0 ? c1 : c2;
            Eigen::SelfAdjointEigenSolver<Matrix> solver(c);
            const auto& lambda = solver.eigenvalues();
            for (Eigen::Index i = 0; i < lambda.size(); ++i) {
                const double shortfall = lambda(i) - margin;
                if (shortfall >= 0) break;  // ascending
                f += shortfall * shortfall;
                const auto v = solver.eigenvectors().col(i);
                for (const auto& d : orders) {
                    if (d.vanishing) continue;
                    Complex z = 0.0;
                    for (int n = 0; n + d.q <= S; ++n) {
                        if (which == 0)
                            z += std::conj(v(n + d.q)) * c(n + d.q, n) * v(n);
                        else
                            z += std::conj(v(n)) * c(n, n + d.q) * v(n + d.q);
                    }
                    // c1 scales with t, c2 with 1/t.
                    const double sign = which == 0 ? 1.0 : -1.0;
                    grad(d.q - 1) += 2.0 * shortfall * 2.0 * sign * z.real();
                    grad(S + d.q - 1) += 2.0 * shortfall * 2.0 * (-sign) * z.imag();
                }
            }
        }
        return f;
    }
};

// Dense BFGS with Armijo backtracking. Returns the final iterate.
Eigen::VectorXd minimize_bfgs(const Penalty& penalty, Eigen::VectorXd x, int max_iterations) {
    const Eigen::Index dim = x.size();
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim);
    Eigen::VectorXd g(dim);
    double f = penalty(x, g);
    for (int iter = 0; iter < max_iterations && f > 0.0; ++iter) {
        if (g.norm() < 1e-300) break;
        Eigen::VectorXd p = -h * g;
        if (p.dot(g) >= 0) {
            h.setIdentity();
            p = -g;
        }
        const double step_norm = p.norm();
        if (step_norm > 1.0) p /= step_norm;
        double alpha = 1.0;
        Eigen::VectorXd x_new(dim);
        Eigen::VectorXd g_new(dim);
        double f_new = 0.0;
        bool accepted = false;
        for (int ls = 0; ls < 60; ++ls) {
            x_new = x + alpha * p;
            f_new = penalty(x_new, g_new);
            if (f_new <= f + 1e-4 * alpha * g.dot(p)) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted) break;
        const Eigen::VectorXd s = x_new - x;
        const Eigen::VectorXd y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-18 * s.norm() * y.norm()) {
            const double rho = 1.0 / sy;
            const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
            h = (id - rho * s * y.transpose()) * h * (id - rho * y * s.transpose()) + rho * s * s.transpose();
        }
        x = std::move(x_new);
        g = std::move(g_new);
        f = f_new;
    }
    return x;
}

std::optional<Factorized> try_gauge(const DiffKernel& kernel, const std::vector<OrderData>& orders,
                                    const std::vector<Complex>& t, double tol, const char* name) {
    const int S = kernel.cutoff();
    auto [c1, c2] = candidates(orders, S, t);
    if (!check_phase_kernel(c1).passed || !check_phase_kernel(c2).passed) return std::nullopt;
    const double residual = product_residual(kernel, c1, c2);
    if (residual > tol) return std::nullopt;
    return Factorized{PhaseKernel(std::move(c1)), PhaseKernel(std::move(c2)), residual, name};
}

}  // namespace

FactorizationResult factorize(const DiffKernel& kernel, double tol) {
    const auto report = validate(kernel);
    if (!report.passed)
        throw Error(ErrorCode::ValidationFailed,
                    "kernel fails validation in sector " + std::to_string(report.first_failure));
    const int S = kernel.cutoff();

    // Stage 1: rank-one test per difference order.
    std::vector<OrderData> orders;
    std::optional<Indeterminate> degenerate;
    for (int q = 1; q <= S; ++q) {
        const int width = S - q;  // n + k <= S - q
        bool all_nonzero = true;
        bool all_zero = true;
        for (int n = 0; n <= width; ++n) {
            for (int k = 0; n + k <= width; ++k) {
                const double mag = std::abs(slice(kernel, q, n, k));
                all_nonzero = all_nonzero && mag > tol;
                all_zero = all_zero && mag <= tol;
            }
        }
        OrderData d;
        d.q = q;
        if (all_zero) {
            d.vanishing = true;
            orders.push_back(std::move(d));
            continue;
        }
        if (!all_nonzero) {
            if (!degenerate)
                degenerate = Indeterminate{"order " + std::to_string(q) +
                                           " has vanishing and nonvanishing coefficients; no pivot"};
            continue;
        }
        const Complex m00 = slice(kernel, q, 0, 0);
        for (int n = 0; n <= width; ++n) {
            for (int k = 0; n + k <= width; ++k) {
                const Complex diag = slice(kernel, q, n, k) * m00;
                const Complex off = slice(kernel, q, n, 0) * slice(kernel, q, 0, k);
                const double mismatch = std::abs(diag - off);
                if (mismatch > tol)
                    return NotFactorizable{q, n, k, {n + q, n, k, k + q}, diag, off, mismatch};
            }
        }
        double max_row = 0.0;
        double max_col = 0.0;
        for (int i = 0; i <= width; ++i) {
            d.column.push_back(slice(kernel, q, i, 0));
            d.row.push_back(slice(kernel, q, 0, i) / m00);
            max_col = std::max(max_col, std::abs(d.column.back()));
            max_row = std::max(max_row, std::abs(d.row.back()));
        }
        d.lower = max_row;
        d.upper = 1.0 / max_col;
        orders.push_back(std::move(d));
    }
    if (degenerate) return *degenerate;

    // Stage 2: closed-form gauges, then a search.
    std::vector<Complex> balanced(static_cast<std::size_t>(S), 1.0);
    std::vector<Complex> lower(static_cast<std::size_t>(S), 1.0);
    std::vector<Complex> upper(static_cast<std::size_t>(S), 1.0);
    for (const auto& d : orders) {
        if (d.vanishing) continue;
        const auto i = static_cast<std::size_t>(d.q - 1);
        balanced[i] = std::sqrt(d.lower * d.upper);
        lower[i] = d.lower;
        upper[i] = d.upper;
    }
    if (auto f = try_gauge(kernel, orders, balanced, tol, "balanced")) return *f;
    if (auto f = try_gauge(kernel, orders, lower, tol, "lower-endpoint")) return *f;
    if (auto f = try_gauge(kernel, orders, upper, tol, "upper-endpoint")) return *f;

    if (S > 0) {
        // Starts: the balanced gauge, then fixed pseudo-random phases and
        // moduli inside [lower, upper]. The generator is seeded so results
        // are reproducible.
        std::mt19937_64 engine(0x5eed);
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        for (int start = 0; start < kSearchStarts; ++start) {
            Eigen::VectorXd x = Eigen::VectorXd::Zero(2 * S);
            for (const auto& d : orders) {
                if (d.vanishing) continue;
                const double lo = std::log(std::max(d.lower, 1e-300));
                const double hi = std::log(std::max(d.upper, 1e-300));
                x(d.q - 1) = start == 0 ? 0.5 * (lo + hi) : lo + (hi - lo) * unit(engine);
                x(S + d.q - 1) = start == 0 ? 0.0 : kTwoPi * unit(engine);
            }
            for (double margin : {1e-3, 1e-6, 1e-9}) {
                x = minimize_bfgs(Penalty{orders, S, margin}, x, 2000);
                std::vector<Complex> t(static_cast<std::size_t>(S));
                for (int q = 1; q <= S; ++q)
                    t[static_cast<std::size_t>(q - 1)] = std::exp(Complex(x(q - 1), x(S + q - 1)));
                if (auto f = try_gauge(kernel, orders, t, tol, "search")) return *f;
            }
        }
    }
    return Indeterminate{"rank-one test passed but no gauge made both factors positive semidefinite"};
}

}  // namespace phasediff

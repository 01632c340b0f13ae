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

// Random draws and independent reference computations shared by the unit
// tests and the acceptance runner. Nothing here calls the library's own
// evaluation routines.

#ifndef PHASEDIFF_TESTS_SUPPORT_HPP
#define PHASEDIFF_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "phasediff/fock.hpp"
#include "phasediff/phase1.hpp"
#include "phasediff/phasediff.hpp"

namespace phasediff::testing {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double a = 0.0, double b = 1.0) { return std::uniform_real_distribution<double>(a, b)(engine_); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    Complex complex_normal() { return {normal(), normal()}; }

    Vector unit_vector(Eigen::Index dim) {
        Vector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) v(i) = complex_normal();
        return v / v.norm();
    }

    /// Gram family on all labels n + k <= S with vectors in C^dim.
    GramFamily gram_family(int S, Eigen::Index dim) {
        GramFamily f(dim);
        for (int s = 0; s <= S; ++s)
            for (int n = 0; n <= s; ++n) f.set(n, s - n, unit_vector(dim));
        return f;
    }

    DiffKernel gram_kernel(int S, Eigen::Index dim = -1) {
        return diff_from_gram(gram_family(S, dim > 0 ? dim : S + 2), S);
    }

    std::vector<Vector> unit_vectors(int count, Eigen::Index dim) {
        std::vector<Vector> out;
        for (int i = 0; i < count; ++i) out.push_back(unit_vector(dim));
        return out;
    }

    PhaseKernel phase_kernel(int dim, Eigen::Index space = -1) {
        return kernel_from_vectors(unit_vectors(dim, space > 0 ? space : dim + 1));
    }

    /// One to three disjoint-ish intervals, possibly wrapping.
    IntervalSet interval_set() {
        std::vector<std::pair<double, double>> pieces;
        const int count = integer(1, 3);
        for (int i = 0; i < count; ++i) {
            const double a = uniform(-kTwoPi, 2 * kTwoPi);
            pieces.emplace_back(a, a + uniform(0.01, 2.0));
        }
        return IntervalSet(pieces);
    }

    /// Mixed state of rank <= 3 on a cutoff.
    TwoModeState mixed_state(const Cutoff& cutoff) {
        const auto dim = static_cast<Eigen::Index>(cutoff.dimension());
        Matrix rho = Matrix::Zero(dim, dim);
        const int rank = integer(1, 3);
        for (int r = 0; r < rank; ++r) {
            const Vector v = unit_vector(dim);
            rho += uniform(0.1, 1.0) * v * v.adjoint();
        }
        rho /= rho.trace().real();
        return TwoModeState(cutoff, 0.5 * (rho + rho.adjoint()));
    }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

/// (1/2pi) int_a^b e^{iq t} dt by composite Simpson with `panels` panels.
inline Complex weight_by_quadrature(int q, double a, double b, int panels = 2000) {
    const double h = (b - a) / panels;
    Complex sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        sum += w * std::exp(Complex(0.0, q * (a + i * h)));
    }
    return sum * h / 3.0 / kTwoPi;
}

inline Complex weight_by_quadrature(int q, const IntervalSet& x, int panels = 2000) {
    Complex w = 0.0;
    for (const auto& [a, b] : x.intervals()) w += weight_by_quadrature(q, a, b, panels);
    return w;
}

/// (1/2pi) int_X e^{iq t} dt from the antiderivative, piece by piece.
inline Complex exact_weight(int q, const IntervalSet& x) {
    Complex w = 0.0;
    for (const auto& [a, b] : x.intervals())
        w += q == 0 ? Complex((b - a) / kTwoPi)
                    : (std::exp(Complex(0.0, q * b)) - std::exp(Complex(0.0, q * a))) / Complex(0.0, kTwoPi * q);
    return w;
}

/// E(X) on Total(S) assembled entrywise from the four-index coefficient
/// c_{n,m,k,l}, sweeping every label pair without using sector structure.
/// `weight(q)` supplies the Fourier weight of order q.
inline Matrix dense_diff_operator(const DiffKernel& kernel, const std::function<Complex(int)>& weight) {
    const Cutoff cutoff = Cutoff::total(kernel.cutoff());
    const auto labels = cutoff.labels();
    const auto dim = static_cast<Eigen::Index>(labels.size());
    Matrix e = Matrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < dim; ++a) {
        for (Eigen::Index b = 0; b < dim; ++b) {
            const Label la = labels[static_cast<std::size_t>(a)];
            const Label lb = labels[static_cast<std::size_t>(b)];
            if (la.n - lb.n != lb.k - la.k) continue;
            e(a, b) = kernel.coefficient(la.n, lb.n, la.k, lb.k) * weight(la.n - lb.n);
        }
    }
    return e;
}

inline Matrix dense_diff_operator(const DiffKernel& kernel, const IntervalSet& x) {
    return dense_diff_operator(kernel, [&](int q) { return exact_weight(q, x); });
}

/// Trapezoid mean of f over `nodes` equispaced points on [0, 2pi).
inline double circle_mean(const std::function<double(double)>& f, int nodes) {
    double sum = 0.0;
    for (int j = 0; j < nodes; ++j) sum += f(kTwoPi * j / nodes);
    return sum / nodes;
}

/// int_0^inf e^{-r^2} r^p 2r dr by composite Simpson on [0, R].
inline double radial_moment(int p, double R = 14.0, int panels = 40000) {
    const double h = R / panels;
    double sum = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double r = i * h;
        const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        const double f = r == 0.0 ? 0.0 : 2.0 * std::exp(-r * r + (p + 1) * std::log(r));
        sum += w * f;
    }
    return sum * h / 3.0;
}

}  // namespace phasediff::testing

#endif  // PHASEDIFF_TESTS_SUPPORT_HPP

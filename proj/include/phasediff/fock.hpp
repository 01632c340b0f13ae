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

// Truncated two-mode Fock space: cutoffs, basis labels, vectors, states and
// the diagonal number-operator unitaries.

#ifndef PHASEDIFF_FOCK_HPP
#define PHASEDIFF_FOCK_HPP

#include <compare>
#include <optional>
#include <vector>

#include "phasediff/common.hpp"

namespace phasediff {

/// Basis label |n,k> = |n> (first mode) tensor |k> (second mode).
struct Label {
    int n = 0;
    int k = 0;
    int total() const { return n + k; }
    int difference() const { return n - k; }
    auto operator<=>(const Label&) const = default;
};

/// Finite truncation of the two-mode number basis.
///
/// PerMode(N) keeps n,k <= N and orders labels n-major. Total(S) keeps
/// n + k <= S and orders labels by sector s ascending, then by first-mode
/// occupation n ascending, so label (n, s-n) has index s(s+1)/2 + n.
class Cutoff {
public:
    enum class Scheme { PerMode, Total };

    static Cutoff per_mode(int max_occupation);
    static Cutoff total(int max_total);

    Scheme scheme() const { return scheme_; }
    int bound() const { return bound_; }
    bool is_total() const { return scheme_ == Scheme::Total; }
    std::size_t dimension() const;

    bool contains(int n, int k) const;
    bool contains(Label l) const { return contains(l.n, l.k); }
    std::optional<std::size_t> index_of(int n, int k) const;
    std::size_t index_of(Label l) const;  // throws MissingLabel
    Label label_at(std::size_t index) const;
    std::vector<Label> labels() const;

    /// Largest total occupation n + k present.
    int max_total() const { return is_total() ? bound_ : 2 * bound_; }
    /// Largest single-mode occupation present.
    int max_single() const { return bound_; }

    bool operator==(const Cutoff&) const = default;

private:
    Cutoff(Scheme scheme, int bound);
    Scheme scheme_;
    int bound_;
};

/// Index of label (n, s-n) inside a Total cutoff.
inline std::size_t total_index(int n, int k) {
    const std::size_t s = static_cast<std::size_t>(n + k);
    return s * (s + 1) / 2 + static_cast<std::size_t>(n);
}

/// Single-mode number-basis vector with the probability mass lost to truncation.
struct FockVector {
    Vector coefficients;
    double tail_mass = 0.0;

    int cutoff() const { return static_cast<int>(coefficients.size()) - 1; }
    double norm_squared() const { return coefficients.squaredNorm(); }
    /// Copy rescaled to unit norm with tail_mass = 0.
    FockVector normalized() const;
};

/// Coherent state |z> truncated at occupation N (coefficients in log domain).
FockVector coherent_vector(Complex z, int N);

/// Number state |n> padded to occupation N.
FockVector number_vector(int n, int N);

/// Pure two-mode vector on a cutoff basis.
struct TwoModeVector {
    Cutoff cutoff;
    Vector coefficients;

    /// |a> tensor |b>, keeping only the labels inside `cutoff`.
    static TwoModeVector product(const Vector& a, const Vector& b, const Cutoff& cutoff);
    static TwoModeVector number(int n, int k, const Cutoff& cutoff);

    Complex at(int n, int k) const;
    double norm_squared() const { return coefficients.squaredNorm(); }
};

/// Positive operator with trace in (0, 1] on a cutoff basis.
class TwoModeState {
public:
    /// Validates Hermiticity (1e-12), positivity (min eigenvalue >= -1e-12)
    /// and trace in (0, 1].
    TwoModeState(Cutoff cutoff, Matrix matrix);

    static TwoModeState from_vector(const TwoModeVector& v);
    static TwoModeState number(int n, int k, const Cutoff& cutoff);

    const Cutoff& cutoff() const { return cutoff_; }
    const Matrix& matrix() const { return matrix_; }
    double trace() const { return matrix_.trace().real(); }
    /// <a|T|b> for labels a, b; zero when either is outside the cutoff.
    Complex element(Label a, Label b) const;

private:
    Cutoff cutoff_;
    Matrix matrix_;
};

struct TwoModeOperator {
    Cutoff cutoff;
    Matrix matrix;
    bool block_diagonal_in_sum = false;

    static TwoModeOperator identity(const Cutoff& cutoff);
    Complex element(Label a, Label b) const;
};

/// Theta(alpha, beta) = exp(i alpha N x I + i beta I x N).
TwoModeOperator theta_unitary(double alpha, double beta, const Cutoff& cutoff);

/// V_Sigma(alpha) = exp(i alpha (N x I + I x N)).
TwoModeOperator v_sigma(double alpha, const Cutoff& cutoff);

/// V_Delta(beta) = exp(i beta (N x I - I x N)).
TwoModeOperator v_delta(double beta, const Cutoff& cutoff);

/// Number-difference operator N x I - I x N.
TwoModeOperator number_difference(const Cutoff& cutoff);

/// Spectral projection of N x I + I x N onto eigenvalue s.
TwoModeOperator number_sum_projection(int s, const Cutoff& cutoff);

/// Spectral projection of N x I - I x N onto eigenvalue k.
TwoModeOperator number_diff_projection(int k, const Cutoff& cutoff);

/// Ascending eigenvalues of a Hermitian matrix; throws NonHermitianInput when
/// the Hermiticity residual exceeds `tol`.
std::vector<double> hermitian_eigenvalues(const Matrix& m, double tol = 1e-10);
std::vector<double> hermitian_eigenvalues(const TwoModeOperator& op, double tol = 1e-10);

/// Checks that `m` is a valid single-mode density matrix (Hermitian, positive,
/// trace in (0, 1]); throws InvalidArgument otherwise.
void check_single_mode_state(const Matrix& m);

}  // namespace phasediff

#endif  // PHASEDIFF_FOCK_HPP

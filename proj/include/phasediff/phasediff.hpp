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

// Covariant phase-difference observables on the two-mode number basis.
//
// Every such observable has matrix elements
//
//   <n,k|E(X)|m,l> = [n+k == m+l] c_{n,m,k,l} w_{n-m}(X),
//
// so the coefficient tensor lives entirely on the total-number sectors
// s = n + k. A DiffKernel stores it as one (s+1)x(s+1) block per sector with
// C^s_{n,m} = c_{n,m,s-n,s-m}; cross-sector coefficients have no storage.

#ifndef PHASEDIFF_PHASEDIFF_HPP
#define PHASEDIFF_PHASEDIFF_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phasediff/common.hpp"
#include "phasediff/fock.hpp"
#include "phasediff/phase1.hpp"

namespace phasediff {

class DiffKernel {
public:
    /// Blocks C^0..C^S; block s must be (s+1)x(s+1). Only shapes are checked
    /// here, the positivity invariants are reported by validate().
    explicit DiffKernel(std::vector<Matrix> blocks);

    int cutoff() const { return static_cast<int>(blocks_.size()) - 1; }
    Cutoff space() const { return Cutoff::total(cutoff()); }
    const std::vector<Matrix>& blocks() const { return blocks_; }
    const Matrix& block(int s) const { return blocks_.at(static_cast<std::size_t>(s)); }

    /// c_{n,m,k,l}; zero whenever n - m != l - k or the sector exceeds S.
    Complex coefficient(int n, int m, int k, int l) const;

private:
    std::vector<Matrix> blocks_;
};

/// The canonical phase-difference kernel: every block all ones.
DiffKernel canonical_diff(int S);

/// Unit vectors xi_{n,k} indexed by two-mode labels, all in one space C^dim.
class GramFamily {
public:
    explicit GramFamily(Eigen::Index dim) : dim_(dim) {}

    Eigen::Index dim() const { return dim_; }
    void set(int n, int k, Vector v);
    const Vector& at(int n, int k) const;  // throws MissingLabel
    bool contains(int n, int k) const { return vectors_.count(Label{n, k}) != 0; }
    const std::map<Label, Vector>& vectors() const { return vectors_; }

    /// Every label with n + k <= S mapped to the same vector.
    static GramFamily uniform(int S, const Vector& v);
    /// phi1_n tensor phi2_k for all labels with n + k <= S.
    static GramFamily product(const std::vector<Vector>& phi1, const std::vector<Vector>& phi2, int S);

private:
    Eigen::Index dim_;
    std::map<Label, Vector> vectors_;
};

/// xi_{n,k} -> xi_{n,k} tensor |n+k>: kills cross-sector inner products while
/// leaving every sector block unchanged.
GramFamily lift_by_sector(const GramFamily& family, int S);

/// The family of a kernel that is not a difference of two phase observables:
/// xi_{0,2} = e^{i t1} psi, xi_{2,2} = e^{i t2} psi, xi_{0,4} = e^{i t3} psi,
/// xi_{2,4} = e^{i t4} psi, every other xi_{n,k} = psi (psi = 1 in C^1).
GramFamily phased_gram_family(const std::array<double, 4>& thetas, int S = 6);

/// C^s_{n,m} = c1_{n,m} c2_{s-n,s-m}. Throws DimensionTooSmall.
DiffKernel diff_from_pair(const PhaseKernel& c1, const PhaseKernel& c2, int S);

/// C^s_{n,m} = <xi_{n,s-n}|xi_{m,s-m}>. Throws MissingLabel, NonUnitVector.
DiffKernel diff_from_gram(const GramFamily& family, int S);

/// Pushforward route: builds the full Theta-covariant tensor
/// c~_{n,m,k,l} = <psi_{n,k}|psi_{m,l}> and keeps the entries with
/// n - m = l - k. Agrees entrywise with diff_from_gram.
DiffKernel diff_from_theta_covariant(const GramFamily& family, int S);

/// Operator E(X) on Total(S), block diagonal in the number sum.
TwoModeOperator eval_diff(const DiffKernel& kernel, const IntervalSet& x);

struct CovarianceReport {
    /// || Theta(a,b) E(X) Theta(a,b)^* - E(X + (a - b)) ||_max
    double definition = 0.0;
    /// || V_Sigma(a) E(X) V_Sigma(a)^* - E(X) ||_max
    double sum_invariance = 0.0;
    /// || V_Delta(b) E(X) V_Delta(b)^* - E(X + 2b) ||_max
    double difference_factor2 = 0.0;
    /// Same with shift b instead of 2b; generically nonzero.
    double difference_factor1 = 0.0;
};

double covariance_residual(const DiffKernel& kernel, double alpha, double beta, const IntervalSet& x);
CovarianceReport covariance_report(const DiffKernel& kernel, double alpha, double beta,
                                   const IntervalSet& x);

struct BlockReport {
    int sector = 0;
    double min_eigenvalue = 0.0;
    double max_diagonal_deviation = 0.0;
    int worst_diagonal_index = -1;
    double hermiticity_residual = 0.0;
    bool passed = true;
};

struct ValidationReport {
    std::vector<BlockReport> blocks;
    bool passed = true;
    double tolerance = kPsdTol;
    /// First failing sector, -1 when all pass.
    int first_failure = -1;
};

ValidationReport validate(const DiffKernel& kernel, double tol = kPsdTol);

/// Per-sector factorization C^s = G^s* G^s. Vector xi_{n,s-n} is column n of
/// G^s placed in the coordinates reserved for sector s, so vectors of
/// different sectors are orthogonal. Eigenvalues in [-1e-10, 0) are clamped;
/// more negative ones, or a failing validation, throw ValidationFailed.
GramFamily gram_from_kernel(const DiffKernel& kernel);

struct Factorized {
    PhaseKernel c1;
    PhaseKernel c2;
    double residual = 0.0;
    /// "balanced", "lower-endpoint", "upper-endpoint" or "search".
    std::string gauge;
};

struct NotFactorizable {
    int order = 0;  // difference order q
    int n = 0;      // row of M^q
    int k = 0;      // column of M^q
    /// Tensor index (n+q, n, k, k+q) of the offending coefficient.
    std::array<int, 4> indices{};
    Complex product_diagonal;      // M^q_{n,k} M^q_{0,0}
    Complex product_off_diagonal;  // M^q_{n,0} M^q_{0,k}
    double mismatch = 0.0;
};

struct Indeterminate {
    std::string reason;
};

using FactorizationResult = std::variant<Factorized, NotFactorizable, Indeterminate>;

/// Decides whether the kernel is a difference of two phase observables.
///
/// Stage 1 is the necessary rank-one test: for each order q the matrix
/// M^q_{n,k} = c_{n+q,n,k,k+q} must satisfy M_{n,k} M_{0,0} = M_{n,0} M_{0,k}.
/// Stage 2 extracts c1_{n+q,n} = M_{n,0} t_q and c2_{k,k+q} = M_{0,k}/(M_{0,0} t_q)
/// for a gauge t_q that makes both candidates valid phase kernels. The
/// closed-form gauges are tried first, then a penalty-gradient search; an
/// unsuccessful search returns Indeterminate. Throws ValidationFailed when the
/// kernel itself does not validate.
FactorizationResult factorize(const DiffKernel& kernel, double tol = 1e-8);

/// Fourier coefficients A_q, q = -S..S (index q + S), of the phase-difference
/// density of a state: g(theta) = sum_q A_q e^{iq theta}, tr(T E(X)) = sum_q A_q w_q(X).
/// Throws CutoffMismatch when the state has labels beyond the kernel's sectors.
std::vector<Complex> diff_fourier_coefficients(const DiffKernel& kernel, const TwoModeState& state);
std::vector<Complex> diff_fourier_coefficients(const DiffKernel& kernel, const TwoModeVector& psi);

/// tr(T E(X)).
double prob(const DiffKernel& kernel, const TwoModeState& state, const IntervalSet& x);
double prob(const DiffKernel& kernel, const TwoModeVector& psi, const IntervalSet& x);

/// E_1(X + alpha) tensor I on PerMode(N), N = c1.cutoff(): the difference of
/// a phase observable and the fixed-phase observable F_alpha.
TwoModeOperator fixed_phase_diff(const PhaseKernel& c1, double alpha, const IntervalSet& x);

}  // namespace phasediff

#endif  // PHASEDIFF_PHASEDIFF_HPP

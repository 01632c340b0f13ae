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

// JSON readers for kernels, states and interval sets, and the CSV/JSON
// writers used by the command runner. Complex numbers are [re, im] pairs; a
// bare number is read as a real value.

#ifndef PHASEDIFF_IO_HPP
#define PHASEDIFF_IO_HPP

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "phasediff/analysis.hpp"
#include "phasediff/fock.hpp"
#include "phasediff/phase1.hpp"
#include "phasediff/phasediff.hpp"

namespace phasediff::io {

using Json = nlohmann::json;

Complex parse_complex(const Json& j);
Vector parse_vector(const Json& j);
Matrix parse_matrix(const Json& j);
Json to_json(Complex z);
Json to_json(const Matrix& m);

/// [[a, b], ...] in radians, or the string "full".
IntervalSet parse_interval_set(const Json& j);

/// {"type": "canonical"|"coherent_vacuum"|"identity"|"gram", "vectors": [...]}.
PhaseKernelSpec parse_phase_kernel_spec(const Json& j);
/// Same with "dim" required (or supplied by the caller).
PhaseKernel parse_phase_kernel(const Json& j, int default_dim = -1);

/// {"S": int, "blocks": [...]} or {"construct": "canonical"|"pair"|"gram"|"phased", ...}.
DiffKernel parse_diff_kernel(const Json& j);

/// {"per_mode": N} or {"total": S}.
Cutoff parse_cutoff(const Json& j);

/// Pure or mixed two-mode state; `fallback` is used when no cutoff is given.
/// Types: number {n,k}, coherent {z1,z2}, product {phi,psi}, vector
/// {coefficients}, matrix {matrix}. Coherent and product vectors are cut to
/// the cutoff and renormalized.
TwoModeState parse_state(const Json& j, const Cutoff& fallback);

FourierFunction parse_fourier_function(const Json& j);

/// Rounds to 15 significant digits and maps -0 to 0; used for every number
/// written out so files are byte-stable.
double canonical_number(double x);
std::string format_number(double x);

/// Column table written as CSV: header row, LF line endings, "%.15g".
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add(std::vector<double> row);
    std::string str() const;
    void write(const std::filesystem::path& path) const;  // throws IoError
};

/// Pretty-printed JSON with canonicalized numbers and a trailing newline.
void write_json(const Json& j, const std::filesystem::path& path);
Json canonicalize(const Json& j);

}  // namespace phasediff::io

#endif  // PHASEDIFF_IO_HPP

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

#include "phasediff/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

namespace phasediff::io {

namespace {

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) config_error(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

int require_int(const Json& j, const char* key) {
    const Json& v = require(j, key);
    if (!v.is_number_integer()) config_error(std::string("\"") + key + "\" must be an integer");
    return v.get<int>();
}

}  // namespace

Complex parse_complex(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    config_error("expected a number or [re, im], got " + j.dump());
}

Vector parse_vector(const Json& j) {
    if (!j.is_array()) config_error("expected an array of complex numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(j[i]);
    return v;
}

Matrix parse_matrix(const Json& j) {
    if (!j.is_array()) config_error("expected a matrix as an array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    Matrix m(rows, rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const Json& row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != rows) config_error("matrix must be square");
        for (Eigen::Index c = 0; c < rows; ++c) m(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

Json to_json(Complex z) { return Json::array({canonical_number(z.real()), canonical_number(z.imag())}); }

Json to_json(const Matrix& m) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        out.push_back(std::move(row));
    }
    return out;
}

IntervalSet parse_interval_set(const Json& j) {
    if (j.is_string() && j.get<std::string>() == "full") return IntervalSet::full_circle();
    if (!j.is_array()) config_error("interval set must be [[a, b], ...] or \"full\"");
    std::vector<std::pair<double, double>> pieces;
    for (const auto& p : j) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            config_error("interval must be [a, b], got " + p.dump());
        pieces.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    try {
        return IntervalSet(pieces);
    } catch (const Error& e) {
        config_error(e.what());
    }
}

PhaseKernelSpec parse_phase_kernel_spec(const Json& j) {
    const std::string type = require(j, "type").get<std::string>();
    if (type == "canonical") return PhaseKernelSpec::canonical();
    if (type == "coherent_vacuum") return PhaseKernelSpec::coherent_vacuum();
    if (type == "identity") return PhaseKernelSpec::identity();
    if (type == "gram") {
        std::vector<Vector> vectors;
        for (const auto& v : require(j, "vectors")) vectors.push_back(parse_vector(v));
        return PhaseKernelSpec::gram(std::move(vectors));
    }
    config_error("unknown phase kernel type \"" + type + "\"");
}

PhaseKernel parse_phase_kernel(const Json& j, int default_dim) {
    const auto spec = parse_phase_kernel_spec(j);
    int dim = default_dim;
    if (j.contains("dim")) dim = require_int(j, "dim");
    if (dim < 1) config_error("phase kernel needs \"dim\" >= 1");
    return spec.materialize(dim);
}

DiffKernel parse_diff_kernel(const Json& j) {
    if (j.contains("blocks")) {
        std::vector<Matrix> blocks;
        for (const auto& b : j.at("blocks")) blocks.push_back(parse_matrix(b));
        if (j.contains("S") && require_int(j, "S") + 1 != static_cast<int>(blocks.size()))
            config_error("\"S\" disagrees with the number of blocks");
        try {
            return DiffKernel(std::move(blocks));
        } catch (const Error& e) {
            config_error(e.what());
        }
    }
    const std::string construct = require(j, "construct").get<std::string>();
    if (construct == "phased") {
        const Json& t = require(j, "thetas");
        if (!t.is_array() || t.size() != 4) config_error("\"thetas\" must hold four angles");
        std::array<double, 4> thetas{};
        for (std::size_t i = 0; i < 4; ++i) thetas[i] = t[i].get<double>();
        const int S = j.contains("S") ? require_int(j, "S") : 6;
        return diff_from_gram(phased_gram_family(thetas, S), S);
    }
    const int S = require_int(j, "S");
    if (S < 0) config_error("\"S\" must be nonnegative");
    if (construct == "canonical") return canonical_diff(S);
    if (construct == "pair")
        return diff_from_pair(parse_phase_kernel(require(j, "c1"), S + 1), parse_phase_kernel(require(j, "c2"), S + 1), S);
    if (construct == "gram") {
        const Json& vs = require(j, "vectors");
        if (!vs.is_array() || vs.empty()) config_error("\"vectors\" must be a nonempty array");
        const auto first = parse_vector(require(vs[0], "v"));
        GramFamily family(first.size());
        for (const auto& e : vs) family.set(require_int(e, "n"), require_int(e, "k"), parse_vector(require(e, "v")));
        return diff_from_gram(family, S);
    }
    config_error("unknown kernel construction \"" + construct + "\"");
}

Cutoff parse_cutoff(const Json& j) {
    if (j.contains("per_mode")) return Cutoff::per_mode(require_int(j, "per_mode"));
    if (j.contains("total")) return Cutoff::total(require_int(j, "total"));
    config_error("cutoff must be {\"per_mode\": N} or {\"total\": S}");
}

namespace {

TwoModeState pure(TwoModeVector v) {
    const double norm = std::sqrt(v.norm_squared());
    if (norm == 0.0) config_error("state vector vanishes on the cutoff");
    v.coefficients /= norm;
    return TwoModeState::from_vector(v);
}

}  // namespace

TwoModeState parse_state(const Json& j, const Cutoff& fallback) {
    const Cutoff cutoff = j.contains("cutoff") ? parse_cutoff(j.at("cutoff")) : fallback;
    const std::string type = require(j, "type").get<std::string>();
    if (type == "number") return TwoModeState::number(require_int(j, "n"), require_int(j, "k"), cutoff);
    if (type == "coherent") {
        const int N = cutoff.max_single();
        return pure(TwoModeVector::product(coherent_vector(parse_complex(require(j, "z1")), N).coefficients,
                                           coherent_vector(parse_complex(require(j, "z2")), N).coefficients, cutoff));
    }
    if (type == "product")
        return pure(TwoModeVector::product(parse_vector(require(j, "phi")), parse_vector(require(j, "psi")), cutoff));
    if (type == "vector") {
        Vector c = parse_vector(require(j, "coefficients"));
        if (c.size() != static_cast<Eigen::Index>(cutoff.dimension()))
            config_error("state vector length does not match the cutoff dimension");
        return pure(TwoModeVector{cutoff, std::move(c)});
    }
    if (type == "matrix") return TwoModeState(cutoff, parse_matrix(require(j, "matrix")));
    config_error("unknown state type \"" + type + "\"");
}

FourierFunction parse_fourier_function(const Json& j) { return FourierFunction{parse_vector(require(j, "coeffs"))}; }

double canonical_number(double x) {
    if (!std::isfinite(x)) return x;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    const double r = std::strtod(buf, nullptr);
    return r == 0.0 ? 0.0 : r;
}

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", canonical_number(x));
    return buf;
}

void CsvTable::add(std::vector<double> row) {
    if (row.size() != columns.size()) throw Error(ErrorCode::InvalidArgument, "row width differs from header");
    rows.push_back(std::move(row));
}

std::string CsvTable::str() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_number(row[i]);
        out += '\n';
    }
    return out;
}

namespace {

void write_text(const std::string& text, const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace

void CsvTable::write(const std::filesystem::path& path) const { write_text(str(), path); }

Json canonicalize(const Json& j) {
    if (j.is_number_float()) return canonical_number(j.get<double>());
    if (j.is_array() || j.is_object()) {
        Json out = j;
        for (auto& v : out) v = canonicalize(v);
        return out;
    }
    return j;
}

void write_json(const Json& j, const std::filesystem::path& path) { write_text(canonicalize(j).dump(2) + "\n", path); }

}  // namespace phasediff::io

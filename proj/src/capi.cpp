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

#include "phasediff/phasediff.h"

#include <string>

#include "phasediff/analysis.hpp"
#include "phasediff/companions.hpp"
#include "phasediff/io.hpp"
#include "phasediff/run.hpp"

struct pd_kernel {
    phasediff::DiffKernel value;
};
struct pd_state {
    phasediff::TwoModeState value;
};
struct pd_interval_set {
    phasediff::IntervalSet value;
};
struct pd_operator {
    phasediff::TwoModeOperator value;
};

namespace {

thread_local std::string last_error;

pd_status status_for(phasediff::ErrorCode code) {
    using phasediff::ErrorCode;
    switch (code) {
        case ErrorCode::InvalidArgument: return PD_INVALID_ARGUMENT;
        case ErrorCode::NonHermitianInput: return PD_NON_HERMITIAN_INPUT;
        case ErrorCode::NonUnitVector: return PD_NON_UNIT_VECTOR;
        case ErrorCode::NonUnitNorm: return PD_NON_UNIT_NORM;
        case ErrorCode::DimensionTooSmall: return PD_DIMENSION_TOO_SMALL;
        case ErrorCode::MissingLabel: return PD_MISSING_LABEL;
        case ErrorCode::ValidationFailed: return PD_VALIDATION_FAILED;
        case ErrorCode::CutoffMismatch: return PD_CUTOFF_MISMATCH;
        case ErrorCode::MalformedMoment: return PD_MALFORMED_MOMENT;
        case ErrorCode::TailTooLarge: return PD_TAIL_TOO_LARGE;
        case ErrorCode::CutoffOverBudget: return PD_CUTOFF_OVER_BUDGET;
        case ErrorCode::ConfigError: return PD_CONFIG_ERROR;
        case ErrorCode::IoError: return PD_IO_ERROR;
    }
    return PD_INTERNAL_ERROR;
}

pd_status fail(pd_status s, const std::string& what) {
    last_error = what;
    return s;
}

template <class F>
pd_status guarded(F&& body) {
    try {
        last_error.clear();
        body();
        return PD_OK;
    } catch (const phasediff::Error& e) {
        return fail(status_for(e.code()), e.what());
    } catch (const phasediff::io::Json::exception& e) {
        return fail(PD_CONFIG_ERROR, e.what());
    } catch (const std::exception& e) {
        return fail(PD_INTERNAL_ERROR, e.what());
    } catch (...) {
        return fail(PD_INTERNAL_ERROR, "unknown error");
    }
}

#define PD_REQUIRE(cond) \
    if (!(cond)) return fail(PD_INVALID_ARGUMENT, "null or invalid argument: " #cond)

}  // namespace

extern "C" {

const char* pd_last_error(void) { return last_error.c_str(); }

const char* pd_status_string(pd_status status) {
    switch (status) {
        case PD_OK: return "ok";
        case PD_INVALID_ARGUMENT: return "invalid argument";
        case PD_NON_HERMITIAN_INPUT: return "non-Hermitian input";
        case PD_NON_UNIT_VECTOR: return "non-unit vector";
        case PD_NON_UNIT_NORM: return "non-unit norm";
        case PD_DIMENSION_TOO_SMALL: return "dimension too small";
        case PD_MISSING_LABEL: return "missing label";
        case PD_VALIDATION_FAILED: return "validation failed";
        case PD_CUTOFF_MISMATCH: return "cutoff mismatch";
        case PD_MALFORMED_MOMENT: return "malformed moment";
        case PD_TAIL_TOO_LARGE: return "tail too large";
        case PD_CUTOFF_OVER_BUDGET: return "cutoff over budget";
        case PD_CONFIG_ERROR: return "config error";
        case PD_IO_ERROR: return "io error";
        case PD_INTERNAL_ERROR: return "internal error";
    }
    return "unknown status";
}

const char* pd_version(void) { return "1.0.0"; }

pd_status pd_set_threads(int threads) {
    PD_REQUIRE(threads >= 1);
    return guarded([&] { phasediff::set_thread_count(threads); });
}

pd_status pd_kernel_from_json(const char* json, pd_kernel** out) {
    PD_REQUIRE(json && out);
    return guarded([&] {
        *out = new pd_kernel{phasediff::io::parse_diff_kernel(phasediff::io::Json::parse(json))};
    });
}

pd_status pd_kernel_canonical(int S, pd_kernel** out) {
    PD_REQUIRE(S >= 0 && out);
    return guarded([&] { *out = new pd_kernel{phasediff::canonical_diff(S)}; });
}

void pd_kernel_free(pd_kernel* kernel) { delete kernel; }

pd_status pd_kernel_cutoff(const pd_kernel* kernel, int* S) {
    PD_REQUIRE(kernel && S);
    *S = kernel->value.cutoff();
    return PD_OK;
}

pd_status pd_kernel_coefficient(const pd_kernel* kernel, int n, int m, int k, int l, double* re, double* im) {
    PD_REQUIRE(kernel && re && im);
    return guarded([&] {
        const auto c = kernel->value.coefficient(n, m, k, l);
        *re = c.real();
        *im = c.imag();
    });
}

pd_status pd_kernel_validate(const pd_kernel* kernel, double tol, int* passed, double* min_eigenvalue) {
    PD_REQUIRE(kernel && passed);
    return guarded([&] {
        const auto r = phasediff::validate(kernel->value, tol);
        *passed = r.passed ? 1 : 0;
        if (min_eigenvalue) {
            double m = 0.0;
            for (std::size_t i = 0; i < r.blocks.size(); ++i)
                m = i == 0 ? r.blocks[i].min_eigenvalue : std::min(m, r.blocks[i].min_eigenvalue);
            *min_eigenvalue = m;
        }
    });
}

pd_status pd_kernel_factorize(const pd_kernel* kernel, double tol, pd_factorization* kind, double* value,
                              int indices[4]) {
    PD_REQUIRE(kernel && kind);
    return guarded([&] {
        const auto result = phasediff::factorize(kernel->value, tol);
        double v = 0.0;
        int idx[4] = {0, 0, 0, 0};
        if (const auto* f = std::get_if<phasediff::Factorized>(&result)) {
            *kind = PD_FACTORIZED;
            v = f->residual;
        } else if (const auto* w = std::get_if<phasediff::NotFactorizable>(&result)) {
            *kind = PD_NOT_FACTORIZABLE;
            v = w->mismatch;
            for (int i = 0; i < 4; ++i) idx[i] = w->indices[static_cast<std::size_t>(i)];
        } else {
            *kind = PD_INDETERMINATE;
        }
        if (value) *value = v;
        if (indices)
            for (int i = 0; i < 4; ++i) indices[i] = idx[i];
    });
}

pd_status pd_interval_set_create(const double* bounds, size_t count, pd_interval_set** out) {
    PD_REQUIRE((bounds || count == 0) && out);
    return guarded([&] {
        std::vector<std::pair<double, double>> pieces;
        for (size_t i = 0; i < count; ++i) pieces.emplace_back(bounds[2 * i], bounds[2 * i + 1]);
        *out = new pd_interval_set{phasediff::IntervalSet(pieces)};
    });
}

void pd_interval_set_free(pd_interval_set* set) { delete set; }

pd_status pd_interval_set_length(const pd_interval_set* set, double* length) {
    PD_REQUIRE(set && length);
    *length = set->value.length();
    return PD_OK;
}

pd_status pd_state_from_json(const char* json, int S_default, pd_state** out) {
    PD_REQUIRE(json && out && S_default >= 0);
    return guarded([&] {
        *out = new pd_state{
            phasediff::io::parse_state(phasediff::io::Json::parse(json), phasediff::Cutoff::total(S_default))};
    });
}

pd_status pd_state_number(int n, int k, int S, pd_state** out) {
    PD_REQUIRE(out && S >= 0);
    return guarded([&] {
        *out = new pd_state{phasediff::TwoModeState::number(n, k, phasediff::Cutoff::total(S))};
    });
}

void pd_state_free(pd_state* state) { delete state; }

pd_status pd_prob(const pd_kernel* kernel, const pd_state* state, const pd_interval_set* set, double* out) {
    PD_REQUIRE(kernel && state && set && out);
    return guarded([&] { *out = phasediff::prob(kernel->value, state->value, set->value); });
}

pd_status pd_density(const pd_kernel* kernel, const pd_state* state, double theta, double* out) {
    PD_REQUIRE(kernel && state && out);
    return guarded([&] { *out = phasediff::density_diff(kernel->value, state->value, theta); });
}

pd_status pd_eval_diff(const pd_kernel* kernel, const pd_interval_set* set, pd_operator** out) {
    PD_REQUIRE(kernel && set && out);
    return guarded([&] { *out = new pd_operator{phasediff::eval_diff(kernel->value, set->value)}; });
}

pd_status pd_first_moment(const pd_kernel* kernel, pd_operator** out) {
    PD_REQUIRE(kernel && out);
    return guarded([&] { *out = new pd_operator{phasediff::first_moment(kernel->value)}; });
}

pd_status pd_cyclic_moment(const pd_kernel* kernel, int r, pd_operator** out) {
    PD_REQUIRE(kernel && out);
    return guarded([&] { *out = new pd_operator{phasediff::cyclic_moment(kernel->value, r)}; });
}

void pd_operator_free(pd_operator* op) { delete op; }

pd_status pd_operator_dimension(const pd_operator* op, size_t* dim) {
    PD_REQUIRE(op && dim);
    *dim = static_cast<size_t>(op->value.matrix.rows());
    return PD_OK;
}

pd_status pd_operator_entry(const pd_operator* op, size_t row, size_t col, double* re, double* im) {
    PD_REQUIRE(op && re && im);
    const auto n = static_cast<size_t>(op->value.matrix.rows());
    PD_REQUIRE(row < n && col < n);
    const auto v = op->value.matrix(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
    *re = v.real();
    *im = v.imag();
    return PD_OK;
}

pd_status pd_operator_min_eigenvalue(const pd_operator* op, double* out) {
    PD_REQUIRE(op && out);
    return guarded([&] {
        const auto ev = phasediff::hermitian_eigenvalues(op->value);
        *out = ev.empty() ? 0.0 : ev.front();
    });
}

pd_status pd_phi12_eigenphases(int sector, double* phases, size_t capacity) {
    PD_REQUIRE(sector >= 0 && phases && capacity >= static_cast<size_t>(sector) + 1);
    return guarded([&] {
        const auto p = phasediff::phi12_block_eigenphases(sector);
        for (std::size_t i = 0; i < p.size(); ++i) phases[i] = p[i];
    });
}

pd_status pd_run(const char* config_json, const char* out_dir, const pd_run_options* options, int* exit_code) {
    PD_REQUIRE(config_json && out_dir && exit_code);
    return guarded([&] {
        phasediff::RunOptions opts;
        if (options) {
            if (options->has_tolerance) opts.tolerance = options->tolerance;
            opts.threads = options->threads > 0 ? options->threads : 1;
            if (options->has_seed) opts.seed = options->seed;
        }
        const auto result = phasediff::run(std::string(config_json), out_dir, opts);
        *exit_code = result.exit_code;
        last_error = result.message;
    });
}

}  // extern "C"

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

#include "phasediff/run.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include <Eigen/Eigenvalues>

#include "phasediff/analysis.hpp"
#include "phasediff/companions.hpp"
#include "phasediff/limits.hpp"

namespace phasediff {

using io::Json;

int exit_code_for(ErrorCode code) {
    switch (code) {
        case ErrorCode::ValidationFailed:
        case ErrorCode::NonHermitianInput:
        case ErrorCode::NonUnitVector:
        case ErrorCode::NonUnitNorm:
        case ErrorCode::MalformedMoment:
            return kExitValidation;
        case ErrorCode::TailTooLarge:
        case ErrorCode::CutoffOverBudget:
            return kExitBudget;
        default:
            return kExitConfig;
    }
}

namespace {

struct Context {
    const Json& config;
    std::filesystem::path out;
    RunOptions options;
    RunResult result;

    const Json& at(const char* key) const {
        if (!config.contains(key)) throw Error(ErrorCode::ConfigError, std::string("missing key \"") + key + "\"");
        return config.at(key);
    }
    double number(const char* key, double fallback) const {
        return config.contains(key) ? config.at(key).get<double>() : fallback;
    }
    int integer(const char* key, int fallback) const {
        return config.contains(key) ? config.at(key).get<int>() : fallback;
    }
    double tolerance(double fallback) const {
        if (options.tolerance) return *options.tolerance;
        return number("tolerance", fallback);
    }
    std::vector<double> numbers(const char* key) const {
        std::vector<double> v;
        for (const auto& x : at(key)) v.push_back(x.get<double>());
        return v;
    }
    std::vector<IntervalSet> sets() const {
        std::vector<IntervalSet> out;
        if (config.contains("sets"))
            for (const auto& s : config.at("sets")) out.push_back(io::parse_interval_set(s));
        else
            out.push_back(io::parse_interval_set(at("set")));
        return out;
    }
    void emit(const io::CsvTable& t, const std::string& name) {
        t.write(out / name);
        result.files.push_back(out / name);
    }
    void emit(const Json& j, const std::string& name) {
        io::write_json(j, out / name);
        result.files.push_back(out / name);
    }
};

Json block_report(const BlockReport& b) {
    return {{"sector", b.sector},
            {"min_eigenvalue", b.min_eigenvalue},
            {"max_diagonal_deviation", b.max_diagonal_deviation},
            {"worst_diagonal_index", b.worst_diagonal_index},
            {"hermiticity_residual", b.hermiticity_residual},
            {"passed", b.passed}};
}

double spectral_norm(const Matrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

void cmd_validate(Context& c) {
    const DiffKernel kernel = io::parse_diff_kernel(c.at("kernel"));
    const auto report = validate(kernel, c.tolerance(kPsdTol));
    Json blocks = Json::array();
    for (const auto& b : report.blocks) blocks.push_back(block_report(b));
    c.emit(Json{{"command", "validate"},
                {"S", kernel.cutoff()},
                {"passed", report.passed},
                {"tolerance", report.tolerance},
                {"first_failure", report.first_failure},
                {"blocks", blocks}},
           "validation.json");
    if (!report.passed) {
        c.result.exit_code = kExitValidation;
        c.result.message = "kernel fails validation in sector " + std::to_string(report.first_failure);
    }
}

void require_valid(const DiffKernel& kernel) {
    const auto report = validate(kernel);
    if (!report.passed)
        throw Error(ErrorCode::ValidationFailed,
                    "kernel fails validation in sector " + std::to_string(report.first_failure));
}

void cmd_prob(Context& c) {
    const DiffKernel kernel = io::parse_diff_kernel(c.at("kernel"));
    require_valid(kernel);
    const TwoModeState state = io::parse_state(c.at("state"), kernel.space());
    io::CsvTable t{{"set", "probability"}, {}};
    const auto sets = c.sets();
    for (std::size_t i = 0; i < sets.size(); ++i) t.add({static_cast<double>(i), prob(kernel, state, sets[i])});
    c.emit(t, "prob.csv");
}

void cmd_density(Context& c) {
    const DiffKernel kernel = io::parse_diff_kernel(c.at("kernel"));
    require_valid(kernel);
    const TwoModeState state = io::parse_state(c.at("state"), kernel.space());
    const int nodes = c.integer("nodes", 257);
    if (nodes < 1) throw Error(ErrorCode::ConfigError, "\"nodes\" must be positive");
    const auto coeffs = diff_fourier_coefficients(kernel, state);
    const int S = kernel.cutoff();
    io::CsvTable t{{"theta", "value"}, {}};
    for (int j = 0; j < nodes; ++j) {
        const double theta = kTwoPi * j / nodes;
        Complex g = 0.0;
        for (int q = -S; q <= S; ++q) g += coeffs[static_cast<std::size_t>(q + S)] * std::exp(Complex(0.0, q * theta));
        t.add({theta, g.real()});
    }
    c.emit(t, "density.csv");
}

void cmd_moments(Context& c) {
    const DiffKernel kernel = io::parse_diff_kernel(c.at("kernel"));
    require_valid(kernel);
    const TwoModeOperator m = first_moment(kernel);
    const DiffKernel back = reconstruct_from_first_moment(m);
    double round_trip = 0.0;
    double diagonal = 0.0;
    for (int s = 0; s <= kernel.cutoff(); ++s) round_trip = std::max(round_trip, max_abs(back.block(s) - kernel.block(s)));
    for (Eigen::Index i = 0; i < m.matrix.rows(); ++i) diagonal = std::max(diagonal, std::abs(m.matrix(i, i) - kPi));

    io::CsvTable t{{"row_n", "row_k", "col_n", "col_k", "re", "im"}, {}};
    const auto labels = m.cutoff.labels();
    for (std::size_t a = 0; a < labels.size(); ++a)
        for (std::size_t b = 0; b < labels.size(); ++b) {
            const Complex v = m.matrix(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (v != Complex{})
                t.add({double(labels[a].n), double(labels[a].k), double(labels[b].n), double(labels[b].k), v.real(),
                       v.imag()});
        }
    c.emit(t, "first_moment.csv");

    Json cyclic = Json::array();
    std::vector<int> orders{1};
    if (c.config.contains("orders")) orders = c.config.at("orders").get<std::vector<int>>();
    for (int r : orders) {
        const TwoModeOperator cr = cyclic_moment(kernel, r);
        cyclic.push_back({{"order", r},
                          {"norm", spectral_norm(cr.matrix)},
                          {"vacuum_image_norm", cr.matrix.col(0).norm()}});
    }
    c.emit(Json{{"command", "moments"},
                {"S", kernel.cutoff()},
                {"max_diagonal_deviation", diagonal},
                {"round_trip_residual", round_trip},
                {"cyclic", cyclic}},
           "moments.json");
}

void cmd_factorize(Context& c) {
    const DiffKernel kernel = io::parse_diff_kernel(c.at("kernel"));
    const auto result = factorize(kernel, c.tolerance(1e-8));
    Json j{{"command", "factorize"}, {"S", kernel.cutoff()}};
    if (const auto* f = std::get_if<Factorized>(&result)) {
        j["result"] = "Factorized";
        j["residual"] = f->residual;
        j["gauge"] = f->gauge;
        j["c1"] = io::to_json(f->c1.entries());
        j["c2"] = io::to_json(f->c2.entries());
    } else if (const auto* w = std::get_if<NotFactorizable>(&result)) {
        j["result"] = "NotFactorizable";
        j["witness"] = {{"order", w->order},
                        {"n", w->n},
                        {"k", w->k},
                        {"indices", w->indices},
                        {"product_diagonal", io::to_json(w->product_diagonal)},
                        {"product_off_diagonal", io::to_json(w->product_off_diagonal)},
                        {"mismatch", w->mismatch}};
    } else {
        j["result"] = "Indeterminate";
        j["reason"] = std::get<Indeterminate>(result).reason;
    }
    c.emit(j, "factorization.json");
}

void cmd_classical(Context& c) {
    const auto c1 = io::parse_phase_kernel_spec(c.at("c1"));
    const Json& second = c.at("c2");
    SecondMode mode = second.contains("fixed_phase") ? SecondMode(FixedPhase(second.at("fixed_phase").get<double>()))
                                                     : SecondMode(io::parse_phase_kernel_spec(second));
    const auto report = classical_scan(c1, mode, io::parse_complex(c.at("z1")), c.number("arg_z2", 0.0),
                                       c.numbers("amplitudes"), c.number("alpha", 0.0), c.integer("cells", 16),
                                       c.integer("cutoff_budget", 400));
    io::CsvTable t{{"amplitude", "distance"}, {}};
    for (std::size_t i = 0; i < report.amplitudes.size(); ++i) t.add({report.amplitudes[i], report.distances[i]});
    c.emit(t, "classical_limit.csv");
}

void cmd_dirac(Context& c) {
    const auto amplitudes = c.numbers("amplitudes");
    const auto mass = dirac_scan(io::parse_phase_kernel_spec(c.at("c1")), io::parse_phase_kernel_spec(c.at("c2")),
                                 c.number("arg_z1", 0.0), c.number("arg_z2", 0.0), amplitudes, c.number("alpha", 0.0),
                                 c.number("alpha_prime", 0.0), c.number("window", kPi / 4),
                                 c.integer("cutoff_budget", 400));
    io::CsvTable t{{"amplitude", "window_mass"}, {}};
    for (std::size_t i = 0; i < amplitudes.size(); ++i) t.add({amplitudes[i], mass[i]});
    c.emit(t, "dirac_limit.csv");
}

void cmd_ban(Context& c) {
    const int S = c.integer("S", 20);
    const int margin = c.integer("margin", 2);
    const double beta = c.number("beta", kPi / 4);
    const Cutoff cutoff = Cutoff::total(S);
    const IntervalSet x = c.config.contains("set") ? io::parse_interval_set(c.at("set")) : IntervalSet::interval(0, kPi);
    const DiffKernel kernel = c.config.contains("kernel") ? io::parse_diff_kernel(c.at("kernel")) : canonical_diff(S);
    require_valid(kernel);

    const auto cov = ban_covariance_residual(x, beta, cutoff);
    const auto comm = commutator_checks(kernel, cutoff, margin);
    const auto d = ban_D(cutoff);
    const auto w = factor2_projection_solution(cutoff);
    Json j{{"command", "ban"},
           {"S", S},
           {"margin", margin},
           {"beta", beta},
           {"covariance", {{"factor1", cov.factor1}, {"factor2", cov.factor2}}},
           {"commutators",
            {{"shift", comm.shift},
             {"cyclic_factor2", comm.cyclic},
             {"single_mode", comm.single_mode},
             {"cyclic_factor1_contrast", comm.factor1_contrast},
             {"interior", comm.interior},
             {"excluded", comm.excluded}}},
           {"shift_boundary", d.boundary.size()},
           {"factor2_boundary", w.boundary.size()},
           {"factor2_intertwining", factor2_intertwining_residual(w, beta, margin)}};
    if (c.config.contains("state")) {
        Vector v = io::parse_vector(c.at("state"));
        const double norm = v.norm();
        if (norm == 0.0) throw Error(ErrorCode::ConfigError, "single-mode state vanishes");
        v /= norm;
        const auto [two, one] = ban_vacuum_reduction(v * v.adjoint(), x, cutoff);
        j["vacuum_reduction"] = {{"two_mode", two}, {"single_mode", one}};
    }
    c.emit(j, "ban.json");
}

void cmd_spectrum(Context& c) {
    const int max_sector = c.integer("max_sector", 10);
    const int S = c.integer("S", 12);
    io::CsvTable t{{"sector", "r", "phase"}, {}};
    double phase_error = 0.0;
    for (int s = 0; s <= max_sector; ++s) {
        const auto phases = phi12_block_eigenphases(s);
        for (int r = 0; r <= s; ++r) {
            t.add({double(s), double(r), phases[static_cast<std::size_t>(r)]});
            phase_error = std::max(phase_error, std::abs(phases[static_cast<std::size_t>(r)] - kTwoPi * r / (s + 1)));
        }
    }
    c.emit(t, "spectrum.csv");

    const auto [cos_op, sin_op] = sg_operators(S);
    const auto ce = hermitian_eigenvalues(cos_op);
    const auto se = hermitian_eigenvalues(sin_op);
    const Matrix comm = cos_op.matrix * sin_op.matrix - sin_op.matrix * cos_op.matrix;
    c.emit(Json{{"command", "spectrum"},
                {"S", S},
                {"max_sector", max_sector},
                {"max_phase_error", phase_error},
                {"cosine", {{"min", ce.front()}, {"max", ce.back()}}},
                {"sine", {{"min", se.front()}, {"max", se.back()}}},
                {"commutator_norm", spectral_norm(comm)},
                {"polar_residual", ll_polar_check(S)}},
           "spectrum.json");
}

void cmd_barnett_pegg(Context& c) {
    const auto phi = io::parse_fourier_function(c.at("phi"));
    const auto psi = io::parse_fourier_function(c.at("psi"));
    const int N = static_cast<int>(std::max(phi.coeffs.size(), psi.coeffs.size())) - 1;
    Vector a = Vector::Zero(N + 1);
    Vector b = Vector::Zero(N + 1);
    a.head(phi.coeffs.size()) = phi.coeffs;
    b.head(psi.coeffs.size()) = psi.coeffs;
    const auto vec = TwoModeVector::product(a, b, Cutoff::per_mode(N));
    const DiffKernel can = canonical_diff(2 * N);
    io::CsvTable t{{"set", "barnett_pegg", "kernel_path"}, {}};
    const auto sets = c.sets();
    for (std::size_t i = 0; i < sets.size(); ++i)
        t.add({double(i), barnett_pegg_prob(phi, psi, sets[i]), prob(can, vec, sets[i])});
    c.emit(t, "barnett_pegg.csv");
}

void cmd_covariance(Context& c) {
    const DiffKernel kernel = io::parse_diff_kernel(c.at("kernel"));
    require_valid(kernel);
    const double alpha = c.number("alpha", 1.3);
    const double beta = c.number("beta", 0.4);
    Json checks = Json::array();
    const auto sets = c.sets();
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto r = covariance_report(kernel, alpha, beta, sets[i]);
        checks.push_back({{"set", i},
                          {"definition", r.definition},
                          {"sum_invariance", r.sum_invariance},
                          {"difference_factor2", r.difference_factor2},
                          {"difference_factor1", r.difference_factor1}});
    }
    Json j{{"command", "covariance"}, {"S", kernel.cutoff()}, {"alpha", alpha}, {"beta", beta}, {"checks", checks}};
    const int draws = c.integer("random_draws", 0);
    if (draws > 0) {
        std::mt19937_64 rng(c.options.seed.value_or(c.config.value("seed", std::uint64_t{0})));
        std::uniform_real_distribution<double> angle(0.0, kTwoPi);
        double worst = 0.0;
        double min_eig = 1.0;
        for (int i = 0; i < draws; ++i) {
            const double a = angle(rng);
            const double b = angle(rng);
            const double start = angle(rng);
            const double length = angle(rng);
            const IntervalSet x = IntervalSet::interval(start, start + length);
            worst = std::max(worst, covariance_residual(kernel, a, b, x));
            min_eig = std::min(min_eig, min_hermitian_eigenvalue(eval_diff(kernel, x).matrix));
        }
        j["random"] = {{"draws", draws}, {"max_residual", worst}, {"min_eigenvalue", min_eig}};
    }
    c.emit(j, "covariance.json");
}

const std::map<std::string, std::function<void(Context&)>>& commands() {
    static const std::map<std::string, std::function<void(Context&)>> table{
        {"validate", cmd_validate},         {"prob", cmd_prob},
        {"density", cmd_density},           {"moments", cmd_moments},
        {"factorize", cmd_factorize},       {"classical-limit", cmd_classical},
        {"dirac-limit", cmd_dirac},         {"ban", cmd_ban},
        {"spectrum", cmd_spectrum},         {"barnett-pegg", cmd_barnett_pegg},
        {"covariance", cmd_covariance},
    };
    return table;
}

}  // namespace

RunResult run(const Json& config, const std::filesystem::path& out_dir, const RunOptions& options) {
    Context c{config, out_dir, options, {}};
    try {
        if (options.threads < 1) throw Error(ErrorCode::ConfigError, "thread count must be positive");
        set_thread_count(options.threads);
        if (!config.is_object() || !config.contains("command") || !config.at("command").is_string())
            throw Error(ErrorCode::ConfigError, "config must be an object with a \"command\" string");
        const auto name = config.at("command").get<std::string>();
        const auto it = commands().find(name);
        if (it == commands().end()) throw Error(ErrorCode::ConfigError, "unknown command \"" + name + "\"");
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());
        it->second(c);
    } catch (const Error& e) {
        c.result.exit_code = exit_code_for(e.code());
        c.result.message = std::string(to_string(e.code())) + ": " + e.what();
    } catch (const Json::exception& e) {
        c.result.exit_code = kExitConfig;
        c.result.message = std::string("ConfigError: ") + e.what();
    } catch (const std::exception& e) {
        c.result.exit_code = kExitConfig;
        c.result.message = e.what();
    }
    return c.result;
}

RunResult run(const std::string& config_text, const std::filesystem::path& out_dir, const RunOptions& options) {
    Json config;
    try {
        config = Json::parse(config_text);
    } catch (const Json::exception& e) {
        return {kExitConfig, std::string("ConfigError: ") + e.what(), {}};
    }
    return run(config, out_dir, options);
}

}  // namespace phasediff

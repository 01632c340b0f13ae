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

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "phasediff/phasediff.h"

int main(int argc, char** argv) {
    CLI::App app{"Covariant phase-difference observables on truncated two-mode Fock spaces"};
    std::string config_path;
    std::string out_dir = ".";
    double tolerance = 0.0;
    int threads = 1;
    std::uint64_t seed = 0;
    app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory");
    auto* tol_opt = app.add_option("--tol", tolerance, "Tolerance override");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
    auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized commands");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "cannot read %s\n", config_path.c_str());
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();

    pd_run_options options{};
    options.has_tolerance = tol_opt->count() > 0;
    options.tolerance = tolerance;
    options.threads = threads;
    options.has_seed = seed_opt->count() > 0;
    options.seed = seed;

    int exit_code = 1;
    const pd_status status = pd_run(text.str().c_str(), out_dir.c_str(), &options, &exit_code);
    if (status != PD_OK) {
        std::fprintf(stderr, "%s: %s\n", pd_status_string(status), pd_last_error());
        return 1;
    }
    if (exit_code != 0) std::fprintf(stderr, "%s\n", pd_last_error());
    return exit_code;
}

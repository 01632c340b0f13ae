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

// JSON-configured commands writing CSV tables and JSON reports.

#ifndef PHASEDIFF_RUN_HPP
#define PHASEDIFF_RUN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "phasediff/io.hpp"

namespace phasediff {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfig = 1,
    kExitValidation = 2,
    kExitBudget = 3,
};

struct RunOptions {
    std::optional<double> tolerance;
    int threads = 1;
    std::optional<std::uint64_t> seed;
};

struct RunResult {
    int exit_code = kExitOk;
    std::string message;
    std::vector<std::filesystem::path> files;
};

/// Exit code for a library error.
int exit_code_for(ErrorCode code);

/// Runs one command; never throws. Files go to `out_dir`, which is created.
RunResult run(const io::Json& config, const std::filesystem::path& out_dir, const RunOptions& options);
RunResult run(const std::string& config_text, const std::filesystem::path& out_dir, const RunOptions& options);

}  // namespace phasediff

#endif  // PHASEDIFF_RUN_HPP

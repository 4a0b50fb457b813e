// Copyright 2026 The Blockade Authors
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


#pragma once

// Runs a parsed scenario and writes <name>.csv (plus SVG plots) into an output directory.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blockade/report.hpp"
#include "blockade/scenario.hpp"

namespace blockade {

std::string_view version();

enum class ExitCode : int { ok = 0, validation = 2, integration = 3, output = 4 };

/// Everything a run produces, before anything touches the disk.
struct ScenarioOutput {
    Metadata metadata;
    Table table;
    std::vector<std::pair<std::string, Plot>> plots;  ///< file suffix ("" for <name>.svg), plot
    std::vector<std::string> failures;                ///< per-point integration failures
};

/// Computes the table for a validated scenario. Throws ValidationError, IntegrationError.
ScenarioOutput compute_scenario(const Scenario &scenario);

struct RunOptions {
    std::filesystem::path out_dir = ".";
    bool plot = true;
    std::optional<double> rtol;  ///< overrides integrator.rtol
};

struct RunResult {
    ExitCode code = ExitCode::ok;
    std::string message;
    std::vector<std::filesystem::path> files;
};

/// Validates, computes and writes. Never throws; errors map to exit codes.
RunResult run_scenario(Scenario scenario, const RunOptions &options = {});

}  // namespace blockade

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


#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "blockade/errors.hpp"
#include "blockade/runner.hpp"
#include "blockade/scenario.hpp"

namespace fs = std::filesystem;
using namespace blockade;

namespace {

constexpr int kUsageError = 2;

fs::path default_scenario_dir() {
#ifdef BLOCKADE_SCENARIO_DIR
    if (fs::is_directory(BLOCKADE_SCENARIO_DIR)) {
        return BLOCKADE_SCENARIO_DIR;
    }
#endif
    return "scenarios";
}

// A bare name such as "fig2a_arp" resolves against the scenario library.
fs::path resolve(const std::string &arg, const fs::path &dir) {
    if (fs::exists(arg)) {
        return arg;
    }
    const fs::path named = dir / (arg + ".json");
    return fs::exists(named) ? named : fs::path(arg);
}

std::optional<Scenario> load(const fs::path &path) {
    try {
        return parse_scenario(path);
    } catch (const ParseError &e) {
        std::cerr << "blockade: " << path.string() << ": parse error: " << e.what() << '\n';
    } catch (const ValidationError &e) {
        std::cerr << "blockade: " << path.string() << ": invalid scenario: " << e.what() << '\n';
    }
    return std::nullopt;
}

int list_scenarios(const fs::path &dir) {
    if (!fs::is_directory(dir)) {
        std::cerr << "blockade: scenario directory '" << dir.string() << "' not found\n";
        return kUsageError;
    }
    std::vector<fs::path> files;
    for (const auto &entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".json") {
            files.push_back(entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    int status = 0;
    for (const auto &f : files) {
        if (auto s = load(f)) {
            std::cout << s->name << "\t" << to_string(s->kind) << "\t" << s->description << '\n';
        } else {
            status = kUsageError;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Rydberg-blockade ensemble qubit simulator"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    fs::path scenario_dir = default_scenario_dir();
    app.add_option("--scenario-dir", scenario_dir, "Scenario library directory")->check(CLI::ExistingDirectory);

    std::string file;
    std::string out_dir = ".";
    bool no_plot = false;
    std::optional<double> tol;

    auto *run = app.add_subcommand("run", "Run a scenario and write CSV (and SVG) output");
    run->add_option("scenario", file, "Scenario file or library name")->required();
    run->add_option("--out", out_dir, "Output directory");
    run->add_flag("--no-plot", no_plot, "Skip SVG plots");
    run->add_option("--tol", tol, "Override the integrator's relative tolerance")->check(CLI::PositiveNumber);

    auto *validate = app.add_subcommand("validate", "Parse and validate a scenario without running it");
    validate->add_option("scenario", file, "Scenario file or library name")->required();

    auto *list = app.add_subcommand("list-scenarios", "List the shipped scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsageError;
    }

    if (*list) {
        return list_scenarios(scenario_dir);
    }

    const fs::path path = resolve(file, scenario_dir);
    auto scenario = load(path);
    if (!scenario) {
        return static_cast<int>(ExitCode::validation);
    }
    if (*validate) {
        std::cout << scenario->name << ": ok\n";
        return 0;
    }

    RunOptions options;
    options.out_dir = out_dir;
    options.plot = !no_plot;
    options.rtol = tol;
    const RunResult result = run_scenario(*scenario, options);
    for (const auto &f : result.files) {
        std::cout << f.string() << '\n';
    }
    if (result.code != ExitCode::ok) {
        std::cerr << "blockade: " << result.message << '\n';
    }
    return static_cast<int>(result.code);
}

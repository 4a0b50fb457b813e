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


// Drives the installed command-line tool as a user would and checks exit codes and files.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

const std::string kTool = BLOCKADE_CLI;
const fs::path kScenarios = BLOCKADE_SCENARIO_DIR;

int run(const std::string &args) {
    const std::string cmd = "\"" + kTool + "\" " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("blockade_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST(cli, validates_every_shipped_scenario) {
    for (const auto &e : fs::directory_iterator(kScenarios)) {
        EXPECT_EQ(run("validate " + e.path().string()), 0) << e.path();
    }
    EXPECT_EQ(run("list-scenarios"), 0);
}

TEST(cli, empty_file_exits_two) {
    const fs::path dir = scratch("empty");
    std::ofstream(dir / "empty.json").close();
    EXPECT_EQ(run("validate " + (dir / "empty.json").string()), 2);
    EXPECT_EQ(run("run " + (dir / "empty.json").string() + " --out " + dir.string()), 2);
}

TEST(cli, mutually_exclusive_drive_exits_two) {
    const fs::path dir = scratch("both");
    std::ofstream(dir / "both.json") << R"({"name": "both", "kind": "simulate", "n_values": [1],
        "protocol": {"name": "arp_single"},
        "schedule": {"levels": ["g0", "r0"], "window_us": [0, 1], "segments": []}})";
    EXPECT_EQ(run("validate " + (dir / "both.json").string()), 2);
}

TEST(cli, missing_file_and_bad_arguments_exit_two) {
    EXPECT_EQ(run("validate /nonexistent/scenario.json"), 2);
    EXPECT_EQ(run("run"), 2);
    EXPECT_EQ(run("frobnicate"), 2);
    EXPECT_EQ(run("run fig2a_arp --tol -1"), 2);
}

TEST(cli, run_is_deterministic) {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    ASSERT_EQ(run("run fig4e_double_arp_flip --no-plot --out " + a.string()), 0);
    ASSERT_EQ(run("run " + (kScenarios / "fig4e_double_arp_flip.json").string() + " --no-plot --out " + b.string()),
              0);
    const std::string csv = slurp(a / "fig4e_double_arp_flip.csv");
    EXPECT_FALSE(csv.empty());
    EXPECT_EQ(csv, slurp(b / "fig4e_double_arp_flip.csv"));
    EXPECT_FALSE(fs::exists(a / "fig4e_double_arp_flip.svg"));
}

TEST(cli, unwritable_output_exits_four) {
    const fs::path dir = scratch("ro");
    std::ofstream(dir / "file") << "x";
    EXPECT_EQ(run("run fig2a_arp --out " + (dir / "file" / "sub").string()), 4);
}

TEST(cli, plots_are_written) {
    const fs::path dir = scratch("plot");
    ASSERT_EQ(run("run fig2a_arp --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "fig2a_arp.csv"));
    EXPECT_TRUE(fs::exists(dir / "fig2a_arp.svg"));
}

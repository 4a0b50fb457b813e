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


#include "blockade/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "blockade/errors.hpp"
#include "blockade/runner.hpp"

using namespace blockade;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string &name) {
    const fs::path dir = fs::temp_directory_path() / ("blockade_test_" + name);
    fs::remove_all(dir);
    return dir;
}

Scenario small_arp() {
    return parse_scenario_text(R"({"name": "tiny", "kind": "simulate",
        "protocol": {"name": "arp_single"}, "n_values": [1, 2],
        "output": {"sample_dt_us": 0.5}})");
}

}  // namespace

TEST(report, seventeen_digits) {
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0), "1");
    EXPECT_EQ(format_double(-2.5e-12), "-2.4999999999999998e-12");
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(report, csv_layout) {
    Metadata m;
    m.add("tool", "x");
    m.add("block", "a\nb");
    Table t;
    t.label_column = "input";
    t.labels = {"00", "01"};
    t.columns = {"p", "q"};
    t.rows = {{0.5, 1.0}, {0.25, 0.0}};
    EXPECT_EQ(render_csv(m, t), "# tool: x\n# block:\n#   a\n#   b\ninput,p,q\n00,0.5,1\n01,0.25,0\n");
}

TEST(report, svg_has_axes_legend_and_lines) {
    Plot p{"title <1>", "x", "y", {{"a", {0, 1, 2}, {0, 1, 0}}, {"b", {0, 1, 2}, {1, std::nan(""), 1}}}};
    const std::string svg = render_svg(p);
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("title &lt;1&gt;"), std::string::npos);
    EXPECT_NE(svg.find(">a</text>"), std::string::npos);
    // Series b is split by its NaN into two polylines.
    std::size_t lines = 0;
    for (std::size_t at = svg.find("<polyline"); at != std::string::npos; at = svg.find("<polyline", at + 1)) {
        ++lines;
    }
    EXPECT_EQ(lines, 3u);
}

TEST(report, unwritable_path_raises) {
    EXPECT_THROW(write_text_file("/nonexistent-dir/x/y.csv", "z"), OutputError);
}

TEST(runner, writes_csv_and_svg) {
    const fs::path dir = scratch("writes");
    const RunResult r = run_scenario(small_arp(), {dir, true, std::nullopt});
    ASSERT_EQ(r.code, ExitCode::ok) << r.message;
    ASSERT_EQ(r.files.size(), 2u);
    const std::string csv = slurp(dir / "tiny.csv");
    EXPECT_NE(csv.find("# tool: blockade "), std::string::npos);
    EXPECT_NE(csv.find("# integrator: rtol=1.0000000000000001e-09"), std::string::npos);
    EXPECT_NE(csv.find("\ntime_us,p_single_N1,p_single_N2\n"), std::string::npos);
    EXPECT_TRUE(fs::exists(dir / "tiny.svg"));
}

TEST(runner, repeated_runs_are_byte_identical) {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    ASSERT_EQ(run_scenario(small_arp(), {a, false, std::nullopt}).code, ExitCode::ok);
    ASSERT_EQ(run_scenario(small_arp(), {b, false, std::nullopt}).code, ExitCode::ok);
    EXPECT_EQ(slurp(a / "tiny.csv"), slurp(b / "tiny.csv"));
}

TEST(runner, tolerance_override_is_echoed) {
    const fs::path dir = scratch("tol");
    ASSERT_EQ(run_scenario(small_arp(), {dir, false, 1e-7}).code, ExitCode::ok);
    EXPECT_NE(slurp(dir / "tiny.csv").find("rtol=9.9999999999999995e-08"), std::string::npos);
}

TEST(runner, exit_codes) {
    Scenario bad = small_arp();
    bad.n_values = {{0}};
    EXPECT_EQ(run_scenario(bad).code, ExitCode::validation);

    Scenario stiff = small_arp();
    stiff.integrator.max_steps = 3;
    EXPECT_EQ(run_scenario(stiff, {scratch("stiff"), false, std::nullopt}).code, ExitCode::integration);

    const fs::path file = scratch("blocker");
    fs::create_directories(file.parent_path());
    { std::ofstream(file) << "x"; }
    EXPECT_EQ(run_scenario(small_arp(), {file / "sub", false, std::nullopt}).code, ExitCode::output);
    fs::remove(file);
}

TEST(runner, truth_table_columns) {
    const Scenario s = parse_scenario_text(R"({"name": "cz", "kind": "truth-table",
        "protocol": {"name": "mw_cz"}, "n_atoms": [1, 1]})");
    const ScenarioOutput out = compute_scenario(s);
    EXPECT_EQ(out.table.label_column, "input");
    EXPECT_EQ(out.table.labels, (std::vector<std::string>{"00", "01", "10", "11"}));
    EXPECT_EQ(out.table.columns.size(), 10u);
    EXPECT_EQ(out.table.columns[8], "max_deviation");
    for (const auto &row : out.table.rows) {
        EXPECT_LT(row[8], 1e-6);
    }
}

TEST(runner, poisson_table) {
    const Scenario s = parse_scenario_text(R"({"name": "p", "kind": "poisson", "nbar": 5, "n_max": 4,
        "compare": [{"name": "pi_pulse_reference"}]})");
    const ScenarioOutput out = compute_scenario(s);
    EXPECT_EQ(out.table.columns,
              (std::vector<std::string>{"N", "poisson_probability", "error_pi_pulse_reference",
                                        "closed_form_pi_pulse_reference"}));
    ASSERT_EQ(out.table.rows.size(), 5u);
    EXPECT_NEAR(out.table.rows[0][1], 0.0067, 1e-4);
}

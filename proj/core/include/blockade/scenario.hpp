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

// Scenario files: a JSON document describing one run (trajectories, a gate, a truth
// table, a sweep or a Poisson table). Every key is checked; unknown keys are errors.
// Values keep the units the user typed (MHz, Hz/s, us, rad) so that serializing a
// parsed scenario reproduces it exactly.

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blockade/basis.hpp"
#include "blockade/integrator.hpp"
#include "blockade/protocols.hpp"
#include "blockade/pulse.hpp"

namespace blockade {

enum class ScenarioKind { simulate, protocol, truth_table, sweep, poisson };
enum class Observable { p_single, ground_phase, populations };
enum class SweepAxis { rabi_ratio, phi };

std::string_view to_string(ScenarioKind kind);
std::string_view to_string(Observable observable);
std::string_view to_string(SweepAxis axis);

/// Pulse segment in user units.
struct SegmentSpec {
    Transition transition;
    std::string envelope = "gaussian";  ///< gaussian | constant | zero
    double omega_mhz = 0.0;
    double center_us = 0.0;
    double tau_us = 1.0;
    std::string detuning = "constant";  ///< constant | linear_chirp | sign_switch
    double delta_mhz = 0.0;
    double chirp_hz_per_s = 0.0;
    double origin_us = 0.0;
    double switch_us = 0.0;
    double phase_rad = 0.0;
    Window window;
    std::string label;

    PulseSegment to_segment() const;

    friend bool operator==(const SegmentSpec &, const SegmentSpec &) = default;
};

struct ScheduleSpec {
    std::vector<Level> levels;  ///< shared by every ensemble
    bool cross_blockade = true;
    Window window;
    std::vector<SegmentSpec> segments;

    PulseSchedule to_schedule() const;

    friend bool operator==(const ScheduleSpec &, const ScheduleSpec &) = default;
};

struct OutputSpec {
    double sample_dt_us = 0.01;
    Observable observable = Observable::p_single;
    bool plot = true;

    friend bool operator==(const OutputSpec &, const OutputSpec &) = default;
};

struct Scenario {
    std::string name;
    std::string description;
    ScenarioKind kind = ScenarioKind::simulate;

    std::optional<ProtocolSpec> protocol;  ///< n_atoms taken from n_atoms / n_values
    std::optional<ScheduleSpec> schedule;

    /// simulate / sweep: one curve per entry; an entry has one count per ensemble.
    std::vector<std::vector<int>> n_values;
    /// protocol / truth-table: atom count per ensemble.
    std::vector<int> n_atoms;

    /// protocol: logical input amplitudes (re, im); default |0...0>.
    std::vector<std::pair<double, double>> input;

    SweepAxis axis = SweepAxis::rabi_ratio;
    std::vector<double> grid;

    double nbar = 5.0;
    int n_max = 15;
    std::vector<ProtocolSpec> compare;  ///< poisson: per-N error columns

    IntegratorOptions integrator;
    OutputSpec output;

    /// Full consistency check; throws ValidationError naming the key.
    void validate() const;

    friend bool operator==(const Scenario &, const Scenario &) = default;
};

/// Parses and validates. Throws ParseError (line, column) or ValidationError.
Scenario parse_scenario_text(std::string_view text);
Scenario parse_scenario(const std::filesystem::path &path);

/// Canonical JSON with every default written out.
std::string serialize_scenario(const Scenario &scenario);

}  // namespace blockade

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


#include "blockade/runner.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "blockade/analysis.hpp"
#include "blockade/dynamics.hpp"
#include "blockade/errors.hpp"
#include "blockade/protocols.hpp"

#ifndef BLOCKADE_VERSION_STRING
#define BLOCKADE_VERSION_STRING "unknown"
#endif

namespace blockade {

std::string_view version() { return BLOCKADE_VERSION_STRING; }

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string n_tag(const std::vector<int> &n) {
    std::string tag = "N";
    for (std::size_t i = 0; i < n.size(); ++i) {
        tag += (i ? "_" : "") + std::to_string(n[i]);
    }
    return tag;
}

std::string integrator_line(const IntegratorOptions &o) {
    return "rtol=" + format_double(o.rtol) + " atol=" + format_double(o.atol) +
           " max_step_us=" + format_double(o.max_step) + " norm_rate=" + format_double(o.norm_rate) +
           " method=dopri5";
}

std::string stats_line(const IntegratorStats &s) {
    return "accepted=" + std::to_string(s.accepted) + " rejected=" + std::to_string(s.rejected) +
           " rhs_evaluations=" + std::to_string(s.rhs_evaluations);
}

struct Prepared {
    RegisterBasis basis;
    PulseSchedule schedule;
    StateVector initial;
};

Prepared prepare(const Scenario &sc, const std::vector<int> &n) {
    if (sc.protocol) {
        ProtocolSpec spec = *sc.protocol;
        spec.n_atoms = n;
        BuiltProtocol built = build_protocol(spec, sc.integrator);
        return {std::move(built.basis), std::move(built.schedule), std::move(built.initial)};
    }
    const LevelScheme scheme(sc.schedule->levels);
    std::vector<EnsembleSpec> ensembles;
    for (int count : n) {
        ensembles.push_back({scheme, count});
    }
    RegisterBasis basis = RegisterBasis::enumerate(std::move(ensembles), sc.schedule->cross_blockade);
    PulseSchedule schedule = sc.schedule->to_schedule();
    StateVector initial = StateVector::basis_state(basis.dim(), basis.ground_index(), schedule.window().start);
    return {std::move(basis), std::move(schedule), std::move(initial)};
}

void compute_simulate(const Scenario &sc, ScenarioOutput &out) {
    const Observable obs = sc.output.observable;
    std::vector<std::string> columns;
    std::map<double, std::vector<double>> rows;
    std::vector<Series> series;
    std::ostringstream summary;

    std::vector<std::vector<double>> per_curve_times;
    std::vector<std::vector<std::vector<double>>> per_curve_values;

    for (const auto &n : sc.n_values) {
        const std::string tag = n_tag(n);
        Prepared p = prepare(sc, n);
        const HamiltonianModel model(p.basis, p.schedule);
        const Trajectory traj =
            evolve(model, p.initial, p.schedule.window(), Sampling::every(sc.output.sample_dt_us), sc.integrator);

        std::vector<std::vector<double>> values;
        switch (obs) {
            case Observable::p_single:
                columns.push_back("p_single_" + tag);
                values.push_back(excitation_probability(traj, p.basis));
                summary << tag << ": final p_single=" << format_double(values[0].back());
                break;
            case Observable::ground_phase: {
                columns.push_back("phase_rad_" + tag);
                const GroundPhaseSeries phases = extract_phases(traj, p.basis);
                values.push_back(phases.phase);
                summary << tag << ": final phase_rad="
                        << (phases.final_phase ? format_double(*phases.final_phase) : std::string("undefined"));
                break;
            }
            case Observable::populations: {
                std::vector<double> g, e, r;
                for (const auto &psi : traj.states) {
                    const PopulationPartition part = partition(psi, p.basis);
                    g.push_back(part.ground);
                    e.push_back(part.intermediate);
                    r.push_back(part.rydberg);
                }
                columns.push_back("ground_" + tag);
                columns.push_back("intermediate_" + tag);
                columns.push_back("rydberg_" + tag);
                values = {g, e, r};
                summary << tag << ": final ground=" << format_double(g.back())
                        << " intermediate=" << format_double(e.back()) << " rydberg=" << format_double(r.back());
                break;
            }
        }
        summary << " norm_drift=" << format_double(traj.norm_drift()) << ' ' << stats_line(traj.stats) << '\n';
        per_curve_times.push_back(traj.times);
        per_curve_values.push_back(std::move(values));
    }

    // Curves normally share one grid; a map keyed by time also merges different windows.
    std::size_t column = 0;
    for (std::size_t c = 0; c < per_curve_times.size(); ++c) {
        for (const auto &values : per_curve_values[c]) {
            for (std::size_t i = 0; i < per_curve_times[c].size(); ++i) {
                auto &row = rows[per_curve_times[c][i]];
                row.resize(columns.size(), kNaN);
                row[column] = values[i];
            }
            series.push_back({columns[column], per_curve_times[c], values});
            ++column;
        }
    }

    out.table.columns.push_back("time_us");
    out.table.columns.insert(out.table.columns.end(), columns.begin(), columns.end());
    for (auto &[t, row] : rows) {
        row.resize(columns.size(), kNaN);
        std::vector<double> full{t};
        full.insert(full.end(), row.begin(), row.end());
        out.table.rows.push_back(std::move(full));
    }

    switch (obs) {
        case Observable::p_single:
            out.metadata.add("metric p_single", "probability of exactly one Rydberg excitation in the register");
            break;
        case Observable::ground_phase:
            out.metadata.add("metric phase_rad",
                             "arg of the all-ground amplitude in the rotating frame, wrapped to (-pi, pi]; nan where "
                             "|amplitude| <= " + format_double(kPhaseAmplitudeThreshold));
            break;
        case Observable::populations:
            out.metadata.add("metric populations",
                             "any Rydberg atom -> rydberg; else any atom in e -> intermediate; else ground");
            break;
    }
    out.metadata.add("summary", summary.str());

    const std::string y_label = obs == Observable::p_single       ? "single Rydberg probability"
                                : obs == Observable::ground_phase ? "ground-state phase (rad)"
                                                                  : "population";
    out.plots.push_back({"", Plot{sc.name, "time (us)", y_label, std::move(series)}});
}

Eigen::VectorXcd logical_input(const Scenario &sc) {
    const std::size_t dim = std::size_t{1} << sc.n_atoms.size();
    Eigen::VectorXcd in = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    if (sc.input.empty()) {
        in[0] = 1.0;
    } else {
        for (std::size_t i = 0; i < dim; ++i) {
            in[static_cast<Eigen::Index>(i)] = {sc.input[i].first, sc.input[i].second};
        }
    }
    return in;
}

void compute_protocol(const Scenario &sc, ScenarioOutput &out) {
    ProtocolSpec spec = *sc.protocol;
    spec.n_atoms = sc.n_atoms;
    const BuiltProtocol built = build_protocol(spec, sc.integrator);
    const Eigen::VectorXcd in = logical_input(sc);
    const ProtocolResult result = run_gate(built, spec, in, sc.integrator);
    const Eigen::VectorXcd ideal = ideal_gate(spec) * in;

    out.table.label_column = "logical";
    out.table.labels = built.logical_labels;
    out.table.columns = {"input_re", "input_im", "output_re", "output_im", "probability", "ideal_probability"};
    for (Eigen::Index i = 0; i < in.size(); ++i) {
        out.table.rows.push_back({in[i].real(), in[i].imag(), result.output[i].real(), result.output[i].imag(),
                                  std::norm(result.output[i]), std::norm(ideal[i])});
    }
    out.metadata.add("metric output", "decoded logical amplitudes at the end of the schedule");
    out.metadata.add("metric leakage", "norm squared minus decoded logical population; flagged above " +
                                           format_double(kLeakageThreshold));
    std::ostringstream summary;
    summary << "leakage=" << format_double(result.leakage)
            << " leakage_flagged=" << (result.leakage_flagged ? "true" : "false")
            << " norm_drift=" << format_double(result.norm_drift) << ' ' << stats_line(result.stats);
    out.metadata.add("summary", summary.str());
}

void compute_truth_table(const Scenario &sc, ScenarioOutput &out) {
    ProtocolSpec spec = *sc.protocol;
    spec.n_atoms = sc.n_atoms;
    const TruthTable tt = truth_table(spec, sc.integrator);
    const auto n = static_cast<Eigen::Index>(tt.labels.size());

    out.table.label_column = "input";
    out.table.labels = tt.labels;
    for (const auto &l : tt.labels) {
        out.table.columns.push_back("p_" + l);
    }
    for (const auto &l : tt.labels) {
        out.table.columns.push_back("ideal_p_" + l);
    }
    out.table.columns.push_back("max_deviation");
    out.table.columns.push_back("leakage");
    for (Eigen::Index in = 0; in < n; ++in) {
        std::vector<double> row;
        double deviation = 0.0;
        for (Eigen::Index o = 0; o < n; ++o) {
            row.push_back(tt.probabilities(o, in));
        }
        for (Eigen::Index o = 0; o < n; ++o) {
            const double ideal = std::norm(tt.target(o, in));
            row.push_back(ideal);
            deviation = std::max(deviation, std::abs(tt.probabilities(o, in) - ideal));
        }
        row.push_back(deviation);
        row.push_back(tt.leakage[static_cast<std::size_t>(in)]);
        out.table.rows.push_back(std::move(row));
    }
    out.metadata.add("metric p_<out>", "P(out | input) from decoded logical amplitudes");
    out.metadata.add("metric max_deviation", "max over outputs of |P - |ideal|^2| for the row's input");
    out.metadata.add("metric phase_error",
                     "max angular deviation of decoded amplitudes from the nonzero ideal entries after removing one "
                     "global phase");
    out.metadata.add("metric leakage", "norm squared minus decoded logical population, per input; flagged above " +
                                           format_double(kLeakageThreshold));
    std::ostringstream summary;
    summary << "max_deviation=" << format_double(tt.max_deviation) << " phase_error=" << format_double(tt.phase_error)
            << " unitarity_error=" << format_double(tt.unitarity_error)
            << " leakage_flagged=" << (tt.leakage_flagged ? "true" : "false");
    out.metadata.add("summary", summary.str());
}

std::vector<int> single_counts(const Scenario &sc) {
    std::vector<int> n;
    for (const auto &entry : sc.n_values) {
        n.push_back(entry.front());
    }
    return n;
}

void compute_ratio_sweep(const Scenario &sc, ScenarioOutput &out) {
    const std::vector<int> n_list = single_counts(sc);
    const SweepResult sweep = rabi_ratio_sweep(*sc.protocol, sc.grid, n_list, sc.integrator);

    out.table.columns.push_back("rabi_ratio");
    for (int n : n_list) {
        out.table.columns.push_back("population_error_N" + std::to_string(n));
    }
    for (int n : n_list) {
        out.table.columns.push_back("phase_error_N" + std::to_string(n));
    }
    std::vector<Series> pop, phase;
    for (int n : n_list) {
        pop.push_back({"N=" + std::to_string(n), sc.grid, {}});
        phase.push_back({"N=" + std::to_string(n), sc.grid, {}});
    }
    for (std::size_t i = 0; i < sc.grid.size(); ++i) {
        std::vector<double> row{sc.grid[i]};
        std::vector<double> phases;
        for (std::size_t j = 0; j < n_list.size(); ++j) {
            const SweepPoint &p = sweep.at(i, j);
            if (!p.ok) {
                out.failures.push_back("ratio=" + format_double(p.ratio) + " N=" + std::to_string(p.n_atoms) + ": " +
                                       p.failure);
            }
            const double e_pop = p.ok ? p.errors.population_error : kNaN;
            const double e_phase = p.ok ? p.errors.phase_error : kNaN;
            row.push_back(e_pop);
            phases.push_back(e_phase);
            pop[j].y.push_back(e_pop);
            phase[j].y.push_back(e_phase);
        }
        row.insert(row.end(), phases.begin(), phases.end());
        out.table.rows.push_back(std::move(row));
    }
    out.metadata.add("metric population_error", "1 - |<0|psi_end>|^2 after both sequences");
    out.metadata.add("metric phase_error", "|arg <0|psi_end>| after both sequences, rad");
    out.metadata.add("metric rabi_ratio",
                     "second-sequence pump (STIRAP) or chirped pulse (ARP) amplitude over the first");
    out.plots.push_back({"population_error", Plot{sc.name, "Rabi frequency ratio", "population error", std::move(pop)}});
    out.plots.push_back({"phase_error", Plot{sc.name, "Rabi frequency ratio", "phase error (rad)", std::move(phase)}});
}

void compute_phi_sweep(const Scenario &sc, ScenarioOutput &out) {
    const std::vector<int> n_list = single_counts(sc);
    const InterferenceResult r = interference_sweep(sc.protocol->params, sc.grid, n_list, sc.integrator);

    out.table.columns.push_back("phi_rad");
    for (int n : n_list) {
        out.table.columns.push_back("p1_N" + std::to_string(n));
    }
    for (int n : n_list) {
        out.table.columns.push_back("leakage_N" + std::to_string(n));
    }
    out.table.columns.push_back("rabi_reference");
    out.table.columns.push_back("cos2_half_phi");

    std::vector<Series> series;
    for (int n : n_list) {
        series.push_back({"N=" + std::to_string(n), sc.grid, {}});
    }
    Series reference{"two-level Rabi", sc.grid, r.rabi_reference};
    for (std::size_t i = 0; i < sc.grid.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        std::vector<double> row{sc.grid[i]};
        for (std::size_t j = 0; j < n_list.size(); ++j) {
            row.push_back(r.p_one(ii, static_cast<Eigen::Index>(j)));
            series[j].y.push_back(r.p_one(ii, static_cast<Eigen::Index>(j)));
        }
        for (std::size_t j = 0; j < n_list.size(); ++j) {
            row.push_back(r.leakage(ii, static_cast<Eigen::Index>(j)));
        }
        const double c = std::cos(sc.grid[i] / 2.0);
        row.push_back(r.rabi_reference[i]);
        row.push_back(c * c);
        out.table.rows.push_back(std::move(row));
    }
    series.push_back(std::move(reference));
    out.metadata.add("metric p1", "P(|1>) after mw_single_qubit(pi/2, 0) then mw_single_qubit(pi/2, phi) from |0>");
    out.metadata.add("metric leakage", "norm squared minus decoded logical population");
    out.metadata.add("metric rabi_reference", "same two rotations on a plain two-level atom");
    out.plots.push_back({"", Plot{sc.name, "phi (rad)", "P(|1>)", std::move(series)}});
}

std::string compare_label(const ProtocolSpec &spec) {
    std::string label(to_string(spec.name));
    if (spec.name == ProtocolName::load_single_atom) {
        label += "_" + std::string(to_string(spec.params.excitation));
    }
    return label;
}

void compute_poisson(const Scenario &sc, ScenarioOutput &out) {
    const std::vector<double> weights = poisson_distribution(sc.nbar, sc.n_max);
    out.table.columns = {"N", "poisson_probability"};
    std::vector<LoadingStats> stats;
    std::vector<std::string> labels;
    for (const auto &spec : sc.compare) {
        stats.push_back(single_atom_loading_stats(sc.nbar, spec, sc.n_max, sc.integrator));
        labels.push_back(compare_label(spec));
    }
    // Two entries of the same protocol would collide; number them.
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) {
            if (labels[j] == labels[i]) {
                labels[j] += "_" + std::to_string(j);
            }
        }
    }
    for (std::size_t k = 0; k < stats.size(); ++k) {
        out.table.columns.push_back("error_" + labels[k]);
        if (sc.compare[k].name == ProtocolName::pi_pulse_reference) {
            out.table.columns.push_back("closed_form_" + labels[k]);
        }
    }
    std::vector<Series> series;
    for (std::size_t k = 0; k < stats.size(); ++k) {
        series.push_back({labels[k], {}, {}});
    }
    for (int n = 0; n <= sc.n_max; ++n) {
        std::vector<double> row{static_cast<double>(n), weights[static_cast<std::size_t>(n)]};
        for (std::size_t k = 0; k < stats.size(); ++k) {
            const LoadingRow &lr = stats[k].rows.at(static_cast<std::size_t>(n));
            row.push_back(lr.error);
            if (sc.compare[k].name == ProtocolName::pi_pulse_reference) {
                row.push_back(lr.closed_form.value_or(kNaN));
            }
            series[k].x.push_back(n);
            series[k].y.push_back(lr.error);
        }
        out.table.rows.push_back(std::move(row));
    }
    out.metadata.add("metric poisson_probability", "exp(-nbar) nbar^N / N!");
    out.metadata.add("metric error", "1 - loading success (load_single_atom) or 1 - P(single Rydberg); 1 at N = 0");
    out.metadata.add("metric mean_error", "sum over N >= 1 of P(N) error(N) / (1 - P(0))");
    std::ostringstream summary;
    summary << "P(0)=" << format_double(weights[0]) << '\n';
    for (std::size_t k = 0; k < stats.size(); ++k) {
        summary << labels[k] << ": mean_error=" << format_double(stats[k].mean_error)
                << " mean_error_with_empty=" << format_double(stats[k].mean_error_with_empty) << '\n';
    }
    out.metadata.add("summary", summary.str());
    if (!series.empty()) {
        out.plots.push_back({"", Plot{sc.name, "atom number N", "error", std::move(series)}});
    }
}

}  // namespace

ScenarioOutput compute_scenario(const Scenario &sc) {
    ScenarioOutput out;
    out.metadata.add("tool", "blockade " + std::string(version()));
    out.metadata.add("scenario", serialize_scenario(sc));
    out.metadata.add("integrator", integrator_line(sc.integrator));
    out.metadata.add("units", "time us; frequencies quoted as omega/2pi in MHz; phases rad");
    switch (sc.kind) {
        case ScenarioKind::simulate: compute_simulate(sc, out); break;
        case ScenarioKind::protocol: compute_protocol(sc, out); break;
        case ScenarioKind::truth_table: compute_truth_table(sc, out); break;
        case ScenarioKind::sweep:
            if (sc.axis == SweepAxis::rabi_ratio) {
                compute_ratio_sweep(sc, out);
            } else {
                compute_phi_sweep(sc, out);
            }
            break;
        case ScenarioKind::poisson: compute_poisson(sc, out); break;
    }
    if (!out.failures.empty()) {
        std::string joined;
        for (const auto &f : out.failures) {
            joined += f + "\n";
        }
        out.metadata.add("integration failures", joined);
    }
    return out;
}

RunResult run_scenario(Scenario scenario, const RunOptions &options) {
    RunResult result;
    ScenarioOutput out;
    try {
        if (options.rtol) {
            scenario.integrator.rtol = *options.rtol;
        }
        scenario.validate();
        out = compute_scenario(scenario);
    } catch (const IntegrationError &e) {
        return {ExitCode::integration, e.what(), {}};
    } catch (const ValidationError &e) {
        return {ExitCode::validation, e.what(), {}};
    } catch (const BlockedTransitionError &e) {
        return {ExitCode::validation, e.what(), {}};
    }

    try {
        std::filesystem::create_directories(options.out_dir);
        const auto csv = options.out_dir / (scenario.name + ".csv");
        write_text_file(csv, render_csv(out.metadata, out.table));
        result.files.push_back(csv);
        if (options.plot && scenario.output.plot) {
            for (const auto &[suffix, plot] : out.plots) {
                const auto svg = options.out_dir / (scenario.name + (suffix.empty() ? "" : "_" + suffix) + ".svg");
                write_text_file(svg, render_svg(plot));
                result.files.push_back(svg);
            }
        }
    } catch (const OutputError &e) {
        return {ExitCode::output, e.what(), result.files};
    } catch (const std::filesystem::filesystem_error &e) {
        return {ExitCode::output, e.what(), result.files};
    }

    if (!out.failures.empty()) {
        result.code = ExitCode::integration;
        result.message = std::to_string(out.failures.size()) + " sweep point(s) failed to integrate: " +
                         out.failures.front();
    }
    return result;
}

}  // namespace blockade

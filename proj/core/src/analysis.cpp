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


#include "blockade/analysis.hpp"

#include <cmath>
#include <numbers>

#include "blockade/errors.hpp"
#include "blockade/units.hpp"
#include "parallel.hpp"

namespace blockade {

double single_rydberg_probability(const Eigen::VectorXcd &psi, const RegisterBasis &basis) {
    double p = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        if (basis.rydberg_count(i) == 1) {
            p += std::norm(psi[static_cast<Eigen::Index>(i)]);
        }
    }
    return p;
}

std::vector<double> excitation_probability(const Trajectory &trajectory, const RegisterBasis &basis) {
    std::vector<double> out;
    out.reserve(trajectory.states.size());
    for (const auto &psi : trajectory.states) {
        out.push_back(single_rydberg_probability(psi, basis));
    }
    return out;
}

PopulationPartition partition(const Eigen::VectorXcd &psi, const RegisterBasis &basis) {
    PopulationPartition out;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const double p = std::norm(psi[static_cast<Eigen::Index>(i)]);
        if (basis.rydberg_count(i) > 0) {
            out.rydberg += p;
            continue;
        }
        bool excited = false;
        for (std::size_t e = 0; e < basis.num_ensembles() && !excited; ++e) {
            excited = basis.ensemble(e).scheme.contains(Level::e) && basis.count(i, e, Level::e) > 0;
        }
        (excited ? out.intermediate : out.ground) += p;
    }
    return out;
}

std::vector<double> poisson_distribution(double nbar, int n_max) {
    if (!(nbar > 0.0) || !std::isfinite(nbar)) {
        throw ValidationError("nbar must be positive");
    }
    if (n_max < 0) {
        throw ValidationError("n_max must be >= 0");
    }
    std::vector<double> p;
    p.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n) {
        p.push_back(std::exp(-nbar + n * std::log(nbar) - std::lgamma(n + 1.0)));
    }
    return p;
}

double gate_phase_error(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &ideal) {
    if (u.rows() != ideal.rows() || u.cols() != ideal.cols()) {
        throw ValidationError("gate matrices differ in shape");
    }
    std::complex<double> overlap = 0.0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            if (std::abs(ideal(r, c)) > 0.5) {
                overlap += std::conj(ideal(r, c)) * u(r, c);
            }
        }
    }
    const double global = std::arg(overlap);
    double worst = 0.0;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
        for (Eigen::Index c = 0; c < u.cols(); ++c) {
            if (std::abs(ideal(r, c)) > 0.5) {
                const double d = wrap_phase(std::arg(u(r, c)) - std::arg(ideal(r, c)) - global);
                worst = std::max(worst, std::abs(d));
            }
        }
    }
    return worst;
}

TruthTable truth_table(const ProtocolSpec &spec, const IntegratorOptions &options) {
    if (!is_gate(spec.name)) {
        throw ValidationError(std::string(to_string(spec.name)) + " is not a gate protocol");
    }
    const auto built = build_protocol(spec, options);
    const std::size_t k = built.logical_states.size();
    TruthTable table;
    table.labels = built.logical_labels;
    table.target = ideal_gate(spec);
    table.amplitudes = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
    table.leakage.assign(k, 0.0);
    std::vector<ProtocolResult> results(k);
    detail::parallel_for(k, [&](std::size_t j) {
        Eigen::VectorXcd in = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(k));
        in[static_cast<Eigen::Index>(j)] = 1.0;
        results[j] = run_gate(built, spec, in, options);
    });
    for (std::size_t j = 0; j < k; ++j) {
        table.amplitudes.col(static_cast<Eigen::Index>(j)) = results[j].output;
        table.leakage[j] = results[j].leakage;
        table.leakage_flagged = table.leakage_flagged || results[j].leakage_flagged;
    }
    table.probabilities = table.amplitudes.cwiseAbs2();
    table.max_deviation = (table.probabilities - table.target.cwiseAbs2()).cwiseAbs().maxCoeff();
    table.phase_error = gate_phase_error(table.amplitudes, table.target);
    const auto n = static_cast<Eigen::Index>(k);
    table.unitarity_error =
        (table.amplitudes.adjoint() * table.amplitudes - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
    return table;
}

TruthTable truth_table(ProtocolSpec spec, int n_control, int n_target, const IntegratorOptions &options) {
    if (!is_two_qubit(spec.name)) {
        throw ValidationError("truth_table(spec, n_control, n_target) needs a two-qubit gate");
    }
    spec.n_atoms = {n_control, n_target};
    return truth_table(spec, options);
}

DoubleSequenceErrors double_sequence_errors(const ProtocolSpec &spec, const IntegratorOptions &options) {
    if (spec.name != ProtocolName::double_arp && spec.name != ProtocolName::double_stirap) {
        throw ValidationError("double-sequence errors need double_arp or double_stirap");
    }
    const auto built = build_protocol(spec, options);
    HamiltonianModel model(built.basis, built.schedule);
    const auto traj = evolve(model, built.initial, built.schedule.window(), Sampling::events(), options);
    const std::complex<double> g = traj.final_state()[static_cast<Eigen::Index>(built.basis.ground_index())];
    return {1.0 - std::norm(g), std::abs(wrap_phase(std::arg(g))), traj.norm_drift()};
}

SweepResult rabi_ratio_sweep(const ProtocolSpec &spec, const std::vector<double> &grid, const std::vector<int> &n_list,
                             const IntegratorOptions &options) {
    if (grid.empty() || n_list.empty()) {
        throw ValidationError("sweep needs a non-empty grid and N list");
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] <= 2.0)) {
            throw ValidationError("ratio grid must lie in (0, 2]");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw ValidationError("ratio grid must be strictly increasing");
        }
    }
    SweepResult result;
    result.grid = grid;
    result.n_list = n_list;
    result.points.resize(grid.size() * n_list.size());
    detail::parallel_for(result.points.size(), [&](std::size_t k) {
        SweepPoint &pt = result.points[k];
        pt.ratio = grid[k / n_list.size()];
        pt.n_atoms = n_list[k % n_list.size()];
        ProtocolSpec local = spec;
        local.params.rabi_ratio = pt.ratio;
        local.n_atoms = {pt.n_atoms};
        try {
            pt.errors = double_sequence_errors(local, options);
            pt.ok = true;
        } catch (const IntegrationError &e) {
            pt.failure = e.what();
        }
    });
    return result;
}

InterferenceResult interference_sweep(const ProtocolParameters &params, const std::vector<double> &phi,
                                      const std::vector<int> &n_list, const IntegratorOptions &options) {
    if (phi.empty() || n_list.empty()) {
        throw ValidationError("interference sweep needs phases and N values");
    }
    InterferenceResult out;
    out.phi = phi;
    out.n_list = n_list;
    const auto rows = static_cast<Eigen::Index>(phi.size());
    const auto cols = static_cast<Eigen::Index>(n_list.size());
    out.p_one = Eigen::MatrixXd::Zero(rows, cols);
    out.leakage = Eigen::MatrixXd::Zero(rows, cols);
    out.rabi_reference.assign(phi.size(), 0.0);

    detail::parallel_for(phi.size() * n_list.size(), [&](std::size_t k) {
        const std::size_t i = k / n_list.size();
        const std::size_t j = k % n_list.size();
        ProtocolSpec first{ProtocolName::mw_single_qubit, params, {n_list[j]}};
        first.params.theta = 0.5 * std::numbers::pi;
        first.params.phi = 0.0;
        ProtocolSpec second = first;
        second.params.phi = phi[i];
        const auto a = build_protocol(first, options);
        const auto b = build_protocol(second, options);
        const PulseSchedule both = a.schedule.then(b.schedule, params.guard);
        HamiltonianModel model(a.basis, both);
        const auto psi = evolve(model, StateVector{a.initial.amplitudes, both.window().start}, both.window(),
                                Sampling::events(), options)
                             .final_state();
        const std::complex<double> zero = a.logical_states[0].dot(psi);
        const std::complex<double> one = a.logical_states[1].dot(psi);
        out.p_one(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = std::norm(one);
        out.leakage(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            std::max(0.0, psi.squaredNorm() - std::norm(zero) - std::norm(one));
    });

    // Reference: the same two rotations as bare Rabi pulses on one two-level atom.
    const auto basis = enumerate_basis(LevelScheme({Level::g0, Level::r0}), 1);
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const Transition tr{0, Level::g0, Level::r0};
        auto p1 = make_rabi(tr, params.omega_mw, 0.5 * std::numbers::pi, 0.0, 0.0);
        auto p2 = make_rabi(tr, params.omega_mw, 0.5 * std::numbers::pi, phi[i], p1.window.end);
        const PulseSchedule s({p1, p2}, Window{0.0, p2.window.end});
        HamiltonianModel model(basis, s);
        const auto psi =
            evolve(model, StateVector::basis_state(basis.dim(), basis.ground_index(), 0.0), s.window(),
                   Sampling::events(), options)
                .final_state();
        out.rabi_reference[i] = single_rydberg_probability(psi, basis);
    }
    return out;
}

}  // namespace blockade

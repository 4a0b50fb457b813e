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

// Observables reduced from trajectories and gate runs: excitation probability,
// population partition, truth tables, double-sequence errors, sweeps, Poisson weights.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blockade/basis.hpp"
#include "blockade/dynamics.hpp"
#include "blockade/integrator.hpp"
#include "blockade/protocols.hpp"

namespace blockade {

/// Sum of |amplitude|^2 over states holding exactly one Rydberg excitation.
double single_rydberg_probability(const Eigen::VectorXcd &psi, const RegisterBasis &basis);
std::vector<double> excitation_probability(const Trajectory &trajectory, const RegisterBasis &basis);

/// Every basis state falls in exactly one class: any Rydberg atom -> rydberg; else any
/// atom in e -> intermediate; else ground.
struct PopulationPartition {
    double ground = 0.0;
    double intermediate = 0.0;
    double rydberg = 0.0;

    double total() const { return ground + intermediate + rydberg; }
};

PopulationPartition partition(const Eigen::VectorXcd &psi, const RegisterBasis &basis);

/// e^{-nbar} nbar^N / N! for N = 0..n_max.
std::vector<double> poisson_distribution(double nbar, int n_max);

struct TruthTable {
    std::vector<std::string> labels;
    Eigen::MatrixXd probabilities;   ///< (out, in) = P(out | in)
    Eigen::MatrixXcd amplitudes;     ///< (out, in)
    Eigen::MatrixXcd target;         ///< ideal gate
    std::vector<double> leakage;     ///< per input
    bool leakage_flagged = false;
    double max_deviation = 0.0;      ///< max |P - |target|^2|
    double phase_error = 0.0;        ///< gate_phase_error(amplitudes, target)
    double unitarity_error = 0.0;    ///< max |U^dagger U - I|
};

/// Runs every logical basis input of a two-qubit gate (or single-qubit gate when
/// n_target is absent) and compares against ideal_gate.
TruthTable truth_table(const ProtocolSpec &spec, const IntegratorOptions &options = {});
TruthTable truth_table(ProtocolSpec spec, int n_control, int n_target, const IntegratorOptions &options = {});

/// Max angular deviation of the entries of `u` from the nonzero entries of `ideal`
/// (|ideal| > 1/2) after removing the best global phase.
double gate_phase_error(const Eigen::MatrixXcd &u, const Eigen::MatrixXcd &ideal);

/// Errors of a double_arp / double_stirap run that should return |0> to itself.
struct DoubleSequenceErrors {
    double population_error = 0.0;  ///< 1 - |<0|psi_end>|^2
    double phase_error = 0.0;       ///< |arg <0|psi_end>|
    double norm_drift = 0.0;
};

DoubleSequenceErrors double_sequence_errors(const ProtocolSpec &spec, const IntegratorOptions &options = {});

struct SweepPoint {
    double ratio = 0.0;
    int n_atoms = 0;
    bool ok = false;
    std::string failure;
    DoubleSequenceErrors errors;
};

struct SweepResult {
    std::string axis = "rabi_ratio";
    std::vector<double> grid;
    std::vector<int> n_list;
    std::vector<SweepPoint> points;  ///< grid-major: points[i * n_list.size() + j]

    const SweepPoint &at(std::size_t grid_index, std::size_t n_index) const {
        return points.at(grid_index * n_list.size() + n_index);
    }
};

/// Scales the second sequence's pump (STIRAP) or ARP amplitude by each ratio. Points run
/// in parallel; integration failures are recorded per point.
SweepResult rabi_ratio_sweep(const ProtocolSpec &spec, const std::vector<double> &grid, const std::vector<int> &n_list,
                             const IntegratorOptions &options = {});

struct InterferenceResult {
    std::vector<double> phi;
    std::vector<int> n_list;
    Eigen::MatrixXd p_one;            ///< (phi index, n index): P(|1>) after both gates
    Eigen::MatrixXd leakage;          ///< same layout
    std::vector<double> rabi_reference;  ///< plain two-level R(pi/2,phi) R(pi/2,0) |0>
};

/// Two mw_single_qubit rotations, (pi/2, 0) then (pi/2, phi), played back to back on |0>.
InterferenceResult interference_sweep(const ProtocolParameters &params, const std::vector<double> &phi,
                                      const std::vector<int> &n_list, const IntegratorOptions &options = {});

}  // namespace blockade

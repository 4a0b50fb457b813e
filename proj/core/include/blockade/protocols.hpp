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

// Named pulse protocols: adiabatic passages, phase-compensated double sequences,
// single-atom loading and ensemble-qubit gates, with logical-state bookkeeping.
//
// Logical encoding. |0> is every atom in g0. For the microwave gates |1> is
// e^{i chi_N} times the symmetric state with one atom in g1; for the all-optical gates
// it is e^{i theta_N} times the symmetric state with one atom in g1 and one in g2.
// chi_N and theta_N are calibrated numerically for each N.

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "blockade/basis.hpp"
#include "blockade/dynamics.hpp"
#include "blockade/integrator.hpp"
#include "blockade/pulse.hpp"
#include "blockade/units.hpp"

namespace blockade {

enum class ProtocolName {
    arp_single,
    stirap_single,
    double_arp,
    double_stirap,
    load_single_atom,
    mw_single_qubit,
    mw_cnot,
    mw_cz,
    opt_single_qubit,
    opt_cnot,
    opt_cz,
    pi_pulse_reference,
};

std::string_view to_string(ProtocolName name);
ProtocolName protocol_from_string(std::string_view name);
const std::vector<ProtocolName> &all_protocols();

bool is_gate(ProtocolName name);
bool is_two_qubit(ProtocolName name);
bool is_all_optical(ProtocolName name);

enum class Passage { stirap, arp };

std::string_view to_string(Passage passage);
Passage passage_from_string(std::string_view name);

struct ProtocolParameters {
    /// Chirped pulse; center, transition and window are placed by the protocol.
    ArpParams arp;
    /// STIRAP pair; pivot, direction, levels, ensemble and window are placed by the protocol.
    StirapParams stirap;

    double theta = 0.0;  ///< single-qubit rotation angle
    double phi = 0.0;    ///< single-qubit rotation phase

    Frequency omega_pi = Frequency::from_mhz(5.0);  ///< optical Rabi pulses
    Frequency omega_mw = Frequency::from_mhz(5.0);  ///< microwave r0 <-> r1
    double guard = 0.5;                              ///< gap between sequential pulses, us

    bool sign_switch = true;   ///< second STIRAP pair runs at -delta
    bool phase_flip = true;    ///< second ARP pulse carries a pi phase
    bool mirrored = true;      ///< second STIRAP pair in mirrored (pump-first) order
    double rabi_ratio = 1.0;   ///< second-sequence pump / ARP amplitude relative to the first
    bool sequential_microwave = false;

    Passage excitation = Passage::stirap;  ///< load_single_atom

    int reference_n = 5;                                   ///< pi_pulse_reference
    Frequency omega_reference = Frequency::from_mhz(2.0);  ///< pi_pulse_reference
    std::optional<double> area;  ///< single-atom pulse area; default pi / sqrt(reference_n)

    friend bool operator==(const ProtocolParameters &, const ProtocolParameters &) = default;
};

struct ProtocolSpec {
    ProtocolName name = ProtocolName::arp_single;
    ProtocolParameters params;
    std::vector<int> n_atoms{1};  ///< one entry per ensemble; control first

    /// Throws ValidationError if parameters or atom counts do not fit the protocol.
    void validate() const;

    friend bool operator==(const ProtocolSpec &, const ProtocolSpec &) = default;
};

struct GatePhaseRecord {
    int n_atoms = 1;
    double chi = 0.0;    ///< one forward passage
    double theta = 0.0;  ///< chi plus the reverse passage of the all-optical |1>
};

struct BuiltProtocol {
    RegisterBasis basis;
    PulseSchedule schedule;
    StateVector initial;
    /// Logical basis in physical coordinates, phases included. Labels "0","1" or "00".."11"
    /// (control digit first); empty for protocols without a logical encoding.
    std::vector<std::string> logical_labels;
    std::vector<Eigen::VectorXcd> logical_states;
    /// Physical inputs for each logical basis state as produced by the preparation pulses
    /// (global phase removed, encoding phase applied). Equal to logical_states up to
    /// preparation error.
    std::vector<Eigen::VectorXcd> prepared_states;
    std::vector<GatePhaseRecord> phases;  ///< one per ensemble for gates
};

BuiltProtocol build_protocol(const ProtocolSpec &spec, const IntegratorOptions &options = {});

struct ProtocolResult {
    Eigen::VectorXcd input;    ///< logical amplitudes
    Eigen::VectorXcd output;   ///< decoded logical amplitudes at t_end
    double leakage = 0.0;      ///< ||psi||^2 minus the decoded logical population
    bool leakage_flagged = false;
    double norm_drift = 0.0;
    IntegratorStats stats;
};

inline constexpr double kLeakageThreshold = 1e-2;

/// Prepares the physical input from logical amplitudes, runs the schedule and decodes.
ProtocolResult run_gate(const ProtocolSpec &spec, const Eigen::VectorXcd &logical_input,
                        const IntegratorOptions &options = {});
ProtocolResult run_gate(const BuiltProtocol &built, const ProtocolSpec &spec, const Eigen::VectorXcd &logical_input,
                        const IntegratorOptions &options = {});

/// Ideal logical matrix in this library's conventions.
/// R(theta, phi) = [[cos, i e^{-i phi} sin], [i e^{i phi} sin, cos]] of theta/2.
Eigen::MatrixXcd ideal_gate(const ProtocolSpec &spec);


/// chi_N from the forward STIRAP of `params`; theta_N also when `all_optical`.
GatePhaseRecord calibrate_phases(const ProtocolParameters &params, int n_atoms, bool all_optical,
                                 const IntegratorOptions &options = {});
std::vector<GatePhaseRecord> gate_phase_table(const ProtocolParameters &params, const std::vector<int> &n_list,
                                              bool all_optical, const IntegratorOptions &options = {});

/// Phase of the all-ground amplitude along a trajectory.
struct GroundPhaseSeries {
    std::vector<double> times;
    std::vector<double> phase;    ///< wrapped; NaN where undefined
    std::vector<bool> defined;    ///< |amplitude| > threshold
    std::optional<double> final_phase;
};

inline constexpr double kPhaseAmplitudeThreshold = 1e-6;

GroundPhaseSeries extract_phases(const Trajectory &trajectory, const RegisterBasis &basis);

/// Probability of exactly one atom left in g1 with nothing in e or Rydberg levels,
/// i.e. success of loading after ideal push-out of g0.
double loading_success(const Eigen::VectorXcd &psi, const RegisterBasis &basis);

struct LoadingRow {
    int n_atoms = 0;
    double probability = 0.0;  ///< Poisson weight
    double error = 0.0;        ///< 1 - success (1 for N = 0)
    std::optional<double> closed_form;  ///< pi_pulse_reference only
};

struct LoadingStats {
    double nbar = 0.0;
    std::vector<LoadingRow> rows;
    double mean_error = 0.0;          ///< sum over N >= 1 of P(N) error(N) / (1 - P(0))
    double mean_error_with_empty = 0.0;  ///< N = 0 counted as a failure
};

/// Per-N excitation or loading error of `spec` (load_single_atom or pi_pulse_reference,
/// also arp_single / stirap_single) under Poisson statistics.
LoadingStats single_atom_loading_stats(double nbar, const ProtocolSpec &spec, int n_max = 15,
                                       const IntegratorOptions &options = {});

/// 1 - sin^2(sqrt(N) area / 2): excitation error of a resonant square pulse of
/// single-atom area `area` on N atoms.
double pi_pulse_closed_form_error(int n_atoms, double area);

/// Single-atom area of the pi_pulse_reference pulse.
double reference_area(const ProtocolParameters &params);

}  // namespace blockade

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


#include "blockade/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <numbers>

#include "blockade/analysis.hpp"
#include "blockade/errors.hpp"
#include "parallel.hpp"

namespace blockade {

namespace {

constexpr double kPi = std::numbers::pi;

struct NameEntry {
    ProtocolName name;
    std::string_view text;
};

constexpr NameEntry kNames[] = {
    {ProtocolName::arp_single, "arp_single"},
    {ProtocolName::stirap_single, "stirap_single"},
    {ProtocolName::double_arp, "double_arp"},
    {ProtocolName::double_stirap, "double_stirap"},
    {ProtocolName::load_single_atom, "load_single_atom"},
    {ProtocolName::mw_single_qubit, "mw_single_qubit"},
    {ProtocolName::mw_cnot, "mw_cnot"},
    {ProtocolName::mw_cz, "mw_cz"},
    {ProtocolName::opt_single_qubit, "opt_single_qubit"},
    {ProtocolName::opt_cnot, "opt_cnot"},
    {ProtocolName::opt_cz, "opt_cz"},
    {ProtocolName::pi_pulse_reference, "pi_pulse_reference"},
};

LevelScheme scheme_for(const ProtocolSpec &spec) {
    using L = Level;
    switch (spec.name) {
        case ProtocolName::arp_single:
        case ProtocolName::double_arp:
        case ProtocolName::pi_pulse_reference: return LevelScheme({L::g0, L::r0});
        case ProtocolName::stirap_single:
        case ProtocolName::double_stirap: return LevelScheme({L::g0, L::e, L::r0});
        case ProtocolName::load_single_atom:
            return spec.params.excitation == Passage::stirap ? LevelScheme({L::g0, L::g1, L::e, L::r0})
                                                             : LevelScheme({L::g0, L::g1, L::r0});
        case ProtocolName::mw_single_qubit:
        case ProtocolName::mw_cnot: return LevelScheme({L::g0, L::g1, L::e, L::r0, L::r1});
        case ProtocolName::mw_cz: return LevelScheme({L::g0, L::g1, L::r0, L::r1});
        case ProtocolName::opt_single_qubit:
        case ProtocolName::opt_cnot: return LevelScheme({L::g0, L::g1, L::g2, L::e, L::r0});
        case ProtocolName::opt_cz: return LevelScheme({L::g0, L::g1, L::g2, L::r0});
    }
    throw ValidationError("unknown protocol");
}

/// Length of one clipped STIRAP passage: from the earlier pulse's -4 tau tail to the pivot.
double passage_length(const StirapParams &p) { return std::max(p.t1, p.t2) + 4.0 * p.tau; }

/// One STIRAP passage occupying [start, start + passage_length]. Forward passages end at
/// their pivot, reverse ones start at it, so back-to-back passages mirror each other.
StirapPair stirap_passage(const ProtocolParameters &params, int ensemble, Level ground, Level rydberg, bool reverse,
                          bool negative_delta, double start, double pump_scale = 1.0, bool mirrored = true) {
    StirapParams p = params.stirap;
    const double length = passage_length(p);
    p.ensemble = ensemble;
    p.ground = ground;
    p.intermediate = Level::e;
    p.rydberg = rydberg;
    p.omega1 = Frequency::from_mhz(p.omega1.mhz() * pump_scale);
    if (negative_delta) {
        p.delta = Frequency::from_mhz(-p.delta.mhz());
    }
    if (!reverse) {
        p.reversed = false;
        p.pivot = start + length;
    } else if (mirrored) {
        p.reversed = true;
        p.pivot = start;
    } else {
        // Same envelope order as the forward passage, shifted by one passage length.
        p.reversed = false;
        p.pivot = start + length;
    }
    p.window = Window{start, start + length};
    return make_stirap_pair(p);
}

/// Sequential pulse placement with guard gaps.
class Timeline {
 public:
    explicit Timeline(double guard) : guard_(guard) {}

    double cursor() const { return cursor_; }

    void add(PulseSegment seg) {
        cursor_ = seg.window.end + guard_;
        end_ = std::max(end_, seg.window.end);
        segments_.push_back(std::move(seg));
    }
    /// Adds segments that share the current slot; the cursor moves past the latest.
    void add_parallel(std::vector<PulseSegment> segs) {
        double last = cursor_;
        for (auto &seg : segs) {
            last = std::max(last, seg.window.end);
            end_ = std::max(end_, seg.window.end);
            segments_.push_back(std::move(seg));
        }
        cursor_ = last + guard_;
    }
    void rabi(const Transition &tr, Frequency omega, double area, double phase) {
        add(make_rabi(tr, omega, area, phase, cursor_));
    }
    void stirap(const ProtocolParameters &params, int ensemble, Level ground, Level rydberg, bool reverse,
                bool negative_delta) {
        auto pair = stirap_passage(params, ensemble, ground, rydberg, reverse, negative_delta, cursor_);
        add_parallel({pair.pump, pair.stokes});
    }

    PulseSchedule schedule() const { return PulseSchedule(segments_, Window{0.0, end_}); }

 private:
    double guard_;
    double cursor_ = 0.0;
    double end_ = 0.0;
    std::vector<PulseSegment> segments_;
};

PulseSchedule build_schedule(const ProtocolSpec &spec) {
    const auto &p = spec.params;
    using L = Level;
    switch (spec.name) {
        case ProtocolName::arp_single: {
            ArpParams a = p.arp;
            a.transition = {0, L::g0, L::r0};
            auto seg = make_arp(a);
            const Window w = seg.window;
            return PulseSchedule({std::move(seg)}, w);
        }
        case ProtocolName::stirap_single: {
            StirapParams s = p.stirap;
            s.ensemble = 0;
            s.ground = L::g0;
            s.intermediate = L::e;
            s.rydberg = L::r0;
            s.reversed = false;
            auto pair = make_stirap_pair(s);
            const Window w = pair.pump.window;
            return PulseSchedule({pair.pump, pair.stokes}, w);
        }
        case ProtocolName::double_arp: {
            const double half = 4.0 * p.arp.tau;
            ArpParams first = p.arp;
            first.transition = {0, L::g0, L::r0};
            first.center = -half;
            first.window = Window{-2.0 * half, 0.0};
            ArpParams second = first;
            second.center = half;
            second.window = Window{0.0, 2.0 * half};
            second.omega = Frequency::from_mhz(p.arp.omega.mhz() * p.rabi_ratio);
            if (p.phase_flip) {
                second.phase += kPi;
            }
            return PulseSchedule({make_arp(first), make_arp(second)}, Window{-2.0 * half, 2.0 * half});
        }
        case ProtocolName::double_stirap: {
            const double length = passage_length(p.stirap);
            auto fwd = stirap_passage(p, 0, L::g0, L::r0, false, false, -length);
            auto rev = stirap_passage(p, 0, L::g0, L::r0, true, p.sign_switch, 0.0, p.rabi_ratio, p.mirrored);
            return PulseSchedule({fwd.pump, fwd.stokes, rev.pump, rev.stokes}, Window{-length, length});
        }
        case ProtocolName::load_single_atom: {
            Timeline tl(p.guard);
            if (p.excitation == Passage::stirap) {
                tl.stirap(p, 0, L::g0, L::r0, false, false);
            } else {
                ArpParams a = p.arp;
                a.transition = {0, L::g0, L::r0};
                a.center = 4.0 * a.tau;
                a.window = Window{0.0, 8.0 * a.tau};
                tl.add(make_arp(a));
            }
            tl.rabi({0, L::r0, L::g1}, p.omega_pi, kPi, 0.0);
            return tl.schedule();
        }
        case ProtocolName::pi_pulse_reference: {
            auto seg = make_rabi({0, L::g0, L::r0}, p.omega_reference, reference_area(p), 0.0, 0.0);
            const Window w = seg.window;
            return PulseSchedule({std::move(seg)}, w);
        }
        case ProtocolName::mw_single_qubit: {
            Timeline tl(p.guard);
            tl.rabi({0, L::g1, L::r1}, p.omega_pi, kPi, 0.0);
            tl.stirap(p, 0, L::g0, L::r0, false, false);
            if (p.theta > 0.0) {
                // Phase offset pi/2 and the closing pi phase make the logical map exactly R(theta, phi).
                tl.rabi({0, L::r0, L::r1}, p.omega_mw, p.theta, p.phi + 0.5 * kPi);
            }
            tl.stirap(p, 0, L::g0, L::r0, true, p.sign_switch);
            tl.rabi({0, L::r1, L::g1}, p.omega_pi, kPi, kPi);
            return tl.schedule();
        }
        case ProtocolName::mw_cnot: {
            Timeline tl(p.guard);
            tl.rabi({0, L::g1, L::r0}, p.omega_pi, kPi, 0.0);
            tl.rabi({1, L::g1, L::r1}, p.omega_pi, kPi, 0.0);
            tl.stirap(p, 1, L::g0, L::r0, false, false);
            if (p.sequential_microwave) {
                tl.rabi({0, L::r0, L::r1}, p.omega_mw, kPi, 0.0);
                tl.rabi({1, L::r0, L::r1}, p.omega_mw, kPi, 0.0);
            } else {
                const double t = tl.cursor();
                tl.add_parallel({make_rabi({0, L::r0, L::r1}, p.omega_mw, kPi, 0.0, t),
                                 make_rabi({1, L::r0, L::r1}, p.omega_mw, kPi, 0.0, t)});
            }
            tl.stirap(p, 1, L::g0, L::r0, true, p.sign_switch);
            tl.rabi({1, L::r1, L::g1}, p.omega_pi, kPi, 0.0);
            tl.rabi({0, L::r1, L::g1}, p.omega_pi, kPi, 0.0);
            return tl.schedule();
        }
        case ProtocolName::mw_cz: {
            Timeline tl(p.guard);
            tl.rabi({0, L::g1, L::r0}, p.omega_pi, kPi, 0.0);
            tl.rabi({1, L::g1, L::r1}, p.omega_pi, 2.0 * kPi, 0.0);
            tl.rabi({0, L::r0, L::g1}, p.omega_pi, kPi, 0.0);
            return tl.schedule();
        }
        case ProtocolName::opt_single_qubit:
        case ProtocolName::opt_cnot: {
            const bool cnot = spec.name == ProtocolName::opt_cnot;
            const int target = cnot ? 1 : 0;
            const double theta = cnot ? kPi : p.theta;
            const double phi = cnot ? 0.0 : p.phi;
            Timeline tl(p.guard);
            if (cnot) {
                tl.rabi({0, L::g2, L::r0}, p.omega_pi, kPi, 0.0);
            }
            tl.rabi({target, L::g2, L::r0}, p.omega_pi, kPi, 0.0);
            tl.stirap(p, target, L::g0, L::r0, false, false);
            if (theta > 0.0) {
                tl.rabi({target, L::r0, L::g1}, p.omega_pi, theta, phi);
            }
            tl.stirap(p, target, L::g0, L::r0, true, p.sign_switch);
            // r -> g2 cleanup; the -pi/2 phase cancels the factor i of the pi pulse.
            tl.rabi({target, L::r0, L::g2}, p.omega_pi, kPi, -0.5 * kPi);
            if (cnot) {
                tl.rabi({0, L::r0, L::g2}, p.omega_pi, kPi, -0.5 * kPi);
            }
            return tl.schedule();
        }
        case ProtocolName::opt_cz: {
            Timeline tl(p.guard);
            tl.rabi({0, L::g2, L::r0}, p.omega_pi, kPi, 0.0);
            tl.rabi({1, L::g2, L::r0}, p.omega_pi, 2.0 * kPi, 0.0);
            tl.rabi({0, L::r0, L::g2}, p.omega_pi, kPi, 0.0);
            return tl.schedule();
        }
    }
    throw ValidationError("unknown protocol");
}

/// Occupation tuple of one ensemble: all atoms in g0 except the listed single atoms.
std::vector<int> occupation_with(const LevelScheme &scheme, int n_atoms, std::initializer_list<Level> singles) {
    std::vector<int> occ(scheme.size(), 0);
    occ[*scheme.slot_of(Level::g0)] = n_atoms - static_cast<int>(singles.size());
    for (Level l : singles) {
        occ[*scheme.slot_of(l)] += 1;
    }
    return occ;
}

std::vector<int> one_state(const ProtocolSpec &spec, const LevelScheme &scheme, int n_atoms) {
    return is_all_optical(spec.name) ? occupation_with(scheme, n_atoms, {Level::g1, Level::g2})
                                     : occupation_with(scheme, n_atoms, {Level::g1});
}

Eigen::VectorXcd evolve_final(const RegisterBasis &basis, const PulseSchedule &schedule, const Eigen::VectorXcd &psi0,
                              const IntegratorOptions &options) {
    HamiltonianModel model(basis, schedule);
    StateVector start{psi0, schedule.window().start};
    return evolve(model, start, schedule.window(), Sampling::events(), options).final_state();
}

/// |1'> of one ensemble produced by collective pi pulses from |0>, global phase removed.
Eigen::VectorXcd prepare_one(const ProtocolSpec &spec, const LevelScheme &scheme, int n_atoms,
                             const IntegratorOptions &options) {
    const auto basis = enumerate_basis(scheme, n_atoms);
    const auto &p = spec.params;
    Timeline tl(p.guard);
    auto collective_pi = [&](int ground_atoms, Level to) {
        tl.rabi({0, Level::g0, Level::r0}, p.omega_pi, kPi / std::sqrt(static_cast<double>(ground_atoms)), 0.0);
        tl.rabi({0, Level::r0, to}, p.omega_pi, kPi, 0.0);
    };
    collective_pi(n_atoms, Level::g1);
    if (is_all_optical(spec.name)) {
        collective_pi(n_atoms - 1, Level::g2);
    }
    Eigen::VectorXcd psi =
        evolve_final(basis, tl.schedule(), StateVector::basis_state(basis.dim(), basis.ground_index(), 0).amplitudes,
                     options);
    const auto target = static_cast<Eigen::Index>(basis.index_of(one_state(spec, scheme, n_atoms)));
    const std::complex<double> amp = psi[target];
    return psi * std::polar(1.0, -std::arg(amp));
}

/// Embeds per-ensemble vectors into the register basis as a product state.
Eigen::VectorXcd embed_product(const RegisterBasis &basis, const std::vector<RegisterBasis> &parts,
                               const std::vector<Eigen::VectorXcd> &vectors) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dim()));
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        std::complex<double> amp = 1.0;
        for (std::size_t e = 0; e < parts.size() && amp != 0.0; ++e) {
            auto occ = basis.occupation(i, e);
            auto local = parts[e].find(occ);
            amp = local ? amp * vectors[e][static_cast<Eigen::Index>(*local)] : 0.0;
        }
        out[static_cast<Eigen::Index>(i)] = amp;
    }
    return out;
}

}  // namespace

std::string_view to_string(ProtocolName name) {
    for (const auto &entry : kNames) {
        if (entry.name == name) {
            return entry.text;
        }
    }
    return "unknown";
}

ProtocolName protocol_from_string(std::string_view name) {
    for (const auto &entry : kNames) {
        if (entry.text == name) {
            return entry.name;
        }
    }
    throw ValidationError("unknown protocol '" + std::string(name) + "'");
}

const std::vector<ProtocolName> &all_protocols() {
    static const std::vector<ProtocolName> names = [] {
        std::vector<ProtocolName> out;
        for (const auto &entry : kNames) {
            out.push_back(entry.name);
        }
        return out;
    }();
    return names;
}

bool is_gate(ProtocolName name) {
    switch (name) {
        case ProtocolName::mw_single_qubit:
        case ProtocolName::mw_cnot:
        case ProtocolName::mw_cz:
        case ProtocolName::opt_single_qubit:
        case ProtocolName::opt_cnot:
        case ProtocolName::opt_cz: return true;
        default: return false;
    }
}

bool is_two_qubit(ProtocolName name) {
    return name == ProtocolName::mw_cnot || name == ProtocolName::mw_cz || name == ProtocolName::opt_cnot ||
           name == ProtocolName::opt_cz;
}

bool is_all_optical(ProtocolName name) {
    return name == ProtocolName::opt_single_qubit || name == ProtocolName::opt_cnot || name == ProtocolName::opt_cz;
}

std::string_view to_string(Passage passage) { return passage == Passage::stirap ? "stirap" : "arp"; }

Passage passage_from_string(std::string_view name) {
    if (name == "stirap") {
        return Passage::stirap;
    }
    if (name == "arp") {
        return Passage::arp;
    }
    throw ValidationError("unknown passage '" + std::string(name) + "' (expected stirap or arp)");
}

double reference_area(const ProtocolParameters &params) {
    return params.area.value_or(kPi / std::sqrt(static_cast<double>(params.reference_n)));
}

double pi_pulse_closed_form_error(int n_atoms, double area) {
    const double s = std::sin(0.5 * std::sqrt(static_cast<double>(n_atoms)) * area);
    return 1.0 - s * s;
}

void ProtocolSpec::validate() const {
    const std::size_t want = is_two_qubit(name) ? 2 : 1;
    if (n_atoms.size() != want) {
        throw ValidationError(std::string(to_string(name)) + " needs " + std::to_string(want) +
                              " ensemble atom count(s), got " + std::to_string(n_atoms.size()));
    }
    for (int n : n_atoms) {
        if (n < 1) {
            throw ValidationError("n_atoms must be >= 1");
        }
        if (is_all_optical(name) && n < 2) {
            throw ValidationError(std::string(to_string(name)) +
                                  " needs N >= 2: the all-optical |1> holds one atom in g1 and one in g2");
        }
    }
    const auto &p = params;
    auto positive = [](double v, const char *what) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError(std::string(what) + " must be positive");
        }
    };
    positive(p.stirap.tau, "stirap.tau");
    positive(p.arp.tau, "arp.tau");
    positive(p.omega_pi.mhz(), "omega_pi");
    positive(p.omega_mw.mhz(), "omega_mw");
    positive(p.omega_reference.mhz(), "omega_reference");
    positive(p.rabi_ratio, "rabi_ratio");
    if (p.rabi_ratio > 2.0) {
        throw ValidationError("rabi_ratio must lie in (0, 2]");
    }
    if (p.guard < 0.0 || !std::isfinite(p.guard)) {
        throw ValidationError("guard must be >= 0");
    }
    if (p.stirap.omega1.mhz() < 0.0 || p.stirap.omega2.mhz() < 0.0) {
        throw ValidationError("STIRAP Rabi frequencies must be >= 0");
    }
    if (p.stirap.t1 < 0.0 || p.stirap.t2 < 0.0) {
        throw ValidationError("STIRAP delays t1, t2 must be >= 0");
    }
    if (p.theta < 0.0 || !std::isfinite(p.theta) || !std::isfinite(p.phi)) {
        throw ValidationError("rotation angle theta must be >= 0 and phi finite");
    }
    if (p.reference_n < 1) {
        throw ValidationError("reference_n must be >= 1");
    }
    if (p.area && !(*p.area > 0.0)) {
        throw ValidationError("area must be positive");
    }
}

GatePhaseRecord calibrate_phases(const ProtocolParameters &params, int n_atoms, bool all_optical,
                                 const IntegratorOptions &options) {
    GatePhaseRecord rec;
    rec.n_atoms = n_atoms;
    {
        const LevelScheme scheme({Level::g0, Level::e, Level::r0});
        const auto basis = enumerate_basis(scheme, n_atoms);
        auto pair = stirap_passage(params, 0, Level::g0, Level::r0, false, false, 0.0);
        const PulseSchedule schedule({pair.pump, pair.stokes}, pair.pump.window);
        const auto psi = evolve_final(
            basis, schedule, StateVector::basis_state(basis.dim(), basis.ground_index(), 0).amplitudes, options);
        const auto r = basis.index_of(occupation_with(scheme, n_atoms, {Level::r0}));
        rec.chi = wrap_phase(std::arg(psi[static_cast<Eigen::Index>(r)]));
    }
    rec.theta = rec.chi;
    if (all_optical && n_atoms >= 2) {
        const LevelScheme scheme({Level::g0, Level::g1, Level::e, Level::r0});
        const auto basis = enumerate_basis(scheme, n_atoms);
        auto pair = stirap_passage(params, 0, Level::g0, Level::r0, true, params.sign_switch, 0.0);
        const PulseSchedule schedule({pair.pump, pair.stokes}, pair.pump.window);
        const auto start = basis.index_of(occupation_with(scheme, n_atoms, {Level::g1}));
        const auto psi =
            evolve_final(basis, schedule, StateVector::basis_state(basis.dim(), start, 0).amplitudes, options);
        const auto ra = basis.index_of(occupation_with(scheme, n_atoms, {Level::g1, Level::r0}));
        rec.theta = wrap_phase(rec.chi + std::arg(psi[static_cast<Eigen::Index>(ra)]));
    }
    return rec;
}

std::vector<GatePhaseRecord> gate_phase_table(const ProtocolParameters &params, const std::vector<int> &n_list,
                                              bool all_optical, const IntegratorOptions &options) {
    std::vector<GatePhaseRecord> out;
    out.reserve(n_list.size());
    for (int n : n_list) {
        out.push_back(calibrate_phases(params, n, all_optical, options));
    }
    return out;
}

BuiltProtocol build_protocol(const ProtocolSpec &spec, const IntegratorOptions &options) {
    spec.validate();
    const LevelScheme scheme = scheme_for(spec);
    std::vector<EnsembleSpec> ensembles;
    for (int n : spec.n_atoms) {
        ensembles.push_back({scheme, n});
    }
    BuiltProtocol built{RegisterBasis::enumerate(ensembles, true), build_schedule(spec), {}, {}, {}, {}, {}};
    built.initial = StateVector::basis_state(built.basis.dim(), built.basis.ground_index(), built.schedule.window().start);
    if (!is_gate(spec.name)) {
        return built;
    }

    // Per-ensemble logical vectors: ideal (decoding) and prepared (inputs).
    const bool optical = is_all_optical(spec.name);
    std::vector<RegisterBasis> parts;
    std::vector<std::array<Eigen::VectorXcd, 2>> ideal, prepared;
    for (int n : spec.n_atoms) {
        auto local = enumerate_basis(scheme, n);
        built.phases.push_back(calibrate_phases(spec.params, n, optical, options));
        const double phase = optical ? built.phases.back().theta : built.phases.back().chi;
        const auto encode = std::polar(1.0, phase);
        Eigen::VectorXcd zero = StateVector::basis_state(local.dim(), local.ground_index(), 0).amplitudes;
        Eigen::VectorXcd one =
            StateVector::basis_state(local.dim(), local.index_of(one_state(spec, scheme, n)), 0).amplitudes * encode;
        ideal.push_back({zero, one});
        prepared.push_back({zero, prepare_one(spec, scheme, n, options) * encode});
        parts.push_back(std::move(local));
    }
    const std::size_t qubits = spec.n_atoms.size();
    for (std::size_t code = 0; code < (std::size_t{1} << qubits); ++code) {
        std::string label;
        std::vector<Eigen::VectorXcd> want, have;
        for (std::size_t q = 0; q < qubits; ++q) {
            const std::size_t bit = (code >> (qubits - 1 - q)) & 1U;
            label += bit ? '1' : '0';
            want.push_back(ideal[q][bit]);
            have.push_back(prepared[q][bit]);
        }
        built.logical_labels.push_back(label);
        built.logical_states.push_back(embed_product(built.basis, parts, want));
        built.prepared_states.push_back(embed_product(built.basis, parts, have));
    }
    return built;
}

ProtocolResult run_gate(const BuiltProtocol &built, const ProtocolSpec &spec, const Eigen::VectorXcd &logical_input,
                        const IntegratorOptions &options) {
    if (!is_gate(spec.name)) {
        throw ValidationError(std::string(to_string(spec.name)) + " has no logical encoding");
    }
    const auto k = static_cast<Eigen::Index>(built.logical_states.size());
    if (logical_input.size() != k) {
        throw ValidationError("logical input needs " + std::to_string(k) + " amplitudes");
    }
    if (std::abs(logical_input.squaredNorm() - 1.0) > 1e-8) {
        throw ValidationError("logical input is not normalized");
    }
    Eigen::VectorXcd psi0 = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(built.basis.dim()));
    for (Eigen::Index j = 0; j < k; ++j) {
        psi0 += logical_input[j] * built.prepared_states[static_cast<std::size_t>(j)];
    }
    // Preparation error leaves the norm off by ~1e-9; the evolution itself is not renormalized.
    psi0 /= psi0.norm();

    HamiltonianModel model(built.basis, built.schedule);
    const auto traj = evolve(model, StateVector{psi0, built.schedule.window().start}, built.schedule.window(),
                             Sampling::events(), options);
    const Eigen::VectorXcd &psi = traj.final_state();

    ProtocolResult result;
    result.input = logical_input;
    result.output.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        result.output[j] = built.logical_states[static_cast<std::size_t>(j)].dot(psi);
    }
    result.leakage = std::max(0.0, psi.squaredNorm() - result.output.squaredNorm());
    result.leakage_flagged = result.leakage > kLeakageThreshold;
    result.norm_drift = traj.norm_drift();
    result.stats = traj.stats;
    return result;
}

ProtocolResult run_gate(const ProtocolSpec &spec, const Eigen::VectorXcd &logical_input,
                        const IntegratorOptions &options) {
    return run_gate(build_protocol(spec, options), spec, logical_input, options);
}

Eigen::MatrixXcd ideal_gate(const ProtocolSpec &spec) {
    using C = std::complex<double>;
    const C i(0.0, 1.0);
    switch (spec.name) {
        case ProtocolName::mw_single_qubit:
        case ProtocolName::opt_single_qubit: {
            const double c = std::cos(0.5 * spec.params.theta);
            const double s = std::sin(0.5 * spec.params.theta);
            Eigen::MatrixXcd r(2, 2);
            r << c, i * std::polar(1.0, -spec.params.phi) * s, i * std::polar(1.0, spec.params.phi) * s, c;
            return r;
        }
        case ProtocolName::mw_cnot: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
            u(0, 1) = -1.0;
            u(1, 0) = -1.0;
            u(2, 2) = -i;
            u(3, 3) = -i;
            return u;
        }
        case ProtocolName::opt_cnot: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
            u(0, 1) = i;
            u(1, 0) = i;
            u(2, 2) = i;
            u(3, 3) = i;
            return u;
        }
        case ProtocolName::mw_cz:
        case ProtocolName::opt_cz: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
            u.diagonal() << 1.0, -1.0, -1.0, -1.0;
            return u;
        }
        default: throw ValidationError(std::string(to_string(spec.name)) + " has no logical gate");
    }
}

GroundPhaseSeries extract_phases(const Trajectory &trajectory, const RegisterBasis &basis) {
    GroundPhaseSeries out;
    const auto g = static_cast<Eigen::Index>(basis.ground_index());
    for (std::size_t k = 0; k < trajectory.times.size(); ++k) {
        const std::complex<double> amp = trajectory.states[k][g];
        const bool ok = std::abs(amp) > kPhaseAmplitudeThreshold;
        out.times.push_back(trajectory.times[k]);
        out.defined.push_back(ok);
        out.phase.push_back(ok ? wrap_phase(std::arg(amp)) : std::nan(""));
    }
    if (!out.defined.empty() && out.defined.back()) {
        out.final_phase = out.phase.back();
    }
    return out;
}

double loading_success(const Eigen::VectorXcd &psi, const RegisterBasis &basis) {
    double p = 0.0;
    for (std::size_t i = 0; i < basis.dim(); ++i) {
        const auto &scheme = basis.ensemble(0).scheme;
        if (basis.rydberg_count(i) != 0 || basis.count(i, 0, Level::g1) != 1) {
            continue;
        }
        if (scheme.contains(Level::e) && basis.count(i, 0, Level::e) != 0) {
            continue;
        }
        p += std::norm(psi[static_cast<Eigen::Index>(i)]);
    }
    return p;
}

LoadingStats single_atom_loading_stats(double nbar, const ProtocolSpec &spec, int n_max,
                                       const IntegratorOptions &options) {
    if (!(nbar > 0.0) || !std::isfinite(nbar)) {
        throw ValidationError("nbar must be positive");
    }
    if (n_max < 1) {
        throw ValidationError("n_max must be >= 1");
    }
    switch (spec.name) {
        case ProtocolName::load_single_atom:
        case ProtocolName::pi_pulse_reference:
        case ProtocolName::arp_single:
        case ProtocolName::stirap_single: break;
        default:
            throw ValidationError(std::string(to_string(spec.name)) + " is not a single-atom excitation protocol");
    }
    LoadingStats stats;
    stats.nbar = nbar;
    const auto pmf = poisson_distribution(nbar, n_max);
    stats.rows.resize(static_cast<std::size_t>(n_max) + 1);
    stats.rows[0] = {0, pmf[0], 1.0, std::nullopt};
    detail::parallel_for(static_cast<std::size_t>(n_max), [&](std::size_t k) {
        const int n = static_cast<int>(k) + 1;
        ProtocolSpec one = spec;
        one.n_atoms = {n};
        const auto built = build_protocol(one, options);
        const auto psi = evolve_final(built.basis, built.schedule, built.initial.amplitudes, options);
        LoadingRow row{n, pmf[static_cast<std::size_t>(n)], 0.0, std::nullopt};
        row.error = spec.name == ProtocolName::load_single_atom ? 1.0 - loading_success(psi, built.basis)
                                                                  : 1.0 - single_rydberg_probability(psi, built.basis);
        if (spec.name == ProtocolName::pi_pulse_reference) {
            row.closed_form = pi_pulse_closed_form_error(n, reference_area(spec.params));
        }
        stats.rows[static_cast<std::size_t>(n)] = row;
    });
    double weighted = 0.0;
    double mass = 0.0;
    for (std::size_t n = 1; n < stats.rows.size(); ++n) {
        weighted += stats.rows[n].probability * stats.rows[n].error;
        mass += stats.rows[n].probability;
    }
    stats.mean_error = mass > 0.0 ? weighted / mass : 0.0;
    stats.mean_error_with_empty = weighted + stats.rows[0].probability;
    return stats;
}

}  // namespace blockade

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

// Time-windowed drive segments and their composition into a schedule. Amplitudes and
// detunings are angular (rad/us); the builders take the quoted value/2pi in MHz.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "blockade/basis.hpp"
#include "blockade/units.hpp"

namespace blockade {

struct Window {
    double start = 0.0;
    double end = 0.0;

    bool contains(double t) const { return t >= start && t <= end; }
    double length() const { return end - start; }

    friend bool operator==(const Window &, const Window &) = default;
};

struct Envelope {
    enum class Kind { gaussian, constant, zero };

    Kind kind = Kind::zero;
    double amplitude = 0.0;  ///< peak Rabi frequency, rad/us
    double center = 0.0;     ///< us
    double width = 1.0;      ///< tau: field ~ exp(-(t - center)^2 / 2 tau^2)

    static Envelope gaussian(double amplitude, double center, double width);
    static Envelope constant(double amplitude);
    static Envelope zero();

    double value(double t) const;

    friend bool operator==(const Envelope &, const Envelope &) = default;
};

struct DetuningLaw {
    enum class Kind { constant, linear_chirp, sign_switch_constant };

    Kind kind = Kind::constant;
    double value = 0.0;       ///< delta, rad/us
    double chirp_rate = 0.0;  ///< alpha, rad/us^2
    double origin = 0.0;      ///< linear_chirp: resonance time, us
    double switch_time = 0.0; ///< sign_switch_constant: +value before, -value from here on

    static DetuningLaw constant(double delta);
    static DetuningLaw linear_chirp(double alpha, double origin);
    static DetuningLaw sign_switch(double delta, double switch_time);

    double at(double t) const { return at(t, t); }
    /// Value at t, with the sign-switch side decided at `context` instead of t.
    double at(double t, double context) const;
    /// Integral of the detuning over [a, t] with the switch side fixed by `context`.
    double integral(double a, double t, double context) const;

    friend bool operator==(const DetuningLaw &, const DetuningLaw &) = default;
};

/// Drive on one transition. The Hamiltonian term is (Omega(t)/2) e^{i phase} |to><from| + h.c.
/// inside the window and zero outside. The detuning adds to the energy of `to` relative
/// to `from` while the window is open.
struct PulseSegment {
    Transition transition;
    Envelope envelope;
    DetuningLaw detuning;
    double carrier_phase = 0.0;
    Window window;
    std::string label;

    double rabi(double t) const { return rabi(t, t); }
    /// Envelope at t if the window contains `context`, else 0.
    double rabi(double t, double context) const { return window.contains(context) ? envelope.value(t) : 0.0; }
    PulseSegment shifted(double dt) const;

    friend bool operator==(const PulseSegment &, const PulseSegment &) = default;
};

class PulseSchedule {
 public:
    PulseSchedule() = default;
    PulseSchedule(std::vector<PulseSegment> segments, Window window);

    const std::vector<PulseSegment> &segments() const { return segments_; }
    const Window &window() const { return window_; }

    /// Every window edge and detuning switch strictly inside the global window, sorted.
    std::vector<double> breakpoints() const;

    PulseSchedule shifted(double dt) const;
    /// Schedule whose evolution operator is the inverse of this one's: mirrored in time
    /// about the window midpoint, detunings negated, carrier phases advanced by pi.
    PulseSchedule time_reversed() const;
    /// This schedule followed by `next`, shifted to start `gap` after this one ends.
    PulseSchedule then(const PulseSchedule &next, double gap) const;

    friend bool operator==(const PulseSchedule &, const PulseSchedule &) = default;

 private:
    std::vector<PulseSegment> segments_;
    Window window_;
};

/// Smallest window containing every segment.
Window span_of(const std::vector<PulseSegment> &segments);

struct ArpParams {
    Frequency omega = Frequency::from_mhz(2.0);
    double chirp_hz_per_s = 1e12;
    double tau = 1.0;
    double center = 0.0;
    double phase = 0.0;
    Transition transition{0, Level::g0, Level::r0};
    bool constant_envelope = false;
    std::optional<Window> window;  ///< default center +- 4 tau

    friend bool operator==(const ArpParams &, const ArpParams &) = default;
};

/// Chirped single-photon pulse: Gaussian envelope of 1/e-intensity half-width tau and
/// instantaneous detuning alpha (t - center).
PulseSegment make_arp(const ArpParams &params);

struct StirapParams {
    Frequency omega1 = Frequency::from_mhz(30.0);  ///< pump, ground -> intermediate
    Frequency omega2 = Frequency::from_mhz(40.0);  ///< Stokes, intermediate -> Rydberg
    double t1 = 3.5;
    double t2 = 5.5;
    double tau = 1.0;
    Frequency delta = Frequency::from_mhz(200.0);
    bool reversed = false;
    double pivot = 0.0;
    int ensemble = 0;
    Level ground = Level::g0;
    Level intermediate = Level::e;
    Level rydberg = Level::r0;
    std::optional<Window> window;  ///< default: union of both pulses +- 4 tau

    friend bool operator==(const StirapParams &, const StirapParams &) = default;
};

struct StirapPair {
    PulseSegment pump;
    PulseSegment stokes;
};

/// Pump peaks at pivot - t1, Stokes at pivot - t2 (pivot + t_j when reversed). The pump
/// carries single-photon detuning delta, the Stokes -delta (two-photon resonance).
StirapPair make_stirap_pair(const StirapParams &params);

/// Square resonant pulse of duration area / Omega implementing
/// R(area, phase): |from> -> cos(area/2)|from> + i e^{i phase} sin(area/2)|to>.
PulseSegment make_rabi(const Transition &transition, Frequency omega, double area, double phase, double start);

}  // namespace blockade

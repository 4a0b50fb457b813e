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

#include "blockade/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "blockade/errors.hpp"

namespace blockade {

Envelope Envelope::gaussian(double amplitude, double center, double width) {
    if (!(width > 0.0)) {
        throw ValidationError("gaussian envelope needs width > 0");
    }
    if (amplitude < 0.0) {
        throw ValidationError("envelope amplitude must be >= 0");
    }
    return {Kind::gaussian, amplitude, center, width};
}

Envelope Envelope::constant(double amplitude) {
    if (amplitude < 0.0) {
        throw ValidationError("envelope amplitude must be >= 0");
    }
    return {Kind::constant, amplitude, 0.0, 1.0};
}

Envelope Envelope::zero() { return {Kind::zero, 0.0, 0.0, 1.0}; }

double Envelope::value(double t) const {
    switch (kind) {
        case Kind::gaussian: {
            const double x = (t - center) / width;
            return amplitude * std::exp(-0.5 * x * x);
        }
        case Kind::constant: return amplitude;
        case Kind::zero: return 0.0;
    }
    return 0.0;
}

DetuningLaw DetuningLaw::constant(double delta) { return {Kind::constant, delta, 0.0, 0.0, 0.0}; }

DetuningLaw DetuningLaw::linear_chirp(double alpha, double origin) {
    return {Kind::linear_chirp, 0.0, alpha, origin, 0.0};
}

DetuningLaw DetuningLaw::sign_switch(double delta, double switch_time) {
    return {Kind::sign_switch_constant, delta, 0.0, 0.0, switch_time};
}

double DetuningLaw::at(double t, double context) const {
    switch (kind) {
        case Kind::constant: return value;
        case Kind::linear_chirp: return chirp_rate * (t - origin);
        case Kind::sign_switch_constant: return context < switch_time ? value : -value;
    }
    return 0.0;
}

double DetuningLaw::integral(double a, double t, double context) const {
    switch (kind) {
        case Kind::constant: return value * (t - a);
        case Kind::linear_chirp: return 0.5 * chirp_rate * ((t - origin) * (t - origin) - (a - origin) * (a - origin));
        case Kind::sign_switch_constant: return (context < switch_time ? value : -value) * (t - a);
    }
    return 0.0;
}

PulseSegment PulseSegment::shifted(double dt) const {
    PulseSegment out = *this;
    out.envelope.center += dt;
    out.detuning.origin += dt;
    out.detuning.switch_time += dt;
    out.window.start += dt;
    out.window.end += dt;
    return out;
}

PulseSchedule::PulseSchedule(std::vector<PulseSegment> segments, Window window)
    : segments_(std::move(segments)), window_(window) {
    if (!std::isfinite(window_.start) || !std::isfinite(window_.end) || !(window_.start < window_.end)) {
        throw ValidationError("schedule window must be finite with start < end");
    }
    for (const auto &seg : segments_) {
        if (!std::isfinite(seg.window.start) || !std::isfinite(seg.window.end) ||
            !(seg.window.start < seg.window.end)) {
            throw ValidationError("segment '" + seg.label + "' window must be finite with start < end");
        }
        if (seg.window.start < window_.start || seg.window.end > window_.end) {
            throw ValidationError("segment '" + seg.label + "' window lies outside the schedule window");
        }
    }
}

std::vector<double> PulseSchedule::breakpoints() const {
    std::vector<double> points;
    auto add = [&](double t) {
        if (t > window_.start && t < window_.end) {
            points.push_back(t);
        }
    };
    for (const auto &seg : segments_) {
        add(seg.window.start);
        add(seg.window.end);
        if (seg.detuning.kind == DetuningLaw::Kind::sign_switch_constant) {
            add(seg.detuning.switch_time);
        }
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    return points;
}

PulseSchedule PulseSchedule::shifted(double dt) const {
    std::vector<PulseSegment> moved;
    moved.reserve(segments_.size());
    for (const auto &seg : segments_) {
        moved.push_back(seg.shifted(dt));
    }
    return PulseSchedule(std::move(moved), {window_.start + dt, window_.end + dt});
}

PulseSchedule PulseSchedule::then(const PulseSchedule &next, double gap) const {
    if (!(gap >= 0.0)) {
        throw ValidationError("schedule gap must be >= 0");
    }
    const PulseSchedule moved = next.shifted(window_.end + gap - next.window().start);
    std::vector<PulseSegment> all = segments_;
    all.insert(all.end(), moved.segments().begin(), moved.segments().end());
    return PulseSchedule(std::move(all), {window_.start, moved.window().end});
}

PulseSchedule PulseSchedule::time_reversed() const {
    const double sum = window_.start + window_.end;
    std::vector<PulseSegment> mirrored;
    mirrored.reserve(segments_.size());
    for (const auto &seg : segments_) {
        PulseSegment out = seg;
        out.window = {sum - seg.window.end, sum - seg.window.start};
        out.envelope.center = sum - seg.envelope.center;
        switch (seg.detuning.kind) {
            case DetuningLaw::Kind::constant: out.detuning.value = -seg.detuning.value; break;
            case DetuningLaw::Kind::linear_chirp: out.detuning.origin = sum - seg.detuning.origin; break;
            case DetuningLaw::Kind::sign_switch_constant:
                out.detuning.switch_time = sum - seg.detuning.switch_time;
                break;
        }
        out.carrier_phase = seg.carrier_phase + std::numbers::pi;
        out.label = seg.label + " (reversed)";
        mirrored.push_back(std::move(out));
    }
    return PulseSchedule(std::move(mirrored), window_);
}

Window span_of(const std::vector<PulseSegment> &segments) {
    if (segments.empty()) {
        throw ValidationError("cannot take the span of an empty segment list");
    }
    Window span = segments.front().window;
    for (const auto &seg : segments) {
        span.start = std::min(span.start, seg.window.start);
        span.end = std::max(span.end, seg.window.end);
    }
    return span;
}

PulseSegment make_arp(const ArpParams &params) {
    if (!(params.tau > 0.0)) {
        throw ValidationError("ARP pulse needs tau > 0");
    }
    if (params.omega.mhz() < 0.0) {
        throw ValidationError("ARP Rabi frequency must be >= 0");
    }
    const double omega = params.omega.rad_per_us();
    PulseSegment seg;
    seg.transition = params.transition;
    seg.envelope = params.constant_envelope ? Envelope::constant(omega)
                                            : Envelope::gaussian(omega, params.center, params.tau);
    seg.detuning = DetuningLaw::linear_chirp(chirp_rad_per_us2(params.chirp_hz_per_s), params.center);
    seg.carrier_phase = params.phase;
    seg.window = params.window.value_or(Window{params.center - 4.0 * params.tau, params.center + 4.0 * params.tau});
    seg.label = "arp " + to_string(params.transition);
    return seg;
}

StirapPair make_stirap_pair(const StirapParams &params) {
    if (!(params.tau > 0.0)) {
        throw ValidationError("STIRAP pair needs tau > 0");
    }
    if (params.omega1.mhz() < 0.0 || params.omega2.mhz() < 0.0) {
        throw ValidationError("STIRAP Rabi frequencies must be >= 0");
    }
    const double sign = params.reversed ? 1.0 : -1.0;
    const double pump_center = params.pivot + sign * params.t1;
    const double stokes_center = params.pivot + sign * params.t2;
    const Window window = params.window.value_or(
        Window{std::min(pump_center, stokes_center) - 4.0 * params.tau,
               std::max(pump_center, stokes_center) + 4.0 * params.tau});
    const double delta = params.delta.rad_per_us();

    StirapPair pair;
    pair.pump.transition = {params.ensemble, params.ground, params.intermediate};
    pair.pump.envelope = Envelope::gaussian(params.omega1.rad_per_us(), pump_center, params.tau);
    pair.pump.detuning = DetuningLaw::constant(delta);
    pair.pump.window = window;
    pair.pump.label = params.reversed ? "stirap pump (reverse)" : "stirap pump";

    pair.stokes.transition = {params.ensemble, params.intermediate, params.rydberg};
    pair.stokes.envelope = Envelope::gaussian(params.omega2.rad_per_us(), stokes_center, params.tau);
    pair.stokes.detuning = DetuningLaw::constant(-delta);
    pair.stokes.window = window;
    pair.stokes.label = params.reversed ? "stirap stokes (reverse)" : "stirap stokes";
    return pair;
}

PulseSegment make_rabi(const Transition &transition, Frequency omega, double area, double phase, double start) {
    if (!(omega.mhz() > 0.0)) {
        throw ValidationError("Rabi pulse needs Omega > 0");
    }
    if (!(area > 0.0)) {
        throw ValidationError("Rabi pulse needs a positive area");
    }
    const double rate = omega.rad_per_us();
    PulseSegment seg;
    seg.transition = transition;
    seg.envelope = Envelope::constant(rate);
    seg.detuning = DetuningLaw::constant(0.0);
    // exp(-i H t) with coupling e^{i(phase + pi)} maps |from> to +i e^{i phase}|to> at area pi.
    seg.carrier_phase = phase + std::numbers::pi;
    seg.window = {start, start + area / rate};
    seg.label = "rabi " + to_string(transition);
    return seg;
}

}  // namespace blockade

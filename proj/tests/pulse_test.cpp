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

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "blockade/errors.hpp"

using namespace blockade;

TEST(units, chirp_conversion) {
    EXPECT_DOUBLE_EQ(chirp_rad_per_us2(1e12), kTwoPi);
    EXPECT_DOUBLE_EQ(mhz_to_rad_per_us(1.0), kTwoPi);
    EXPECT_DOUBLE_EQ(rad_per_us_to_mhz(kTwoPi * 3.0), 3.0);
    EXPECT_DOUBLE_EQ(Frequency::from_mhz(0.1).mhz(), 0.1);
}

TEST(units, wrap_phase) {
    EXPECT_NEAR(wrap_phase(3.0 * std::numbers::pi), std::numbers::pi, 1e-12);
    EXPECT_NEAR(wrap_phase(-std::numbers::pi), std::numbers::pi, 1e-12);
    EXPECT_NEAR(wrap_phase(0.25 - 4.0 * std::numbers::pi), 0.25, 1e-12);
}

TEST(envelope, gaussian_field_profile) {
    const auto e = Envelope::gaussian(2.0, 1.0, 0.5);
    EXPECT_DOUBLE_EQ(e.value(1.0), 2.0);
    EXPECT_NEAR(e.value(1.5), 2.0 * std::exp(-0.5), 1e-15);
    EXPECT_NEAR(e.value(0.5), e.value(1.5), 1e-15);
    EXPECT_THROW(Envelope::gaussian(1.0, 0.0, 0.0), ValidationError);
    EXPECT_THROW(Envelope::constant(-1.0), ValidationError);
    EXPECT_EQ(Envelope::zero().value(3.0), 0.0);
}

TEST(detuning, laws_and_integrals) {
    const auto c = DetuningLaw::constant(2.0);
    EXPECT_EQ(c.at(5.0), 2.0);
    EXPECT_DOUBLE_EQ(c.integral(1.0, 4.0, 2.0), 6.0);

    const auto chirp = DetuningLaw::linear_chirp(3.0, 1.0);
    EXPECT_DOUBLE_EQ(chirp.at(2.0), 3.0);
    EXPECT_DOUBLE_EQ(chirp.integral(0.0, 2.0, 1.0), 0.0);
    EXPECT_DOUBLE_EQ(chirp.integral(1.0, 3.0, 2.0), 6.0);

    const auto sw = DetuningLaw::sign_switch(5.0, 0.0);
    EXPECT_EQ(sw.at(-1e-9), 5.0);
    EXPECT_EQ(sw.at(0.0), -5.0);
    EXPECT_EQ(sw.at(0.0, -1.0), 5.0);
    EXPECT_DOUBLE_EQ(sw.integral(1.0, 2.0, 1.5), -5.0);
}

TEST(segment, zero_outside_window) {
    PulseSegment s;
    s.envelope = Envelope::constant(1.0);
    s.window = {0.0, 1.0};
    EXPECT_EQ(s.rabi(-0.1), 0.0);
    EXPECT_EQ(s.rabi(0.5), 1.0);
    EXPECT_EQ(s.rabi(1.1), 0.0);
    EXPECT_EQ(s.rabi(1.1, 0.5), 1.0);
}

TEST(schedule, rejects_segments_outside_window) {
    PulseSegment s;
    s.window = {0.0, 2.0};
    EXPECT_THROW(PulseSchedule({s}, Window{0.0, 1.0}), ValidationError);
    EXPECT_THROW(PulseSchedule({s}, Window{1.0, 1.0}), ValidationError);
    EXPECT_NO_THROW(PulseSchedule({s}, Window{-1.0, 3.0}));
}

TEST(schedule, breakpoints_are_interior_and_sorted) {
    PulseSegment a;
    a.window = {0.0, 2.0};
    PulseSegment b;
    b.window = {1.0, 3.0};
    b.detuning = DetuningLaw::sign_switch(1.0, 2.5);
    const PulseSchedule s({a, b}, Window{0.0, 3.0});
    EXPECT_EQ(s.breakpoints(), (std::vector<double>{1.0, 2.0, 2.5}));
}

TEST(schedule, then_appends_after_gap) {
    const auto p = make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(1.0), std::numbers::pi, 0.0, 0.0);
    const PulseSchedule one({p}, p.window);
    const PulseSchedule two = one.then(one, 0.5);
    ASSERT_EQ(two.segments().size(), 2u);
    EXPECT_DOUBLE_EQ(two.segments()[1].window.start, p.window.end + 0.5);
    EXPECT_DOUBLE_EQ(two.window().end, 2.0 * p.window.end + 0.5);
    EXPECT_THROW(one.then(one, -1.0), ValidationError);
}

TEST(builders, arp_matches_parameters) {
    ArpParams a;
    const auto seg = make_arp(a);
    EXPECT_DOUBLE_EQ(seg.envelope.amplitude, kTwoPi * 2.0);
    EXPECT_DOUBLE_EQ(seg.detuning.chirp_rate, kTwoPi);
    EXPECT_EQ(seg.window, (Window{-4.0, 4.0}));
    a.tau = 0.0;
    EXPECT_THROW(make_arp(a), ValidationError);
}

TEST(builders, stirap_counterintuitive_order) {
    StirapParams p;
    const auto pair = make_stirap_pair(p);
    // Stokes first: it peaks earlier than the pump.
    EXPECT_LT(pair.stokes.envelope.center, pair.pump.envelope.center);
    EXPECT_DOUBLE_EQ(pair.pump.envelope.center, -3.5);
    EXPECT_DOUBLE_EQ(pair.stokes.envelope.center, -5.5);
    EXPECT_DOUBLE_EQ(pair.pump.detuning.value, -pair.stokes.detuning.value);
    p.reversed = true;
    const auto rev = make_stirap_pair(p);
    EXPECT_LT(rev.pump.envelope.center, rev.stokes.envelope.center);
}

TEST(builders, rabi_duration_is_area_over_omega) {
    const auto seg = make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(5.0), std::numbers::pi, 0.3, 1.0);
    EXPECT_NEAR(seg.window.length(), std::numbers::pi / (kTwoPi * 5.0), 1e-15);  // start + duration - start
    EXPECT_THROW(make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(0.0), 1.0, 0.0, 0.0), ValidationError);
    EXPECT_THROW(make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(1.0), 0.0, 0.0, 0.0), ValidationError);
}

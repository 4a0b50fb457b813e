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

// Unit conventions: time in microseconds, hbar = 1, angular frequencies in rad/us.
// User-facing frequencies are quoted as value/2pi in MHz; the conversion lives here only.

#include <numbers>

namespace blockade {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A frequency entered as f = omega/2pi in MHz. Keeps the entered value so reports
/// re-emit it bit-for-bit; the angular value is derived on demand.
class Frequency {
 public:
    constexpr Frequency() = default;

    static constexpr Frequency from_mhz(double mhz) { return Frequency(mhz); }

    constexpr double mhz() const { return mhz_; }
    constexpr double rad_per_us() const { return kTwoPi * mhz_; }

    friend constexpr bool operator==(const Frequency &, const Frequency &) = default;

 private:
    explicit constexpr Frequency(double mhz) : mhz_(mhz) {}
    double mhz_ = 0.0;
};

/// alpha/2pi in Hz/s -> alpha in rad/us^2 (1 THz/s == 1 MHz/us).
double chirp_rad_per_us2(double hz_per_s);

/// omega/2pi in MHz -> rad/us.
double mhz_to_rad_per_us(double mhz);

/// rad/us -> omega/2pi in MHz.
double rad_per_us_to_mhz(double omega);

/// Wrap an angle into (-pi, pi].
double wrap_phase(double phase);

}  // namespace blockade

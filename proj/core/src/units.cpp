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

#include "blockade/units.hpp"

#include <cmath>
#include <numbers>

namespace blockade {

double chirp_rad_per_us2(double hz_per_s) { return kTwoPi * hz_per_s * 1e-12; }

double mhz_to_rad_per_us(double mhz) { return kTwoPi * mhz; }

double rad_per_us_to_mhz(double omega) { return omega / kTwoPi; }

double wrap_phase(double phase) {
    double wrapped = std::remainder(phase, kTwoPi);
    if (wrapped <= -std::numbers::pi) {
        wrapped += kTwoPi;
    }
    return wrapped;
}

}  // namespace blockade

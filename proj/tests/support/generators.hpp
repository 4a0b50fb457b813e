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

// Seeded generators for the property tests. Every property runs a fixed number of cases
// from a fixed seed, so failures reproduce exactly.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "blockade/basis.hpp"
#include "blockade/pulse.hpp"
#include "blockade/units.hpp"

namespace blockade::gen {

class Rng {
 public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
    bool coin() { return integer(0, 1) == 1; }
    template <class T>
    const T &pick(const std::vector<T> &items) {
        return items.at(static_cast<std::size_t>(integer(0, static_cast<int>(items.size()) - 1)));
    }

 private:
    std::mt19937_64 engine_;
};

/// Level schemes that appear in the protocols.
inline std::vector<std::vector<Level>> schemes() {
    return {{Level::g0, Level::r0},
            {Level::g0, Level::e, Level::r0},
            {Level::g0, Level::g1, Level::r0, Level::r1},
            {Level::g0, Level::g1, Level::e, Level::r0, Level::r1}};
}

/// Transitions that form a tree rooted at g0, so every level has one defined frame energy.
inline std::vector<std::pair<Level, Level>> tree_edges(const std::vector<Level> &levels) {
    auto has = [&](Level l) { return std::find(levels.begin(), levels.end(), l) != levels.end(); };
    std::vector<std::pair<Level, Level>> edges;
    if (has(Level::e)) {
        edges.emplace_back(Level::g0, Level::e);
        edges.emplace_back(Level::e, Level::r0);
    } else {
        edges.emplace_back(Level::g0, Level::r0);
    }
    if (has(Level::g1)) {
        edges.emplace_back(Level::g0, Level::g1);
    }
    if (has(Level::r1)) {
        edges.emplace_back(Level::r0, Level::r1);
    }
    return edges;
}

/// Random drive on `levels` for `ensembles` ensembles, inside [0, length].
inline PulseSchedule random_schedule(Rng &rng, const std::vector<Level> &levels, int ensembles, double length = 3.0) {
    std::vector<PulseSegment> segments;
    const auto edges = tree_edges(levels);
    for (int k = 0; k < ensembles; ++k) {
        for (const auto &[from, to] : edges) {
            if (rng.integer(0, 3) == 0) {
                continue;
            }
            PulseSegment seg;
            seg.transition = {k, from, to};
            const double omega = mhz_to_rad_per_us(rng.uniform(0.2, 3.0));
            const double a = rng.uniform(0.0, 0.5 * length);
            const double b = rng.uniform(a + 0.3, length);
            seg.window = {a, b};
            seg.envelope = rng.coin() ? Envelope::gaussian(omega, rng.uniform(a, b), rng.uniform(0.2, 1.0))
                                      : Envelope::constant(omega);
            switch (rng.integer(0, 2)) {
                case 0: seg.detuning = DetuningLaw::constant(mhz_to_rad_per_us(rng.uniform(-2.0, 2.0))); break;
                case 1:
                    seg.detuning = DetuningLaw::linear_chirp(chirp_rad_per_us2(rng.uniform(-2e12, 2e12)),
                                                             rng.uniform(a, b));
                    break;
                default:
                    seg.detuning =
                        DetuningLaw::sign_switch(mhz_to_rad_per_us(rng.uniform(-2.0, 2.0)), rng.uniform(a, b));
            }
            seg.carrier_phase = rng.uniform(-3.14, 3.14);
            seg.label = "s" + std::to_string(segments.size());
            segments.push_back(seg);
        }
    }
    if (segments.empty()) {
        PulseSegment seg;
        seg.transition = {0, edges.front().first, edges.front().second};
        seg.envelope = Envelope::constant(mhz_to_rad_per_us(1.0));
        seg.window = {0.0, length};
        segments.push_back(seg);
    }
    return PulseSchedule(std::move(segments), Window{0.0, length});
}

inline Eigen::VectorXcd random_state(Rng &rng, std::size_t dim) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v[i] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
    }
    return v / v.norm();
}

}  // namespace blockade::gen

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

#include <gtest/gtest.h>

#include "blockade/errors.hpp"
#include "generators.hpp"

using namespace blockade;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(analysis, poisson_weights) {
    const auto p = poisson_distribution(5.0, 15);
    ASSERT_EQ(p.size(), 16u);
    EXPECT_NEAR(p[0], std::exp(-5.0), 1e-17);
    EXPECT_NEAR(p[5], std::exp(-5.0) * 3125.0 / 120.0, 1e-15);
    double sum = 0.0;
    for (double x : p) {
        sum += x;
    }
    EXPECT_LT(1.0 - sum, 1e-4);
    EXPECT_GT(1.0 - sum, 0.0);
    EXPECT_NEAR(poisson_distribution(100.0, 200)[100], 0.039860996809147, 1e-12);
    EXPECT_THROW(poisson_distribution(-1.0, 3), ValidationError);
}

TEST(analysis, population_partition_is_complete) {
    gen::Rng rng(0xa11a5);
    for (int c = 0; c < 50; ++c) {
        const auto levels = rng.pick(gen::schemes());
        const auto b = enumerate_basis(LevelScheme(levels), rng.integer(1, 5));
        const Eigen::VectorXcd psi = 0.9 * gen::random_state(rng, b.dim());
        const PopulationPartition part = partition(psi, b);
        EXPECT_NEAR(part.total(), psi.squaredNorm(), 1e-12);
        EXPECT_NEAR(part.rydberg, single_rydberg_probability(psi, b), 1e-15);
    }
}

TEST(analysis, gate_phase_error_ignores_global_phase) {
    Eigen::MatrixXcd ideal(2, 2);
    ideal << 0.0, 1.0, 1.0, 0.0;
    EXPECT_NEAR(gate_phase_error(std::polar(1.0, 0.8) * ideal, ideal), 0.0, 1e-14);
    Eigen::MatrixXcd bent = ideal;
    bent(0, 1) = std::polar(1.0, 0.2);
    bent(1, 0) = std::polar(1.0, -0.2);
    EXPECT_NEAR(gate_phase_error(bent, ideal), 0.2, 1e-12);
}

TEST(analysis, single_qubit_identity_truth_table) {
    ProtocolSpec s;
    s.name = ProtocolName::mw_single_qubit;
    s.params.theta = 0.0;
    s.n_atoms = {2};
    const TruthTable tt = truth_table(s);
    EXPECT_EQ(tt.labels, (std::vector<std::string>{"0", "1"}));
    EXPECT_LT(tt.max_deviation, 1e-3);
    EXPECT_FALSE(tt.leakage_flagged);
}

TEST(analysis, ratio_sweep_local_minimum_double_arp) {
    ProtocolSpec s;
    s.name = ProtocolName::double_arp;
    const SweepResult r = rabi_ratio_sweep(s, {0.95, 1.0, 1.05}, {1});
    ASSERT_EQ(r.points.size(), 3u);
    for (const auto &p : r.points) {
        ASSERT_TRUE(p.ok) << p.failure;
    }
    EXPECT_LT(r.at(1, 0).errors.population_error, r.at(0, 0).errors.population_error);
    EXPECT_LT(r.at(1, 0).errors.population_error, r.at(2, 0).errors.population_error);
}

TEST(analysis, ratio_one_matches_standalone_double_sequence) {
    ProtocolSpec s;
    s.name = ProtocolName::double_arp;
    s.n_atoms = {2};
    const SweepResult r = rabi_ratio_sweep(s, {1.0}, {2});
    const DoubleSequenceErrors e = double_sequence_errors(s);
    EXPECT_EQ(r.at(0, 0).errors.population_error, e.population_error);
    EXPECT_EQ(r.at(0, 0).errors.phase_error, e.phase_error);
}

TEST(analysis, ratio_sweep_rejects_bad_grid) {
    ProtocolSpec s;
    s.name = ProtocolName::double_arp;
    EXPECT_THROW(rabi_ratio_sweep(s, {1.0, 0.9}, {1}), ValidationError);
    EXPECT_THROW(rabi_ratio_sweep(s, {0.0}, {1}), ValidationError);
    EXPECT_THROW(rabi_ratio_sweep(s, {2.5}, {1}), ValidationError);
    s.name = ProtocolName::mw_cnot;
    EXPECT_THROW(rabi_ratio_sweep(s, {1.0}, {1}), ValidationError);
}

TEST(analysis, interference_single_atom_tracks_rabi_reference) {
    ProtocolParameters p;
    const InterferenceResult r = interference_sweep(p, {0.0, kPi / 2, kPi}, {1});
    for (std::size_t i = 0; i < r.phi.size(); ++i) {
        const double c = std::cos(r.phi[i] / 2);
        EXPECT_NEAR(r.rabi_reference[i], c * c, 1e-9);
        EXPECT_NEAR(r.p_one(static_cast<Eigen::Index>(i), 0), r.rabi_reference[i], 1e-2);
    }
}

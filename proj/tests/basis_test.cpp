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


#include "blockade/basis.hpp"

#include <cmath>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "blockade/errors.hpp"
#include "product_oracle.hpp"

using namespace blockade;

namespace {

LevelScheme ger() { return LevelScheme({Level::g0, Level::e, Level::r0}); }

std::vector<int> joint(const RegisterBasis &b, std::size_t i) { return {b.joint(i).begin(), b.joint(i).end()}; }

}  // namespace

TEST(basis, colex_order_for_two_atoms) {
    const auto b = enumerate_basis(ger(), 2);
    ASSERT_EQ(b.dim(), 5u);
    EXPECT_EQ(joint(b, 0), (std::vector<int>{2, 0, 0}));
    EXPECT_EQ(joint(b, 1), (std::vector<int>{1, 1, 0}));
    EXPECT_EQ(joint(b, 2), (std::vector<int>{0, 2, 0}));
    EXPECT_EQ(joint(b, 3), (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(joint(b, 4), (std::vector<int>{0, 1, 1}));
    EXPECT_EQ(b.ground_index(), 0u);
}

TEST(basis, two_level_ensemble_is_a_qubit) {
    for (int n = 1; n <= 20; ++n) {
        const auto b = enumerate_basis(LevelScheme({Level::g0, Level::r0}), n);
        EXPECT_EQ(b.dim(), 2u) << n;
    }
}

TEST(basis, collective_coupling_is_sqrt_n) {
    for (int n = 1; n <= 12; ++n) {
        const auto b = enumerate_basis(LevelScheme({Level::g0, Level::r0}), n);
        const auto out = b.apply(b.ground_index(), {0, Level::g0, Level::r0});
        ASSERT_EQ(out.status, TransitionStatus::coupled);
        EXPECT_DOUBLE_EQ(out.coefficient, std::sqrt(static_cast<double>(n)));
    }
}

TEST(basis, coefficient_counts_both_occupations) {
    const auto b = enumerate_basis(ger(), 3);
    const std::vector<int> from{2, 1, 0};
    const std::vector<int> to{1, 2, 0};
    const Transition t{0, Level::g0, Level::e};
    EXPECT_DOUBLE_EQ(b.transition_element(b.index_of(from), b.index_of(to), t), std::sqrt(2.0 * 2.0));
    EXPECT_EQ(b.transition_element(b.index_of(from), b.index_of(from), t), 0.0);
}

TEST(basis, second_rydberg_excitation_is_blocked) {
    const auto b = enumerate_basis(ger(), 2);
    const auto idx = b.index_of(std::vector<int>{0, 1, 1});
    const Transition t{0, Level::e, Level::r0};
    EXPECT_EQ(b.apply(idx, t).status, TransitionStatus::blocked);
    EXPECT_EQ(b.apply(b.index_of(std::vector<int>{2, 0, 0}), t).status, TransitionStatus::no_source);
    EXPECT_FALSE(b.find(std::vector<int>{0, 0, 2}).has_value());
}

TEST(basis, cross_blockade_switch) {
    const LevelScheme s({Level::g0, Level::r0});
    const auto with = RegisterBasis::enumerate({{s, 1}, {s, 1}}, true);
    const auto without = RegisterBasis::enumerate({{s, 1}, {s, 1}}, false);
    EXPECT_EQ(with.dim(), 3u);
    EXPECT_EQ(without.dim(), 4u);
}

TEST(basis, rejects_bad_input) {
    EXPECT_THROW(level_from_string("r9"), ValidationError);
    EXPECT_THROW(LevelScheme({}), ValidationError);
    EXPECT_THROW(LevelScheme({Level::g0, Level::g0}), ValidationError);
    EXPECT_THROW(LevelScheme({Level::r0, Level::e}), ValidationError);
    EXPECT_THROW(enumerate_basis(ger(), 0), ValidationError);
    const auto b = enumerate_basis(ger(), 1);
    EXPECT_THROW(b.apply(0, {0, Level::g0, Level::g1}), ValidationError);
    EXPECT_THROW(b.apply(0, {1, Level::g0, Level::e}), ValidationError);
    EXPECT_THROW(b.apply(0, {0, Level::e, Level::e}), ValidationError);
}

TEST(basis, level_names_round_trip) {
    for (Level l : {Level::g0, Level::g1, Level::g2, Level::e, Level::r0, Level::r1}) {
        EXPECT_EQ(level_from_string(to_string(l)), l);
    }
}

// The symmetric basis must contain exactly one state per permutation class of the
// brute-force product register.
TEST(basis, dimension_matches_product_classes) {
    const std::vector<std::vector<Level>> schemes = {{Level::g0, Level::r0},
                                                      {Level::g0, Level::e, Level::r0},
                                                      {Level::g0, Level::g1, Level::e, Level::r0, Level::r1},
                                                      {Level::g0, Level::g1, Level::g2, Level::e, Level::r0}};
    for (const auto &levels : schemes) {
        for (int n = 1; n <= 4; ++n) {
            const LevelScheme s(levels);
            const auto b = enumerate_basis(s, n);
            const oracle::ProductRegister reg({{s, n}}, true);
            const Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(static_cast<Eigen::Index>(reg.dim()));
            const Eigen::VectorXcd classes = reg.project(ones, b);
            for (Eigen::Index i = 0; i < classes.size(); ++i) {
                EXPECT_GT(std::abs(classes[i]), 0.5) << "empty class " << b.label(static_cast<std::size_t>(i));
            }
        }
    }
}

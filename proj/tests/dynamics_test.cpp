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


#include "blockade/dynamics.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "blockade/errors.hpp"
#include "generators.hpp"
#include "product_oracle.hpp"

using namespace blockade;

namespace {

constexpr double kPi = std::numbers::pi;

RegisterBasis two_level(int n) { return enumerate_basis(LevelScheme({Level::g0, Level::r0}), n); }

double excited(const Eigen::VectorXcd &psi) { return std::norm(psi[1]); }

Eigen::VectorXcd run(const RegisterBasis &b, const PulseSchedule &s) {
    const HamiltonianModel model(b, s);
    const auto psi0 = StateVector::basis_state(b.dim(), b.ground_index(), s.window().start);
    return evolve(model, psi0, s.window(), Sampling::events()).final_state();
}

}  // namespace

TEST(dynamics, pi_pulse_inverts_single_atom) {
    const auto seg = make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(2.0), kPi, 0.0, 0.0);
    const Eigen::VectorXcd psi = run(two_level(1), PulseSchedule({seg}, seg.window));
    EXPECT_GT(excited(psi), 1.0 - 1e-9);
    // R(pi, 0)|0> = i|1>
    EXPECT_LT(std::abs(psi[1] - std::complex<double>(0.0, 1.0)), 1e-8);
}

TEST(dynamics, rabi_phase_convention) {
    const double phi = 0.7;
    const double theta = 1.1;
    const auto seg = make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(2.0), theta, phi, 0.0);
    const Eigen::VectorXcd psi = run(two_level(1), PulseSchedule({seg}, seg.window));
    EXPECT_LT(std::abs(psi[0] - std::cos(theta / 2)), 1e-8);
    EXPECT_LT(std::abs(psi[1] - std::complex<double>(0.0, 1.0) * std::polar(1.0, phi) * std::sin(theta / 2)), 1e-8);
}

TEST(dynamics, collective_pi_pulse) {
    for (int n = 1; n <= 6; ++n) {
        const auto seg = make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(2.0), kPi / std::sqrt(n), 0.0, 0.0);
        EXPECT_GT(excited(run(two_level(n), PulseSchedule({seg}, seg.window))), 1.0 - 1e-6) << n;
    }
}

TEST(dynamics, hermitian_at_sampled_times) {
    gen::Rng rng(0x5eed01);
    for (int c = 0; c < 10; ++c) {
        const auto levels = rng.pick(gen::schemes());
        const int n = rng.integer(1, 3);
        const auto s = gen::random_schedule(rng, levels, 1);
        const HamiltonianModel model(enumerate_basis(LevelScheme(levels), n), s);
        for (int k = 0; k < 100; ++k) {
            const double t = s.window().start + s.window().length() * k / 99.0;
            const Eigen::MatrixXcd h = model.hamiltonian_at(t);
            EXPECT_LT((h - h.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(dynamics, ground_energy_is_zero) {
    gen::Rng rng(0x5eed02);
    for (int c = 0; c < 20; ++c) {
        const auto levels = rng.pick(gen::schemes());
        const auto s = gen::random_schedule(rng, levels, 1);
        const HamiltonianModel model(enumerate_basis(LevelScheme(levels), 2), s);
        const double t = rng.uniform(s.window().start, s.window().end);
        EXPECT_EQ(model.hamiltonian_at(t)(0, 0), 0.0);
    }
}

TEST(dynamics, landau_zener_transition) {
    const double omega = mhz_to_rad_per_us(0.2);
    const double alpha = chirp_rad_per_us2(1e12);
    PulseSegment seg;
    seg.transition = {0, Level::g0, Level::r0};
    seg.envelope = Envelope::constant(omega);
    seg.detuning = DetuningLaw::linear_chirp(alpha, 0.0);
    seg.window = {-100.0, 100.0};
    const Eigen::VectorXcd psi = run(two_level(1), PulseSchedule({seg}, seg.window));
    EXPECT_NEAR(std::norm(psi[0]), oracle::landau_zener_diabatic(omega, alpha), 1e-3);
}

TEST(dynamics, time_reversal_returns_state) {
    gen::Rng rng(0x5eed03);
    for (int c = 0; c < 6; ++c) {
        const auto levels = rng.pick(gen::schemes());
        const auto s = gen::random_schedule(rng, levels, 1);
        const auto b = enumerate_basis(LevelScheme(levels), 1);
        const auto psi0 = StateVector::basis_state(b.dim(), b.ground_index(), s.window().start);
        const Eigen::VectorXcd mid = evolve(HamiltonianModel(b, s), psi0, s.window(), Sampling::events()).final_state();
        const auto back = s.time_reversed();
        const Eigen::VectorXcd end =
            evolve(HamiltonianModel(b, back), StateVector{mid, back.window().start}, back.window(), Sampling::events())
                .final_state();
        EXPECT_GT(std::norm(psi0.amplitudes.dot(end)), 1.0 - 1e-6) << c;
    }
}

TEST(dynamics, dense_sampling_grid) {
    const auto seg = make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(1.0), kPi, 0.0, 0.0);
    const PulseSchedule s({seg}, Window{0.0, 1.0});
    const auto b = two_level(1);
    const auto traj = evolve(HamiltonianModel(b, s), StateVector::basis_state(2, 0, 0.0), s.window(), Sampling::every(0.1));
    ASSERT_EQ(traj.times.size(), 11u);
    EXPECT_DOUBLE_EQ(traj.times.back(), 1.0);
    EXPECT_EQ(traj.states.size(), traj.times.size());
    EXPECT_EQ(sample_grid(0.0, 1.05, 0.5), (std::vector<double>{0.0, 0.5, 1.0, 1.05}));
}

TEST(dynamics, rejects_bad_evolution_requests) {
    const auto seg = make_rabi({0, Level::g0, Level::r0}, Frequency::from_mhz(1.0), kPi, 0.0, 0.0);
    const PulseSchedule s({seg}, seg.window);
    const HamiltonianModel model(two_level(1), s);
    EXPECT_THROW(evolve(model, StateVector::basis_state(2, 0, 0.0), Window{-1.0, 0.1}, Sampling::events()),
                 ValidationError);
    EXPECT_THROW(evolve(model, StateVector{Eigen::VectorXcd::Ones(2), 0.0}, s.window(), Sampling::events()),
                 ValidationError);
    EXPECT_THROW(Sampling::every(0.0), ValidationError);
    PulseSegment bad = seg;
    bad.transition = {0, Level::g0, Level::e};
    EXPECT_THROW(HamiltonianModel(two_level(1), PulseSchedule({bad}, bad.window)), ValidationError);
}

TEST(dynamics, frame_follows_drive_chain) {
    StirapParams p;
    const auto pair = make_stirap_pair(p);
    const PulseSchedule s({pair.pump, pair.stokes}, pair.pump.window);
    const LevelScheme scheme({Level::g0, Level::e, Level::r0});
    const auto e = frame_energies(s, 0, scheme, -4.0, -4.0);
    EXPECT_EQ(e[0], 0.0);
    EXPECT_DOUBLE_EQ(e[1], p.delta.rad_per_us());
    EXPECT_DOUBLE_EQ(e[2], 0.0);
}

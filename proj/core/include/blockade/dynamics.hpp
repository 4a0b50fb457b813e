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

// Rotating-frame Hamiltonian over a blockaded register and Schroedinger-equation
// propagation (hbar = 1, time in us, energies in rad/us).
//
// Frame: at each time the energy of a level is built along the active drives. A level
// that is the `to` end of an active segment sits at E(from) + detuning(t); every other
// level sits at 0. For a pump g->e with +delta and Stokes e->r with -delta this puts e at
// delta and r at 0, and the all-ground configuration always has energy 0.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "blockade/basis.hpp"
#include "blockade/integrator.hpp"
#include "blockade/pulse.hpp"

namespace blockade {

struct StateVector {
    Eigen::VectorXcd amplitudes;
    double time = 0.0;

    double norm() const { return amplitudes.norm(); }
    static StateVector basis_state(std::size_t dim, std::size_t index, double time);
};

/// Rotating-frame level energies of one ensemble at time t, indexed by scheme slot.
/// `context` decides which windows are open and which side of a detuning switch applies;
/// it equals t except on piece boundaries, where the integrator passes the piece midpoint.
std::vector<double> frame_energies(const PulseSchedule &schedule, int ensemble, const LevelScheme &scheme, double t,
                                   double context);

/// Integral of the level energies over [a, t] with the open windows fixed by `context`.
std::vector<double> frame_phases(const PulseSchedule &schedule, int ensemble, const LevelScheme &scheme, double a,
                                 double t, double context);

class HamiltonianModel {
 public:
    HamiltonianModel(RegisterBasis basis, PulseSchedule schedule);

    const RegisterBasis &basis() const { return basis_; }
    const PulseSchedule &schedule() const { return schedule_; }

    Eigen::MatrixXcd hamiltonian_at(double t) const;
    /// Diagonal of H(t).
    Eigen::VectorXd diagonal_at(double t, double context) const;
    /// out = -i H(t) psi, window membership decided at `context`.
    void derivative(double t, double context, const Eigen::VectorXcd &psi, Eigen::VectorXcd &out) const;
    /// Integral over [a, t] of the linear-chirp part of the diagonal.
    Eigen::VectorXd chirp_phase_at(double a, double t, double context) const;
    /// Diagonal without the linear-chirp part.
    Eigen::VectorXd static_diagonal_at(double t, double context) const;
    /// Same equation for c = exp(i chirp_phase_at(a, t)) psi.
    void interaction_derivative(double t, double a, double context, const Eigen::VectorXcd &c,
                                Eigen::VectorXcd &out) const;

 private:
    struct Coupling {
        std::size_t from;
        std::size_t to;
        double coefficient;
    };

    void check_time(double t) const;
    template <class PerEnsemble>
    Eigen::VectorXd accumulate_diagonal(PerEnsemble level_values) const;
    void add_couplings(double t, double context, const Eigen::VectorXcd &psi, Eigen::VectorXcd &hpsi) const;

    RegisterBasis basis_;
    PulseSchedule schedule_;
    std::vector<std::vector<Coupling>> couplings_;  // per segment
};

struct Sampling {
    enum class Kind { dense, events_only };
    Kind kind = Kind::events_only;
    double dt = 0.0;

    static Sampling every(double dt);
    static Sampling events() { return {}; }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Eigen::VectorXcd> states;
    bool dense = false;
    IntegratorStats stats;

    const Eigen::VectorXcd &final_state() const { return states.back(); }
    double final_time() const { return times.back(); }
    /// | ||psi(t_end)||^2 - 1 |
    double norm_drift() const { return std::abs(final_state().squaredNorm() - 1.0); }
};

/// Integrates i dpsi/dt = H(t) psi over `span`, restarting the stepper at every window
/// edge and detuning switch. The state is never renormalized. With events-only sampling
/// the trajectory holds the endpoints and every breakpoint.
Trajectory evolve(const HamiltonianModel &model, const StateVector &psi0, Window span, Sampling sampling,
                  const IntegratorOptions &options = {});

/// Sample grid t0, t0 + dt, ..., closed by t1.
std::vector<double> sample_grid(double t0, double t1, double dt);

}  // namespace blockade

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

// Brute-force reference: every atom is distinguishable and carries its own level index.
// States with more Rydberg atoms than the blockade allows are dropped. The Hamiltonian is
// assembled atom by atom and integrated in the lab frame, with none of the symmetric-basis
// machinery, so agreement with the collective model is a real check.

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "blockade/basis.hpp"
#include "blockade/integrator.hpp"
#include "blockade/pulse.hpp"

namespace blockade::oracle {

class ProductRegister {
 public:
    ProductRegister(std::vector<EnsembleSpec> ensembles, bool cross_blockade);

    std::size_t dim() const { return states_.size(); }
    std::size_t num_atoms() const { return atom_ensemble_.size(); }

    /// Spreads a symmetric-basis state over its permutations.
    Eigen::VectorXcd embed(const Eigen::VectorXcd &symmetric, const RegisterBasis &basis) const;
    /// Inverse of embed for symmetric product states.
    Eigen::VectorXcd project(const Eigen::VectorXcd &product, const RegisterBasis &basis) const;

    Eigen::MatrixXcd hamiltonian(const PulseSchedule &schedule, double t, double context) const;

    /// Integrates over the whole schedule window, restarting at every breakpoint.
    Eigen::VectorXcd evolve(const PulseSchedule &schedule, Eigen::VectorXcd psi0,
                            const IntegratorOptions &options) const;

    static IntegratorOptions tight();

 private:
    std::vector<int> joint_counts(std::size_t state) const;

    std::vector<EnsembleSpec> ensembles_;
    std::vector<int> atom_ensemble_;
    std::vector<std::vector<int>> states_;  ///< level slot of every atom
};

/// exp(-pi Omega^2 / (2 alpha)): probability of staying in the diabatic state.
double landau_zener_diabatic(double omega, double alpha);

}  // namespace blockade::oracle

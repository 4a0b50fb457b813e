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

// Adaptive Dormand-Prince 5(4) integrator for complex state vectors, with Hairer's
// 4th-order continuous extension for dense sampling.

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>

#include <Eigen/Dense>

namespace blockade {

struct IntegratorOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double initial_step = 0.0;  ///< 0 selects a step from the local derivative scale
    double max_step = 0.1;
    std::size_t max_steps = 200'000'000;
    /// If > 0 the flow is taken to conserve ||y||^2, and a step is also rejected when
    /// ||y||^2 changes by more than norm_rate * h.
    double norm_rate = 1e-10;

    friend bool operator==(const IntegratorOptions &, const IntegratorOptions &) = default;
};

struct IntegratorStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evaluations = 0;

    IntegratorStats &operator+=(const IntegratorStats &other) {
        accepted += other.accepted;
        rejected += other.rejected;
        rhs_evaluations += other.rhs_evaluations;
        return *this;
    }
};

class DormandPrince {
 public:
    using State = Eigen::VectorXcd;
    using Rhs = std::function<void(double, const State &, State &)>;
    using Observer = std::function<void(double, const State &)>;

    DormandPrince(Rhs rhs, IntegratorOptions options);

    /// Integrates y' = rhs(t, y) from t0 to t1 and returns y(t1). `samples` must be sorted
    /// and lie in [t0, t1]; the observer sees the dense-output state at each of them.
    /// Throws IntegrationError on step underflow, non-finite values or an exhausted step budget.
    State integrate(State y0, double t0, double t1, std::span<const double> samples = {},
                    const Observer &observer = {});

    const IntegratorStats &stats() const { return stats_; }

 private:
    double initial_step(double t0, const State &y0, const State &f0, double direction_span);
    double error_norm(const State &err, const State &y0, const State &y1) const;

    Rhs rhs_;
    IntegratorOptions options_;
    IntegratorStats stats_;
};

}  // namespace blockade

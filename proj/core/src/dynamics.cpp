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

#include <algorithm>
#include <cmath>

#include "blockade/errors.hpp"

namespace blockade {

StateVector StateVector::basis_state(std::size_t dim, std::size_t index, double time) {
    StateVector psi{Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim)), time};
    psi.amplitudes[static_cast<Eigen::Index>(index)] = 1.0;
    return psi;
}

namespace {

// Level values built along the active drives of one ensemble; `term` gives the
// contribution of a segment (its detuning, or the detuning's integral).
template <class Term>
std::vector<double> chain_sum(const PulseSchedule &schedule, int ensemble, const LevelScheme &scheme, double context,
                              Term term) {
    const std::size_t n = scheme.size();
    std::vector<double> energy(n, 0.0);
    std::vector<const PulseSegment *> active;
    std::vector<bool> driven(n, false);
    for (const auto &seg : schedule.segments()) {
        if (seg.transition.ensemble == ensemble && seg.window.contains(context)) {
            auto to = scheme.slot_of(seg.transition.to);
            if (to) {
                active.push_back(&seg);
                driven[*to] = true;
            }
        }
    }
    // Undriven levels are fixed at 0; propagate along active transitions until stable.
    std::vector<bool> fixed(n);
    for (std::size_t k = 0; k < n; ++k) {
        fixed[k] = !driven[k];
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto *seg : active) {
            auto from = scheme.slot_of(seg->transition.from);
            auto to = scheme.slot_of(seg->transition.to);
            if (!from || fixed[*to] || !fixed[*from]) {
                continue;
            }
            energy[*to] = energy[*from] + term(*seg);
            fixed[*to] = true;
            changed = true;
        }
    }
    return energy;
}

}  // namespace

std::vector<double> frame_energies(const PulseSchedule &schedule, int ensemble, const LevelScheme &scheme, double t,
                                   double context) {
    return chain_sum(schedule, ensemble, scheme, context,
                     [&](const PulseSegment &seg) { return seg.detuning.at(t, context); });
}

std::vector<double> frame_phases(const PulseSchedule &schedule, int ensemble, const LevelScheme &scheme, double a,
                                 double t, double context) {
    return chain_sum(schedule, ensemble, scheme, context,
                     [&](const PulseSegment &seg) { return seg.detuning.integral(a, t, context); });
}

namespace {

bool is_chirp(const PulseSegment &seg) { return seg.detuning.kind == DetuningLaw::Kind::linear_chirp; }

}  // namespace

HamiltonianModel::HamiltonianModel(RegisterBasis basis, PulseSchedule schedule)
    : basis_(std::move(basis)), schedule_(std::move(schedule)) {
    couplings_.reserve(schedule_.segments().size());
    for (const auto &seg : schedule_.segments()) {
        const auto &tr = seg.transition;
        if (tr.ensemble < 0 || static_cast<std::size_t>(tr.ensemble) >= basis_.num_ensembles()) {
            throw ValidationError("segment '" + seg.label + "' addresses a missing ensemble");
        }
        const auto &scheme = basis_.ensemble(static_cast<std::size_t>(tr.ensemble)).scheme;
        if (!scheme.contains(tr.from) || !scheme.contains(tr.to)) {
            throw ValidationError("segment '" + seg.label + "' uses a level absent from the scheme: " +
                                  to_string(tr));
        }
        std::vector<Coupling> list;
        for (std::size_t i = 0; i < basis_.dim(); ++i) {
            auto outcome = basis_.apply(i, tr);
            if (outcome.status == TransitionStatus::coupled) {
                list.push_back({i, outcome.target, outcome.coefficient});
            }
        }
        couplings_.push_back(std::move(list));
    }
}

void HamiltonianModel::check_time(double t) const {
    const auto &w = schedule_.window();
    if (!(t >= w.start && t <= w.end)) {
        throw ValidationError("time " + std::to_string(t) + " us outside the schedule window");
    }
}

template <class PerEnsemble>
Eigen::VectorXd HamiltonianModel::accumulate_diagonal(PerEnsemble level_values) const {
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_.dim()));
    for (std::size_t e = 0; e < basis_.num_ensembles(); ++e) {
        const auto &scheme = basis_.ensemble(e).scheme;
        const std::vector<double> energy = level_values(static_cast<int>(e), scheme);
        if (std::all_of(energy.begin(), energy.end(), [](double x) { return x == 0.0; })) {
            continue;
        }
        for (std::size_t i = 0; i < basis_.dim(); ++i) {
            auto occ = basis_.occupation(i, e);
            double sum = 0.0;
            for (std::size_t k = 0; k < scheme.size(); ++k) {
                sum += occ[k] * energy[k];
            }
            diag[static_cast<Eigen::Index>(i)] += sum;
        }
    }
    return diag;
}

Eigen::VectorXd HamiltonianModel::diagonal_at(double t, double context) const {
    return accumulate_diagonal([&](int e, const LevelScheme &scheme) {
        return frame_energies(schedule_, e, scheme, t, context);
    });
}

Eigen::VectorXd HamiltonianModel::chirp_phase_at(double a, double t, double context) const {
    return accumulate_diagonal([&](int e, const LevelScheme &scheme) {
        return chain_sum(schedule_, e, scheme, context, [&](const PulseSegment &seg) {
            return is_chirp(seg) ? seg.detuning.integral(a, t, context) : 0.0;
        });
    });
}

Eigen::VectorXd HamiltonianModel::static_diagonal_at(double t, double context) const {
    return accumulate_diagonal([&](int e, const LevelScheme &scheme) {
        return chain_sum(schedule_, e, scheme, context, [&](const PulseSegment &seg) {
            return is_chirp(seg) ? 0.0 : seg.detuning.at(t, context);
        });
    });
}

void HamiltonianModel::add_couplings(double t, double context, const Eigen::VectorXcd &psi,
                                     Eigen::VectorXcd &hpsi) const {
    const auto &segments = schedule_.segments();
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const double omega = segments[s].rabi(t, context);
        if (omega == 0.0) {
            continue;
        }
        const std::complex<double> w = 0.5 * omega * std::polar(1.0, segments[s].carrier_phase);
        const std::complex<double> wc = std::conj(w);
        for (const auto &c : couplings_[s]) {
            const auto to = static_cast<Eigen::Index>(c.to);
            const auto from = static_cast<Eigen::Index>(c.from);
            hpsi[to] += w * c.coefficient * psi[from];
            hpsi[from] += wc * c.coefficient * psi[to];
        }
    }
}

Eigen::MatrixXcd HamiltonianModel::hamiltonian_at(double t) const {
    check_time(t);
    const auto dim = static_cast<Eigen::Index>(basis_.dim());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
    h.diagonal() = diagonal_at(t, t).cast<std::complex<double>>();
    const auto &segments = schedule_.segments();
    for (std::size_t s = 0; s < segments.size(); ++s) {
        const double omega = segments[s].rabi(t);
        if (omega == 0.0) {
            continue;
        }
        const std::complex<double> w = 0.5 * omega * std::polar(1.0, segments[s].carrier_phase);
        for (const auto &c : couplings_[s]) {
            const auto to = static_cast<Eigen::Index>(c.to);
            const auto from = static_cast<Eigen::Index>(c.from);
            h(to, from) += w * c.coefficient;
            h(from, to) += std::conj(w) * c.coefficient;
        }
    }
    return h;
}

void HamiltonianModel::derivative(double t, double context, const Eigen::VectorXcd &psi,
                                  Eigen::VectorXcd &out) const {
    const Eigen::VectorXd diag = diagonal_at(t, context);
    Eigen::VectorXcd hpsi = diag.cast<std::complex<double>>().cwiseProduct(psi);
    add_couplings(t, context, psi, hpsi);
    out = std::complex<double>(0.0, -1.0) * hpsi;
}

void HamiltonianModel::interaction_derivative(double t, double a, double context, const Eigen::VectorXcd &c,
                                              Eigen::VectorXcd &out) const {
    const Eigen::VectorXd phi = chirp_phase_at(a, t, context);
    const Eigen::VectorXd diag = static_diagonal_at(t, context);
    Eigen::VectorXcd rot(phi.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i) {
        rot[i] = std::polar(1.0, phi[i]);
    }
    const Eigen::VectorXcd psi = rot.conjugate().cwiseProduct(c);
    Eigen::VectorXcd hpsi = diag.cast<std::complex<double>>().cwiseProduct(psi);
    add_couplings(t, context, psi, hpsi);
    out = std::complex<double>(0.0, -1.0) * rot.cwiseProduct(hpsi);
}

Sampling Sampling::every(double dt) {
    if (!(dt > 0.0)) {
        throw ValidationError("sampling interval must be positive");
    }
    return {Kind::dense, dt};
}

std::vector<double> sample_grid(double t0, double t1, double dt) {
    std::vector<double> grid;
    const auto steps = static_cast<long long>(std::floor((t1 - t0) / dt + 1e-9));
    grid.reserve(static_cast<std::size_t>(steps) + 2);
    for (long long k = 0; k <= steps; ++k) {
        grid.push_back(t0 + static_cast<double>(k) * dt);
    }
    if (t1 - grid.back() > 1e-9 * std::max(1.0, std::abs(t1))) {
        grid.push_back(t1);
    } else {
        grid.back() = t1;
    }
    return grid;
}

Trajectory evolve(const HamiltonianModel &model, const StateVector &psi0, Window span, Sampling sampling,
                  const IntegratorOptions &options) {
    const auto &w = model.schedule().window();
    if (!(span.start >= w.start && span.end <= w.end && span.start <= span.end)) {
        throw ValidationError("evolution span lies outside the schedule window");
    }
    if (psi0.amplitudes.size() != static_cast<Eigen::Index>(model.basis().dim())) {
        throw ValidationError("initial state dimension does not match the basis");
    }
    if (std::abs(psi0.amplitudes.squaredNorm() - 1.0) > 1e-8) {
        throw ValidationError("initial state is not normalized");
    }

    std::vector<double> cuts{span.start};
    for (double b : model.schedule().breakpoints()) {
        if (b > span.start && b < span.end) {
            cuts.push_back(b);
        }
    }
    cuts.push_back(span.end);

    Trajectory traj;
    traj.dense = sampling.kind == Sampling::Kind::dense;
    std::vector<double> samples = traj.dense ? sample_grid(span.start, span.end, sampling.dt) : cuts;
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    // Chirped detunings sweep fast at the window edges, so each piece is integrated in the
    // interaction picture of the chirp terms, whose phase is known in closed form.
    double context = span.start;
    double piece_start = span.start;
    DormandPrince stepper(
        [&model, &context, &piece_start](double t, const Eigen::VectorXcd &y, Eigen::VectorXcd &dy) {
            model.interaction_derivative(t, piece_start, context, y, dy);
        },
        options);

    auto to_frame = [&](double t, const Eigen::VectorXcd &c) {
        const Eigen::VectorXd phi = model.chirp_phase_at(piece_start, t, context);
        Eigen::VectorXcd psi(c.size());
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            psi[i] = std::polar(1.0, -phi[i]) * c[i];
        }
        return psi;
    };
    auto record = [&](double t, const Eigen::VectorXcd &c) {
        if (!traj.times.empty() && t <= traj.times.back()) {
            return;
        }
        traj.times.push_back(t);
        traj.states.push_back(to_frame(t, c));
    };

    Eigen::VectorXcd y = psi0.amplitudes;
    std::size_t first = 0;
    for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
        const double a = cuts[piece];
        const double b = cuts[piece + 1];
        std::size_t last = first;
        while (last < samples.size() && samples[last] <= b) {
            ++last;
        }
        std::span<const double> local(samples.data() + first, last - first);
        context = 0.5 * (a + b);
        piece_start = a;
        y = to_frame(b, stepper.integrate(std::move(y), a, b, local, record));
        first = last;
    }
    if (traj.times.empty() || traj.times.back() < span.end) {
        traj.times.push_back(span.end);
        traj.states.push_back(y);
    }
    traj.stats = stepper.stats();
    return traj;
}

}  // namespace blockade

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

#include <algorithm>
#include <cmath>
#include <sstream>

#include "blockade/errors.hpp"

namespace blockade {

namespace {

constexpr Level kAllLevels[] = {Level::g0, Level::g1, Level::g2, Level::e, Level::r0, Level::r1};

// All compositions of n over the scheme's slots with at most one Rydberg atom.
void compositions(const LevelScheme &scheme, int remaining, std::size_t slot, std::vector<int> &current,
                  std::vector<std::vector<int>> &out) {
    if (slot + 1 == scheme.size()) {
        current[slot] = remaining;
        int rydberg = 0;
        for (std::size_t k = 0; k < scheme.size(); ++k) {
            if (scheme.is_rydberg_slot(k)) {
                rydberg += current[k];
            }
        }
        if (rydberg <= 1) {
            out.push_back(current);
        }
        return;
    }
    for (int n = 0; n <= remaining; ++n) {
        current[slot] = n;
        compositions(scheme, remaining - n, slot + 1, current, out);
    }
}

bool colex_less(const std::vector<int> &a, const std::vector<int> &b) {
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

std::string_view to_string(Level level) {
    switch (level) {
        case Level::g0: return "g0";
        case Level::g1: return "g1";
        case Level::g2: return "g2";
        case Level::e: return "e";
        case Level::r0: return "r0";
        case Level::r1: return "r1";
    }
    return "?";
}

Level level_from_string(std::string_view name) {
    for (Level level : kAllLevels) {
        if (to_string(level) == name) {
            return level;
        }
    }
    throw ValidationError("unknown level '" + std::string(name) + "' (expected g0, g1, g2, e, r0 or r1)");
}

bool is_rydberg(Level level) { return level == Level::r0 || level == Level::r1; }

bool is_ground(Level level) { return level == Level::g0 || level == Level::g1 || level == Level::g2; }

std::string to_string(const Transition &transition) {
    std::ostringstream out;
    out << "ensemble " << transition.ensemble << ": " << to_string(transition.from) << "->" << to_string(transition.to);
    return out.str();
}

LevelScheme::LevelScheme(std::vector<Level> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) {
        throw ValidationError("level scheme is empty");
    }
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        for (std::size_t j = i + 1; j < levels_.size(); ++j) {
            if (levels_[i] == levels_[j]) {
                throw ValidationError("duplicate level '" + std::string(to_string(levels_[i])) + "' in scheme");
            }
        }
    }
    auto ground = std::find_if(levels_.begin(), levels_.end(), is_ground);
    if (ground == levels_.end()) {
        throw ValidationError("level scheme needs at least one ground level");
    }
    reference_ground_ = static_cast<std::size_t>(ground - levels_.begin());
}

std::optional<std::size_t> LevelScheme::slot_of(Level level) const {
    auto it = std::find(levels_.begin(), levels_.end(), level);
    if (it == levels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - levels_.begin());
}

RegisterBasis RegisterBasis::enumerate(std::vector<EnsembleSpec> ensembles, bool cross_blockade) {
    if (ensembles.empty()) {
        throw ValidationError("register needs at least one ensemble");
    }
    if (ensembles.size() > 2) {
        throw ValidationError("register supports at most two ensembles");
    }
    RegisterBasis basis;
    basis.cross_blockade_ = cross_blockade;
    std::size_t width = 0;
    std::vector<std::vector<std::vector<int>>> per_ensemble;
    for (const auto &spec : ensembles) {
        if (spec.n_atoms < 1) {
            throw ValidationError("ensemble must hold at least one atom (got " + std::to_string(spec.n_atoms) + ")");
        }
        basis.offsets_.push_back(width);
        width += spec.scheme.size();
        std::vector<std::vector<int>> states;
        std::vector<int> current(spec.scheme.size(), 0);
        compositions(spec.scheme, spec.n_atoms, 0, current, states);
        per_ensemble.push_back(std::move(states));
    }
    basis.ensembles_ = std::move(ensembles);

    auto rydberg_of = [&](const std::vector<int> &occ, const LevelScheme &scheme) {
        int n = 0;
        for (std::size_t k = 0; k < scheme.size(); ++k) {
            if (scheme.is_rydberg_slot(k)) {
                n += occ[k];
            }
        }
        return n;
    };

    if (basis.ensembles_.size() == 1) {
        basis.states_ = std::move(per_ensemble[0]);
    } else {
        for (const auto &a : per_ensemble[0]) {
            for (const auto &b : per_ensemble[1]) {
                if (cross_blockade &&
                    rydberg_of(a, basis.ensembles_[0].scheme) + rydberg_of(b, basis.ensembles_[1].scheme) > 1) {
                    continue;
                }
                std::vector<int> joint = a;
                joint.insert(joint.end(), b.begin(), b.end());
                basis.states_.push_back(std::move(joint));
            }
        }
    }
    std::sort(basis.states_.begin(), basis.states_.end(), colex_less);
    for (std::size_t i = 0; i < basis.states_.size(); ++i) {
        basis.index_.emplace(basis.states_[i], i);
    }

    std::vector<int> ground(width, 0);
    for (std::size_t e = 0; e < basis.ensembles_.size(); ++e) {
        ground[basis.offsets_[e] + basis.ensembles_[e].scheme.reference_ground_slot()] = basis.ensembles_[e].n_atoms;
    }
    basis.ground_index_ = basis.index_of(ground);
    return basis;
}

std::span<const int> RegisterBasis::occupation(std::size_t index, std::size_t ensemble) const {
    const auto &joint = states_.at(index);
    return std::span<const int>(joint).subspan(offsets_.at(ensemble), ensembles_.at(ensemble).scheme.size());
}

int RegisterBasis::count(std::size_t index, std::size_t ensemble, Level level) const {
    auto slot = ensembles_.at(ensemble).scheme.slot_of(level);
    return slot ? occupation(index, ensemble)[*slot] : 0;
}

std::optional<std::size_t> RegisterBasis::find(std::span<const int> joint) const {
    auto it = index_.find(std::vector<int>(joint.begin(), joint.end()));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t RegisterBasis::index_of(std::span<const int> joint) const {
    auto found = find(joint);
    if (!found) {
        throw ValidationError("occupation tuple is not a member of the basis");
    }
    return *found;
}

int RegisterBasis::rydberg_count(std::size_t index, std::size_t ensemble) const {
    const auto &scheme = ensembles_.at(ensemble).scheme;
    auto occ = occupation(index, ensemble);
    int n = 0;
    for (std::size_t k = 0; k < scheme.size(); ++k) {
        if (scheme.is_rydberg_slot(k)) {
            n += occ[k];
        }
    }
    return n;
}

int RegisterBasis::rydberg_count(std::size_t index) const {
    int n = 0;
    for (std::size_t e = 0; e < ensembles_.size(); ++e) {
        n += rydberg_count(index, e);
    }
    return n;
}

void RegisterBasis::check_transition(const Transition &transition) const {
    if (transition.ensemble < 0 || static_cast<std::size_t>(transition.ensemble) >= ensembles_.size()) {
        throw ValidationError("transition addresses ensemble " + std::to_string(transition.ensemble) +
                              " but the register has " + std::to_string(ensembles_.size()));
    }
    if (transition.from == transition.to) {
        throw ValidationError("transition between identical levels: " + to_string(transition));
    }
    const auto &scheme = ensembles_[static_cast<std::size_t>(transition.ensemble)].scheme;
    if (!scheme.contains(transition.from) || !scheme.contains(transition.to)) {
        throw ValidationError("transition uses a level absent from the scheme: " + to_string(transition));
    }
}

TransitionOutcome RegisterBasis::apply(std::size_t from_index, const Transition &transition) const {
    check_transition(transition);
    const auto ens = static_cast<std::size_t>(transition.ensemble);
    const auto &scheme = ensembles_[ens].scheme;
    const std::size_t a = offsets_[ens] + *scheme.slot_of(transition.from);
    const std::size_t b = offsets_[ens] + *scheme.slot_of(transition.to);
    std::vector<int> moved = states_.at(from_index);
    if (moved[a] == 0) {
        return {TransitionStatus::no_source, 0, 0.0};
    }
    const double coefficient = std::sqrt(static_cast<double>(moved[a]) * static_cast<double>(moved[b] + 1));
    moved[a] -= 1;
    moved[b] += 1;
    auto it = index_.find(moved);
    if (it == index_.end()) {
        return {TransitionStatus::blocked, 0, 0.0};
    }
    return {TransitionStatus::coupled, it->second, coefficient};
}

double RegisterBasis::transition_element(std::size_t from_index, std::size_t to_index,
                                         const Transition &transition) const {
    if (to_index >= states_.size()) {
        throw ValidationError("basis index " + std::to_string(to_index) + " out of range");
    }
    auto outcome = apply(from_index, transition);
    switch (outcome.status) {
        case TransitionStatus::blocked:
            throw BlockedTransitionError("transition " + to_string(transition) + " from " + label(from_index) +
                                         " violates blockade");
        case TransitionStatus::no_source: return 0.0;
        case TransitionStatus::coupled: return outcome.target == to_index ? outcome.coefficient : 0.0;
    }
    return 0.0;
}

std::string RegisterBasis::label(std::size_t index) const {
    std::ostringstream out;
    for (std::size_t e = 0; e < ensembles_.size(); ++e) {
        if (e > 0) {
            out << " | ";
        }
        const auto &scheme = ensembles_[e].scheme;
        auto occ = occupation(index, e);
        bool first = true;
        for (std::size_t k = 0; k < scheme.size(); ++k) {
            if (occ[k] == 0) {
                continue;
            }
            if (!first) {
                out << ' ';
            }
            out << to_string(scheme.level(k)) << '^' << occ[k];
            first = false;
        }
    }
    return out.str();
}

RegisterBasis enumerate_basis(const LevelScheme &scheme, int n_atoms) {
    return RegisterBasis::enumerate({EnsembleSpec{scheme, n_atoms}}, true);
}

RegisterBasis enumerate_basis(const LevelScheme &scheme, int n_atoms, const EnsembleSpec &partner,
                              bool cross_blockade) {
    return RegisterBasis::enumerate({EnsembleSpec{scheme, n_atoms}, partner}, cross_blockade);
}

}  // namespace blockade

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

// Symmetric (permutation-invariant) Hilbert space of one or two atomic ensembles under
// perfect Rydberg blockade. A basis vector is labeled by per-level occupation numbers;
// states with more than one Rydberg excitation are absent from the basis.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace blockade {

enum class Level : std::uint8_t { g0, g1, g2, e, r0, r1 };

std::string_view to_string(Level level);
Level level_from_string(std::string_view name);
bool is_rydberg(Level level);
bool is_ground(Level level);

/// Ordered single-atom levels used by one ensemble. r0 and r1 are the Rydberg set.
class LevelScheme {
 public:
    explicit LevelScheme(std::vector<Level> levels);

    std::span<const Level> levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }
    Level level(std::size_t slot) const { return levels_.at(slot); }
    std::optional<std::size_t> slot_of(Level level) const;
    bool contains(Level level) const { return slot_of(level).has_value(); }
    bool is_rydberg_slot(std::size_t slot) const { return is_rydberg(levels_.at(slot)); }
    /// First ground level in scheme order; all atoms start here.
    std::size_t reference_ground_slot() const { return reference_ground_; }

    friend bool operator==(const LevelScheme &a, const LevelScheme &b) { return a.levels_ == b.levels_; }

 private:
    std::vector<Level> levels_;
    std::size_t reference_ground_ = 0;
};

struct EnsembleSpec {
    LevelScheme scheme;
    int n_atoms = 1;

    friend bool operator==(const EnsembleSpec &, const EnsembleSpec &) = default;
};

/// One atom of ensemble `ensemble` moves from level `from` to level `to`.
struct Transition {
    int ensemble = 0;
    Level from = Level::g0;
    Level to = Level::r0;

    friend bool operator==(const Transition &, const Transition &) = default;
};

std::string to_string(const Transition &transition);

enum class TransitionStatus {
    coupled,    ///< target state exists; coefficient is sqrt(n_from * (n_to + 1))
    no_source,  ///< no atom in the source level
    blocked,    ///< target would carry a second Rydberg excitation
};

struct TransitionOutcome {
    TransitionStatus status = TransitionStatus::no_source;
    std::size_t target = 0;
    double coefficient = 0.0;
};

/// Joint occupation basis of a one- or two-ensemble register. Immutable after construction.
///
/// States are ordered colexicographically on the concatenated occupation tuple (the
/// last level of the last ensemble is the most significant digit). For a single
/// ensemble {g0, e, r0} with N = 2 this gives (2,0,0),(1,1,0),(0,2,0),(1,0,1),(0,1,1).
class RegisterBasis {
 public:
    static RegisterBasis enumerate(std::vector<EnsembleSpec> ensembles, bool cross_blockade);

    std::size_t dim() const { return states_.size(); }
    std::size_t num_ensembles() const { return ensembles_.size(); }
    const EnsembleSpec &ensemble(std::size_t i) const { return ensembles_.at(i); }
    const std::vector<EnsembleSpec> &ensembles() const { return ensembles_; }
    bool cross_blockade() const { return cross_blockade_; }

    /// Concatenated occupation tuple of basis state `index`.
    std::span<const int> joint(std::size_t index) const { return states_.at(index); }
    /// Occupation counts of one ensemble inside basis state `index`.
    std::span<const int> occupation(std::size_t index, std::size_t ensemble) const;
    int count(std::size_t index, std::size_t ensemble, Level level) const;

    std::optional<std::size_t> find(std::span<const int> joint) const;
    std::size_t index_of(std::span<const int> joint) const;

    int rydberg_count(std::size_t index) const;
    int rydberg_count(std::size_t index, std::size_t ensemble) const;
    /// All atoms of every ensemble in their reference ground level.
    std::size_t ground_index() const { return ground_index_; }

    /// sqrt(n_from (n_to + 1)) if `to_index` is `from_index` with one atom moved along
    /// the transition, else 0. Throws BlockedTransitionError when the moved state is
    /// excluded by blockade.
    double transition_element(std::size_t from_index, std::size_t to_index, const Transition &transition) const;

    /// Applies the single-atom transition to basis state `from_index`.
    TransitionOutcome apply(std::size_t from_index, const Transition &transition) const;

    /// Slot offset of ensemble `i` inside the joint tuple.
    std::size_t offset(std::size_t ensemble) const { return offsets_.at(ensemble); }

    std::string label(std::size_t index) const;

 private:
    RegisterBasis() = default;
    void check_transition(const Transition &transition) const;

    std::vector<EnsembleSpec> ensembles_;
    std::vector<std::size_t> offsets_;
    bool cross_blockade_ = true;
    std::vector<std::vector<int>> states_;
    std::map<std::vector<int>, std::size_t> index_;
    std::size_t ground_index_ = 0;
};

/// Single-ensemble basis.
RegisterBasis enumerate_basis(const LevelScheme &scheme, int n_atoms);
/// Two-ensemble register basis.
RegisterBasis enumerate_basis(const LevelScheme &scheme, int n_atoms, const EnsembleSpec &partner, bool cross_blockade);

}  // namespace blockade

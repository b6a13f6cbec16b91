/*
 * Copyright (c) 2026, The gridproto Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef GRIDPROTO_CORRESPONDENCE_HPP_
#define GRIDPROTO_CORRESPONDENCE_HPP_

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gridproto/dist_core.hpp"
#include "gridproto/global_semantics.hpp"
#include "gridproto/projection.hpp"

namespace gridproto {

/// Maps a configuration to its distributed implementation. project_network
/// by default; the mutation tests substitute broken controllers.
using NetworkProjector = std::function<Network(const Configuration&)>;

struct Counterexample {
  enum class Direction { Soundness, Completeness };
  Direction direction;
  Configuration configuration;
  /// Soundness: the global step without a network match.
  std::optional<StepInfo> step;
  /// Completeness: the network transition without a global match.
  std::optional<NetLabel> label;
  /// Canonical key of the unmatched successor network.
  std::string network;
  std::string explanation;

  /// Total order key used to sort reports.
  std::string key() const;
};

struct MatchReport {
  std::size_t checked_states = 0;
  std::size_t checked_edges = 0;
  std::vector<Counterexample> counterexamples;

  bool ok() const { return counterexamples.empty(); }
  std::size_t count(Counterexample::Direction d) const;
};

/// Matches every global step against an observable transition of the
/// projected network and vice versa. Broadcast steps match only `id!*:f`
/// transitions, binary and local steps only τ.
MatchReport check_state(const Configuration& c, const EffectRegistry& reg,
                        const NetworkProjector& projector = project_network);

/// check_state on every configuration reachable from `c` (within `depth`
/// when given). Throws StateBudgetExceeded.
MatchReport check_bounded(const Configuration& c, const EffectRegistry& reg, const ExploreOptions& opts = {},
                          const NetworkProjector& projector = project_network);

std::string to_string(const Counterexample& ce);

// ---------------------------------------------------------------------------
// Controller mutations

/// Single deletion from the synthesized persistent controller (the reactive
/// projection shared by all nodes): a whole input, or one output branch
/// inside an input's continuation.
struct ControllerMutation {
  enum class Kind { DropInput, DropOutput };
  Kind kind;
  ActionLabel input;
  ActionLabel output;  // DropOutput only

  std::string to_string() const;
};

std::vector<ControllerMutation> controller_mutations(const Protocol& p);

/// project_network with the mutation applied to every node's persistent
/// controller.
NetworkProjector mutated_projector(const ControllerMutation& m);

}  // namespace gridproto

#endif  // GRIDPROTO_CORRESPONDENCE_HPP_

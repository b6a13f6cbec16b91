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

#ifndef GRIDPROTO_GLOBAL_SEMANTICS_HPP_
#define GRIDPROTO_GLOBAL_SEMANTICS_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gridproto/global_ast.hpp"
#include "gridproto/grid_state.hpp"

namespace gridproto {

struct Configuration {
  NetworkState delta;
  Protocol protocol;

  /// Equal for configurations with equal registers and congruent protocols
  /// (up to the axioms that canonical_key decides).
  std::string key() const;
};

enum class StepKind { Binary, Broadcast, Local };

struct StepInfo {
  StepKind kind = StepKind::Local;
  NodeId enabler;
  /// Binary: the single reactor. Broadcast: reacting children, possibly
  /// none. Local: empty.
  std::vector<NodeId> reactors;
  ActionLabel label;

  friend bool operator==(const StepInfo&, const StepInfo&) = default;
};

struct GlobalStep {
  StepInfo info;
  Configuration successor;
};

/// Rewrites `p` so that the redex's summation has fired: the enabler's
/// active marker is consumed and `reactors` become active on the chosen
/// branch's continuation. The summation itself stays in place.
Protocol apply_redex(const Protocol& p, const Redex& r, const std::vector<NodeId>& reactors);

/// All one-step reductions. Propagates NegativeCounter from side effects.
std::vector<GlobalStep> successors(const Configuration& c, const EffectRegistry& reg);

// ---------------------------------------------------------------------------
// Running

class Scheduler {
 public:
  using Callback = std::function<std::size_t(const Configuration&, const std::vector<GlobalStep>&)>;

  static Scheduler seeded(std::uint64_t seed);
  static Scheduler first_in_order();
  /// The callback returns the index of the step to take.
  static Scheduler interactive(Callback pick);

  /// `options` is nonempty.
  std::size_t pick(const Configuration& c, const std::vector<GlobalStep>& options);

 private:
  enum class Kind { Seeded, First, Interactive };
  Kind kind_ = Kind::First;
  std::mt19937_64 rng_;
  Callback callback_;
};

struct Trace {
  std::vector<StepInfo> steps;
  Configuration final;
  /// False when the run stopped at max_steps with successors left.
  bool terminated = true;
};

constexpr std::size_t kDefaultMaxSteps = 10000;
constexpr std::size_t kDefaultStateCap = 100000;

Trace run(const Configuration& c, const EffectRegistry& reg, Scheduler& scheduler,
          std::size_t max_steps = kDefaultMaxSteps);

// ---------------------------------------------------------------------------
// Exploration

struct ExploreOptions {
  /// Unbounded when empty.
  std::optional<std::size_t> depth;
  std::size_t state_cap = kDefaultStateCap;
};

struct StateGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    StepInfo info;
  };

  std::vector<Configuration> states;  // states[0] is the initial configuration
  std::vector<std::size_t> depth;
  std::vector<bool> expanded;  // false for states cut off by the depth bound
  std::vector<Edge> edges;

  /// Expanded states without outgoing edges.
  std::vector<std::size_t> terminal_states() const;
};

/// Breadth-first exploration with deduplication by Configuration::key().
/// Throws StateBudgetExceeded when more than `state_cap` states are found.
StateGraph explore(const Configuration& c, const EffectRegistry& reg, const ExploreOptions& opts = {});

}  // namespace gridproto

#endif  // GRIDPROTO_GLOBAL_SEMANTICS_HPP_

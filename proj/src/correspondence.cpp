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

#include "gridproto/correspondence.hpp"

#include <algorithm>

namespace gridproto {

namespace {

std::string describe(const StepInfo& s) {
  std::string kind = s.kind == StepKind::Binary ? "binary" : s.kind == StepKind::Broadcast ? "broadcast" : "local";
  std::string reactors;
  for (const auto& r : s.reactors) reactors += (reactors.empty() ? "" : ",") + r.str();
  return kind + " " + s.enabler.str() + " [" + reactors + "] " + s.label.str();
}

bool kinds_match(const StepInfo& s, const NetLabel& l) {
  if (s.kind == StepKind::Broadcast) {
    return l.kind == NetLabel::Kind::BrdOut && l.first == s.enabler && l.label == s.label;
  }
  return l.kind == NetLabel::Kind::Tau;
}

}  // namespace

std::string Counterexample::key() const {
  std::string k = direction == Direction::Soundness ? "S|" : "C|";
  k += configuration.key() + "|";
  if (step) k += describe(*step);
  if (label) k += label->to_string();
  return k + "|" + network;
}

std::size_t MatchReport::count(Counterexample::Direction d) const {
  return static_cast<std::size_t>(std::count_if(counterexamples.begin(), counterexamples.end(),
                                                [d](const Counterexample& c) { return c.direction == d; }));
}

MatchReport check_state(const Configuration& c, const EffectRegistry& reg, const NetworkProjector& projector) {
  MatchReport report;
  report.checked_states = 1;

  const auto steps = successors(c, reg);
  report.checked_edges = steps.size();
  std::vector<std::string> step_keys;
  step_keys.reserve(steps.size());
  for (const auto& g : steps) step_keys.push_back(canonical_key(projector(g.successor)));

  const auto transitions = observable_transitions(projector(c), reg);
  std::vector<std::string> net_keys;
  net_keys.reserve(transitions.size());
  for (const auto& [_, n] : transitions) net_keys.push_back(canonical_key(n));

  for (std::size_t g = 0; g < steps.size(); ++g) {
    bool matched = false;
    for (std::size_t j = 0; j < transitions.size() && !matched; ++j) {
      matched = kinds_match(steps[g].info, transitions[j].first) && net_keys[j] == step_keys[g];
    }
    if (!matched) {
      report.counterexamples.push_back({Counterexample::Direction::Soundness, c, steps[g].info, std::nullopt,
                                        step_keys[g],
                                        "global step " + describe(steps[g].info) +
                                            " has no matching transition of the projected network"});
    }
  }

  for (std::size_t j = 0; j < transitions.size(); ++j) {
    bool matched = false;
    for (std::size_t g = 0; g < steps.size() && !matched; ++g) {
      matched = kinds_match(steps[g].info, transitions[j].first) && net_keys[j] == step_keys[g];
    }
    if (!matched) {
      report.counterexamples.push_back({Counterexample::Direction::Completeness, c, std::nullopt,
                                        transitions[j].first, net_keys[j],
                                        "network transition " + transitions[j].first.to_string() +
                                            " has no matching global step"});
    }
  }
  return report;
}

MatchReport check_bounded(const Configuration& c, const EffectRegistry& reg, const ExploreOptions& opts,
                          const NetworkProjector& projector) {
  const StateGraph g = explore(c, reg, opts);
  MatchReport total;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    if (!g.expanded[i]) continue;
    MatchReport r = check_state(g.states[i], reg, projector);
    total.checked_states += r.checked_states;
    total.checked_edges += r.checked_edges;
    for (auto& ce : r.counterexamples) total.counterexamples.push_back(std::move(ce));
  }
  std::vector<std::pair<std::string, std::size_t>> order;
  for (std::size_t i = 0; i < total.counterexamples.size(); ++i) order.emplace_back(total.counterexamples[i].key(), i);
  std::sort(order.begin(), order.end());
  std::vector<Counterexample> sorted;
  sorted.reserve(order.size());
  for (const auto& [_, i] : order) sorted.push_back(std::move(total.counterexamples[i]));
  total.counterexamples = std::move(sorted);
  return total;
}

std::string to_string(const Counterexample& ce) {
  std::string out = ce.direction == Counterexample::Direction::Soundness ? "soundness: " : "completeness: ";
  out += ce.explanation + "\n  state: " + ce.configuration.delta.to_string();
  out += "\n  protocol: " + to_string(ce.configuration.protocol);
  return out;
}

// ---------------------------------------------------------------------------
// Mutations

std::string ControllerMutation::to_string() const {
  if (kind == Kind::DropInput) return "drop input " + input.str();
  return "drop output " + output.str() + " after input " + input.str();
}

std::vector<ControllerMutation> controller_mutations(const Protocol& p) {
  std::vector<ControllerMutation> out;
  const DefinitionParts parts = split(canonicalize(project(p, ProjectionRole::reactive())));
  for (const auto& in : parts.inputs) {
    out.push_back({ControllerMutation::Kind::DropInput, in.label, {}});
    const DefinitionParts cont = split(Definition::of(in.cont));
    for (const auto& c : cont.choices) {
      for (const auto& o : c.outputs()) out.push_back({ControllerMutation::Kind::DropOutput, in.label, o.label});
    }
  }
  return out;
}

namespace {

Reaction drop_output(const Reaction& r, const ActionLabel& label) {
  DefinitionParts parts = split(Definition::of(r));
  std::vector<Choice> kept;
  for (const auto& c : parts.choices) {
    std::vector<Output> outs;
    for (const auto& o : c.outputs()) {
      if (o.label != label) outs.push_back(o);
    }
    if (!outs.empty()) kept.push_back(Choice::of(outs));
  }
  DefinitionParts rebuilt;
  rebuilt.choices = std::move(kept);
  const Definition d = join(rebuilt);
  return d.kind() == Definition::Kind::Of ? d.reaction() : Reaction::zero();
}

Definition mutate(const Definition& controller, const ControllerMutation& m) {
  DefinitionParts parts = split(canonicalize(controller));
  DefinitionParts out;
  out.choices = parts.choices;
  for (auto& in : parts.inputs) {
    if (in.label != m.input) {
      out.inputs.push_back(std::move(in));
    } else if (m.kind == ControllerMutation::Kind::DropOutput) {
      in.cont = drop_output(in.cont, m.output);
      out.inputs.push_back(std::move(in));
    }
  }
  return join(out);
}

}  // namespace

NetworkProjector mutated_projector(const ControllerMutation& m) {
  return [m](const Configuration& c) {
    const Definition shared = mutate(project(c.protocol, ProjectionRole::reactive()), m);
    std::vector<Node> nodes;
    for (const auto& [id, s] : c.delta) {
      nodes.push_back({s, canonicalize(Definition::par(shared, Definition::of(project_active(c.protocol, id))))});
    }
    return Network::from_nodes(std::move(nodes));
  };
}

}  // namespace gridproto

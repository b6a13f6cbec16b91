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

#include "gridproto/global_semantics.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_map>

#include "gridproto/errors.hpp"

namespace gridproto {

std::string Configuration::key() const { return delta.to_string() + "\n" + canonical_key(protocol); }

namespace {

Protocol rewrite(const Protocol& p, const Redex& r, std::size_t at, std::vector<NodeId> pending,
                 const std::vector<NodeId>& reactors) {
  if (at == r.path.size()) {
    if (p.kind() != Protocol::Kind::Sum) throw std::logic_error("redex path does not end at a summation");
    auto it = std::find(pending.begin(), pending.end(), r.enabler);
    if (it == pending.end()) throw std::logic_error("redex enabler " + r.enabler.str() + " is not active here");
    pending.erase(it);
    std::vector<SyncAction> bs = p.branches();
    auto& fired = bs.at(r.branch_index);
    fired.cont = wrap_active(reactors, fired.cont);
    return wrap_active(pending, Protocol::sum(std::move(bs)));
  }
  const PathStep& step = r.path[at];
  switch (step.kind) {
    case PathStep::Kind::Enter:
      pending.push_back(p.id());
      return rewrite(p.body(), r, at + 1, std::move(pending), reactors);
    case PathStep::Kind::Left: {
      Protocol other = wrap_active(pending, p.right());
      return Protocol::fork(rewrite(p.left(), r, at + 1, std::move(pending), reactors), std::move(other));
    }
    case PathStep::Kind::Right: {
      Protocol other = wrap_active(pending, p.left());
      return Protocol::fork(std::move(other), rewrite(p.right(), r, at + 1, std::move(pending), reactors));
    }
    case PathStep::Kind::Unfold: return rewrite(unfold(p), r, at + 1, std::move(pending), reactors);
    case PathStep::Kind::Branch: {
      std::vector<SyncAction> bs = p.branches();
      auto& b = bs.at(step.branch);
      b.cont = rewrite(b.cont, r, at + 1, {}, reactors);
      return wrap_active(pending, Protocol::sum(std::move(bs)));
    }
  }
  throw std::logic_error("bad path step");
}

}  // namespace

Protocol apply_redex(const Protocol& p, const Redex& r, const std::vector<NodeId>& reactors) {
  return rewrite(p, r, 0, {}, reactors);
}

std::vector<GlobalStep> successors(const Configuration& c, const EffectRegistry& reg) {
  std::vector<GlobalStep> out;
  for (const Redex& r : enumerate_redexes(c.protocol)) {
    const SyncAction& act = r.action;
    const NodeState& enabler = c.delta.at(r.enabler);
    if (!eval(enabler, act.out_cond)) continue;
    switch (act.dir) {
      case Direction::Parent:
      case Direction::Neighbor:
        for (const NodeId& target : resolve_direction(act.dir, c.delta, r.enabler).nodes) {
          if (!eval(c.delta.at(target), act.in_cond)) continue;
          Configuration next{apply_update(c.delta, r.enabler, target, act.label, reg), apply_redex(c.protocol, r, {target})};
          out.push_back({StepInfo{StepKind::Binary, r.enabler, {target}, act.label}, std::move(next)});
        }
        break;
      case Direction::Children: {
        std::vector<NodeId> reacting;
        for (const NodeId& child : resolve_direction(act.dir, c.delta, r.enabler).nodes) {
          if (eval(c.delta.at(child), act.in_cond)) reacting.push_back(child);
        }
        Configuration next{c.delta, apply_redex(c.protocol, r, reacting)};
        out.push_back({StepInfo{StepKind::Broadcast, r.enabler, reacting, act.label}, std::move(next)});
        break;
      }
      case Direction::Self:
        if (!eval(enabler, act.in_cond)) break;
        out.push_back({StepInfo{StepKind::Local, r.enabler, {}, act.label},
                       Configuration{c.delta, apply_redex(c.protocol, r, {r.enabler})}});
        break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Running

Scheduler Scheduler::seeded(std::uint64_t seed) {
  Scheduler s;
  s.kind_ = Kind::Seeded;
  s.rng_.seed(seed);
  return s;
}

Scheduler Scheduler::first_in_order() { return Scheduler(); }

Scheduler Scheduler::interactive(Callback pick) {
  Scheduler s;
  s.kind_ = Kind::Interactive;
  s.callback_ = std::move(pick);
  return s;
}

std::size_t Scheduler::pick(const Configuration& c, const std::vector<GlobalStep>& options) {
  switch (kind_) {
    case Kind::First: return 0;
    // Plain modulo keeps the choice reproducible across standard libraries,
    // unlike uniform_int_distribution.
    case Kind::Seeded: return static_cast<std::size_t>(rng_() % options.size());
    case Kind::Interactive: {
      const std::size_t i = callback_(c, options);
      if (i >= options.size()) throw std::out_of_range("scheduler picked a step that does not exist");
      return i;
    }
  }
  return 0;
}

Trace run(const Configuration& c, const EffectRegistry& reg, Scheduler& scheduler, std::size_t max_steps) {
  Trace t{{}, c, true};
  while (true) {
    auto next = successors(t.final, reg);
    if (next.empty()) return t;
    if (t.steps.size() >= max_steps) {
      t.terminated = false;
      return t;
    }
    GlobalStep& chosen = next[scheduler.pick(t.final, next)];
    t.steps.push_back(chosen.info);
    t.final = std::move(chosen.successor);
  }
}

// ---------------------------------------------------------------------------
// Exploration

std::vector<std::size_t> StateGraph::terminal_states() const {
  std::vector<bool> has_out(states.size(), false);
  for (const auto& e : edges) has_out[e.from] = true;
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (expanded[i] && !has_out[i]) out.push_back(i);
  }
  return out;
}

StateGraph explore(const Configuration& c, const EffectRegistry& reg, const ExploreOptions& opts) {
  StateGraph g;
  std::unordered_map<std::string, std::size_t> seen;
  auto add = [&](Configuration cfg, std::size_t depth) {
    auto [it, fresh] = seen.emplace(cfg.key(), g.states.size());
    if (fresh) {
      if (g.states.size() >= opts.state_cap) {
        throw StateBudgetExceeded("exploration exceeded " + std::to_string(opts.state_cap) + " states");
      }
      g.states.push_back(std::move(cfg));
      g.depth.push_back(depth);
      g.expanded.push_back(false);
    }
    return it->second;
  };

  add(c, 0);
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    if (opts.depth && g.depth[i] >= *opts.depth) continue;
    g.expanded[i] = true;
    // Copy: `add` may reallocate `states`.
    const Configuration cur = g.states[i];
    for (auto& step : successors(cur, reg)) {
      const std::size_t to = add(std::move(step.successor), g.depth[i] + 1);
      g.edges.push_back({i, to, std::move(step.info)});
    }
  }
  return g;
}

}  // namespace gridproto

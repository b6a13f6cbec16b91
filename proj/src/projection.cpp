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

#include "gridproto/projection.hpp"

#include <set>

#include "gridproto/errors.hpp"

namespace gridproto {

namespace {

ProjectionEnv bind(const ProjectionEnv& env, const Protocol& rec) {
  ProjectionEnv out = env;
  out.insert_or_assign(rec.var_name(), rec.body());
  return out;
}

// `expanding` holds the variables looked up since the last action prefix;
// meeting one again means the recursion is unguarded.
Reaction enabling(const Protocol& p, const ProjectionEnv& env, std::set<RecVar>& expanding) {
  switch (p.kind()) {
    case Protocol::Kind::Nil: return Reaction::zero();
    case Protocol::Kind::Sum: {
      std::vector<Output> outs;
      for (const auto& b : p.branches()) outs.push_back({b.out_cond, b.label, b.dir});
      return Reaction::of(Choice::of(outs));
    }
    case Protocol::Kind::Var: {
      auto it = env.find(p.var_name());
      if (it == env.end()) throw UnboundVariable("unbound recursion variable " + p.var_name().str());
      if (!expanding.insert(p.var_name()).second) {
        throw ProjectionError("unguarded recursion on " + p.var_name().str());
      }
      Reaction r = enabling(it->second, env, expanding);
      expanding.erase(p.var_name());
      return r;
    }
    case Protocol::Kind::Rec: return enabling(p.body(), bind(env, p), expanding);
    case Protocol::Kind::Active: return enabling(p.body(), env, expanding);
    case Protocol::Kind::Fork: {
      Reaction l = enabling(p.left(), env, expanding);
      return Reaction::par(std::move(l), enabling(p.right(), env, expanding));
    }
  }
  return Reaction::zero();
}

Definition reactive(const Protocol& p, const ProjectionEnv& env) {
  switch (p.kind()) {
    case Protocol::Kind::Nil:
    case Protocol::Kind::Var: return Definition();
    case Protocol::Kind::Rec: return reactive(p.body(), bind(env, p));
    case Protocol::Kind::Active: return reactive(p.body(), env);
    case Protocol::Kind::Fork: return Definition::par(reactive(p.left(), env), reactive(p.right(), env));
    case Protocol::Kind::Sum: {
      Definition out;
      bool first = true;
      for (const auto& b : p.branches()) {
        Definition piece = Definition::par(Definition::input(b.in_cond, b.label, b.dir, project_enabling(b.cont, env)),
                                           reactive(b.cont, env));
        out = first ? piece : Definition::par(std::move(out), std::move(piece));
        first = false;
      }
      return out;
    }
  }
  return Definition();
}

Reaction active(const Protocol& p, const NodeId& id, const ProjectionEnv& env) {
  switch (p.kind()) {
    case Protocol::Kind::Nil:
    case Protocol::Kind::Var: return Reaction::zero();
    case Protocol::Kind::Rec:
      if (contains_active(p.body())) {
        throw ProjectionError("active construct inside the body of rec " + p.var_name().str());
      }
      return active(p.body(), id, bind(env, p));
    case Protocol::Kind::Active:
      if (p.id() == id) return Reaction::par(active(p.body(), id, env), project_enabling(p.body(), env));
      return active(p.body(), id, env);
    case Protocol::Kind::Fork: return Reaction::par(active(p.left(), id, env), active(p.right(), id, env));
    case Protocol::Kind::Sum: {
      Reaction out;
      bool first = true;
      for (const auto& b : p.branches()) {
        Reaction piece = active(b.cont, id, env);
        out = first ? piece : Reaction::par(std::move(out), std::move(piece));
        first = false;
      }
      return out;
    }
  }
  return Reaction::zero();
}

}  // namespace

Reaction project_enabling(const Protocol& p, const ProjectionEnv& env) {
  std::set<RecVar> expanding;
  return enabling(p, env, expanding);
}

Reaction project_active(const Protocol& p, const NodeId& id, const ProjectionEnv& env) { return active(p, id, env); }

Definition project(const Protocol& p, const ProjectionRole& role, const ProjectionEnv& env) {
  switch (role.kind) {
    case ProjectionRole::Kind::Reactive: return reactive(p, env);
    case ProjectionRole::Kind::Enabling: return Definition::of(project_enabling(p, env));
    case ProjectionRole::Kind::ActiveOf: return Definition::of(project_active(p, role.id, env));
  }
  return Definition();
}

Network project_network(const Configuration& c) {
  const Definition shared = reactive(c.protocol, {});
  std::vector<Node> nodes;
  for (const auto& [id, s] : c.delta) {
    nodes.push_back({s, canonicalize(Definition::par(shared, Definition::of(project_active(c.protocol, id))))});
  }
  return Network::from_nodes(std::move(nodes));
}

}  // namespace gridproto

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

#ifndef GRIDPROTO_PROJECTION_HPP_
#define GRIDPROTO_PROJECTION_HPP_

#include <map>

#include "gridproto/dist_core.hpp"
#include "gridproto/global_ast.hpp"
#include "gridproto/global_semantics.hpp"

namespace gridproto {

/// `?` reactive, `!` enabling, or the active role of one node.
struct ProjectionRole {
  enum class Kind { Reactive, Enabling, ActiveOf };
  Kind kind = Kind::Reactive;
  NodeId id;  // ActiveOf only

  static ProjectionRole reactive() { return {Kind::Reactive, {}}; }
  static ProjectionRole enabling() { return {Kind::Enabling, {}}; }
  static ProjectionRole active_of(NodeId id) { return {Kind::ActiveOf, std::move(id)}; }
};

/// Recursion variable bindings, extended at each `rec`.
using ProjectionEnv = std::map<RecVar, Protocol>;

/// Reactive projection yields persistent inputs; the enabling and active
/// roles yield reactions (returned wrapped as definitions). Output is not
/// normalised. Throws UnboundVariable for a free variable met by the
/// enabling role, ProjectionError for unguarded recursion or an active
/// construct inside a recursion body.
Definition project(const Protocol& p, const ProjectionRole& role, const ProjectionEnv& env = {});

Reaction project_enabling(const Protocol& p, const ProjectionEnv& env = {});
Reaction project_active(const Protocol& p, const NodeId& id, const ProjectionEnv& env = {});

/// One node per register, each running the shared reactive part in
/// parallel with its own active part, in canonical form.
Network project_network(const Configuration& c);

}  // namespace gridproto

#endif  // GRIDPROTO_PROJECTION_HPP_

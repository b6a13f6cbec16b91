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

#ifndef GRIDPROTO_GLOBAL_AST_HPP_
#define GRIDPROTO_GLOBAL_AST_HPP_

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "gridproto/grid_state.hpp"
#include "gridproto/types.hpp"

namespace gridproto {

struct SyncAction;

/// Global protocol term. Immutable and cheap to copy (shared subterms).
///
///   P ::= 0 | P | P | rec X.P | X | S | <id>P
///   S ::= f^d[o][i].P | S + S
class Protocol {
 public:
  enum class Kind { Nil, Fork, Rec, Var, Sum, Active };

  Protocol();  // 0
  static Protocol nil();
  static Protocol fork(Protocol left, Protocol right);
  static Protocol rec(RecVar x, Protocol body);
  static Protocol var(RecVar x);
  /// Throws std::invalid_argument when `branches` is empty.
  static Protocol sum(std::vector<SyncAction> branches);
  static Protocol action(SyncAction a);
  static Protocol active(NodeId id, Protocol body);

  Kind kind() const;
  bool is_nil() const { return kind() == Kind::Nil; }
  const Protocol& left() const;                     // Fork
  const Protocol& right() const;                    // Fork
  const Protocol& body() const;                     // Rec, Active
  const RecVar& var_name() const;                   // Rec, Var
  const std::vector<SyncAction>& branches() const;  // Sum
  const NodeId& id() const;                         // Active

  /// Syntactic equality (no congruence).
  friend bool operator==(const Protocol& a, const Protocol& b);

 private:
  struct Node;
  static const std::shared_ptr<const Node>& nil_node();
  explicit Protocol(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct SyncAction {
  ActionLabel label;
  Direction dir = Direction::Self;
  Condition out_cond;
  Condition in_cond;
  Protocol cont;

  friend bool operator==(const SyncAction&, const SyncAction&) = default;
};

/// Concrete syntax, e.g. `rec X.(Locate*[o: e>0][i: true].X + End@[o: t==0][i: true].0)`.
std::string to_string(const Protocol& p);
std::string to_string(const SyncAction& a);

// ---------------------------------------------------------------------------
// Well-formedness

struct Violation {
  enum class Kind { UnguardedRecursion, DuplicateLabel, ActiveInsideRec, ActiveNotTopLevel, UnboundVariable, DuplicateBinder };
  Kind kind;
  std::string subject;

  std::string to_string() const;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Static: user input, where active constructs may only prefix the whole
/// protocol (possibly distributed over forks). Runtime: terms produced by
/// reduction, where actives legitimately sit inside continuations.
enum class CheckMode { Static, Runtime };

std::vector<Violation> well_formed(const Protocol& p, CheckMode mode = CheckMode::Static);

// ---------------------------------------------------------------------------
// Substitution and unfolding

/// Replaces free occurrences of `x` by `q`.
Protocol substitute(const Protocol& p, const RecVar& x, const Protocol& q);

/// rec X.P  ->  P[rec X.P / X]. Throws NotARecursion.
Protocol unfold(const Protocol& p);

/// <ids>p with the ids applied in sorted order (outermost first). Actives
/// over 0 vanish.
Protocol wrap_active(const std::vector<NodeId>& ids, Protocol p);

bool contains_active(const Protocol& p);

// ---------------------------------------------------------------------------
// Redexes

struct PathStep {
  enum class Kind { Enter, Left, Right, Unfold, Branch };
  Kind kind;
  std::size_t branch = 0;  // Branch only

  friend bool operator==(const PathStep&, const PathStep&) = default;
};

/// A summation scoped by an active enabler, together with one of its
/// branches. The path walks from the root to the summation; Unfold steps
/// stand for one application of the recursion axiom.
struct Redex {
  std::vector<PathStep> path;
  NodeId enabler;
  std::size_t branch_index = 0;
  SyncAction action;
};

/// Every (enabler, branch) pair reachable by congruence rewriting. Conditions
/// are not evaluated here.
std::vector<Redex> enumerate_redexes(const Protocol& p);

// ---------------------------------------------------------------------------
// Normal form

struct Component {
  std::vector<NodeId> actives;  // sorted multiset
  Protocol term;                // Sum; Rec when no node is active; Var when open

  friend bool operator==(const Component&, const Component&) = default;
};

/// P == <I1>S1 | ... | <Ik>Sk. Top-level recursion under an active marker is
/// unfolded until it exposes a summation.
std::vector<Component> decompose(const Protocol& p);
Protocol recompose(const std::vector<Component>& parts);

/// String that is equal for terms related by the fork, summation and active
/// axioms. Recursion is compared without unfolding.
std::string canonical_key(const Protocol& p);

}  // namespace gridproto

#endif  // GRIDPROTO_GLOBAL_AST_HPP_

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

#ifndef GRIDPROTO_GRID_STATE_HPP_
#define GRIDPROTO_GRID_STATE_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "gridproto/types.hpp"

namespace gridproto {

/// Power provider of a substation: another station, disconnected (z), or
/// none because the station is a primary source (inf).
class ParentRef {
 public:
  enum class Kind { Station, Disconnected, Top };

  static ParentRef station(NodeId id);
  static ParentRef disconnected();
  static ParentRef top();

  Kind kind() const { return kind_; }
  bool is_station() const { return kind_ == Kind::Station; }
  /// Only valid when is_station().
  const NodeId& id() const;

  std::string to_string() const;

  friend bool operator==(const ParentRef&, const ParentRef&) = default;

 private:
  ParentRef(Kind kind, NodeId id) : kind_(kind), id_(std::move(id)) {}

  Kind kind_ = Kind::Disconnected;
  NodeId id_;
};

/// State register of one substation.
struct NodeState {
  NodeId id;
  ParentRef parent = ParentRef::disconnected();
  /// Input link status: 1 healthy, 0 faulty.
  unsigned t = 1;
  std::set<NodeId> neighbors;
  /// Supply capacity.
  std::uint64_t k = 0;
  /// Active output links.
  std::uint64_t a = 0;
  /// Faulty output links.
  std::uint64_t e = 0;

  /// Throws InvariantViolation unless e <= k, a <= k, t in {0,1}, the node
  /// is neither its own neighbour nor its own parent.
  void check() const;
  std::string to_string() const;

  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Mapping from node ids to registers (often written Delta).
class NetworkState {
 public:
  using Map = std::map<NodeId, NodeState>;

  NetworkState() = default;
  /// Validates every register and cross reference; throws InvariantViolation.
  explicit NetworkState(std::vector<NodeState> nodes);

  const NodeState& at(const NodeId& id) const;
  bool contains(const NodeId& id) const { return nodes_.count(id) != 0; }
  std::size_t size() const { return nodes_.size(); }
  Map::const_iterator begin() const { return nodes_.begin(); }
  Map::const_iterator end() const { return nodes_.end(); }
  std::vector<NodeId> ids() const;

  /// Copy with one register replaced (the id must already exist).
  NetworkState with(NodeState s) const;
  void validate() const;

  std::string to_string() const;

  friend bool operator==(const NetworkState&, const NetworkState&) = default;

 private:
  Map nodes_;
};

// ---------------------------------------------------------------------------
// Conditions

enum class Field { T, K, A, E, Parent };
enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view field_name(Field f);
std::string_view cmp_symbol(CmpOp op);

/// Operand of a comparison.
struct Expr {
  enum class Kind { Field, Natural, Node, Disconnected, Top };

  static Expr of_field(Field f) { return Expr{Kind::Field, f, 0, {}}; }
  static Expr natural(std::uint64_t v) { return Expr{Kind::Natural, Field::T, v, {}}; }
  static Expr node(NodeId id) { return Expr{Kind::Node, Field::T, 0, std::move(id)}; }
  static Expr disconnected() { return Expr{Kind::Disconnected, Field::T, 0, {}}; }
  static Expr top() { return Expr{Kind::Top, Field::T, 0, {}}; }

  bool is_numeric() const { return kind == Kind::Natural || (kind == Kind::Field && field != Field::Parent); }
  bool is_parent_field() const { return kind == Kind::Field && field == Field::Parent; }
  std::string to_string() const;

  Kind kind;
  Field field;
  std::uint64_t value;
  NodeId id;
};

/// Quantifier-free condition over one register. Immutable; the printed form
/// is computed once and doubles as the ordering key.
class Condition {
 public:
  enum class Kind { True, False, Cmp, And, Or, Not };

  Condition();  // true
  static Condition truth();
  static Condition falsity();
  /// Throws std::invalid_argument for ill-typed comparisons. A natural
  /// literal compared against `parent` is read as a node id.
  static Condition compare(Expr lhs, CmpOp op, Expr rhs);
  static Condition conj(Condition a, Condition b);
  static Condition disj(Condition a, Condition b);
  static Condition negate(Condition a);

  Kind kind() const;
  const Expr& lhs() const;
  const Expr& rhs() const;
  CmpOp op() const;
  const Condition& left() const;   // And/Or; operand of Not
  const Condition& right() const;  // And/Or

  const std::string& to_string() const;

  friend bool operator==(const Condition& a, const Condition& b) { return a.to_string() == b.to_string(); }
  friend auto operator<=>(const Condition& a, const Condition& b) { return a.to_string() <=> b.to_string(); }

 private:
  struct Node;
  explicit Condition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool eval(const NodeState& s, const Condition& c);

// ---------------------------------------------------------------------------
// Directions

/// Recipients of a synchronisation. `self` is set for the self direction.
struct TargetSet {
  bool self = false;
  std::vector<NodeId> nodes;
};

/// Parent: the station parent (none when z or inf). Neighbor: every
/// neighbour, each a separate choice. Children: every node whose parent is
/// `id`. Self: the enabler itself. Throws UnknownNode.
TargetSet resolve_direction(Direction d, const NetworkState& delta, const NodeId& id);

// ---------------------------------------------------------------------------
// Side effects

struct Assignment {
  enum class Kind { SetParentOther, SetParentDisconnected, Increment, Decrement, SetLink, AddNeighborOther, RemoveNeighborOther };

  static Assignment set_parent_other() { return {Kind::SetParentOther, Field::T, 0}; }
  static Assignment set_parent_disconnected() { return {Kind::SetParentDisconnected, Field::T, 0}; }
  static Assignment increment(Field f) { return {Kind::Increment, f, 0}; }
  static Assignment decrement(Field f) { return {Kind::Decrement, f, 0}; }
  static Assignment set_link(unsigned v) { return {Kind::SetLink, Field::T, v}; }
  static Assignment add_neighbor_other() { return {Kind::AddNeighborOther, Field::T, 0}; }
  static Assignment remove_neighbor_other() { return {Kind::RemoveNeighborOther, Field::T, 0}; }

  std::string to_string() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

  Kind kind;
  Field field;  // k, a or e for Increment/Decrement
  unsigned value;  // SetLink
};

struct EffectSpec {
  std::vector<Assignment> enabler;
  std::vector<Assignment> reactor;

  bool empty() const { return enabler.empty() && reactor.empty(); }
  friend bool operator==(const EffectSpec&, const EffectSpec&) = default;
};

/// Side effects per action label; unknown labels have no effects.
class EffectRegistry {
 public:
  void set(const ActionLabel& label, EffectSpec spec) { specs_[label] = std::move(spec); }
  const EffectSpec& lookup(const ActionLabel& label) const;
  const std::map<ActionLabel, EffectSpec>& entries() const { return specs_; }

  friend bool operator==(const EffectRegistry&, const EffectRegistry&) = default;

 private:
  std::map<ActionLabel, EffectSpec> specs_;
};

/// Applies assignments left to right; `other` is the peer of the
/// synchronisation. Throws NegativeCounter on underflow and
/// InvariantViolation if the result breaks a register invariant.
NodeState apply_assignments(NodeState s, std::span<const Assignment> assignments, const NodeId& other);

/// Updates enabler and reactor with the label's enabling and reacting side
/// effects. All other registers are left untouched.
NetworkState apply_update(const NetworkState& delta, const NodeId& enabler, const NodeId& reactor,
                          const ActionLabel& label, const EffectRegistry& reg);

}  // namespace gridproto

#endif  // GRIDPROTO_GRID_STATE_HPP_

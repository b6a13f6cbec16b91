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

#ifndef GRIDPROTO_DIST_CORE_HPP_
#define GRIDPROTO_DIST_CORE_HPP_

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gridproto/grid_state.hpp"
#include "gridproto/types.hpp"

namespace gridproto {

/// [c]f^d!
struct Output {
  Condition cond;
  ActionLabel label;
  Direction dir = Direction::Self;

  friend bool operator==(const Output&, const Output&) = default;
};

/// C ::= [c]f^d! | C + C
class Choice {
 public:
  enum class Kind { Out, Plus };

  static Choice out(Output o);
  static Choice plus(Choice a, Choice b);
  /// Right-nested sum of the outputs; throws std::invalid_argument if empty.
  static Choice of(const std::vector<Output>& outs);

  Kind kind() const;
  const Output& output() const;  // Out
  const Choice& left() const;    // Plus
  const Choice& right() const;   // Plus
  /// Branches in syntactic order.
  std::vector<Output> outputs() const;

 private:
  struct Node;
  explicit Choice(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// R ::= 0 | C | R | R
class Reaction {
 public:
  enum class Kind { Zero, Of, Par };

  Reaction();  // 0
  static Reaction zero();
  static Reaction of(Choice c);
  static Reaction par(Reaction a, Reaction b);

  Kind kind() const;
  const Choice& choice() const;    // Of
  const Reaction& left() const;    // Par
  const Reaction& right() const;   // Par

 private:
  struct Node;
  explicit Reaction(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// D ::= [c]f^d?.R | R | D | D
class Definition {
 public:
  enum class Kind { Input, Of, Par };

  Definition();  // 0
  static Definition input(Condition cond, ActionLabel label, Direction dir, Reaction cont);
  static Definition of(Reaction r);
  static Definition par(Definition a, Definition b);

  Kind kind() const;
  const Condition& cond() const;       // Input
  const ActionLabel& label() const;    // Input
  Direction dir() const;               // Input
  const Reaction& cont() const;        // Input
  const Reaction& reaction() const;    // Of
  const Definition& left() const;      // Par
  const Definition& right() const;     // Par

 private:
  struct Node;
  explicit Definition(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

std::string to_string(const Output& o);
std::string to_string(const Choice& c);
std::string to_string(const Reaction& r);
std::string to_string(const Definition& d);

/// Syntactic equality, by printed form.
bool operator==(const Choice& a, const Choice& b);
bool operator==(const Reaction& a, const Reaction& b);
bool operator==(const Definition& a, const Definition& b);

// ---------------------------------------------------------------------------
// Definition LTS

/// In: [c]f^d?   Out: [c]f^d!   Step: [c]f (a paired self output and input).
struct DefAction {
  enum class Kind { In, Out, Step };
  Kind kind;
  Condition cond;
  ActionLabel label;
  Direction dir = Direction::Self;  // Step: always Self

  friend bool operator==(const DefAction&, const DefAction&) = default;
};

std::string to_string(const DefAction& a);

std::vector<std::pair<DefAction, Definition>> def_transitions(const Definition& d);

// ---------------------------------------------------------------------------
// Networks

struct Node {
  NodeState state;
  Definition defs;
};

/// N ::= node(s, D) | N || N
class Network {
 public:
  enum class Kind { Leaf, Par };

  static Network leaf(Node n);
  static Network par(Network a, Network b);
  /// Right-nested composition; throws std::invalid_argument if empty.
  static Network from_nodes(std::vector<Node> nodes);

  Kind kind() const;
  const Node& node() const;        // Leaf
  const Network& left() const;     // Par
  const Network& right() const;    // Par

  /// Leaves in order, left to right.
  std::vector<Node> flatten() const;
  /// Same shape with the leaves replaced, in flatten() order.
  Network with_nodes(const std::vector<Node>& nodes) const;

 private:
  struct Impl;
  explicit Network(std::shared_ptr<const Impl> n) : impl_(std::move(n)) {}
  std::shared_ptr<const Impl> impl_;
};

std::string to_string(const Network& n);

/// Network label. Printed as `tau`, `1->2:f`, `2<-1:f`, `1!*:f`, `1?*:f`.
struct NetLabel {
  enum class Kind { Tau, BinOut, BinIn, BrdOut, BrdIn };
  Kind kind = Kind::Tau;
  /// BinOut: from. BinIn: at. BrdOut/BrdIn: sender.
  NodeId first;
  /// BinOut: to. BinIn: from.
  NodeId second;
  ActionLabel label;

  static NetLabel tau() { return {}; }
  static NetLabel bin_out(NodeId from, NodeId to, ActionLabel f) { return {Kind::BinOut, std::move(from), std::move(to), std::move(f)}; }
  static NetLabel bin_in(NodeId at, NodeId from, ActionLabel f) { return {Kind::BinIn, std::move(at), std::move(from), std::move(f)}; }
  static NetLabel brd_out(NodeId sender, ActionLabel f) { return {Kind::BrdOut, std::move(sender), {}, std::move(f)}; }
  static NetLabel brd_in(NodeId sender, ActionLabel f) { return {Kind::BrdIn, std::move(sender), {}, std::move(f)}; }

  bool observable() const { return kind == Kind::Tau || kind == Kind::BrdOut; }
  std::string to_string() const;

  friend bool operator==(const NetLabel&, const NetLabel&) = default;
};

/// Label composition for synchronising two networks; nullopt when undefined.
std::optional<NetLabel> compose_labels(const NetLabel& l1, const NetLabel& l2);

/// Information about the rest of the network that a single node needs to
/// enumerate reactive transitions.
struct NodeContext {
  /// Possible partners of binary reactions (iBin halves).
  std::vector<NodeId> peers;
  /// Broadcast stimuli to answer, by receiving or discarding.
  std::vector<std::pair<NodeId, ActionLabel>> broadcasts;
};

/// Node-level rules. Binary rules update the state with the label's side
/// effects; a half whose side effect underflows a counter is not enabled.
std::vector<std::pair<NetLabel, Node>> node_transitions(const Node& node, const EffectRegistry& reg,
                                                        const NodeContext& ctx = {});

/// iBrd successors of `node` for a broadcast of `f` from `sender`; empty
/// exactly when the node discards.
std::vector<Node> receive_broadcast(const Node& node, const NodeId& sender, const ActionLabel& f);

/// iBin successors of `node` for a binary synchronisation on `f` from `from`.
/// Throws NegativeCounter if the reactor side effect underflows.
std::vector<Node> receive_binary(const Node& node, const NodeId& from, const ActionLabel& f, const EffectRegistry& reg);

/// Closure under Par and Com. Besides τ and complete broadcasts this lists
/// unmatched binary halves, which an enclosing context could complete.
/// Throws DuplicateNodeId.
std::vector<std::pair<NetLabel, Network>> network_transitions(const Network& n, const EffectRegistry& reg);

/// Only τ and broadcast-enable transitions; unmatched halves are never built.
std::vector<std::pair<NetLabel, Network>> observable_transitions(const Network& n, const EffectRegistry& reg);

// ---------------------------------------------------------------------------
// Structural congruence

/// Normal form: inputs (deduplicated, sorted) then reactions (sorted, as a
/// multiset), each input continuation normalised the same way, zeros
/// dropped, compositions right-nested. Congruent terms have identical
/// normal forms.
Choice canonicalize(const Choice& c);
Reaction canonicalize(const Reaction& r);
Definition canonicalize(const Definition& d);
/// Also sorts nodes by id.
Network canonicalize(const Network& n);

/// Printed normal form; a stable hash key.
std::string canonical_key(const Definition& d);
std::string canonical_key(const Network& n);

/// Persistent inputs and top-level choices of a definition after flattening.
struct DefinitionParts {
  struct In {
    Condition cond;
    ActionLabel label;
    Direction dir;
    Reaction cont;
  };
  std::vector<In> inputs;
  std::vector<Choice> choices;
};
DefinitionParts split(const Definition& d);
Definition join(const DefinitionParts& parts);

}  // namespace gridproto

#endif  // GRIDPROTO_DIST_CORE_HPP_

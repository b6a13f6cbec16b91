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

#include "gridproto/dist_core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "gridproto/errors.hpp"

namespace gridproto {

// ---------------------------------------------------------------------------
// Terms

struct Choice::Node {
  Kind kind = Kind::Out;
  Output out;
  Choice left{nullptr};
  Choice right{nullptr};
};

Choice Choice::out(Output o) {
  auto n = std::make_shared<Node>();
  n->out = std::move(o);
  return Choice(std::move(n));
}

Choice Choice::plus(Choice a, Choice b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Plus;
  n->left = std::move(a);
  n->right = std::move(b);
  return Choice(std::move(n));
}

Choice Choice::of(const std::vector<Output>& outs) {
  if (outs.empty()) throw std::invalid_argument("a choice needs at least one output");
  Choice c = out(outs.back());
  for (auto it = outs.rbegin() + 1; it != outs.rend(); ++it) c = plus(out(*it), std::move(c));
  return c;
}

Choice::Kind Choice::kind() const { return node_->kind; }

const Output& Choice::output() const {
  if (kind() != Kind::Out) throw std::logic_error("output() on a sum");
  return node_->out;
}

const Choice& Choice::left() const {
  if (kind() != Kind::Plus) throw std::logic_error("left() on an output");
  return node_->left;
}

const Choice& Choice::right() const {
  if (kind() != Kind::Plus) throw std::logic_error("right() on an output");
  return node_->right;
}

std::vector<Output> Choice::outputs() const {
  if (kind() == Kind::Out) return {output()};
  auto l = left().outputs();
  auto r = right().outputs();
  l.insert(l.end(), r.begin(), r.end());
  return l;
}

struct Reaction::Node {
  Kind kind = Kind::Zero;
  Choice choice = Choice::out({});
  Reaction left{nullptr};
  Reaction right{nullptr};
};

Reaction::Reaction() {
  static const auto zero_node = std::make_shared<const Node>();
  node_ = zero_node;
}

Reaction Reaction::zero() { return Reaction(); }

Reaction Reaction::of(Choice c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Of;
  n->choice = std::move(c);
  return Reaction(std::move(n));
}

Reaction Reaction::par(Reaction a, Reaction b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->left = std::move(a);
  n->right = std::move(b);
  return Reaction(std::move(n));
}

Reaction::Kind Reaction::kind() const { return node_->kind; }

const Choice& Reaction::choice() const {
  if (kind() != Kind::Of) throw std::logic_error("choice() on a non-choice reaction");
  return node_->choice;
}

const Reaction& Reaction::left() const {
  if (kind() != Kind::Par) throw std::logic_error("left() on a non-parallel reaction");
  return node_->left;
}

const Reaction& Reaction::right() const {
  if (kind() != Kind::Par) throw std::logic_error("right() on a non-parallel reaction");
  return node_->right;
}

struct Definition::Node {
  Kind kind = Kind::Of;
  Condition cond;
  ActionLabel label;
  Direction dir = Direction::Self;
  Reaction reaction;  // Input continuation, or the Of payload
  Definition left{nullptr};
  Definition right{nullptr};
};

Definition::Definition() {
  static const auto zero_node = std::make_shared<const Node>();
  node_ = zero_node;
}

Definition Definition::input(Condition cond, ActionLabel label, Direction dir, Reaction cont) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Input;
  n->cond = std::move(cond);
  n->label = std::move(label);
  n->dir = dir;
  n->reaction = std::move(cont);
  return Definition(std::move(n));
}

Definition Definition::of(Reaction r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Of;
  n->reaction = std::move(r);
  return Definition(std::move(n));
}

Definition Definition::par(Definition a, Definition b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Par;
  n->left = std::move(a);
  n->right = std::move(b);
  return Definition(std::move(n));
}

Definition::Kind Definition::kind() const { return node_->kind; }

const Condition& Definition::cond() const {
  if (kind() != Kind::Input) throw std::logic_error("cond() on a non-input");
  return node_->cond;
}

const ActionLabel& Definition::label() const {
  if (kind() != Kind::Input) throw std::logic_error("label() on a non-input");
  return node_->label;
}

Direction Definition::dir() const {
  if (kind() != Kind::Input) throw std::logic_error("dir() on a non-input");
  return node_->dir;
}

const Reaction& Definition::cont() const {
  if (kind() != Kind::Input) throw std::logic_error("cont() on a non-input");
  return node_->reaction;
}

const Reaction& Definition::reaction() const {
  if (kind() != Kind::Of) throw std::logic_error("reaction() on a non-reaction definition");
  return node_->reaction;
}

const Definition& Definition::left() const {
  if (kind() != Kind::Par) throw std::logic_error("left() on a non-parallel definition");
  return node_->left;
}

const Definition& Definition::right() const {
  if (kind() != Kind::Par) throw std::logic_error("right() on a non-parallel definition");
  return node_->right;
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const Output& o) { return "[" + o.cond.to_string() + "]" + o.label.str() + glyph(o.dir) + "!"; }

std::string to_string(const Choice& c) {
  if (c.kind() == Choice::Kind::Out) return to_string(c.output());
  return to_string(c.left()) + " + " + to_string(c.right());
}

std::string to_string(const Reaction& r) {
  switch (r.kind()) {
    case Reaction::Kind::Zero: return "0";
    case Reaction::Kind::Of: return to_string(r.choice());
    case Reaction::Kind::Par: return to_string(r.left()) + " | " + to_string(r.right());
  }
  return "?";
}

std::string to_string(const Definition& d) {
  switch (d.kind()) {
    case Definition::Kind::Input: {
      const Reaction& k = d.cont();
      const bool compound =
          k.kind() == Reaction::Kind::Par || (k.kind() == Reaction::Kind::Of && k.choice().kind() == Choice::Kind::Plus);
      const std::string body = compound ? "(" + to_string(k) + ")" : to_string(k);
      return "[" + d.cond().to_string() + "]" + d.label().str() + glyph(d.dir()) + "?." + body;
    }
    case Definition::Kind::Of: return to_string(d.reaction());
    case Definition::Kind::Par: return to_string(d.left()) + " | " + to_string(d.right());
  }
  return "?";
}

bool operator==(const Choice& a, const Choice& b) { return to_string(a) == to_string(b); }
bool operator==(const Reaction& a, const Reaction& b) { return to_string(a) == to_string(b); }
bool operator==(const Definition& a, const Definition& b) { return to_string(a) == to_string(b); }

std::string to_string(const DefAction& a) {
  const std::string c = "[" + a.cond.to_string() + "]" + a.label.str();
  switch (a.kind) {
    case DefAction::Kind::In: return c + glyph(a.dir) + "?";
    case DefAction::Kind::Out: return c + glyph(a.dir) + "!";
    case DefAction::Kind::Step: return c;
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Definition LTS

namespace {

std::vector<std::pair<Output, Reaction>> reaction_outputs(const Reaction& r) {
  std::vector<std::pair<Output, Reaction>> out;
  switch (r.kind()) {
    case Reaction::Kind::Zero: break;
    case Reaction::Kind::Of:
      for (auto& o : r.choice().outputs()) out.emplace_back(std::move(o), Reaction::zero());
      break;
    case Reaction::Kind::Par:
      for (auto& [o, l2] : reaction_outputs(r.left())) out.emplace_back(o, Reaction::par(l2, r.right()));
      for (auto& [o, r2] : reaction_outputs(r.right())) out.emplace_back(o, Reaction::par(r.left(), r2));
      break;
  }
  return out;
}

bool is_self_out(const DefAction& a) { return a.kind == DefAction::Kind::Out && a.dir == Direction::Self; }
bool is_self_in(const DefAction& a) { return a.kind == DefAction::Kind::In && a.dir == Direction::Self; }

}  // namespace

std::vector<std::pair<DefAction, Definition>> def_transitions(const Definition& d) {
  std::vector<std::pair<DefAction, Definition>> out;
  switch (d.kind()) {
    case Definition::Kind::Input:
      out.emplace_back(DefAction{DefAction::Kind::In, d.cond(), d.label(), d.dir()},
                       Definition::par(Definition::of(d.cont()), d));
      break;
    case Definition::Kind::Of:
      for (auto& [o, r] : reaction_outputs(d.reaction())) {
        out.emplace_back(DefAction{DefAction::Kind::Out, o.cond, o.label, o.dir}, Definition::of(std::move(r)));
      }
      break;
    case Definition::Kind::Par: {
      const auto left = def_transitions(d.left());
      const auto right = def_transitions(d.right());
      for (const auto& [a, l2] : left) out.emplace_back(a, Definition::par(l2, d.right()));
      for (const auto& [a, r2] : right) out.emplace_back(a, Definition::par(d.left(), r2));
      for (const auto& [a1, l2] : left) {
        for (const auto& [a2, r2] : right) {
          if (a1.label != a2.label) continue;
          if (is_self_out(a1) && is_self_in(a2)) {
            out.emplace_back(DefAction{DefAction::Kind::Step, Condition::conj(a1.cond, a2.cond), a1.label, Direction::Self},
                             Definition::par(l2, r2));
          } else if (is_self_in(a1) && is_self_out(a2)) {
            out.emplace_back(DefAction{DefAction::Kind::Step, Condition::conj(a2.cond, a1.cond), a1.label, Direction::Self},
                             Definition::par(l2, r2));
          }
        }
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Networks

struct Network::Impl {
  Kind kind = Kind::Leaf;
  gridproto::Node node;
  Network left{nullptr};
  Network right{nullptr};
};

Network Network::leaf(gridproto::Node n) {
  auto impl = std::make_shared<Impl>();
  impl->node = std::move(n);
  return Network(std::move(impl));
}

Network Network::par(Network a, Network b) {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Par;
  impl->left = std::move(a);
  impl->right = std::move(b);
  return Network(std::move(impl));
}

Network Network::from_nodes(std::vector<gridproto::Node> nodes) {
  if (nodes.empty()) throw std::invalid_argument("a network needs at least one node");
  Network n = leaf(std::move(nodes.back()));
  for (auto it = nodes.rbegin() + 1; it != nodes.rend(); ++it) n = par(leaf(std::move(*it)), std::move(n));
  return n;
}

Network::Kind Network::kind() const { return impl_->kind; }

const gridproto::Node& Network::node() const {
  if (kind() != Kind::Leaf) throw std::logic_error("node() on a composition");
  return impl_->node;
}

const Network& Network::left() const {
  if (kind() != Kind::Par) throw std::logic_error("left() on a leaf");
  return impl_->left;
}

const Network& Network::right() const {
  if (kind() != Kind::Par) throw std::logic_error("right() on a leaf");
  return impl_->right;
}

std::vector<gridproto::Node> Network::flatten() const {
  if (kind() == Kind::Leaf) return {node()};
  auto l = left().flatten();
  auto r = right().flatten();
  l.insert(l.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  return l;
}

namespace {

Network rebuild(const Network& n, const std::vector<gridproto::Node>& nodes, std::size_t& next) {
  if (n.kind() == Network::Kind::Leaf) return Network::leaf(nodes.at(next++));
  Network l = rebuild(n.left(), nodes, next);
  Network r = rebuild(n.right(), nodes, next);
  return Network::par(std::move(l), std::move(r));
}

}  // namespace

Network Network::with_nodes(const std::vector<gridproto::Node>& nodes) const {
  std::size_t next = 0;
  Network out = rebuild(*this, nodes, next);
  if (next != nodes.size()) throw std::invalid_argument("node count does not match the network shape");
  return out;
}

std::string to_string(const Network& n) {
  std::string out;
  for (const auto& node : n.flatten()) {
    if (!out.empty()) out += " || ";
    out += node.state.to_string() + "{" + to_string(node.defs) + "}";
  }
  return out;
}

std::string NetLabel::to_string() const {
  switch (kind) {
    case Kind::Tau: return "tau";
    case Kind::BinOut: return first.str() + "->" + second.str() + ":" + label.str();
    case Kind::BinIn: return first.str() + "<-" + second.str() + ":" + label.str();
    case Kind::BrdOut: return first.str() + "!*:" + label.str();
    case Kind::BrdIn: return first.str() + "?*:" + label.str();
  }
  return "?";
}

std::optional<NetLabel> compose_labels(const NetLabel& l1, const NetLabel& l2) {
  using K = NetLabel::Kind;
  if (l1.label != l2.label) return std::nullopt;
  if (l1.kind == K::BinOut && l2.kind == K::BinIn && l1.first == l2.second && l1.second == l2.first) return NetLabel::tau();
  if (l1.kind == K::BinIn && l2.kind == K::BinOut && l1.first == l2.second && l1.second == l2.first) return NetLabel::tau();
  if (l1.kind == K::BrdOut && l2.kind == K::BrdIn && l1.first == l2.first) return l1;
  if (l1.kind == K::BrdIn && l2.kind == K::BrdOut && l1.first == l2.first) return l2;
  if (l1.kind == K::BrdIn && l1 == l2) return l1;
  return std::nullopt;
}

std::vector<gridproto::Node> receive_broadcast(const gridproto::Node& node, const NodeId& sender, const ActionLabel& f) {
  const NodeState& s = node.state;
  if (!s.parent.is_station() || s.parent.id() != sender) return {};
  if (s.id == sender) throw std::logic_error("node " + s.id.str() + " cannot receive its own broadcast");
  std::vector<gridproto::Node> out;
  for (auto& [a, d2] : def_transitions(node.defs)) {
    if (a.kind == DefAction::Kind::In && a.dir == Direction::Children && a.label == f && eval(s, a.cond)) {
      out.push_back({s, std::move(d2)});
    }
  }
  return out;
}

namespace {

bool binary_dir(Direction d) { return d == Direction::Parent || d == Direction::Neighbor; }

std::vector<NodeId> binary_targets(const NodeState& s, Direction d) {
  if (d == Direction::Parent) {
    if (s.parent.is_station()) return {s.parent.id()};
    return {};
  }
  return {s.neighbors.begin(), s.neighbors.end()};
}

// Partial side-effect application for unmatched halves: an undefined update
// means the rule does not apply.
std::optional<NodeState> try_assign(const NodeState& s, const std::vector<Assignment>& as, const NodeId& other) {
  try {
    return apply_assignments(s, as, other);
  } catch (const NegativeCounter&) {
    return std::nullopt;
  } catch (const InvariantViolation&) {
    return std::nullopt;
  }
}

}  // namespace

std::vector<gridproto::Node> receive_binary(const gridproto::Node& node, const NodeId& from, const ActionLabel& f,
                                            const EffectRegistry& reg) {
  const NodeState& s = node.state;
  std::vector<gridproto::Node> out;
  for (auto& [a, d2] : def_transitions(node.defs)) {
    if (a.kind == DefAction::Kind::In && binary_dir(a.dir) && a.label == f && eval(s, a.cond)) {
      out.push_back({apply_assignments(s, reg.lookup(f).reactor, from), std::move(d2)});
    }
  }
  return out;
}

std::vector<std::pair<NetLabel, gridproto::Node>> node_transitions(const gridproto::Node& node, const EffectRegistry& reg,
                                                                   const NodeContext& ctx) {
  const NodeState& s = node.state;
  std::vector<std::pair<NetLabel, gridproto::Node>> out;
  for (auto& [a, d2] : def_transitions(node.defs)) {
    switch (a.kind) {
      case DefAction::Kind::Step:
        if (eval(s, a.cond)) out.push_back({NetLabel::tau(), {s, d2}});
        break;
      case DefAction::Kind::Out:
        if (!eval(s, a.cond)) break;
        if (a.dir == Direction::Children) {
          out.push_back({NetLabel::brd_out(s.id, a.label), {s, d2}});
        } else if (binary_dir(a.dir)) {
          for (const NodeId& t : binary_targets(s, a.dir)) {
            if (auto s2 = try_assign(s, reg.lookup(a.label).enabler, t)) {
              out.push_back({NetLabel::bin_out(s.id, t, a.label), {std::move(*s2), d2}});
            }
          }
        }
        break;
      case DefAction::Kind::In:
        if (!eval(s, a.cond)) break;
        if (a.dir == Direction::Children) {
          if (s.parent.is_station()) out.push_back({NetLabel::brd_in(s.parent.id(), a.label), {s, d2}});
        } else if (binary_dir(a.dir)) {
          for (const NodeId& from : ctx.peers) {
            if (from == s.id) continue;
            if (auto s2 = try_assign(s, reg.lookup(a.label).reactor, from)) {
              out.push_back({NetLabel::bin_in(s.id, from, a.label), {std::move(*s2), d2}});
            }
          }
        }
        break;
    }
  }
  for (const auto& [sender, f] : ctx.broadcasts) {
    if (sender != s.id && receive_broadcast(node, sender, f).empty()) out.push_back({NetLabel::brd_in(sender, f), node});
  }
  return out;
}

namespace {

std::vector<std::pair<NetLabel, Network>> enumerate(const Network& net, const EffectRegistry& reg, bool halves) {
  const std::vector<gridproto::Node> nodes = net.flatten();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!index.emplace(nodes[i].state.id, i).second) {
      throw DuplicateNodeId("node " + nodes[i].state.id.str() + " occurs twice in the network");
    }
  }

  std::vector<std::pair<NetLabel, Network>> out;
  auto emit = [&](NetLabel l, const std::vector<std::pair<std::size_t, gridproto::Node>>& changes) {
    std::vector<gridproto::Node> next = nodes;
    for (const auto& [i, n] : changes) next[i] = n;
    out.emplace_back(std::move(l), net.with_nodes(next));
  };

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const NodeState& s = nodes[i].state;
    for (const auto& [a, d2] : def_transitions(nodes[i].defs)) {
      switch (a.kind) {
        case DefAction::Kind::Step:
          if (eval(s, a.cond)) emit(NetLabel::tau(), {{i, {s, d2}}});
          break;

        case DefAction::Kind::Out: {
          if (!eval(s, a.cond)) break;
          if (a.dir == Direction::Children) {
            // Every other node receives or discards; several enabled
            // receives at one node multiply the outcomes.
            std::vector<std::vector<std::pair<std::size_t, gridproto::Node>>> outcomes{{{i, {s, d2}}}};
            for (std::size_t j = 0; j < nodes.size(); ++j) {
              if (j == i) continue;
              auto options = receive_broadcast(nodes[j], s.id, a.label);
              if (options.empty()) continue;  // discard
              std::vector<std::vector<std::pair<std::size_t, gridproto::Node>>> grown;
              for (const auto& partial : outcomes) {
                for (const auto& opt : options) {
                  grown.push_back(partial);
                  grown.back().emplace_back(j, opt);
                }
              }
              outcomes = std::move(grown);
            }
            for (const auto& changes : outcomes) emit(NetLabel::brd_out(s.id, a.label), changes);
          } else if (binary_dir(a.dir)) {
            const EffectSpec& fx = reg.lookup(a.label);
            for (const NodeId& t : binary_targets(s, a.dir)) {
              auto it = index.find(t);
              if (it != index.end()) {
                auto reactions = receive_binary(nodes[it->second], s.id, a.label, reg);
                if (!reactions.empty()) {
                  const NodeState s2 = apply_assignments(s, fx.enabler, t);
                  for (auto& r : reactions) emit(NetLabel::tau(), {{i, {s2, d2}}, {it->second, std::move(r)}});
                }
              }
              if (halves) {
                if (auto s2 = try_assign(s, fx.enabler, t)) emit(NetLabel::bin_out(s.id, t, a.label), {{i, {*s2, d2}}});
              }
            }
          }
          break;
        }

        case DefAction::Kind::In:
          if (!halves || !binary_dir(a.dir) || !eval(s, a.cond)) break;
          for (std::size_t j = 0; j < nodes.size(); ++j) {
            if (j == i) continue;
            const NodeId& from = nodes[j].state.id;
            if (auto s2 = try_assign(s, reg.lookup(a.label).reactor, from)) {
              emit(NetLabel::bin_in(s.id, from, a.label), {{i, {*s2, d2}}});
            }
          }
          break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<std::pair<NetLabel, Network>> network_transitions(const Network& n, const EffectRegistry& reg) {
  return enumerate(n, reg, true);
}

std::vector<std::pair<NetLabel, Network>> observable_transitions(const Network& n, const EffectRegistry& reg) {
  return enumerate(n, reg, false);
}

// ---------------------------------------------------------------------------
// Structural congruence

namespace {

void flatten_reaction(const Reaction& r, std::vector<Choice>& out) {
  switch (r.kind()) {
    case Reaction::Kind::Zero: break;
    case Reaction::Kind::Of: out.push_back(r.choice()); break;
    case Reaction::Kind::Par:
      flatten_reaction(r.left(), out);
      flatten_reaction(r.right(), out);
      break;
  }
}

void flatten_definition(const Definition& d, DefinitionParts& out) {
  switch (d.kind()) {
    case Definition::Kind::Input: out.inputs.push_back({d.cond(), d.label(), d.dir(), d.cont()}); break;
    case Definition::Kind::Of: flatten_reaction(d.reaction(), out.choices); break;
    case Definition::Kind::Par:
      flatten_definition(d.left(), out);
      flatten_definition(d.right(), out);
      break;
  }
}

// Ordering keys: label, direction, condition, then children.
std::string output_key(const Output& o) {
  return o.label.str() + '\x1f' + glyph(o.dir) + '\x1f' + o.cond.to_string();
}

std::string choice_key(const Choice& c) {
  std::string k;
  for (const auto& o : c.outputs()) k += output_key(o) + '\x1e';
  return k;
}

Reaction par_all(const std::vector<Choice>& cs) {
  if (cs.empty()) return Reaction::zero();
  Reaction r = Reaction::of(cs.back());
  for (auto it = cs.rbegin() + 1; it != cs.rend(); ++it) r = Reaction::par(Reaction::of(*it), std::move(r));
  return r;
}

std::vector<Choice> sorted_choices(std::vector<Choice> cs) {
  std::vector<std::pair<std::string, Choice>> keyed;
  keyed.reserve(cs.size());
  for (auto& c : cs) {
    Choice n = canonicalize(c);
    keyed.emplace_back(choice_key(n), std::move(n));
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Choice> out;
  out.reserve(keyed.size());
  for (auto& [_, c] : keyed) out.push_back(std::move(c));
  return out;
}

}  // namespace

Choice canonicalize(const Choice& c) {
  auto outs = c.outputs();
  std::stable_sort(outs.begin(), outs.end(),
                   [](const Output& a, const Output& b) { return output_key(a) < output_key(b); });
  return Choice::of(outs);
}

Reaction canonicalize(const Reaction& r) {
  std::vector<Choice> cs;
  flatten_reaction(r, cs);
  return par_all(sorted_choices(std::move(cs)));
}

DefinitionParts split(const Definition& d) {
  DefinitionParts parts;
  flatten_definition(d, parts);
  return parts;
}

Definition join(const DefinitionParts& parts) {
  std::vector<Definition> items;
  for (const auto& in : parts.inputs) items.push_back(Definition::input(in.cond, in.label, in.dir, in.cont));
  if (!parts.choices.empty()) items.push_back(Definition::of(par_all(parts.choices)));
  if (items.empty()) return Definition();
  Definition d = items.back();
  for (auto it = items.rbegin() + 1; it != items.rend(); ++it) d = Definition::par(*it, std::move(d));
  return d;
}

Definition canonicalize(const Definition& d) {
  DefinitionParts parts = split(d);
  std::map<std::string, DefinitionParts::In> inputs;  // absorption of identical inputs
  for (auto& in : parts.inputs) {
    Reaction cont = canonicalize(in.cont);
    std::string key = in.label.str() + '\x1f' + glyph(in.dir) + '\x1f' + in.cond.to_string() + '\x1f' + to_string(cont);
    inputs.emplace(std::move(key), DefinitionParts::In{in.cond, in.label, in.dir, std::move(cont)});
  }
  DefinitionParts out;
  for (auto& [_, in] : inputs) out.inputs.push_back(std::move(in));
  out.choices = sorted_choices(std::move(parts.choices));
  return join(out);
}

Network canonicalize(const Network& n) {
  auto nodes = n.flatten();
  for (auto& node : nodes) node.defs = canonicalize(node.defs);
  std::stable_sort(nodes.begin(), nodes.end(),
                   [](const gridproto::Node& a, const gridproto::Node& b) { return a.state.id < b.state.id; });
  return Network::from_nodes(std::move(nodes));
}

std::string canonical_key(const Definition& d) { return to_string(canonicalize(d)); }

std::string canonical_key(const Network& n) {
  std::string out;
  for (const auto& node : canonicalize(n).flatten()) {
    out += node.state.to_string() + " :: " + to_string(node.defs) + "\n";
  }
  return out;
}

}  // namespace gridproto

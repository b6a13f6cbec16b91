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

#include "gridproto/grid_state.hpp"

#include <sstream>
#include <stdexcept>

#include "gridproto/errors.hpp"

namespace gridproto {

// ---------------------------------------------------------------------------
// ParentRef

ParentRef ParentRef::station(NodeId id) { return ParentRef(Kind::Station, std::move(id)); }
ParentRef ParentRef::disconnected() { return ParentRef(Kind::Disconnected, {}); }
ParentRef ParentRef::top() { return ParentRef(Kind::Top, {}); }

const NodeId& ParentRef::id() const {
  if (kind_ != Kind::Station) throw std::logic_error("parent is not a station");
  return id_;
}

std::string ParentRef::to_string() const {
  switch (kind_) {
    case Kind::Station: return id_.str();
    case Kind::Disconnected: return "z";
    case Kind::Top: return "inf";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// NodeState / NetworkState

void NodeState::check() const {
  auto fail = [this](const std::string& what) {
    throw InvariantViolation("node " + id.str() + ": " + what);
  };
  if (id.str().empty()) throw InvariantViolation("node with empty id");
  if (t > 1) fail("link status t must be 0 or 1");
  if (e > k) fail("faulty outputs e=" + std::to_string(e) + " exceed capacity k=" + std::to_string(k));
  if (a > k) fail("active outputs a=" + std::to_string(a) + " exceed capacity k=" + std::to_string(k));
  if (neighbors.count(id) != 0) fail("node is its own neighbour");
  if (parent.is_station() && parent.id() == id) fail("node is its own parent");
}

std::string NodeState::to_string() const {
  std::ostringstream os;
  os << '<' << id.str() << ",(" << parent.to_string() << ',' << t << "),{";
  bool first = true;
  for (const auto& n : neighbors) {
    if (!first) os << ',';
    os << n.str();
    first = false;
  }
  os << "}," << k << ',' << a << ',' << e << '>';
  return os.str();
}

NetworkState::NetworkState(std::vector<NodeState> nodes) {
  for (auto& s : nodes) {
    const NodeId id = s.id;
    if (!nodes_.emplace(id, std::move(s)).second) {
      throw InvariantViolation("duplicate node id " + id.str());
    }
  }
  validate();
}

const NodeState& NetworkState::at(const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw UnknownNode("unknown node " + id.str());
  return it->second;
}

std::vector<NodeId> NetworkState::ids() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, _] : nodes_) out.push_back(id);
  return out;
}

NetworkState NetworkState::with(NodeState s) const {
  if (!contains(s.id)) throw UnknownNode("unknown node " + s.id.str());
  NetworkState out = *this;
  out.nodes_[s.id] = std::move(s);
  return out;
}

void NetworkState::validate() const {
  for (const auto& [id, s] : nodes_) {
    if (s.id != id) throw InvariantViolation("register keyed " + id.str() + " carries id " + s.id.str());
    s.check();
    if (s.parent.is_station() && !contains(s.parent.id())) {
      throw InvariantViolation("node " + id.str() + ": parent " + s.parent.id().str() + " is not in the network");
    }
    for (const auto& n : s.neighbors) {
      if (!contains(n)) throw InvariantViolation("node " + id.str() + ": neighbour " + n.str() + " is not in the network");
    }
  }
}

std::string NetworkState::to_string() const {
  std::string out;
  for (const auto& [_, s] : nodes_) {
    if (!out.empty()) out += ' ';
    out += s.to_string();
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conditions

std::string_view field_name(Field f) {
  switch (f) {
    case Field::T: return "t";
    case Field::K: return "k";
    case Field::A: return "a";
    case Field::E: return "e";
    case Field::Parent: return "parent";
  }
  return "?";
}

std::string_view cmp_symbol(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

std::string Expr::to_string() const {
  switch (kind) {
    case Kind::Field: return std::string(field_name(field));
    case Kind::Natural: return std::to_string(value);
    case Kind::Node: return id.str();
    case Kind::Disconnected: return "z";
    case Kind::Top: return "inf";
  }
  return "?";
}

struct Condition::Node {
  Kind kind = Kind::True;
  Expr lhs = Expr::natural(0);
  Expr rhs = Expr::natural(0);
  CmpOp op = CmpOp::Eq;
  Condition left_cond{nullptr};
  Condition right_cond{nullptr};
  std::string text;
};

namespace {

int precedence(Condition::Kind k) {
  switch (k) {
    case Condition::Kind::Or: return 1;
    case Condition::Kind::And: return 2;
    case Condition::Kind::Not: return 3;
    default: return 4;
  }
}

std::string wrap_if(const Condition& c, int min_prec) {
  if (precedence(c.kind()) < min_prec) return "(" + c.to_string() + ")";
  return c.to_string();
}

}  // namespace

Condition::Condition() : Condition(truth()) {}

Condition Condition::truth() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::True;
    n->text = "true";
    return n;
  }();
  return Condition(node);
}

Condition Condition::falsity() {
  static const auto node = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::False;
    n->text = "false";
    return n;
  }();
  return Condition(node);
}

Condition Condition::compare(Expr lhs, CmpOp op, Expr rhs) {
  if (lhs.is_parent_field() && rhs.kind == Expr::Kind::Natural) rhs = Expr::node(NodeId(std::to_string(rhs.value)));
  if (rhs.is_parent_field() && lhs.kind == Expr::Kind::Natural) lhs = Expr::node(NodeId(std::to_string(lhs.value)));

  const bool numeric = lhs.is_numeric() && rhs.is_numeric();
  auto parent_operand = [](const Expr& x) {
    return x.kind == Expr::Kind::Node || x.kind == Expr::Kind::Disconnected || x.kind == Expr::Kind::Top;
  };
  const bool parent_cmp = (lhs.is_parent_field() && parent_operand(rhs)) || (rhs.is_parent_field() && parent_operand(lhs));
  if (!numeric && !parent_cmp) {
    throw std::invalid_argument("ill-typed comparison " + lhs.to_string() + std::string(cmp_symbol(op)) + rhs.to_string());
  }
  if (parent_cmp && op != CmpOp::Eq && op != CmpOp::Ne) {
    throw std::invalid_argument("parent can only be compared with == or !=");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Cmp;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  n->op = op;
  n->text = n->lhs.to_string() + std::string(cmp_symbol(op)) + n->rhs.to_string();
  return Condition(n);
}

Condition Condition::conj(Condition a, Condition b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->text = wrap_if(a, 2) + " and " + wrap_if(b, 3);
  n->left_cond = std::move(a);
  n->right_cond = std::move(b);
  return Condition(n);
}

Condition Condition::disj(Condition a, Condition b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->text = wrap_if(a, 1) + " or " + wrap_if(b, 2);
  n->left_cond = std::move(a);
  n->right_cond = std::move(b);
  return Condition(n);
}

Condition Condition::negate(Condition a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->text = "not " + wrap_if(a, 3);
  n->left_cond = std::move(a);
  return Condition(n);
}

Condition::Kind Condition::kind() const { return node_->kind; }
const Expr& Condition::lhs() const { return node_->lhs; }
const Expr& Condition::rhs() const { return node_->rhs; }
CmpOp Condition::op() const { return node_->op; }
const Condition& Condition::left() const { return node_->left_cond; }
const Condition& Condition::right() const { return node_->right_cond; }
const std::string& Condition::to_string() const { return node_->text; }

namespace {

std::uint64_t numeric_value(const NodeState& s, const Expr& x) {
  if (x.kind == Expr::Kind::Natural) return x.value;
  switch (x.field) {
    case Field::T: return s.t;
    case Field::K: return s.k;
    case Field::A: return s.a;
    case Field::E: return s.e;
    case Field::Parent: break;
  }
  throw std::logic_error("parent is not numeric");
}

bool parent_matches(const ParentRef& p, const Expr& x) {
  switch (x.kind) {
    case Expr::Kind::Node: return p.is_station() && p.id() == x.id;
    case Expr::Kind::Disconnected: return p.kind() == ParentRef::Kind::Disconnected;
    case Expr::Kind::Top: return p.kind() == ParentRef::Kind::Top;
    default: return false;
  }
}

}  // namespace

bool eval(const NodeState& s, const Condition& c) {
  switch (c.kind()) {
    case Condition::Kind::True: return true;
    case Condition::Kind::False: return false;
    case Condition::Kind::And: return eval(s, c.left()) && eval(s, c.right());
    case Condition::Kind::Or: return eval(s, c.left()) || eval(s, c.right());
    case Condition::Kind::Not: return !eval(s, c.left());
    case Condition::Kind::Cmp: break;
  }
  const Expr& l = c.lhs();
  const Expr& r = c.rhs();
  if (l.is_parent_field() || r.is_parent_field()) {
    const bool same = parent_matches(s.parent, l.is_parent_field() ? r : l);
    return c.op() == CmpOp::Eq ? same : !same;
  }
  const auto x = numeric_value(s, l);
  const auto y = numeric_value(s, r);
  switch (c.op()) {
    case CmpOp::Eq: return x == y;
    case CmpOp::Ne: return x != y;
    case CmpOp::Lt: return x < y;
    case CmpOp::Le: return x <= y;
    case CmpOp::Gt: return x > y;
    case CmpOp::Ge: return x >= y;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Directions

TargetSet resolve_direction(Direction d, const NetworkState& delta, const NodeId& id) {
  const NodeState& s = delta.at(id);
  TargetSet out;
  switch (d) {
    case Direction::Parent:
      if (s.parent.is_station()) out.nodes.push_back(s.parent.id());
      break;
    case Direction::Neighbor:
      out.nodes.assign(s.neighbors.begin(), s.neighbors.end());
      break;
    case Direction::Children:
      for (const auto& [other, st] : delta) {
        if (st.parent.is_station() && st.parent.id() == id) out.nodes.push_back(other);
      }
      break;
    case Direction::Self:
      out.self = true;
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Side effects

std::string Assignment::to_string() const {
  switch (kind) {
    case Kind::SetParentOther: return "parent := other";
    case Kind::SetParentDisconnected: return "parent := z";
    case Kind::Increment: return std::string(field_name(field)) + " += 1";
    case Kind::Decrement: return std::string(field_name(field)) + " -= 1";
    case Kind::SetLink: return "t := " + std::to_string(value);
    case Kind::AddNeighborOther: return "neighbors += other";
    case Kind::RemoveNeighborOther: return "neighbors -= other";
  }
  return "?";
}

const EffectSpec& EffectRegistry::lookup(const ActionLabel& label) const {
  static const EffectSpec kNone;
  auto it = specs_.find(label);
  return it == specs_.end() ? kNone : it->second;
}

namespace {

std::uint64_t& counter(NodeState& s, Field f) {
  switch (f) {
    case Field::K: return s.k;
    case Field::A: return s.a;
    case Field::E: return s.e;
    default: break;
  }
  throw std::invalid_argument("only k, a and e can be incremented or decremented");
}

}  // namespace

NodeState apply_assignments(NodeState s, std::span<const Assignment> assignments, const NodeId& other) {
  for (const Assignment& as : assignments) {
    switch (as.kind) {
      case Assignment::Kind::SetParentOther: s.parent = ParentRef::station(other); break;
      case Assignment::Kind::SetParentDisconnected: s.parent = ParentRef::disconnected(); break;
      case Assignment::Kind::Increment: ++counter(s, as.field); break;
      case Assignment::Kind::Decrement: {
        auto& c = counter(s, as.field);
        if (c == 0) {
          throw NegativeCounter("node " + s.id.str() + ": " + std::string(field_name(as.field)) + " -= 1 underflows");
        }
        --c;
        break;
      }
      case Assignment::Kind::SetLink: s.t = as.value; break;
      case Assignment::Kind::AddNeighborOther: s.neighbors.insert(other); break;
      case Assignment::Kind::RemoveNeighborOther: s.neighbors.erase(other); break;
    }
  }
  s.check();
  return s;
}

NetworkState apply_update(const NetworkState& delta, const NodeId& enabler, const NodeId& reactor,
                          const ActionLabel& label, const EffectRegistry& reg) {
  if (enabler == reactor) throw std::invalid_argument("enabler and reactor must differ");
  const NodeState& se = delta.at(enabler);
  const NodeState& sr = delta.at(reactor);
  const EffectSpec& spec = reg.lookup(label);
  if (spec.empty()) return delta;
  return delta.with(apply_assignments(se, spec.enabler, reactor)).with(apply_assignments(sr, spec.reactor, enabler));
}

}  // namespace gridproto

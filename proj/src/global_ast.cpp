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

#include "gridproto/global_ast.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "gridproto/errors.hpp"

namespace gridproto {

struct Protocol::Node {
  Kind kind = Kind::Nil;
  Protocol left{nullptr};
  Protocol right{nullptr};  // Fork only
  RecVar var;
  NodeId id;
  std::vector<SyncAction> branches;
};

const std::shared_ptr<const Protocol::Node>& Protocol::nil_node() {
  static const auto n = std::make_shared<const Protocol::Node>();
  return n;
}

Protocol::Protocol() : node_(nil_node()) {}

Protocol Protocol::nil() { return Protocol(); }

Protocol Protocol::fork(Protocol left, Protocol right) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Fork;
  n->left = std::move(left);
  n->right = std::move(right);
  return Protocol(std::move(n));
}

Protocol Protocol::rec(RecVar x, Protocol body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rec;
  n->var = std::move(x);
  n->left = std::move(body);
  return Protocol(std::move(n));
}

Protocol Protocol::var(RecVar x) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->var = std::move(x);
  return Protocol(std::move(n));
}

Protocol Protocol::sum(std::vector<SyncAction> branches) {
  if (branches.empty()) throw std::invalid_argument("summation needs at least one branch");
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->branches = std::move(branches);
  return Protocol(std::move(n));
}

Protocol Protocol::action(SyncAction a) { return sum({std::move(a)}); }

Protocol Protocol::active(NodeId id, Protocol body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Active;
  n->id = std::move(id);
  n->left = std::move(body);
  return Protocol(std::move(n));
}

Protocol::Kind Protocol::kind() const { return node_->kind; }

const Protocol& Protocol::left() const {
  if (kind() != Kind::Fork) throw std::logic_error("left() on a non-fork");
  return node_->left;
}

const Protocol& Protocol::right() const {
  if (kind() != Kind::Fork) throw std::logic_error("right() on a non-fork");
  return node_->right;
}

const Protocol& Protocol::body() const {
  if (kind() != Kind::Rec && kind() != Kind::Active) throw std::logic_error("body() on a term without body");
  return node_->left;
}

const RecVar& Protocol::var_name() const {
  if (kind() != Kind::Rec && kind() != Kind::Var) throw std::logic_error("var_name() on a term without variable");
  return node_->var;
}

const std::vector<SyncAction>& Protocol::branches() const {
  if (kind() != Kind::Sum) throw std::logic_error("branches() on a non-summation");
  return node_->branches;
}

const NodeId& Protocol::id() const {
  if (kind() != Kind::Active) throw std::logic_error("id() on a non-active term");
  return node_->id;
}

bool operator==(const Protocol& a, const Protocol& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Protocol::Kind::Nil: return true;
    case Protocol::Kind::Fork: return a.left() == b.left() && a.right() == b.right();
    case Protocol::Kind::Rec: return a.var_name() == b.var_name() && a.body() == b.body();
    case Protocol::Kind::Var: return a.var_name() == b.var_name();
    case Protocol::Kind::Sum: return a.branches() == b.branches();
    case Protocol::Kind::Active: return a.id() == b.id() && a.body() == b.body();
  }
  return false;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

bool needs_parens_as_prefix_operand(const Protocol& p) {
  return p.kind() == Protocol::Kind::Fork || (p.kind() == Protocol::Kind::Sum && p.branches().size() > 1);
}

std::string operand(const Protocol& p) {
  const std::string s = to_string(p);
  return needs_parens_as_prefix_operand(p) ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const SyncAction& a) {
  return a.label.str() + glyph(a.dir) + "[o: " + a.out_cond.to_string() + "][i: " + a.in_cond.to_string() + "]." +
         operand(a.cont);
}

std::string to_string(const Protocol& p) {
  switch (p.kind()) {
    case Protocol::Kind::Nil: return "0";
    case Protocol::Kind::Var: return p.var_name().str();
    case Protocol::Kind::Rec: return "rec " + p.var_name().str() + "." + operand(p.body());
    case Protocol::Kind::Active: return "<" + p.id().str() + "> " + operand(p.body());
    case Protocol::Kind::Fork: {
      const Protocol& r = p.right();
      const std::string rs = r.kind() == Protocol::Kind::Fork ? "(" + to_string(r) + ")" : to_string(r);
      return to_string(p.left()) + " | " + rs;
    }
    case Protocol::Kind::Sum: {
      std::string out;
      for (const auto& b : p.branches()) {
        if (!out.empty()) out += " + ";
        out += to_string(b);
      }
      return out;
    }
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Well-formedness

std::string Violation::to_string() const {
  switch (kind) {
    case Kind::UnguardedRecursion: return "UnguardedRecursion(" + subject + ")";
    case Kind::DuplicateLabel: return "DuplicateLabel(" + subject + ")";
    case Kind::ActiveInsideRec: return "ActiveInsideRec(" + subject + ")";
    case Kind::ActiveNotTopLevel: return "ActiveNotTopLevel(" + subject + ")";
    case Kind::UnboundVariable: return "UnboundVariable(" + subject + ")";
    case Kind::DuplicateBinder: return "DuplicateBinder(" + subject + ")";
  }
  return "?";
}

namespace {

struct WfWalker {
  CheckMode mode;
  std::vector<Violation> out;
  std::map<ActionLabel, int> labels;
  std::map<RecVar, int> binders;

  void report(Violation::Kind k, std::string subject) {
    Violation v{k, std::move(subject)};
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(std::move(v));
  }

  // `bound`: binders in scope. `unguarded`: binders with no action between
  // them and the current position. `rec_depth`: number of enclosing Rec
  // bodies. `spine`: still on the fork/active chain from the root.
  void walk(const Protocol& p, std::vector<RecVar>& bound, std::set<RecVar> unguarded, int rec_depth, bool spine) {
    switch (p.kind()) {
      case Protocol::Kind::Nil: return;
      case Protocol::Kind::Var: {
        const auto& x = p.var_name();
        if (std::find(bound.begin(), bound.end(), x) == bound.end()) {
          report(Violation::Kind::UnboundVariable, x.str());
        } else if (unguarded.count(x) != 0) {
          report(Violation::Kind::UnguardedRecursion, x.str());
        }
        return;
      }
      case Protocol::Kind::Rec: {
        const auto& x = p.var_name();
        if (++binders[x] == 2) report(Violation::Kind::DuplicateBinder, x.str());
        unguarded.insert(x);
        bound.push_back(x);
        walk(p.body(), bound, std::move(unguarded), rec_depth + 1, false);
        bound.pop_back();
        return;
      }
      case Protocol::Kind::Active:
        if (rec_depth > 0) report(Violation::Kind::ActiveInsideRec, p.id().str());
        else if (mode == CheckMode::Static && !spine) report(Violation::Kind::ActiveNotTopLevel, p.id().str());
        walk(p.body(), bound, std::move(unguarded), rec_depth, spine);
        return;
      case Protocol::Kind::Fork:
        walk(p.left(), bound, unguarded, rec_depth, spine);
        walk(p.right(), bound, std::move(unguarded), rec_depth, spine);
        return;
      case Protocol::Kind::Sum:
        for (const auto& b : p.branches()) {
          if (++labels[b.label] == 2) report(Violation::Kind::DuplicateLabel, b.label.str());
          walk(b.cont, bound, {}, rec_depth, false);
        }
        return;
    }
  }
};

}  // namespace

std::vector<Violation> well_formed(const Protocol& p, CheckMode mode) {
  WfWalker w{mode, {}, {}, {}};
  std::vector<RecVar> bound;
  w.walk(p, bound, {}, 0, true);
  return w.out;
}

// ---------------------------------------------------------------------------
// Substitution

Protocol substitute(const Protocol& p, const RecVar& x, const Protocol& q) {
  switch (p.kind()) {
    case Protocol::Kind::Nil: return p;
    case Protocol::Kind::Var: return p.var_name() == x ? q : p;
    case Protocol::Kind::Rec:
      if (p.var_name() == x) return p;  // shadowed
      return Protocol::rec(p.var_name(), substitute(p.body(), x, q));
    case Protocol::Kind::Active: return Protocol::active(p.id(), substitute(p.body(), x, q));
    case Protocol::Kind::Fork: return Protocol::fork(substitute(p.left(), x, q), substitute(p.right(), x, q));
    case Protocol::Kind::Sum: {
      std::vector<SyncAction> bs = p.branches();
      for (auto& b : bs) b.cont = substitute(b.cont, x, q);
      return Protocol::sum(std::move(bs));
    }
  }
  return p;
}

Protocol unfold(const Protocol& p) {
  if (p.kind() != Protocol::Kind::Rec) throw NotARecursion("unfold applied to " + to_string(p));
  return substitute(p.body(), p.var_name(), p);
}

Protocol wrap_active(const std::vector<NodeId>& ids, Protocol p) {
  if (p.is_nil()) return p;
  std::vector<NodeId> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) p = Protocol::active(*it, std::move(p));
  return p;
}

bool contains_active(const Protocol& p) {
  switch (p.kind()) {
    case Protocol::Kind::Nil:
    case Protocol::Kind::Var: return false;
    case Protocol::Kind::Active: return true;
    case Protocol::Kind::Rec: return contains_active(p.body());
    case Protocol::Kind::Fork: return contains_active(p.left()) || contains_active(p.right());
    case Protocol::Kind::Sum:
      return std::any_of(p.branches().begin(), p.branches().end(),
                         [](const SyncAction& b) { return contains_active(b.cont); });
  }
  return false;
}

// ---------------------------------------------------------------------------
// Redexes

namespace {

void collect_redexes(const Protocol& p, std::vector<NodeId>& scope, std::vector<PathStep>& path,
                     std::vector<Redex>& out) {
  switch (p.kind()) {
    case Protocol::Kind::Nil:
    case Protocol::Kind::Var: return;
    case Protocol::Kind::Active:
      scope.push_back(p.id());
      path.push_back({PathStep::Kind::Enter});
      collect_redexes(p.body(), scope, path, out);
      path.pop_back();
      scope.pop_back();
      return;
    case Protocol::Kind::Fork:
      path.push_back({PathStep::Kind::Left});
      collect_redexes(p.left(), scope, path, out);
      path.back() = {PathStep::Kind::Right};
      collect_redexes(p.right(), scope, path, out);
      path.pop_back();
      return;
    case Protocol::Kind::Rec:
      // Rec bodies carry no actives, so an unscoped recursion holds nothing.
      if (scope.empty()) return;
      path.push_back({PathStep::Kind::Unfold});
      collect_redexes(unfold(p), scope, path, out);
      path.pop_back();
      return;
    case Protocol::Kind::Sum: {
      const auto& bs = p.branches();
      if (!scope.empty()) {
        std::vector<NodeId> ids = scope;
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        for (const auto& id : ids) {
          for (std::size_t i = 0; i < bs.size(); ++i) out.push_back(Redex{path, id, i, bs[i]});
        }
      }
      std::vector<NodeId> inner;
      for (std::size_t i = 0; i < bs.size(); ++i) {
        path.push_back({PathStep::Kind::Branch, i});
        collect_redexes(bs[i].cont, inner, path, out);
        path.pop_back();
      }
      return;
    }
  }
}

}  // namespace

std::vector<Redex> enumerate_redexes(const Protocol& p) {
  std::vector<Redex> out;
  std::vector<NodeId> scope;
  std::vector<PathStep> path;
  collect_redexes(p, scope, path, out);
  return out;
}

// ---------------------------------------------------------------------------
// Normal form

namespace {

// Recursions on the spine are unfolded only under an active marker; inert
// static recursions stay folded so that keys of continuations stay finite.
void collect_components(const Protocol& p, std::vector<NodeId>& scope, std::vector<Component>& out) {
  switch (p.kind()) {
    case Protocol::Kind::Nil: return;
    case Protocol::Kind::Active:
      scope.push_back(p.id());
      collect_components(p.body(), scope, out);
      scope.pop_back();
      return;
    case Protocol::Kind::Fork:
      collect_components(p.left(), scope, out);
      collect_components(p.right(), scope, out);
      return;
    case Protocol::Kind::Rec:
      if (!scope.empty()) {
        collect_components(unfold(p), scope, out);
        return;
      }
      [[fallthrough]];
    case Protocol::Kind::Var:
    case Protocol::Kind::Sum: {
      std::vector<NodeId> ids = scope;
      std::sort(ids.begin(), ids.end());
      out.push_back(Component{std::move(ids), p});
      return;
    }
  }
}

std::string key_of(const Protocol& p);

std::string branch_key(const SyncAction& a) {
  return a.label.str() + glyph(a.dir) + "[" + a.out_cond.to_string() + "][" + a.in_cond.to_string() + "].(" +
         key_of(a.cont) + ")";
}

std::string atom_key(const Protocol& p) {
  switch (p.kind()) {
    case Protocol::Kind::Var: return p.var_name().str();
    case Protocol::Kind::Rec: return "rec " + p.var_name().str() + ".(" + key_of(p.body()) + ")";
    case Protocol::Kind::Sum: {
      std::vector<std::string> keys;
      for (const auto& b : p.branches()) keys.push_back(branch_key(b));
      std::sort(keys.begin(), keys.end());
      std::string out;
      for (const auto& k : keys) {
        if (!out.empty()) out += " + ";
        out += k;
      }
      return out;
    }
    default: break;
  }
  throw std::logic_error("not an atom");
}

std::string key_of(const Protocol& p) {
  std::vector<Component> parts;
  std::vector<NodeId> scope;
  collect_components(p, scope, parts);
  std::vector<std::string> keys;
  keys.reserve(parts.size());
  for (const auto& c : parts) {
    std::string k;
    for (const auto& id : c.actives) k += "<" + id.str() + ">";
    keys.push_back(k + "{" + atom_key(c.term) + "}");
  }
  if (keys.empty()) return "0";
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (const auto& k : keys) {
    if (!out.empty()) out += " | ";
    out += k;
  }
  return out;
}

}  // namespace

std::vector<Component> decompose(const Protocol& p) {
  std::vector<Component> out;
  std::vector<NodeId> scope;
  collect_components(p, scope, out);
  return out;
}

Protocol recompose(const std::vector<Component>& parts) {
  Protocol out;
  bool first = true;
  for (const auto& c : parts) {
    Protocol piece = wrap_active(c.actives, c.term);
    out = first ? piece : Protocol::fork(out, piece);
    first = false;
  }
  return out;
}

std::string canonical_key(const Protocol& p) { return key_of(p); }

}  // namespace gridproto

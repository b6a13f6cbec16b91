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

#ifndef GRIDPROTO_TESTS_TEST_SUPPORT_HPP_
#define GRIDPROTO_TESTS_TEST_SUPPORT_HPP_

// Builders, random term generators, single-axiom rewriters and a normal form
// oracle that is computed independently of the library's canonicalizers.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gridproto/corpus.hpp"
#include "gridproto/correspondence.hpp"
#include "gridproto/dist_core.hpp"
#include "gridproto/formats.hpp"
#include "gridproto/global_ast.hpp"
#include "gridproto/global_semantics.hpp"
#include "gridproto/grid_state.hpp"
#include "gridproto/projection.hpp"

namespace gridproto::testing {

inline NodeId nid(std::string_view s) { return NodeId(std::string(s)); }
inline ActionLabel lbl(std::string_view s) { return ActionLabel(std::string(s)); }
inline RecVar rv(std::string_view s) { return RecVar(std::string(s)); }
inline Condition cond(std::string_view s) { return parse_condition(s); }
inline Protocol gp(std::string_view s) { return parse_protocol(s); }

inline ParentRef parent_of(std::string_view p) {
  if (p == "z") return ParentRef::disconnected();
  if (p == "inf") return ParentRef::top();
  return ParentRef::station(nid(p));
}

inline NodeState reg(std::string_view id, std::string_view parent, unsigned t, std::vector<std::string> neighbors,
                     std::uint64_t k, std::uint64_t a, std::uint64_t e) {
  NodeState s;
  s.id = nid(id);
  s.parent = parent_of(parent);
  s.t = t;
  for (auto& n : neighbors) s.neighbors.insert(NodeId(std::move(n)));
  s.k = k;
  s.a = a;
  s.e = e;
  return s;
}

inline SyncAction act(std::string_view label, Direction d, std::string_view o, std::string_view i, Protocol cont) {
  return SyncAction{lbl(label), d, cond(o), cond(i), std::move(cont)};
}

// 1 -> 2 -> 3 with the input link of 3 down.
inline NetworkState chain3() {
  return NetworkState({reg("1", "inf", 1, {"2"}, 1, 1, 1), reg("2", "1", 1, {"1", "3"}, 1, 1, 1),
                       reg("3", "2", 0, {"2"}, 0, 0, 0)});
}

inline std::string keys_of(const std::vector<GlobalStep>& steps) {
  std::vector<std::string> ks;
  for (const auto& s : steps) ks.push_back(format_step(s.info) + " => " + s.successor.key());
  std::sort(ks.begin(), ks.end());
  std::string out;
  for (const auto& k : ks) out += k + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Normal form oracle for distributed terms. Parallel and choice structure is
// flattened into sorted multisets; inputs are a set, everything else keeps
// multiplicity.

inline std::string oracle_output(const Output& o) {
  return "[" + o.cond.to_string() + "]" + o.label.str() + glyph(o.dir) + "!";
}

inline void oracle_choice_leaves(const Choice& c, std::vector<std::string>& out) {
  if (c.kind() == Choice::Kind::Out) {
    out.push_back(oracle_output(c.output()));
  } else {
    oracle_choice_leaves(c.left(), out);
    oracle_choice_leaves(c.right(), out);
  }
}

inline std::string oracle_choice(const Choice& c) {
  std::vector<std::string> leaves;
  oracle_choice_leaves(c, leaves);
  std::sort(leaves.begin(), leaves.end());
  std::string s = "(";
  for (const auto& l : leaves) s += l + "+";
  return s + ")";
}

inline void oracle_reaction_leaves(const Reaction& r, std::vector<std::string>& out) {
  switch (r.kind()) {
    case Reaction::Kind::Zero: return;
    case Reaction::Kind::Of: out.push_back(oracle_choice(r.choice())); return;
    case Reaction::Kind::Par:
      oracle_reaction_leaves(r.left(), out);
      oracle_reaction_leaves(r.right(), out);
      return;
  }
}

inline std::string oracle_reaction(const Reaction& r) {
  std::vector<std::string> leaves;
  oracle_reaction_leaves(r, leaves);
  std::sort(leaves.begin(), leaves.end());
  std::string s = "{";
  for (const auto& l : leaves) s += l + "|";
  return s + "}";
}

inline void oracle_definition_leaves(const Definition& d, std::set<std::string>& inputs,
                                     std::vector<std::string>& reactions) {
  switch (d.kind()) {
    case Definition::Kind::Input:
      inputs.insert("[" + d.cond().to_string() + "]" + d.label().str() + glyph(d.dir()) + "?." +
                    oracle_reaction(d.cont()));
      return;
    case Definition::Kind::Of: oracle_reaction_leaves(d.reaction(), reactions); return;
    case Definition::Kind::Par:
      oracle_definition_leaves(d.left(), inputs, reactions);
      oracle_definition_leaves(d.right(), inputs, reactions);
      return;
  }
}

inline std::string oracle_definition(const Definition& d) {
  std::set<std::string> inputs;
  std::vector<std::string> reactions;
  oracle_definition_leaves(d, inputs, reactions);
  std::sort(reactions.begin(), reactions.end());
  std::string s = "I{";
  for (const auto& i : inputs) s += i + ";";
  s += "}R{";
  for (const auto& r : reactions) s += r + ";";
  return s + "}";
}

inline std::string oracle_network(const Network& n) {
  std::vector<std::string> nodes;
  for (const auto& node : n.flatten()) nodes.push_back(node.state.to_string() + "::" + oracle_definition(node.defs));
  std::sort(nodes.begin(), nodes.end());
  std::string s;
  for (const auto& x : nodes) s += x + "\n";
  return s;
}

// ---------------------------------------------------------------------------
// Random generators

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }
  bool coin(std::size_t percent = 50) { return below(100) < percent; }
  std::mt19937_64& rng() { return rng_; }

  Condition condition() {
    static const char* pool[] = {"true", "e>0", "t==0", "e>0 or t==0", "k>a and e==0", "parent==z",
                                 "parent!=inf", "e==1", "not (a>=k)", "e>1", "t==1", "a<k"};
    return cond(pool[below(std::size(pool))]);
  }

  Direction direction() {
    static const Direction dirs[] = {Direction::Children, Direction::Parent, Direction::Neighbor, Direction::Self};
    return dirs[below(4)];
  }

  // Well-formed static protocol: unique labels, fresh binders, guarded
  // recursion, no Active.
  Protocol static_protocol(int depth = 3) {
    labels_ = 0;
    binders_ = 0;
    std::vector<RecVar> bound;
    return term(depth, bound, true);
  }

  // Guarded recursion at the root.
  Protocol recursion(int depth = 3) {
    labels_ = 0;
    binders_ = 0;
    std::vector<RecVar> bound;
    const RecVar x = fresh_binder();
    bound.push_back(x);
    return Protocol::rec(x, sum(depth, bound));
  }

  // Actives on the top-level spine of a static protocol.
  Protocol active_protocol(const std::vector<NodeId>& ids, int depth = 3) {
    labels_ = 0;
    binders_ = 0;
    const std::size_t parts = 1 + below(2);
    Protocol out;
    for (std::size_t i = 0; i < parts; ++i) {
      std::vector<RecVar> bound;
      Protocol p = coin(30) ? rec_sum(depth, bound) : sum(depth, bound);
      const std::size_t n_active = 1 + below(2);
      for (std::size_t j = 0; j < n_active; ++j) p = Protocol::active(ids[below(ids.size())], p);
      out = i == 0 ? p : Protocol::fork(out, p);
    }
    return out;
  }

  NetworkState network(std::size_t n) {
    std::vector<NodeState> nodes;
    for (std::size_t i = 1; i <= n; ++i) {
      NodeState s;
      s.id = NodeId(std::to_string(i));
      if (i == 1) {
        s.parent = ParentRef::top();
      } else if (coin(10)) {
        s.parent = ParentRef::disconnected();
      } else {
        s.parent = ParentRef::station(NodeId(std::to_string(1 + below(i - 1))));
      }
      s.t = coin(25) ? 0 : 1;
      s.k = below(3);
      s.a = s.k == 0 ? 0 : below(s.k + 1);
      s.e = s.k == 0 ? 0 : below(s.k + 1);
      nodes.push_back(std::move(s));
    }
    for (auto& s : nodes) {
      if (s.parent.is_station()) {
        s.neighbors.insert(s.parent.id());
        for (auto& p : nodes) {
          if (p.id == s.parent.id()) p.neighbors.insert(s.id);
        }
      }
    }
    for (std::size_t extra = below(2); extra > 0; --extra) {
      auto& x = nodes[below(n)];
      auto& y = nodes[below(n)];
      if (x.id != y.id) {
        x.neighbors.insert(y.id);
        y.neighbors.insert(x.id);
      }
    }
    return NetworkState(std::move(nodes));
  }

  // Effects that can never underflow or break a register invariant.
  EffectRegistry effects(const Protocol& p) {
    EffectRegistry reg;
    std::set<ActionLabel> labels;
    collect(p, labels);
    for (const auto& l : labels) {
      EffectSpec spec;
      switch (below(4)) {
        case 0: break;
        case 1: spec.enabler.push_back(Assignment::set_parent_other()); break;
        case 2: spec.reactor.push_back(Assignment::increment(Field::K)); break;
        default:
          spec.enabler.push_back(Assignment::remove_neighbor_other());
          spec.reactor.push_back(Assignment::remove_neighbor_other());
          break;
      }
      reg.set(l, spec);
    }
    return reg;
  }

  // Distributed terms with a small label alphabet so that absorption and
  // commutation actually collide.
  Output output() { return Output{small_condition(), small_label(), direction()}; }

  Choice choice(int depth = 2) {
    if (depth == 0 || coin(50)) return Choice::out(output());
    return Choice::plus(choice(depth - 1), choice(depth - 1));
  }

  Reaction reaction(int depth = 2) {
    const std::size_t pick = below(10);
    if (depth == 0 || pick < 2) return pick == 0 ? Reaction::zero() : Reaction::of(choice());
    if (pick < 6) return Reaction::of(choice());
    return Reaction::par(reaction(depth - 1), reaction(depth - 1));
  }

  Definition definition(int depth = 3) {
    const std::size_t pick = below(10);
    if (depth == 0 || pick < 3) {
      return coin(70) ? Definition::input(small_condition(), small_label(), direction(), reaction(1))
                      : Definition::of(reaction(1));
    }
    if (pick < 4) return Definition();
    return Definition::par(definition(depth - 1), definition(depth - 1));
  }

 private:
  static void collect(const Protocol& p, std::set<ActionLabel>& out) {
    switch (p.kind()) {
      case Protocol::Kind::Nil:
      case Protocol::Kind::Var: return;
      case Protocol::Kind::Rec:
      case Protocol::Kind::Active: collect(p.body(), out); return;
      case Protocol::Kind::Fork:
        collect(p.left(), out);
        collect(p.right(), out);
        return;
      case Protocol::Kind::Sum:
        for (const auto& b : p.branches()) {
          out.insert(b.label);
          collect(b.cont, out);
        }
        return;
    }
  }

  Condition small_condition() { return coin(50) ? cond("true") : cond("e>0"); }
  ActionLabel small_label() { return ActionLabel(coin(50) ? "F" : "G"); }

  RecVar fresh_binder() { return RecVar("X" + std::to_string(binders_++)); }
  ActionLabel fresh_label() { return ActionLabel("F" + std::to_string(labels_++)); }

  Protocol sum(int depth, std::vector<RecVar>& bound) {
    std::vector<SyncAction> branches;
    const std::size_t n = 1 + below(3);
    for (std::size_t i = 0; i < n; ++i) {
      SyncAction a;
      a.label = fresh_label();
      a.dir = direction();
      a.out_cond = condition();
      a.in_cond = condition();
      a.cont = term(depth - 1, bound, false);
      branches.push_back(std::move(a));
    }
    return Protocol::sum(std::move(branches));
  }

  Protocol rec_sum(int depth, std::vector<RecVar>& bound) {
    const RecVar x = fresh_binder();
    bound.push_back(x);
    Protocol body = sum(depth, bound);
    bound.pop_back();
    return Protocol::rec(x, body);
  }

  // `top` forbids a bare variable at the root.
  Protocol term(int depth, std::vector<RecVar>& bound, bool top) {
    if (depth <= 0) {
      if (!top && !bound.empty() && coin(60)) return Protocol::var(bound[below(bound.size())]);
      return Protocol::nil();
    }
    switch (below(top ? 4 : 6)) {
      case 0: return sum(depth, bound);
      case 1: return rec_sum(depth, bound);
      case 2: return Protocol::fork(term(depth - 1, bound, top), term(depth - 1, bound, top));
      case 3: return top ? sum(depth, bound) : Protocol::nil();
      case 4: return bound.empty() ? Protocol::nil() : Protocol::var(bound[below(bound.size())]);
      default: return sum(depth, bound);
    }
  }

  std::mt19937_64 rng_;
  std::size_t labels_ = 0;
  std::size_t binders_ = 0;
};

// ---------------------------------------------------------------------------
// Single axiom rewriting on global protocols. Subterm positions are numbered
// in preorder; continuations of summation branches are included.

enum class GlobalAxiom {
  ForkUnit,        // P | 0 = P (both directions)
  ForkComm,        // P | Q = Q | P
  ForkAssoc,       // (P | Q) | R = P | (Q | R)
  SumComm,         // branch permutation
  ActiveSwap,      // <a><b>P = <b><a>P
  ActiveDistrib,   // <a>(P | Q) = <a>P | <a>Q
  ActiveNil,       // <a>0 = 0
  Unfold,          // rec X.P = P[rec X.P / X], on the spine under an active
};
inline constexpr int kGlobalAxioms = 8;

inline const char* axiom_name(GlobalAxiom a) {
  static const char* names[] = {"ForkUnit", "ForkComm", "ForkAssoc", "SumComm",
                                "ActiveSwap", "ActiveDistrib", "ActiveNil", "Unfold"};
  return names[static_cast<int>(a)];
}

namespace detail {

// Rewrites the subterm at preorder index `target`; returns false through
// `hit` when the axiom does not apply there.
inline Protocol rewrite_at(const Protocol& p, GlobalAxiom ax, std::size_t& counter, std::size_t target, bool spine,
                           bool scoped, Gen& g, bool& hit) {
  const std::size_t me = counter++;
  if (me == target) {
    switch (ax) {
      case GlobalAxiom::ForkUnit:
        if (p.kind() == Protocol::Kind::Fork && p.right().is_nil()) {
          hit = true;
          return p.left();
        }
        if (p.kind() == Protocol::Kind::Fork && p.left().is_nil()) {
          hit = true;
          return p.right();
        }
        hit = true;
        return g.coin() ? Protocol::fork(p, Protocol::nil()) : Protocol::fork(Protocol::nil(), p);
      case GlobalAxiom::ForkComm:
        if (p.kind() != Protocol::Kind::Fork) break;
        hit = true;
        return Protocol::fork(p.right(), p.left());
      case GlobalAxiom::ForkAssoc:
        if (p.kind() == Protocol::Kind::Fork && p.left().kind() == Protocol::Kind::Fork) {
          hit = true;
          return Protocol::fork(p.left().left(), Protocol::fork(p.left().right(), p.right()));
        }
        if (p.kind() == Protocol::Kind::Fork && p.right().kind() == Protocol::Kind::Fork) {
          hit = true;
          return Protocol::fork(Protocol::fork(p.left(), p.right().left()), p.right().right());
        }
        break;
      case GlobalAxiom::SumComm: {
        if (p.kind() != Protocol::Kind::Sum || p.branches().size() < 2) break;
        auto bs = p.branches();
        std::shuffle(bs.begin(), bs.end(), g.rng());
        std::rotate(bs.begin(), bs.begin() + 1, bs.end());
        hit = true;
        return Protocol::sum(bs);
      }
      case GlobalAxiom::ActiveSwap:
        if (p.kind() != Protocol::Kind::Active || p.body().kind() != Protocol::Kind::Active) break;
        hit = true;
        return Protocol::active(p.body().id(), Protocol::active(p.id(), p.body().body()));
      case GlobalAxiom::ActiveDistrib:
        if (p.kind() == Protocol::Kind::Active && p.body().kind() == Protocol::Kind::Fork) {
          hit = true;
          return Protocol::fork(Protocol::active(p.id(), p.body().left()), Protocol::active(p.id(), p.body().right()));
        }
        if (p.kind() == Protocol::Kind::Fork && p.left().kind() == Protocol::Kind::Active &&
            p.right().kind() == Protocol::Kind::Active && p.left().id() == p.right().id()) {
          hit = true;
          return Protocol::active(p.left().id(), Protocol::fork(p.left().body(), p.right().body()));
        }
        break;
      case GlobalAxiom::ActiveNil:
        if (p.kind() == Protocol::Kind::Active && p.body().is_nil()) {
          hit = true;
          return Protocol::nil();
        }
        if (p.is_nil() && spine) {
          hit = true;
          return Protocol::active(NodeId("1"), p);
        }
        break;
      case GlobalAxiom::Unfold:
        if (!spine || !scoped || p.kind() != Protocol::Kind::Rec) break;
        hit = true;
        return unfold(p);
    }
    return p;
  }
  switch (p.kind()) {
    case Protocol::Kind::Nil:
    case Protocol::Kind::Var: return p;
    case Protocol::Kind::Rec: {
      Protocol b = rewrite_at(p.body(), ax, counter, target, false, false, g, hit);
      return Protocol::rec(p.var_name(), b);
    }
    case Protocol::Kind::Active: {
      Protocol b = rewrite_at(p.body(), ax, counter, target, spine, true, g, hit);
      return Protocol::active(p.id(), b);
    }
    case Protocol::Kind::Fork: {
      Protocol l = rewrite_at(p.left(), ax, counter, target, spine, scoped, g, hit);
      Protocol r = rewrite_at(p.right(), ax, counter, target, spine, scoped, g, hit);
      return Protocol::fork(l, r);
    }
    case Protocol::Kind::Sum: {
      auto bs = p.branches();
      for (auto& b : bs) b.cont = rewrite_at(b.cont, ax, counter, target, false, false, g, hit);
      return Protocol::sum(bs);
    }
  }
  return p;
}

inline std::size_t count_positions(const Protocol& p) {
  switch (p.kind()) {
    case Protocol::Kind::Nil:
    case Protocol::Kind::Var: return 1;
    case Protocol::Kind::Rec:
    case Protocol::Kind::Active: return 1 + count_positions(p.body());
    case Protocol::Kind::Fork: return 1 + count_positions(p.left()) + count_positions(p.right());
    case Protocol::Kind::Sum: {
      std::size_t n = 1;
      for (const auto& b : p.branches()) n += count_positions(b.cont);
      return n;
    }
  }
  return 1;
}

}  // namespace detail

// Applies `ax` at a random position where it applies; false if nowhere.
inline bool apply_global_axiom(const Protocol& p, GlobalAxiom ax, Gen& g, Protocol& out) {
  const std::size_t n = detail::count_positions(p);
  const std::size_t start = g.below(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t counter = 0;
    bool hit = false;
    Protocol q = detail::rewrite_at(p, ax, counter, (start + k) % n, true, false, g, hit);
    if (hit) {
      out = q;
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Single axiom rewriting on distributed terms.

enum class LocalAxiom { ParUnit, ParComm, ParAssoc, Absorb, PlusComm, PlusAssoc, ReactionUnit, ReactionComm };
inline constexpr int kLocalAxioms = 8;

namespace detail {

inline Choice rewrite_choice(const Choice& c, LocalAxiom ax, std::size_t& counter, std::size_t target, bool& hit) {
  const std::size_t me = counter++;
  if (me == target && c.kind() == Choice::Kind::Plus) {
    if (ax == LocalAxiom::PlusComm) {
      hit = true;
      return Choice::plus(c.right(), c.left());
    }
    if (ax == LocalAxiom::PlusAssoc && c.left().kind() == Choice::Kind::Plus) {
      hit = true;
      return Choice::plus(c.left().left(), Choice::plus(c.left().right(), c.right()));
    }
  }
  if (c.kind() == Choice::Kind::Out) return c;
  Choice l = rewrite_choice(c.left(), ax, counter, target, hit);
  Choice r = rewrite_choice(c.right(), ax, counter, target, hit);
  return Choice::plus(l, r);
}

inline Reaction rewrite_reaction(const Reaction& r, LocalAxiom ax, std::size_t& counter, std::size_t target,
                                 bool& hit) {
  const std::size_t me = counter++;
  if (me == target) {
    if (ax == LocalAxiom::ReactionUnit) {
      hit = true;
      return Reaction::par(r, Reaction::zero());
    }
    if (ax == LocalAxiom::ReactionComm && r.kind() == Reaction::Kind::Par) {
      hit = true;
      return Reaction::par(r.right(), r.left());
    }
  }
  switch (r.kind()) {
    case Reaction::Kind::Zero: return r;
    case Reaction::Kind::Of: return Reaction::of(rewrite_choice(r.choice(), ax, counter, target, hit));
    case Reaction::Kind::Par: {
      Reaction a = rewrite_reaction(r.left(), ax, counter, target, hit);
      Reaction b = rewrite_reaction(r.right(), ax, counter, target, hit);
      return Reaction::par(a, b);
    }
  }
  return r;
}

inline Definition rewrite_definition(const Definition& d, LocalAxiom ax, std::size_t& counter, std::size_t target,
                                     bool& hit) {
  const std::size_t me = counter++;
  if (me == target) {
    switch (ax) {
      case LocalAxiom::ParUnit:
        hit = true;
        return Definition::par(d, Definition());
      case LocalAxiom::ParComm:
        if (d.kind() != Definition::Kind::Par) break;
        hit = true;
        return Definition::par(d.right(), d.left());
      case LocalAxiom::ParAssoc:
        if (d.kind() == Definition::Kind::Par && d.left().kind() == Definition::Kind::Par) {
          hit = true;
          return Definition::par(d.left().left(), Definition::par(d.left().right(), d.right()));
        }
        break;
      case LocalAxiom::Absorb:
        if (d.kind() != Definition::Kind::Input) break;
        hit = true;
        return Definition::par(d, d);
      default: break;
    }
  }
  switch (d.kind()) {
    case Definition::Kind::Input:
      return Definition::input(d.cond(), d.label(), d.dir(), rewrite_reaction(d.cont(), ax, counter, target, hit));
    case Definition::Kind::Of: return Definition::of(rewrite_reaction(d.reaction(), ax, counter, target, hit));
    case Definition::Kind::Par: {
      Definition a = rewrite_definition(d.left(), ax, counter, target, hit);
      Definition b = rewrite_definition(d.right(), ax, counter, target, hit);
      return Definition::par(a, b);
    }
  }
  return d;
}

}  // namespace detail

inline bool apply_local_axiom(const Definition& d, LocalAxiom ax, Gen& g, Definition& out) {
  // Upper bound on the number of positions; misses are retried.
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::size_t counter = 0;
    bool hit = false;
    const std::size_t target = g.below(64);
    Definition e = detail::rewrite_definition(d, ax, counter, target, hit);
    if (hit) {
      out = e;
      return true;
    }
  }
  return false;
}

}  // namespace gridproto::testing

#endif  // GRIDPROTO_TESTS_TEST_SUPPORT_HPP_

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

#ifndef GRIDPROTO_TESTS_PROPERTIES_HPP_
#define GRIDPROTO_TESTS_PROPERTIES_HPP_

// Randomized law checks. Each suite runs a fixed number of seeded cases and
// reports the first failure it sees.

#include <map>
#include <string>

#include "test_support.hpp"

namespace gridproto::testing {

struct PropertyResult {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t exercised = 0;  // cases where the law was applied non-trivially
  std::string first_failure;

  void fail(const std::string& msg) {
    if (failures++ == 0) first_failure = msg;
  }
  bool ok() const { return failures == 0; }
};

inline constexpr std::size_t kPropertyCases = 500;

inline std::string reactive_key(const Protocol& p) { return to_string(canonicalize(project(p, ProjectionRole::reactive()))); }
inline std::string enabling_key(const Protocol& p) {
  return to_string(canonicalize(project(p, ProjectionRole::enabling())));
}

// Reactive and enabling projections are preserved along every explored edge.
inline PropertyResult projection_preserved_under_reduction(std::uint64_t seed = 11,
                                                           std::size_t cases = kPropertyCases) {
  PropertyResult r;
  Gen g(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const NetworkState delta = g.network(2 + g.below(3));
    const Protocol p = g.active_protocol(delta.ids(), 3);
    const EffectRegistry fx = g.effects(p);
    const StateGraph graph = explore({delta, p}, fx, {3, 2000});
    ++r.cases;
    if (!graph.edges.empty()) ++r.exercised;
    for (const auto& e : graph.edges) {
      const Protocol& from = graph.states[e.from].protocol;
      const Protocol& to = graph.states[e.to].protocol;
      if (reactive_key(from) != reactive_key(to) || enabling_key(from) != enabling_key(to)) {
        r.fail("case " + std::to_string(c) + ": " + to_string(from) + " --" + format_step(e.info) + "--> " +
               to_string(to));
        break;
      }
    }
  }
  return r;
}

// Projection of a recursion equals projection of its unfolding, for every
// role.
inline PropertyResult projection_invariant_under_unfolding(std::uint64_t seed = 12,
                                                           std::size_t cases = kPropertyCases) {
  PropertyResult r;
  Gen g(seed);
  const NodeId someone("1");
  for (std::size_t c = 0; c < cases; ++c) {
    const Protocol p = g.recursion(3);
    const Protocol u = unfold(p);
    ++r.cases;
    ++r.exercised;
    for (const auto& role : {ProjectionRole::reactive(), ProjectionRole::enabling(), ProjectionRole::active_of(someone)}) {
      const std::string a = oracle_definition(canonicalize(project(p, role)));
      const std::string b = oracle_definition(canonicalize(project(u, role)));
      if (a != b) {
        r.fail("case " + std::to_string(c) + ": " + to_string(p));
        break;
      }
    }
  }
  return r;
}

// Canonical forms are invariant under a single axiom application, on both the
// global and the distributed side, and agree with the oracle normal form.
inline PropertyResult canonical_form_invariant_under_axioms(std::uint64_t seed = 13,
                                                            std::size_t cases = kPropertyCases) {
  PropertyResult r;
  Gen g(seed);
  const std::vector<NodeId> ids{NodeId("1"), NodeId("2"), NodeId("3")};
  for (std::size_t c = 0; c < cases; ++c) {
    ++r.cases;
    // Global side.
    const Protocol p = g.active_protocol(ids, 3);
    const auto ax = static_cast<GlobalAxiom>(c % kGlobalAxioms);
    Protocol q;
    bool applied = false;
    if (apply_global_axiom(p, ax, g, q)) {
      applied = true;
      if (canonical_key(p) != canonical_key(q)) {
        r.fail(std::string(axiom_name(ax)) + " changes the key of " + to_string(p) + " => " + to_string(q));
        continue;
      }
      if (reactive_key(p) != reactive_key(q) || enabling_key(p) != enabling_key(q)) {
        r.fail(std::string(axiom_name(ax)) + " changes the projection of " + to_string(p));
        continue;
      }
    }
    // Distributed side.
    const Definition d = g.definition(3);
    const auto lax = static_cast<LocalAxiom>(c % kLocalAxioms);
    Definition e;
    if (apply_local_axiom(d, lax, g, e)) {
      applied = true;
      if (canonical_key(d) != canonical_key(e) || oracle_definition(d) != oracle_definition(e)) {
        r.fail("local axiom " + std::to_string(static_cast<int>(lax)) + " on " + to_string(d) + " => " +
               to_string(e));
        continue;
      }
      if (!(canonicalize(canonicalize(d)) == canonicalize(d))) {
        r.fail("canonicalize is not idempotent on " + to_string(d));
        continue;
      }
    }
    if (applied) ++r.exercised;
    // Library equality decides exactly the oracle's equality.
    const Definition other = g.definition(2);
    const bool lib_eq = canonical_key(d) == canonical_key(other);
    const bool oracle_eq = oracle_definition(d) == oracle_definition(other);
    if (lib_eq != oracle_eq) r.fail("canonical equality disagrees with oracle: " + to_string(d) + " vs " + to_string(other));
  }
  return r;
}

// Reactive projections have pairwise-distinct input labels, one per action.
inline PropertyResult input_uniqueness(std::uint64_t seed = 14, std::size_t cases = kPropertyCases) {
  PropertyResult r;
  Gen g(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const Protocol p = g.static_protocol(4);
    ++r.cases;
    const DefinitionParts parts = split(canonicalize(project(p, ProjectionRole::reactive())));
    std::set<ActionLabel> seen;
    bool dup = false;
    for (const auto& in : parts.inputs) dup |= !seen.insert(in.label).second;
    const EffectRegistry all = g.effects(p);
    std::set<ActionLabel> labels;
    for (const auto& [label, _] : all.entries()) labels.insert(label);
    if (!labels.empty()) ++r.exercised;
    if (dup || seen != labels || !parts.choices.empty()) r.fail("case " + std::to_string(c) + ": " + to_string(p));
  }
  return r;
}

// decompose/recompose: the parts match an independently computed flattening
// and recomposition is congruent to the original.
namespace detail {

inline void oracle_components(const Protocol& p, std::vector<std::string> actives, std::vector<std::string>& out) {
  switch (p.kind()) {
    case Protocol::Kind::Nil: return;
    case Protocol::Kind::Active:
      actives.push_back(p.id().str());
      oracle_components(p.body(), std::move(actives), out);
      return;
    case Protocol::Kind::Fork:
      oracle_components(p.left(), actives, out);
      oracle_components(p.right(), actives, out);
      return;
    case Protocol::Kind::Rec:
      if (!actives.empty()) {
        oracle_components(unfold(p), std::move(actives), out);
        return;
      }
      [[fallthrough]];
    default: {
      std::sort(actives.begin(), actives.end());
      std::string s;
      for (const auto& a : actives) s += "<" + a + ">";
      out.push_back(s + canonical_key(p));
      return;
    }
  }
}

}  // namespace detail

inline PropertyResult normal_form_congruence(std::uint64_t seed = 15, std::size_t cases = kPropertyCases) {
  PropertyResult r;
  Gen g(seed);
  for (std::size_t c = 0; c < cases; ++c) {
    const NetworkState delta = g.network(3);
    Protocol p = g.active_protocol(delta.ids(), 3);
    // Scramble with a few axioms so the input is not already flat.
    for (int i = 0; i < 3; ++i) {
      Protocol q;
      if (apply_global_axiom(p, static_cast<GlobalAxiom>(g.below(kGlobalAxioms)), g, q)) p = q;
    }
    ++r.cases;
    const auto parts = decompose(p);
    if (!parts.empty()) ++r.exercised;
    std::vector<std::string> got;
    for (const auto& part : parts) {
      std::string s;
      for (const auto& a : part.actives) s += "<" + a.str() + ">";
      got.push_back(s + canonical_key(part.term));
    }
    std::vector<std::string> want;
    detail::oracle_components(p, {}, want);
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    const Protocol back = recompose(parts);
    const EffectRegistry fx = g.effects(p);
    if (got != want) {
      r.fail("decompose disagrees with oracle on " + to_string(p));
    } else if (canonical_key(back) != canonical_key(p)) {
      r.fail("recompose is not congruent on " + to_string(p));
    } else if (keys_of(successors({delta, back}, fx)) != keys_of(successors({delta, p}, fx))) {
      r.fail("recompose changes the successors of " + to_string(p));
    }
  }
  return r;
}

}  // namespace gridproto::testing

#endif  // GRIDPROTO_TESTS_PROPERTIES_HPP_

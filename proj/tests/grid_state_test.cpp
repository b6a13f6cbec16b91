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

#include <doctest.h>

#include "gridproto/errors.hpp"
#include "test_support.hpp"

using namespace gridproto;
using namespace gridproto::testing;

namespace {

NetworkState fig1() { return recovery_scenario().initial.delta; }

EffectRegistry recovery_effects() { return recovery_scenario().effects; }

}  // namespace

TEST_CASE("eval on the scenario registers") {
  const NodeState s3 = reg("3", "2", 1, {"2", "4"}, 1, 1, 1);
  const NodeState s4 = reg("4", "3", 0, {"3", "6"}, 1, 0, 0);
  const NodeState s6 = reg("6", "7", 1, {"4", "5", "7"}, 2, 0, 0);
  CHECK(eval(s3, cond("e>0")));
  CHECK(eval(s4, cond("t==0")));
  CHECK(eval(s3, cond("true")));
  CHECK(eval(s4, cond("true")));
  CHECK(eval(s6, cond("k>a and e==0")));
  CHECK_FALSE(eval(s3, cond("k>a and e==0")));
  CHECK_FALSE(eval(s4, cond("e>0")));
  CHECK_FALSE(eval(s3, cond("false")));
  CHECK(eval(s4, cond("not (e>0)")));
}

TEST_CASE("parent comparisons") {
  const NodeState ps = reg("PS", "inf", 1, {"1"}, 1, 1, 1);
  const NodeState s4 = reg("4", "3", 0, {"3", "6"}, 1, 0, 0);
  const NodeState iso = reg("9", "z", 1, {}, 0, 0, 0);
  CHECK(eval(ps, cond("parent==inf")));
  CHECK_FALSE(eval(ps, cond("parent!=inf")));
  CHECK(eval(s4, cond("parent==3")));
  CHECK(eval(s4, cond("parent!=inf")));
  CHECK(eval(iso, cond("parent==z")));
  CHECK_FALSE(eval(s4, cond("parent==z")));
  CHECK_THROWS_AS(Condition::compare(Expr::of_field(Field::Parent), CmpOp::Lt, Expr::node(nid("3"))),
                  std::invalid_argument);
  CHECK_THROWS_AS(Condition::compare(Expr::of_field(Field::E), CmpOp::Eq, Expr::top()), std::invalid_argument);
}

TEST_CASE("condition printing is stable and precedence aware") {
  CHECK(cond("e>0 or t==0").to_string() == "e>0 or t==0");
  CHECK(cond("(e>0 or t==0) and k>a").to_string() == "(e>0 or t==0) and k>a");
  CHECK(cond("e>0 or t==0 and k>a").to_string() == "e>0 or t==0 and k>a");
  CHECK(cond("not (e>0)").to_string() == "not e>0");
  CHECK(cond("e=1") == cond("e==1"));
}

TEST_CASE("direction resolution on the scenario network") {
  const NetworkState d = fig1();
  const TargetSet up = resolve_direction(Direction::Parent, d, nid("4"));
  CHECK_FALSE(up.self);
  CHECK(up.nodes == std::vector<NodeId>{nid("3")});
  CHECK(resolve_direction(Direction::Neighbor, d, nid("4")).nodes == std::vector<NodeId>{nid("3"), nid("6")});
  CHECK(resolve_direction(Direction::Self, d, nid("5")).self);
  CHECK(resolve_direction(Direction::Self, d, nid("5")).nodes.empty());
  CHECK(resolve_direction(Direction::Children, d, nid("4")).nodes.empty());
  CHECK(resolve_direction(Direction::Children, d, nid("1")).nodes == std::vector<NodeId>{nid("2"), nid("5")});
  CHECK(resolve_direction(Direction::Parent, d, nid("PS")).nodes.empty());
  CHECK_THROWS_AS(resolve_direction(Direction::Parent, d, nid("nope")), UnknownNode);
}

TEST_CASE("children and parent are coherent") {
  Gen g(3);
  for (int c = 0; c < 100; ++c) {
    const NetworkState d = g.network(2 + g.below(4));
    for (const auto& id : d.ids()) {
      const auto kids = resolve_direction(Direction::Children, d, id).nodes;
      for (const auto& other : d.ids()) {
        const auto up = resolve_direction(Direction::Parent, d, other).nodes;
        const bool is_child = std::find(kids.begin(), kids.end(), other) != kids.end();
        CHECK(is_child == (up == std::vector<NodeId>{id}));
      }
    }
  }
}

TEST_CASE("Recover side effects") {
  const NetworkState d = fig1();
  const NetworkState after = apply_update(d, nid("4"), nid("3"), lbl("Recover"), recovery_effects());
  CHECK(after.at(nid("4")) == reg("4", "z", 0, {"6"}, 1, 0, 0));
  CHECK(after.at(nid("3")) == reg("3", "2", 1, {"2"}, 0, 0, 0));
  for (const auto& id : d.ids()) {
    if (id != nid("3") && id != nid("4")) CHECK(after.at(id) == d.at(id));
  }
}

TEST_CASE("Power side effects") {
  const NetworkState d = fig1();
  const NetworkState after = apply_update(d, nid("4"), nid("6"), lbl("Power"), recovery_effects());
  CHECK(after.at(nid("4")).parent == ParentRef::station(nid("6")));
  CHECK(after.at(nid("6")).a == 1);
  CHECK(after.at(nid("6")).k == 2);
}

TEST_CASE("empty effects leave the state alone") {
  const NetworkState d = fig1();
  CHECK(apply_update(d, nid("1"), nid("2"), lbl("Locate"), recovery_effects()) == d);
  CHECK(apply_update(d, nid("1"), nid("2"), lbl("Unknown"), EffectRegistry{}) == d);
}

TEST_CASE("counter underflow and invariant violations are errors") {
  const NetworkState d = fig1();
  CHECK_THROWS_AS(apply_update(d, nid("5"), nid("6"), lbl("Recover"), recovery_effects()), NegativeCounter);
  EffectRegistry reg_up;
  reg_up.set(lbl("Grow"), EffectSpec{{}, {Assignment::increment(Field::A)}});
  // a == k at node 2.
  CHECK_THROWS_AS(apply_update(d, nid("1"), nid("2"), lbl("Grow"), reg_up), InvariantViolation);
  CHECK_THROWS_AS(NetworkState({reg("1", "inf", 1, {"1"}, 0, 0, 0)}), InvariantViolation);
  CHECK_THROWS_AS(NetworkState({reg("1", "inf", 1, {}, 1, 2, 0)}), InvariantViolation);
  CHECK_THROWS_AS(NetworkState({reg("1", "inf", 1, {}, 1, 0, 2)}), InvariantViolation);
  CHECK_THROWS_AS(reg("1", "inf", 2, {}, 0, 0, 0).check(), InvariantViolation);
}

TEST_CASE("register printing") {
  CHECK(reg("3", "2", 1, {"2", "4"}, 1, 1, 1).to_string() == "<3,(2,1),{2,4},1,1,1>");
  CHECK(reg("PS", "inf", 1, {"1"}, 1, 1, 1).to_string() == "<PS,(inf,1),{1},1,1,1>");
  CHECK(reg("9", "z", 0, {}, 0, 0, 0).to_string() == "<9,(z,0),{},0,0,0>");
}

TEST_CASE("node ids order numerically") {
  CHECK(nid("2") < nid("10"));
  CHECK(nid("9") < nid("PS"));
  CHECK(nid("BS") < nid("PS"));
}

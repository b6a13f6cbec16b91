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

#include "properties.hpp"

using namespace gridproto::testing;

namespace {

void require_clean(const PropertyResult& r) {
  INFO(r.first_failure);
  CHECK(r.cases >= kPropertyCases);
  CHECK(r.failures == 0);
  CHECK(r.exercised * 2 >= r.cases);
}

}  // namespace

TEST_CASE("projections are preserved by reduction") { require_clean(projection_preserved_under_reduction()); }

TEST_CASE("projection is invariant under unfolding") { require_clean(projection_invariant_under_unfolding()); }

TEST_CASE("canonical forms are invariant under single axioms") {
  require_clean(canonical_form_invariant_under_axioms());
}

TEST_CASE("reactive projections have unique input labels") { require_clean(input_uniqueness()); }

TEST_CASE("decompose and recompose are congruent") { require_clean(normal_form_congruence()); }

TEST_CASE("generated protocols are well formed") {
  Gen g(99);
  for (int c = 0; c < 500; ++c) {
    const auto p = g.active_protocol({gridproto::NodeId("1"), gridproto::NodeId("2")}, 3);
    INFO(gridproto::to_string(p));
    CHECK(gridproto::well_formed(p).empty());
  }
}

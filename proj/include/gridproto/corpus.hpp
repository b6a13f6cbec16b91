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

#ifndef GRIDPROTO_CORPUS_HPP_
#define GRIDPROTO_CORPUS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "gridproto/formats.hpp"
#include "gridproto/global_semantics.hpp"

namespace gridproto {

/// A protocol, a network and its side effects, loaded from text.
struct Scenario {
  std::string protocol_text;
  std::string network_text;
  std::string effects_text;
  ProtocolFile protocols;
  Configuration initial;
  EffectRegistry effects;
};

/// Parses the three files. Throws the parser errors.
Scenario load_scenario(std::string_view protocol, std::string_view network, std::string_view effects);

/// Fault management on the two-source grid: PS feeds 1-5, BS feeds 7 and 6,
/// and the link between 3 and 4 is broken.
Scenario recovery_scenario();

/// The single-recursion Simple protocol on the chain 1 - 2 - 3 with the
/// link into 3 broken.
Scenario simple_scenario();

/// Expected end state of the recovery scenario: 4 fed by 6, 3 drained and
/// cut off from 4, 6 serving one more output. Returns one message per
/// failed check; empty when all hold.
std::vector<std::string> recovery_outcome_failures(const NetworkState& initial, const NetworkState& final);

}  // namespace gridproto

#endif  // GRIDPROTO_CORPUS_HPP_

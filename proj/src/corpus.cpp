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

#include "gridproto/corpus.hpp"

#include "corpus_data.hpp"

namespace gridproto {

Scenario load_scenario(std::string_view protocol, std::string_view network, std::string_view effects) {
  Scenario s;
  s.protocol_text = std::string(protocol);
  s.network_text = std::string(network);
  s.effects_text = std::string(effects);
  s.protocols = parse_protocol_file(protocol);
  s.initial = Configuration{parse_network(network), s.protocols.main};
  s.effects = parse_effects(effects);
  return s;
}

Scenario recovery_scenario() {
  return load_scenario(corpus_data::kRecoveryGp, corpus_data::kFig1Net, corpus_data::kRecoveryFx);
}

Scenario simple_scenario() {
  return load_scenario(corpus_data::kSimpleGp, corpus_data::kSimple3Net, corpus_data::kSimpleFx);
}

std::vector<std::string> recovery_outcome_failures(const NetworkState& initial, const NetworkState& final) {
  std::vector<std::string> out;
  const NodeId n3("3");
  const NodeId n4("4");
  const NodeId n6("6");
  const NodeState& s3 = final.at(n3);
  const NodeState& s4 = final.at(n4);
  const NodeState& s6 = final.at(n6);
  if (!(s4.parent == ParentRef::station(n6))) out.push_back("node 4 is fed by " + s4.parent.to_string() + ", not 6");
  if (s3.e != 0 || s3.a != 0 || s3.k != 0) {
    out.push_back("node 3 has e=" + std::to_string(s3.e) + " a=" + std::to_string(s3.a) + " k=" + std::to_string(s3.k));
  }
  if (s3.neighbors.count(n4) != 0) out.push_back("node 4 is still a neighbour of 3");
  if (s4.neighbors.count(n3) != 0) out.push_back("node 3 is still a neighbour of 4");
  if (s6.a != initial.at(n6).a + 1) out.push_back("node 6 serves a=" + std::to_string(s6.a) + " outputs");
  return out;
}

}  // namespace gridproto

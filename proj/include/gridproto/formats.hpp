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

#ifndef GRIDPROTO_FORMATS_HPP_
#define GRIDPROTO_FORMATS_HPP_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gridproto/dist_core.hpp"
#include "gridproto/global_ast.hpp"
#include "gridproto/global_semantics.hpp"
#include "gridproto/grid_state.hpp"

namespace gridproto {

// ---------------------------------------------------------------------------
// Protocols (.gp)
//
//   file   ::= (NAME '=' expr ';'?)*
//   expr   ::= sum ('|' sum)*
//   sum    ::= prefix ('+' prefix)*
//   prefix ::= '0' | NAME | VAR | '(' expr ')' | 'rec' VAR '.' prefix
//            | '<' ID '>' prefix
//            | LABEL DIR ('[o:' cond ']')? ('[i:' cond ']')? '.' prefix
//   DIR    ::= '*' | '^' | '>' | '@'
//
// Names refer to earlier definitions and are inlined. The protocol of the
// file is the definition called `main`, or the last one. Comments start
// with `#` or `//`.

struct ProtocolFile {
  std::vector<std::string> names;  // in definition order
  std::map<std::string, Protocol> definitions;
  Protocol main;
};

/// Throws SyntaxError, UnknownReference.
ProtocolFile parse_protocol_file(std::string_view text);
Protocol parse_protocol(std::string_view text);
std::string print_protocol(const Protocol& p);

/// `e>0 or t==0`, `parent==z`, `not (k<=a)`, `true`. `=` is accepted for
/// `==`, `i` for `parent`. Throws SyntaxError.
Condition parse_condition(std::string_view text);

// ---------------------------------------------------------------------------
// Networks (.net), a JSON document:
//   {"nodes": [{"id": 3, "parent": 2, "t": 1, "neighbors": [2, 4],
//               "k": 1, "a": 1, "e": 1}, ...]}
// `parent` is a node id, "z" (disconnected) or "inf" (primary source).

/// Throws SyntaxError, InvariantViolation.
NetworkState parse_network(std::string_view text);
std::string print_network(const NetworkState& delta);

// ---------------------------------------------------------------------------
// Effects (.fx)
//
//   effect Recover {
//     enabler { parent := z; neighbors -= other; }
//     reactor { e -= 1; a -= 1; k -= 1; neighbors -= other; }
//   }

/// Throws SyntaxError.
EffectRegistry parse_effects(std::string_view text);
std::string print_effects(const EffectRegistry& reg);

// ---------------------------------------------------------------------------
// Distributed definitions, e.g.
//   [e>0 or t==0]Locate*?.([e>0]Locate*! + [t==0]Recover^!) | [true]Recover^?.0

Definition parse_definition(std::string_view text);

// ---------------------------------------------------------------------------
// Traces and graphs

/// `broadcast PS [1] Locate`, `binary 4 [3] RecoverDone`, `local 4 [] End`.
std::string format_step(const StepInfo& s);
/// One step per line.
std::string format_trace(const Trace& t);
/// `state I depth D: DELTA ; PROTOCOL` lines, then `edge FROM TO STEP` lines.
std::string format_graph(const StateGraph& g);

}  // namespace gridproto

#endif  // GRIDPROTO_FORMATS_HPP_

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

#ifndef GRIDPROTO_TYPES_HPP_
#define GRIDPROTO_TYPES_HPP_

#include <compare>
#include <string>
#include <string_view>

namespace gridproto {

/// Identifier of a substation. Ids made only of digits order numerically,
/// and sort before alphanumeric ids.
class NodeId {
 public:
  NodeId() = default;
  explicit NodeId(std::string value);

  const std::string& str() const { return value_; }

  friend bool operator==(const NodeId&, const NodeId&) = default;
  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b);

 private:
  std::string value_;
};

/// Name of a synchronisation action (case-sensitive).
class ActionLabel {
 public:
  ActionLabel() = default;
  explicit ActionLabel(std::string name);

  const std::string& str() const { return name_; }

  friend bool operator==(const ActionLabel&, const ActionLabel&) = default;
  friend std::strong_ordering operator<=>(const ActionLabel&, const ActionLabel&) = default;

 private:
  std::string name_;
};

/// Recursion variable name.
class RecVar {
 public:
  RecVar() = default;
  explicit RecVar(std::string name);

  const std::string& str() const { return name_; }

  friend bool operator==(const RecVar&, const RecVar&) = default;
  friend std::strong_ordering operator<=>(const RecVar&, const RecVar&) = default;

 private:
  std::string name_;
};

/// Target of a synchronisation: all children, the parent, one neighbour,
/// or the enabler itself.
enum class Direction { Children, Parent, Neighbor, Self };

/// ASCII glyphs: `*` children, `^` parent, `>` neighbour, `@` self.
char glyph(Direction d);
bool direction_from_glyph(char c, Direction& out);
std::string_view direction_name(Direction d);

bool is_identifier(std::string_view s);

}  // namespace gridproto

#endif  // GRIDPROTO_TYPES_HPP_

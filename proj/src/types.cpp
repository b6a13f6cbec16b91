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

#include "gridproto/types.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "gridproto/errors.hpp"

namespace gridproto {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

std::string require_identifier(std::string s, const char* what) {
  if (!is_identifier(s)) {
    throw std::invalid_argument(std::string("invalid ") + what + " '" + s + "'");
  }
  return s;
}

}  // namespace

bool is_identifier(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
           return std::isalnum(c) != 0 || c == '_';
         });
}

NodeId::NodeId(std::string value) : value_(require_identifier(std::move(value), "node id")) {}

std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
  const bool da = all_digits(a.value_);
  const bool db = all_digits(b.value_);
  if (da != db) return da ? std::strong_ordering::less : std::strong_ordering::greater;
  if (da) {
    // Strip leading zeros so "007" and "7" still order by magnitude; ties
    // fall back to the raw text to keep the order total.
    auto strip = [](const std::string& s) {
      const auto pos = s.find_first_not_of('0');
      return pos == std::string::npos ? std::string("0") : s.substr(pos);
    };
    const std::string sa = strip(a.value_);
    const std::string sb = strip(b.value_);
    if (sa.size() != sb.size()) return sa.size() <=> sb.size();
    if (auto c = sa <=> sb; c != 0) return c;
  }
  return a.value_ <=> b.value_;
}

ActionLabel::ActionLabel(std::string name) : name_(require_identifier(std::move(name), "action label")) {}

RecVar::RecVar(std::string name) : name_(require_identifier(std::move(name), "recursion variable")) {}

char glyph(Direction d) {
  switch (d) {
    case Direction::Children: return '*';
    case Direction::Parent: return '^';
    case Direction::Neighbor: return '>';
    case Direction::Self: return '@';
  }
  return '?';
}

bool direction_from_glyph(char c, Direction& out) {
  switch (c) {
    case '*': out = Direction::Children; return true;
    case '^': out = Direction::Parent; return true;
    case '>': out = Direction::Neighbor; return true;
    case '@': out = Direction::Self; return true;
    default: return false;
  }
}

std::string_view direction_name(Direction d) {
  switch (d) {
    case Direction::Children: return "children";
    case Direction::Parent: return "parent";
    case Direction::Neighbor: return "neighbor";
    case Direction::Self: return "self";
  }
  return "?";
}

SyntaxError::SyntaxError(const std::string& what, std::size_t line, std::size_t column)
    : Error(line == 0 ? what : std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

}  // namespace gridproto

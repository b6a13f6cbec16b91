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

#ifndef GRIDPROTO_ERRORS_HPP_
#define GRIDPROTO_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gridproto {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input text could not be parsed. Line and column are 1-based; line 0
/// means the position is unknown.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A name in an input file refers to nothing defined before it.
class UnknownReference : public Error {
 public:
  using Error::Error;
};

/// A register or network state breaks one of its structural invariants.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

/// A side effect decremented a counter below zero.
class NegativeCounter : public Error {
 public:
  using Error::Error;
};

class NotARecursion : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

/// Projection met a construct outside its supported fragment.
class ProjectionError : public Error {
 public:
  using Error::Error;
};

class DuplicateNodeId : public Error {
 public:
  using Error::Error;
};

class StateBudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace gridproto

#endif  // GRIDPROTO_ERRORS_HPP_

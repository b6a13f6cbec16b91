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

#include "gridproto/formats.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gridproto/errors.hpp"

namespace gridproto {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t pos) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < pos && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

/// Scannerless cursor over the input; whitespace and comments are skipped
/// before every token.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) != 0) {
        ++pos_;
      } else if (c == '#' || (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool accept(std::string_view tok) {
    skip();
    if (text_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  void expect(std::string_view tok) {
    if (!accept(tok)) fail("expected '" + std::string(tok) + "'");
  }

  bool peek_identifier() {
    skip();
    return pos_ < text_.size() && ident_char(text_[pos_]);
  }

  /// Reads an identifier without consuming it.
  std::string peek_word() {
    skip();
    std::size_t end = pos_;
    while (end < text_.size() && ident_char(text_[end])) ++end;
    return std::string(text_.substr(pos_, end - pos_));
  }

  bool accept_word(std::string_view w) {
    if (peek_word() != w) return false;
    pos_ += w.size();
    return true;
  }

  std::string identifier(const char* what) {
    std::string w = peek_word();
    if (w.empty()) fail(std::string("expected ") + what);
    pos_ += w.size();
    return w;
  }

  std::size_t position() {
    skip();
    return pos_;
  }

  [[noreturn]] void fail(const std::string& msg) { fail_at(position(), msg); }

  std::pair<std::size_t, std::size_t> where(std::size_t pos) const { return line_col(text_, pos); }

  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg) const {
    auto [line, col] = line_col(text_, pos);
    throw SyntaxError(msg, line, col);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Conditions

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Expr parse_operand(Cursor& in) {
  const std::size_t at = in.position();
  const std::string w = in.identifier("a field, number or node id");
  if (all_digits(w)) {
    if (w.size() > 19) in.fail_at(at, "number too large");
    return Expr::natural(std::stoull(w));
  }
  if (w == "t") return Expr::of_field(Field::T);
  if (w == "k") return Expr::of_field(Field::K);
  if (w == "a") return Expr::of_field(Field::A);
  if (w == "e") return Expr::of_field(Field::E);
  if (w == "parent" || w == "i") return Expr::of_field(Field::Parent);
  if (w == "z") return Expr::disconnected();
  if (w == "inf") return Expr::top();
  return Expr::node(NodeId(w));
}

CmpOp parse_cmp(Cursor& in) {
  if (in.accept("==")) return CmpOp::Eq;
  if (in.accept("!=")) return CmpOp::Ne;
  if (in.accept("<=")) return CmpOp::Le;
  if (in.accept(">=")) return CmpOp::Ge;
  if (in.accept("=")) return CmpOp::Eq;
  if (in.accept("<")) return CmpOp::Lt;
  if (in.accept(">")) return CmpOp::Gt;
  in.fail("expected a comparison operator");
}

Condition parse_or(Cursor& in);

Condition parse_atom(Cursor& in) {
  if (in.accept("(")) {
    Condition c = parse_or(in);
    in.expect(")");
    return c;
  }
  if (in.accept_word("true")) return Condition::truth();
  if (in.accept_word("false")) return Condition::falsity();
  const std::size_t at = in.position();
  Expr lhs = parse_operand(in);
  CmpOp op = parse_cmp(in);
  Expr rhs = parse_operand(in);
  try {
    return Condition::compare(std::move(lhs), op, std::move(rhs));
  } catch (const std::invalid_argument& e) {
    in.fail_at(at, e.what());
  }
}

Condition parse_not(Cursor& in) {
  if (in.accept_word("not")) return Condition::negate(parse_not(in));
  return parse_atom(in);
}

Condition parse_and(Cursor& in) {
  Condition c = parse_not(in);
  while (in.accept_word("and")) c = Condition::conj(std::move(c), parse_not(in));
  return c;
}

Condition parse_or(Cursor& in) {
  Condition c = parse_and(in);
  while (in.accept_word("or")) c = Condition::disj(std::move(c), parse_and(in));
  return c;
}

Direction parse_dir(Cursor& in) {
  Direction d;
  const char c = in.peek();
  if (!direction_from_glyph(c, d)) in.fail("expected a direction (*, ^, > or @)");
  in.accept(std::string_view(&c, 1));
  return d;
}

bool dir_follows(Cursor& in) {
  Direction d;
  return direction_from_glyph(in.peek(), d);
}

// ---------------------------------------------------------------------------
// Protocols

class ProtocolParser {
 public:
  explicit ProtocolParser(std::string_view text) : in_(text) {}

  ProtocolFile file() {
    ProtocolFile out;
    defs_ = &out.definitions;
    while (!in_.at_end()) {
      const std::size_t at = in_.position();
      const std::string name = in_.identifier("a definition name");
      if (out.definitions.count(name) != 0) in_.fail_at(at, "redefinition of " + name);
      in_.expect("=");
      Protocol p = expr();
      in_.accept(";");
      out.names.push_back(name);
      out.definitions.emplace(name, p);
    }
    if (out.names.empty()) in_.fail("empty protocol file");
    auto it = out.definitions.find("main");
    out.main = it != out.definitions.end() ? it->second : out.definitions.at(out.names.back());
    return out;
  }

  Protocol single() {
    Protocol p = expr();
    if (!in_.at_end()) in_.fail("unexpected input after protocol");
    return p;
  }

 private:
  Protocol expr() {
    Protocol p = sum();
    while (in_.accept("|")) p = Protocol::fork(std::move(p), sum());
    return p;
  }

  Protocol sum() {
    const std::size_t at = in_.position();
    Protocol first = prefix();
    if (in_.peek() != '+') return first;
    std::vector<SyncAction> branches;
    auto absorb = [&](const Protocol& p, std::size_t pos) {
      if (p.kind() != Protocol::Kind::Sum) in_.fail_at(pos, "summation operands must be actions");
      branches.insert(branches.end(), p.branches().begin(), p.branches().end());
    };
    absorb(first, at);
    while (in_.accept("+")) {
      const std::size_t pos = in_.position();
      absorb(prefix(), pos);
    }
    return Protocol::sum(std::move(branches));
  }

  Protocol prefix() {
    if (in_.accept("(")) {
      Protocol p = expr();
      in_.expect(")");
      return p;
    }
    if (in_.accept("<")) {
      NodeId id(in_.identifier("a node id"));
      in_.expect(">");
      return Protocol::active(std::move(id), prefix());
    }
    const std::size_t at = in_.position();
    const std::string w = in_.identifier("a protocol");
    if (dir_follows(in_)) return action(w);
    if (w == "0") return Protocol::nil();
    if (w == "rec") {
      RecVar x(in_.identifier("a recursion variable"));
      in_.expect(".");
      bound_.push_back(x);
      Protocol body = prefix();
      bound_.pop_back();
      return Protocol::rec(std::move(x), std::move(body));
    }
    if (std::find(bound_.begin(), bound_.end(), RecVar(w)) != bound_.end()) return Protocol::var(RecVar(w));
    if (defs_ != nullptr) {
      auto it = defs_->find(w);
      if (it != defs_->end()) return it->second;
    }
    auto [line, col] = in_.where(at);
    throw UnknownReference(std::to_string(line) + ":" + std::to_string(col) + ": unknown name '" + w + "'");
  }

  Protocol action(const std::string& label) {
    SyncAction a{ActionLabel(label), parse_dir(in_), Condition::truth(), Condition::truth(), Protocol::nil()};
    if (in_.accept("[")) {
      if (in_.accept_word("o")) {
        in_.expect(":");
        a.out_cond = parse_or(in_);
        in_.expect("]");
        if (in_.accept("[")) {
          if (!in_.accept_word("i")) in_.fail("expected 'i:'");
          in_.expect(":");
          a.in_cond = parse_or(in_);
          in_.expect("]");
        }
      } else if (in_.accept_word("i")) {
        in_.expect(":");
        a.in_cond = parse_or(in_);
        in_.expect("]");
      } else {
        in_.fail("expected 'o:' or 'i:'");
      }
    }
    in_.expect(".");
    a.cont = prefix();
    return Protocol::action(std::move(a));
  }

  Cursor in_;
  std::vector<RecVar> bound_;
  const std::map<std::string, Protocol>* defs_ = nullptr;
};

}  // namespace

ProtocolFile parse_protocol_file(std::string_view text) { return ProtocolParser(text).file(); }

Protocol parse_protocol(std::string_view text) { return ProtocolParser(text).single(); }

std::string print_protocol(const Protocol& p) { return to_string(p); }

Condition parse_condition(std::string_view text) {
  Cursor in(text);
  Condition c = parse_or(in);
  if (!in.at_end()) in.fail("unexpected input after condition");
  return c;
}

// ---------------------------------------------------------------------------
// Networks

namespace {

using nlohmann::json;

[[noreturn]] void bad_record(std::size_t index, const std::string& what) {
  throw SyntaxError("nodes[" + std::to_string(index) + "]: " + what, 0, 0);
}

NodeId json_id(const json& v, std::size_t index, const char* field) {
  std::string s;
  if (v.is_number_unsigned()) s = std::to_string(v.get<std::uint64_t>());
  else if (v.is_string()) s = v.get<std::string>();
  else bad_record(index, std::string(field) + " must be a node id");
  if (!is_identifier(s)) bad_record(index, std::string(field) + " '" + s + "' is not a valid node id");
  if (s == "z" || s == "inf") bad_record(index, std::string(field) + " '" + s + "' is reserved");
  return NodeId(s);
}

std::uint64_t json_nat(const json& rec, const char* field, std::size_t index) {
  if (!rec.contains(field)) bad_record(index, std::string("missing field '") + field + "'");
  const json& v = rec.at(field);
  if (!v.is_number_unsigned()) bad_record(index, std::string(field) + " must be a natural number");
  return v.get<std::uint64_t>();
}

nlohmann::ordered_json id_to_json(const NodeId& id) {
  const std::string& s = id.str();
  const bool numeric = all_digits(s) && (s.size() == 1 || s[0] != '0') && s.size() <= 19;
  if (numeric) return std::stoull(s);
  return s;
}

}  // namespace

NetworkState parse_network(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    // nlohmann prefixes its own position information; keep only the reason.
    if (auto p = msg.find("syntax error"); p != std::string::npos) msg = msg.substr(p);
    throw SyntaxError(msg, line, col);
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc.at("nodes").is_array()) {
    throw SyntaxError("expected an object with a \"nodes\" array", 1, 1);
  }
  std::vector<NodeState> nodes;
  std::size_t index = 0;
  for (const json& rec : doc.at("nodes")) {
    if (!rec.is_object()) bad_record(index, "expected an object");
    static const std::set<std::string> known{"id", "parent", "t", "neighbors", "k", "a", "e"};
    for (const auto& [key, _] : rec.items()) {
      if (known.count(key) == 0) bad_record(index, "unknown field '" + key + "'");
    }
    if (!rec.contains("id")) bad_record(index, "missing field 'id'");
    NodeState s;
    s.id = json_id(rec.at("id"), index, "id");
    if (!rec.contains("parent")) bad_record(index, "missing field 'parent'");
    const json& p = rec.at("parent");
    if (p == "z") s.parent = ParentRef::disconnected();
    else if (p == "inf") s.parent = ParentRef::top();
    else s.parent = ParentRef::station(json_id(p, index, "parent"));
    const std::uint64_t t = json_nat(rec, "t", index);
    if (t > 1) bad_record(index, "t must be 0 or 1");
    s.t = static_cast<unsigned>(t);
    if (rec.contains("neighbors")) {
      if (!rec.at("neighbors").is_array()) bad_record(index, "neighbors must be an array");
      for (const json& n : rec.at("neighbors")) s.neighbors.insert(json_id(n, index, "neighbor"));
    }
    s.k = json_nat(rec, "k", index);
    s.a = json_nat(rec, "a", index);
    s.e = json_nat(rec, "e", index);
    nodes.push_back(std::move(s));
    ++index;
  }
  if (nodes.empty()) throw SyntaxError("a network needs at least one node", 0, 0);
  return NetworkState(std::move(nodes));
}

std::string print_network(const NetworkState& delta) {
  std::string out = "{\n  \"nodes\": [\n";
  bool first = true;
  for (const auto& [id, s] : delta) {
    nlohmann::ordered_json rec;
    rec["id"] = id_to_json(id);
    switch (s.parent.kind()) {
      case ParentRef::Kind::Station: rec["parent"] = id_to_json(s.parent.id()); break;
      case ParentRef::Kind::Disconnected: rec["parent"] = "z"; break;
      case ParentRef::Kind::Top: rec["parent"] = "inf"; break;
    }
    rec["t"] = s.t;
    rec["neighbors"] = nlohmann::ordered_json::array();
    for (const auto& n : s.neighbors) rec["neighbors"].push_back(id_to_json(n));
    rec["k"] = s.k;
    rec["a"] = s.a;
    rec["e"] = s.e;
    if (!first) out += ",\n";
    out += "    " + rec.dump();
    first = false;
  }
  return out + "\n  ]\n}\n";
}

// ---------------------------------------------------------------------------
// Effects

namespace {

Field counter_field(const std::string& w) {
  if (w == "k") return Field::K;
  if (w == "a") return Field::A;
  return Field::E;
}

Assignment parse_assignment(Cursor& in) {
  const std::size_t at = in.position();
  const std::string target = in.identifier("an assignment");
  if (target == "parent") {
    in.expect(":=");
    if (in.accept_word("other")) return Assignment::set_parent_other();
    if (in.accept_word("z")) return Assignment::set_parent_disconnected();
    in.fail("expected 'other' or 'z'");
  }
  if (target == "t") {
    in.expect(":=");
    if (in.accept_word("0")) return Assignment::set_link(0);
    if (in.accept_word("1")) return Assignment::set_link(1);
    in.fail("expected 0 or 1");
  }
  if (target == "k" || target == "a" || target == "e") {
    const bool inc = in.accept("+=");
    if (!inc && !in.accept("-=")) in.fail("expected '+=' or '-='");
    if (!in.accept_word("1")) in.fail("counters change by 1");
    return inc ? Assignment::increment(counter_field(target)) : Assignment::decrement(counter_field(target));
  }
  if (target == "neighbors") {
    const bool add = in.accept("+=");
    if (!add && !in.accept("-=")) in.fail("expected '+=' or '-='");
    if (!in.accept_word("other")) in.fail("expected 'other'");
    return add ? Assignment::add_neighbor_other() : Assignment::remove_neighbor_other();
  }
  in.fail_at(at, "unknown assignment target '" + target + "'");
}

std::vector<Assignment> parse_block(Cursor& in) {
  in.expect("{");
  std::vector<Assignment> out;
  while (!in.accept("}")) {
    if (in.at_end()) in.fail("unterminated block");
    out.push_back(parse_assignment(in));
    in.accept(";");
  }
  return out;
}

void print_block(std::string& out, const char* name, const std::vector<Assignment>& as) {
  out += std::string("  ") + name + " {";
  for (const auto& a : as) out += " " + a.to_string() + ";";
  out += as.empty() ? "}\n" : " }\n";
}

}  // namespace

EffectRegistry parse_effects(std::string_view text) {
  Cursor in(text);
  EffectRegistry reg;
  std::set<ActionLabel> seen;
  while (!in.at_end()) {
    if (!in.accept_word("effect")) in.fail("expected 'effect'");
    const std::size_t at = in.position();
    ActionLabel label(in.identifier("an action label"));
    if (!seen.insert(label).second) in.fail_at(at, "duplicate effect for " + label.str());
    in.expect("{");
    EffectSpec spec;
    bool have_enabler = false;
    bool have_reactor = false;
    while (!in.accept("}")) {
      if (in.accept_word("enabler")) {
        if (have_enabler) in.fail("duplicate enabler block");
        spec.enabler = parse_block(in);
        have_enabler = true;
      } else if (in.accept_word("reactor")) {
        if (have_reactor) in.fail("duplicate reactor block");
        spec.reactor = parse_block(in);
        have_reactor = true;
      } else {
        in.fail("expected 'enabler', 'reactor' or '}'");
      }
    }
    reg.set(label, std::move(spec));
  }
  return reg;
}

std::string print_effects(const EffectRegistry& reg) {
  std::string out;
  for (const auto& [label, spec] : reg.entries()) {
    if (!out.empty()) out += "\n";
    out += "effect " + label.str() + " {\n";
    print_block(out, "enabler", spec.enabler);
    print_block(out, "reactor", spec.reactor);
    out += "}\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Definitions

namespace {

struct Prefix {
  Condition cond;
  ActionLabel label;
  Direction dir;
};

Prefix parse_guarded(Cursor& in) {
  in.expect("[");
  Condition c = parse_or(in);
  in.expect("]");
  ActionLabel f(in.identifier("an action label"));
  return {std::move(c), std::move(f), parse_dir(in)};
}

Choice parse_choice_rest(Cursor& in, Output first) {
  std::vector<Output> outs{std::move(first)};
  while (in.accept("+")) {
    Prefix p = parse_guarded(in);
    in.expect("!");
    outs.push_back({std::move(p.cond), std::move(p.label), p.dir});
  }
  return Choice::of(outs);
}

Reaction parse_reaction(Cursor& in);

Reaction parse_reaction_item(Cursor& in) {
  if (in.accept("(")) {
    Reaction r = parse_reaction(in);
    in.expect(")");
    return r;
  }
  if (in.accept_word("0")) return Reaction::zero();
  Prefix p = parse_guarded(in);
  in.expect("!");
  return Reaction::of(parse_choice_rest(in, {std::move(p.cond), std::move(p.label), p.dir}));
}

Reaction parse_reaction(Cursor& in) {
  Reaction r = parse_reaction_item(in);
  while (in.accept("|")) r = Reaction::par(std::move(r), parse_reaction_item(in));
  return r;
}

Reaction parse_continuation(Cursor& in) {
  if (in.accept("(")) {
    Reaction r = parse_reaction(in);
    in.expect(")");
    return r;
  }
  if (in.accept_word("0")) return Reaction::zero();
  Prefix p = parse_guarded(in);
  in.expect("!");
  return Reaction::of(Choice::out({std::move(p.cond), std::move(p.label), p.dir}));
}

Definition parse_def(Cursor& in);

Definition parse_def_item(Cursor& in) {
  if (in.accept("(")) {
    Definition d = parse_def(in);
    in.expect(")");
    return d;
  }
  if (in.accept_word("0")) return Definition();
  Prefix p = parse_guarded(in);
  if (in.accept("?")) {
    in.expect(".");
    return Definition::input(std::move(p.cond), std::move(p.label), p.dir, parse_continuation(in));
  }
  in.expect("!");
  return Definition::of(Reaction::of(parse_choice_rest(in, {std::move(p.cond), std::move(p.label), p.dir})));
}

Definition parse_def(Cursor& in) {
  Definition d = parse_def_item(in);
  while (in.accept("|")) d = Definition::par(std::move(d), parse_def_item(in));
  return d;
}

}  // namespace

Definition parse_definition(std::string_view text) {
  Cursor in(text);
  Definition d = parse_def(in);
  if (!in.at_end()) in.fail("unexpected input after definition");
  return d;
}

// ---------------------------------------------------------------------------
// Traces and graphs

std::string format_step(const StepInfo& s) {
  std::string kind = s.kind == StepKind::Binary ? "binary" : s.kind == StepKind::Broadcast ? "broadcast" : "local";
  std::string reactors;
  for (const auto& r : s.reactors) reactors += (reactors.empty() ? "" : ",") + r.str();
  return kind + " " + s.enabler.str() + " [" + reactors + "] " + s.label.str();
}

std::string format_trace(const Trace& t) {
  std::string out;
  for (const auto& s : t.steps) out += format_step(s) + "\n";
  return out;
}

std::string format_graph(const StateGraph& g) {
  std::ostringstream os;
  for (std::size_t i = 0; i < g.states.size(); ++i) {
    os << "state " << i << " depth " << g.depth[i] << ": " << g.states[i].delta.to_string() << " ; "
       << to_string(g.states[i].protocol) << "\n";
  }
  for (const auto& e : g.edges) os << "edge " << e.from << " " << e.to << " " << format_step(e.info) << "\n";
  return os.str();
}

}  // namespace gridproto

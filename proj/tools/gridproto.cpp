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

// Command line front end: checks, runs, explores, projects and verifies grid
// protocols.
//
// Exit codes: 0 success, 1 usage, 2 malformed input (parse errors and
// well-formedness violations), 3 semantic errors during execution,
// 4 verification failures.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gridproto/corpus.hpp"
#include "gridproto/correspondence.hpp"
#include "gridproto/errors.hpp"
#include "gridproto/formats.hpp"
#include "gridproto/global_semantics.hpp"
#include "gridproto/projection.hpp"

namespace {

using namespace gridproto;

constexpr int kExitInput = 2;
constexpr int kExitSemantics = 3;
constexpr int kExitVerification = 4;

struct InputError : Error {
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Prefixes parse errors with the file they came from.
template <typename F>
auto parse_file(const std::string& path, F parse) {
  const std::string text = read_file(path);
  try {
    return parse(text);
  } catch (const SyntaxError& e) {
    throw InputError(path + ":" + e.what());
  } catch (const UnknownReference& e) {
    throw InputError(path + ":" + e.what());
  } catch (const InvariantViolation& e) {
    throw InputError(path + ": " + e.what());
  }
}

Protocol load_protocol(const std::string& path) {
  Protocol p = parse_file(path, [](const std::string& t) { return parse_protocol_file(t).main; });
  auto violations = well_formed(p, CheckMode::Static);
  if (!violations.empty()) {
    std::string msg = path + ": protocol is not well formed:";
    for (const auto& v : violations) msg += " " + v.to_string();
    throw InputError(msg);
  }
  return p;
}

void collect_labels(const Protocol& p, std::set<ActionLabel>& out) {
  switch (p.kind()) {
    case Protocol::Kind::Nil:
    case Protocol::Kind::Var: return;
    case Protocol::Kind::Rec:
    case Protocol::Kind::Active: collect_labels(p.body(), out); return;
    case Protocol::Kind::Fork:
      collect_labels(p.left(), out);
      collect_labels(p.right(), out);
      return;
    case Protocol::Kind::Sum:
      for (const auto& b : p.branches()) {
        out.insert(b.label);
        collect_labels(b.cont, out);
      }
      return;
  }
}

struct Inputs {
  std::string net;
  std::string protocol;
  std::string effects;

  void add_to(CLI::App* cmd, bool need_effects = true) {
    cmd->add_option("--net", net, "Network state file (.net)")->required();
    cmd->add_option("--protocol", protocol, "Protocol file (.gp)")->required();
    auto* fx = cmd->add_option("--effects", effects, "Side effects file (.fx)");
    if (need_effects) fx->required();
  }

  Configuration configuration() const {
    NetworkState delta = parse_file(net, [](const std::string& t) { return parse_network(t); });
    Protocol p = load_protocol(protocol);
    return {std::move(delta), std::move(p)};
  }

  EffectRegistry registry(const Protocol& p) const {
    if (effects.empty()) return {};
    EffectRegistry reg = parse_file(effects, [](const std::string& t) { return parse_effects(t); });
    std::set<ActionLabel> labels;
    collect_labels(p, labels);
    for (const auto& [label, _] : reg.entries()) {
      if (labels.count(label) == 0) std::cerr << "warning: effect for unknown action " << label.str() << "\n";
    }
    return reg;
  }
};

std::size_t state_cap() {
  if (const char* env = std::getenv("GRIDPROTO_STATE_CAP")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw InputError(std::string("GRIDPROTO_STATE_CAP is not a number: ") + env);
    }
  }
  return kDefaultStateCap;
}

void print_state(const NetworkState& delta) {
  for (const auto& [_, s] : delta) std::cout << "  " << s.to_string() << "\n";
}

std::size_t ask(std::size_t n) {
  while (true) {
    std::cout << "choose [0-" << n - 1 << "]: " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) throw InputError("no choice given");
    try {
      const std::size_t i = std::stoul(line);
      if (i < n) return i;
    } catch (const std::exception&) {
    }
  }
}

// ---------------------------------------------------------------------------

int cmd_check(const std::string& path) {
  Protocol p = parse_file(path, [](const std::string& t) { return parse_protocol_file(t).main; });
  auto violations = well_formed(p, CheckMode::Static);
  for (const auto& v : violations) std::cout << v.to_string() << "\n";
  if (!violations.empty()) return kExitInput;
  std::cout << "ok\n";
  return 0;
}

int cmd_simulate(const Inputs& in, std::size_t steps, std::uint64_t seed, bool interactive) {
  const Configuration c = in.configuration();
  const EffectRegistry reg = in.registry(c.protocol);
  Scheduler sched = interactive ? Scheduler::interactive([](const Configuration&, const std::vector<GlobalStep>& opts) {
    for (std::size_t i = 0; i < opts.size(); ++i) std::cout << "  " << i << ") " << format_step(opts[i].info) << "\n";
    return ask(opts.size());
  })
                                : Scheduler::seeded(seed);
  const Trace t = run(c, reg, sched, steps);
  std::cout << format_trace(t);
  std::cout << (t.terminated ? "terminated" : "stopped") << " after " << t.steps.size() << " steps\n";
  print_state(t.final.delta);
  return 0;
}

int cmd_explore(const Inputs& in, std::optional<std::size_t> depth) {
  const Configuration c = in.configuration();
  const StateGraph g = explore(c, in.registry(c.protocol), {depth, state_cap()});
  std::cout << format_graph(g);
  std::cout << g.states.size() << " states, " << g.edges.size() << " edges, " << g.terminal_states().size()
            << " terminal\n";
  return 0;
}

int cmd_project(const Inputs& in, const std::string& only) {
  const Configuration c = in.configuration();
  bool found = only.empty();
  for (const auto& node : project_network(c).flatten()) {
    if (!only.empty() && node.state.id.str() != only) continue;
    found = true;
    std::cout << node.state.id.str() << ": " << to_string(node.defs) << "\n";
  }
  if (!found) throw InputError("no node " + only + " in the network");
  return 0;
}

int cmd_dist_simulate(const Inputs& in, std::size_t steps, std::uint64_t seed) {
  const Configuration c = in.configuration();
  const EffectRegistry reg = in.registry(c.protocol);
  Network net = project_network(c);
  std::mt19937_64 rng(seed);
  std::size_t taken = 0;
  for (; taken < steps; ++taken) {
    auto options = observable_transitions(net, reg);
    if (options.empty()) break;
    auto& [label, next] = options[rng() % options.size()];
    std::cout << label.to_string() << "\n";
    net = canonicalize(next);
  }
  std::cout << "stopped after " << taken << " steps\n";
  for (const auto& node : net.flatten()) std::cout << "  " << node.state.to_string() << "\n";
  return 0;
}

int cmd_verify(const Inputs& in, std::optional<std::size_t> depth, const std::string& format) {
  const Configuration c = in.configuration();
  const EffectRegistry reg = in.registry(c.protocol);
  const MatchReport r = check_bounded(c, reg, {depth, state_cap()});
  if (format == "edges") {
    for (const auto& ce : r.counterexamples) {
      std::cout << (ce.direction == Counterexample::Direction::Soundness ? "soundness " : "completeness ")
                << (ce.step ? format_step(*ce.step) : ce.label->to_string()) << "\n";
    }
  } else {
    for (const auto& ce : r.counterexamples) std::cout << to_string(ce) << "\n";
  }
  std::cout << r.checked_states << " states, " << r.checked_edges << " steps checked; "
            << r.count(Counterexample::Direction::Soundness) << " soundness and "
            << r.count(Counterexample::Direction::Completeness) << " completeness counterexamples\n";
  return r.ok() ? 0 : kExitVerification;
}

int cmd_scenario(std::uint64_t seed, bool verify) {
  const Scenario s = recovery_scenario();
  auto violations = well_formed(s.initial.protocol, CheckMode::Static);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cout << v.to_string() << "\n";
    return kExitInput;
  }

  Scheduler sched = Scheduler::seeded(seed);
  const Trace t = run(s.initial, s.effects, sched);
  std::cout << "sample run (seed " << seed << "):\n" << format_trace(t);

  const StateGraph g = explore(s.initial, s.effects, {std::nullopt, state_cap()});
  const auto terminals = g.terminal_states();
  std::cout << g.states.size() << " reachable configurations, " << terminals.size() << " terminal\n";
  bool ok = !terminals.empty();
  for (std::size_t i : terminals) {
    for (const auto& msg : recovery_outcome_failures(s.initial.delta, g.states[i].delta)) {
      std::cout << "terminal " << i << ": " << msg << "\n";
      ok = false;
    }
  }
  if (!terminals.empty()) {
    std::cout << "terminal state:\n";
    print_state(g.states[terminals.front()].delta);
  }
  if (verify) {
    const MatchReport r = check_bounded(s.initial, s.effects, {std::nullopt, state_cap()});
    std::cout << "correspondence: " << r.counterexamples.size() << " counterexamples over " << r.checked_states
              << " states\n";
    if (!r.ok()) return kExitVerification;
  }
  std::cout << (ok ? "scenario outcome holds: node 4 reparented to 6\n" : "scenario outcome violated\n");
  return ok ? 0 : kExitVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Global grid protocols: simulation, controller synthesis and correspondence checking"};
  app.require_subcommand(1);

  std::string check_path;
  auto* check = app.add_subcommand("check", "Check that a protocol file is well formed");
  check->add_option("file", check_path, "Protocol file (.gp)")->required();

  Inputs sim_in;
  std::size_t sim_steps = kDefaultMaxSteps;
  std::uint64_t sim_seed = 0;
  bool sim_interactive = false;
  auto* sim = app.add_subcommand("simulate", "Run the global semantics");
  sim_in.add_to(sim);
  sim->add_option("--steps", sim_steps, "Maximum number of steps");
  sim->add_option("--seed", sim_seed, "Seed for the random scheduler");
  sim->add_flag("--interactive", sim_interactive, "Pick each step from a numbered list");

  Inputs exp_in;
  std::optional<std::size_t> exp_depth;
  auto* exp = app.add_subcommand("explore", "Print the reachable state graph");
  exp_in.add_to(exp);
  exp->add_option("--depth", exp_depth, "Exploration depth (default: exhaustive)");

  Inputs proj_in;
  std::string proj_node;
  auto* proj = app.add_subcommand("project", "Print the synthesized controller of each node");
  proj_in.add_to(proj, false);
  proj->add_option("--node", proj_node, "Only this node");

  Inputs dist_in;
  std::size_t dist_steps = kDefaultMaxSteps;
  std::uint64_t dist_seed = 0;
  auto* dist = app.add_subcommand("dist-simulate", "Run the projected network");
  dist_in.add_to(dist);
  dist->add_option("--steps", dist_steps, "Maximum number of steps");
  dist->add_option("--seed", dist_seed, "Seed for the random scheduler");

  Inputs ver_in;
  std::optional<std::size_t> ver_depth;
  std::string ver_format = "text";
  auto* ver = app.add_subcommand("verify", "Check operational correspondence on all reachable states");
  ver_in.add_to(ver);
  ver->add_option("--depth", ver_depth, "Exploration depth (default: exhaustive)");
  ver->add_option("--format", ver_format, "Report format")->check(CLI::IsMember({"text", "edges"}));

  std::uint64_t scn_seed = 1;
  bool scn_verify = false;
  auto* scn = app.add_subcommand("scenario", "Run the bundled fault management scenario and check its outcome");
  scn->add_option("--seed", scn_seed, "Seed for the sample run");
  scn->add_flag("--verify", scn_verify, "Also check operational correspondence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*check) return cmd_check(check_path);
    if (*sim) return cmd_simulate(sim_in, sim_steps, sim_seed, sim_interactive);
    if (*exp) return cmd_explore(exp_in, exp_depth);
    if (*proj) return cmd_project(proj_in, proj_node);
    if (*dist) return cmd_dist_simulate(dist_in, dist_steps, dist_seed);
    if (*ver) return cmd_verify(ver_in, ver_depth, ver_format);
    if (*scn) return cmd_scenario(scn_seed, scn_verify);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SyntaxError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UnknownReference& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSemantics;
  }
  return 1;
}

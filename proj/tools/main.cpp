// Command-line front end: parsing, normalization, equivalence checking,
// sequence normalization, random generation, and cross-checks by the two
// independent oracles (rewrite closure and EF game).
//
// Exit codes: 0 ok, 1 inequivalent, 2 parse/usage error, 3 internal error or
// resource limit, 4 oracle disagreement, 5 unsupported sequence tail.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qshuffle/qshuffle.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_inequivalent = 1;
constexpr int exit_parse = 2;
constexpr int exit_internal = 3;
constexpr int exit_disagreement = 4;
constexpr int exit_unsupported_tail = 5;

struct Options {
  std::string first, second;  // positional inputs; empty means not given
  std::string file;
  std::string format = "text";
  bool trace = false;
  bool oracle = false;
  std::uint64_t seed = 0;
  long long max_complexity = -1;  // -1: pick a default per command
  int max_depth = 3;
  int rounds = 3;
  std::size_t memo_cap = 1'000'000;
  std::size_t frontier_cap = 1'000'000;
};

bool json_output(const Options& o) { return o.format == "json"; }

// Positional inputs win; otherwise --file or stdin supply one input per line.
std::vector<std::string> gather_inputs(const Options& o, std::size_t need) {
  std::vector<std::string> in;
  if (!o.first.empty()) in.push_back(o.first);
  if (!o.second.empty()) in.push_back(o.second);
  if (in.size() < need) {
    std::istream* src = &std::cin;
    std::ifstream f;
    if (!o.file.empty()) {
      f.open(o.file);
      if (!f) throw std::runtime_error("cannot open " + o.file);
      src = &f;
    }
    std::string line;
    while (in.size() < need && std::getline(*src, line)) {
      if (!line.empty()) in.push_back(line);
    }
  }
  if (in.size() < need)
    throw qshuffle::ParseError("missing input term", 0);
  return in;
}

int cmd_parse(const Options& o) {
  auto in = gather_inputs(o, 1);
  qshuffle::Term t = qshuffle::parse(in[0]);
  if (json_output(o))
    std::cout << qshuffle::term_to_json(t).dump(2) << "\n";
  else
    std::cout << qshuffle::render(t) << "\n";
  return exit_ok;
}

int cmd_normalize(const Options& o) {
  auto in = gather_inputs(o, 1);
  qshuffle::Term t = qshuffle::parse(in[0]);
  qshuffle::NormalizeResult r = qshuffle::normalize(t);
  if (json_output(o)) {
    nlohmann::json out = {{"input", qshuffle::render(t)},
                          {"normalForm", qshuffle::render(r.term)},
                          {"ast", qshuffle::term_to_json(r.term)}};
    if (o.trace) out["steps"] = qshuffle::steps_to_json(r.steps);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << qshuffle::render(r.term) << "\n";
    if (o.trace) {
      for (const qshuffle::RewriteStep& s : r.steps) {
        std::cout << qshuffle::rule_name(s.rule) << " @ [";
        for (std::size_t i = 0; i < s.path.size(); ++i)
          std::cout << (i ? "," : "") << s.path[i];
        std::cout << "]: " << qshuffle::render(s.before) << " -> "
                  << qshuffle::render(s.after) << "\n";
      }
    }
  }
  return exit_ok;
}

struct OracleReport {
  bool equivalent;
  qshuffle::ClosureVerdict closure;
  long long bound;
  qshuffle::GameWinner ef;
  int rounds;
  std::string disagreement;  // empty when all checks agree
};

OracleReport run_oracles(const qshuffle::Term& a, const qshuffle::Term& b,
                         const Options& o) {
  OracleReport r{};
  r.equivalent = qshuffle::equivalent(a, b);
  long long need = std::max(a.complexity(), b.complexity());
  r.bound = o.max_complexity >= 0 ? o.max_complexity : need + 4;
  if (r.bound < need)
    throw qshuffle::ParseError("--max-complexity is below the inputs' complexity", 0);
  r.closure =
      qshuffle::closure_equivalent(a, b, r.bound, {o.frontier_cap});
  r.rounds = o.rounds;
  r.ef = qshuffle::ef_winner(a, b, o.rounds, {6, o.memo_cap});

  bool connected = r.closure == qshuffle::ClosureVerdict::connected;
  if (r.equivalent && !connected)
    r.disagreement = "equivalent terms not connected within a sufficient bound";
  else if (!r.equivalent && connected)
    r.disagreement = "closure connected two terms with distinct normal forms";
  else if (r.equivalent && r.ef == qshuffle::GameWinner::spoiler)
    r.disagreement = "spoiler won on terms with equal normal forms";
  return r;
}

void print_oracle_report(const OracleReport& r, const Options& o,
                         nlohmann::json* json) {
  if (json) {
    (*json)["closure"] = r.closure == qshuffle::ClosureVerdict::connected
                             ? "connected"
                             : "not-connected-within-bound";
    (*json)["closureBound"] = r.bound;
    (*json)["ef"] =
        r.ef == qshuffle::GameWinner::spoiler ? "spoiler" : "duplicator";
    (*json)["rounds"] = r.rounds;
    (*json)["agreement"] = r.disagreement.empty();
    if (!r.disagreement.empty()) (*json)["disagreement"] = r.disagreement;
    return;
  }
  std::cout << "closure: "
            << (r.closure == qshuffle::ClosureVerdict::connected
                    ? "connected"
                    : "not-connected-within-bound")
            << " (bound " << r.bound << ")\n";
  std::cout << "ef: "
            << (r.ef == qshuffle::GameWinner::spoiler ? "spoiler" : "duplicator")
            << " (rounds " << r.rounds << ")\n";
  if (r.disagreement.empty())
    std::cout << "agreement: ok\n";
  else
    std::cout << "agreement: DISAGREEMENT: " << r.disagreement << "\n";
  (void)o;
}

int cmd_eq(const Options& o) {
  auto in = gather_inputs(o, 2);
  qshuffle::Term a = qshuffle::parse(in[0]);
  qshuffle::Term b = qshuffle::parse(in[1]);
  if (!o.oracle) {
    bool eq = qshuffle::equivalent(a, b);
    if (json_output(o))
      std::cout << nlohmann::json{{"equivalent", eq}}.dump(2) << "\n";
    else
      std::cout << (eq ? "equivalent" : "inequivalent") << "\n";
    return eq ? exit_ok : exit_inequivalent;
  }
  OracleReport r = run_oracles(a, b, o);
  if (json_output(o)) {
    nlohmann::json out = {{"equivalent", r.equivalent}};
    print_oracle_report(r, o, &out);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (r.equivalent ? "equivalent" : "inequivalent") << "\n";
    print_oracle_report(r, o, nullptr);
  }
  if (!r.disagreement.empty()) return exit_disagreement;
  return r.equivalent ? exit_ok : exit_inequivalent;
}

int cmd_seq_normalize(const Options& o) {
  auto in = gather_inputs(o, 1);
  qshuffle::TermSequence s = qshuffle::parse_sequence(in[0]);
  qshuffle::TermSequence n = qshuffle::normalize_sequence(s);
  if (json_output(o)) {
    nlohmann::json out = qshuffle::sequence_to_json(n);
    out["rendered"] = qshuffle::render_sequence(n);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << qshuffle::render_sequence(n) << "\n";
  }
  return exit_ok;
}

int cmd_gen(const Options& o) {
  long long budget = o.max_complexity >= 0 ? o.max_complexity : 20;
  qshuffle::Term t = qshuffle::gen_random(o.seed, budget, o.max_depth);
  if (json_output(o)) {
    nlohmann::json out = {{"rendered", qshuffle::render(t)},
                          {"ast", qshuffle::term_to_json(t)},
                          {"complexity", t.complexity()},
                          {"depth", t.depth()}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << qshuffle::render(t) << "\n";
  }
  return exit_ok;
}

int cmd_oracle(const Options& o) {
  auto in = gather_inputs(o, 2);
  qshuffle::Term a = qshuffle::parse(in[0]);
  qshuffle::Term b = qshuffle::parse(in[1]);
  OracleReport r = run_oracles(a, b, o);
  if (json_output(o)) {
    nlohmann::json out = {{"equivalent", r.equivalent}};
    print_oracle_report(r, o, &out);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << (r.equivalent ? "equivalent" : "inequivalent")
              << " (by normal form)\n";
    print_oracle_report(r, o, nullptr);
  }
  return r.disagreement.empty() ? exit_ok : exit_disagreement;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"canonicalizer and equivalence decider for shuffle terms"};
  app.require_subcommand(1);

  Options o;
  // Scalar positionals: multi-valued CLI11 options would unwrap inputs that
  // look like arrays, mangling "[...]" sequence syntax.
  auto add_common = [&](CLI::App* cmd, std::size_t positionals) {
    if (positionals > 0)
      cmd->add_option("input", o.first,
                      "input term; falls back to --file, then stdin");
    if (positionals > 1) cmd->add_option("input2", o.second, "second input term");
    cmd->add_option("--file", o.file, "read inputs from this file, one per line");
    cmd->add_option("--format", o.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  CLI::App* parse_cmd = app.add_subcommand("parse", "parse and echo a term");
  add_common(parse_cmd, 1);

  CLI::App* norm_cmd = app.add_subcommand("normalize", "rewrite a term to normal form");
  add_common(norm_cmd, 1);
  norm_cmd->add_flag("--trace", o.trace, "list the applied rewrite steps");

  CLI::App* eq_cmd = app.add_subcommand("eq", "decide equivalence of two terms");
  add_common(eq_cmd, 2);
  eq_cmd->add_flag("--oracle", o.oracle, "cross-check with closure search and EF game");
  eq_cmd->add_option("--max-complexity", o.max_complexity,
                     "closure bound (default: inputs' max complexity + 4)");
  eq_cmd->add_option("--rounds", o.rounds, "EF game rounds (default 3, max 6)");
  eq_cmd->add_option("--memo-cap", o.memo_cap, "EF memo entry cap");
  eq_cmd->add_option("--frontier-cap", o.frontier_cap, "closure frontier cap");

  CLI::App* seq_cmd =
      app.add_subcommand("seq-normalize", "normalize a term sequence");
  add_common(seq_cmd, 1);

  CLI::App* gen_cmd = app.add_subcommand("gen", "generate a seeded random term");
  gen_cmd->add_option("--seed", o.seed, "RNG seed (default 0)");
  gen_cmd->add_option("--max-complexity", o.max_complexity,
                      "complexity budget (default 20)");
  gen_cmd->add_option("--max-depth", o.max_depth, "shuffle nesting budget (default 3)");
  gen_cmd->add_option("--format", o.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "run both oracles against the normalizer on two terms");
  add_common(oracle_cmd, 2);
  oracle_cmd->add_option("--max-complexity", o.max_complexity,
                         "closure bound (default: inputs' max complexity + 4)");
  oracle_cmd->add_option("--rounds", o.rounds, "EF game rounds (default 3, max 6)");
  oracle_cmd->add_option("--memo-cap", o.memo_cap, "EF memo entry cap");
  oracle_cmd->add_option("--frontier-cap", o.frontier_cap, "closure frontier cap");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_parse;
  }

  try {
    if (parse_cmd->parsed()) return cmd_parse(o);
    if (norm_cmd->parsed()) return cmd_normalize(o);
    if (eq_cmd->parsed()) return cmd_eq(o);
    if (seq_cmd->parsed()) return cmd_seq_normalize(o);
    if (gen_cmd->parsed()) return cmd_gen(o);
    if (oracle_cmd->parsed()) return cmd_oracle(o);
  } catch (const qshuffle::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return exit_parse;
  } catch (const qshuffle::UnsupportedTailError& e) {
    std::cerr << "unsupported tail: " << e.what() << "\n";
    return exit_unsupported_tail;
  } catch (const qshuffle::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return exit_internal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_internal;
  }
  return exit_internal;
}

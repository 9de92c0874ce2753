#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "qshuffle/parse.hpp"
#include "qshuffle/rewrite.hpp"
#include "qshuffle/sequence.hpp"
#include "qshuffle/term.hpp"

namespace qshuffle {

// AST schema:
//   {"kind":"singleton"}
//   {"kind":"concat","parts":[...]}
//   {"kind":"shuffle","args":[...]}
inline nlohmann::json term_to_json(const Term& t) {
  switch (t.kind()) {
    case TermKind::singleton:
      return {{"kind", "singleton"}};
    case TermKind::concat: {
      nlohmann::json parts = nlohmann::json::array();
      for (const Term& p : t.children()) parts.push_back(term_to_json(p));
      return {{"kind", "concat"}, {"parts", std::move(parts)}};
    }
    case TermKind::shuffle: {
      nlohmann::json args = nlohmann::json::array();
      for (const Term& a : t.children()) args.push_back(term_to_json(a));
      return {{"kind", "shuffle"}, {"args", std::move(args)}};
    }
  }
  throw std::invalid_argument("corrupt term kind");
}

inline Term term_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument("term JSON must be an object with a \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "singleton") return Term::singleton();
  if (kind == "concat" || kind == "shuffle") {
    const char* field = kind == "concat" ? "parts" : "args";
    if (!j.contains(field) || !j[field].is_array())
      throw std::invalid_argument(std::string("missing \"") + field + "\" array");
    std::vector<Term> kids;
    kids.reserve(j[field].size());
    for (const auto& k : j[field]) kids.push_back(term_from_json(k));
    return kind == "concat" ? Term::concat(std::move(kids))
                            : Term::shuffle(std::move(kids));
  }
  throw std::invalid_argument("unknown term kind \"" + kind + "\"");
}

// Trace schema: [{rule, path, before, after}], terms rendered as text.
inline nlohmann::json steps_to_json(const std::vector<RewriteStep>& steps) {
  nlohmann::json out = nlohmann::json::array();
  for (const RewriteStep& s : steps) {
    out.push_back({{"rule", rule_name(s.rule)},
                   {"path", s.path},
                   {"before", render(s.before)},
                   {"after", render(s.after)}});
  }
  return out;
}

// Sequence schema: {"prefix":[AST...], "tail":"none"|"ones"|{"repeat":AST}}.
inline nlohmann::json sequence_to_json(const TermSequence& s) {
  nlohmann::json prefix = nlohmann::json::array();
  for (const Term& t : s.prefix) prefix.push_back(term_to_json(t));
  nlohmann::json tail;
  switch (s.tail) {
    case TailKind::none: tail = "none"; break;
    case TailKind::ones: tail = "ones"; break;
    case TailKind::repeat: tail = {{"repeat", term_to_json(*s.repeated)}}; break;
  }
  return {{"prefix", std::move(prefix)}, {"tail", std::move(tail)}};
}

}  // namespace qshuffle

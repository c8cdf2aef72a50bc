// Closed Gauss codes of classical knots and links.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "diagram.hpp"

namespace twinskein {

struct ClassicalCode {
  std::string name;
  std::vector<std::vector<Passage>> components;  // each read cyclically
  std::map<CrossingId, CrossingSign> crossings;

  std::size_t crossing_count() const noexcept { return crossings.size(); }
  friend bool operator==(const ClassicalCode&, const ClassicalCode&) = default;
};

/// A classical code with exactly one component.
using ClassicalKnotCode = ClassicalCode;

class InvalidClassicalCode : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

/// Checks the Gauss-code pairing: every crossing once over and once under.
inline void check_classical(const ClassicalCode& k, bool knot_only = false) {
  if (knot_only && k.components.size() != 1)
    throw InvalidClassicalCode("a knot code needs exactly one component, found " +
                               std::to_string(k.components.size()));
  std::map<CrossingId, std::pair<int, int>> seen;
  for (const auto& comp : k.components)
    for (const auto& p : comp) {
      if (!k.crossings.contains(p.crossing)) throw InvalidClassicalCode("crossing " + std::to_string(p.crossing) + " has no sign");
      auto& s = seen[p.crossing];
      (p.is_over() ? s.first : s.second) += 1;
    }
  for (const auto& [id, sign] : k.crossings) {
    auto it = seen.find(id);
    if (it == seen.end() || it->second != std::pair{1, 1})
      throw InvalidClassicalCode("crossing " + std::to_string(id) + " needs one over and one under passage");
  }
}

inline std::string serialize(const ClassicalCode& k) {
  std::string out = "classical " + (k.name.empty() ? std::string("K") : k.name) + " {";
  for (std::size_t i = 0; i < k.components.size(); ++i) {
    out += " loop K" + (i == 0 ? std::string() : std::to_string(i + 1)) + ":";
    for (const auto& p : k.components[i]) out += " " + passage_text(p, k.crossings.at(p.crossing));
    out += " ;";
  }
  return out + " }";
}

/// Parses one or more `classical NAME { loop L: ... ; ... }` blocks.
inline std::vector<ClassicalCode> parse_classical_table(std::string_view text) {
  detail::Lexer lex(text);
  std::vector<ClassicalCode> out;
  while (!lex.done()) {
    const std::size_t line = lex.line(), col = lex.column();
    if (lex.word() != "classical") throw ParseError("expected 'classical'", line, col);
    ClassicalCode k;
    k.name = lex.word();
    Diagram body;
    std::vector<Violation> conflicts;
    detail::parse_body(lex, body, conflicts);
    if (!conflicts.empty()) throw ParseError(conflicts.front().message, line, col);
    for (const auto& c : body.components) {
      if (c.is_arc()) throw ParseError("classical codes contain loops only", line, col);
      k.components.push_back(c.passages);
    }
    k.crossings = body.crossings;
    try {
      check_classical(k);
    } catch (const InvalidClassicalCode& e) {
      throw ParseError(k.name + ": " + e.what(), line, col);
    }
    out.push_back(std::move(k));
  }
  return out;
}

inline ClassicalCode parse_classical(std::string_view text) {
  auto all = parse_classical_table(text);
  if (all.size() != 1) throw ParseError("expected exactly one classical block", 1, 1);
  return all.front();
}

}  // namespace twinskein

// Welded Gauss-code presentations of twins and ribbon 2-knots.
//
// A diagram is a list of components (open arcs and closed loops), each an
// ordered sequence of passages through signed classical crossings. Virtual
// crossings are never stored: the classical code determines the welded class.
// Twin arcs run from the (+) intersection marker to the (-) marker; the
// markers are the arc endpoints.

#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace twinskein {

using CrossingId = int;

enum class CrossingSign { positive, negative };

constexpr CrossingSign flip(CrossingSign s) noexcept {
  return s == CrossingSign::positive ? CrossingSign::negative : CrossingSign::positive;
}
constexpr int sign_value(CrossingSign s) noexcept { return s == CrossingSign::positive ? 1 : -1; }
constexpr char sign_char(CrossingSign s) noexcept { return s == CrossingSign::positive ? '+' : '-'; }

enum class StrandRole { over, under };

constexpr StrandRole opposite(StrandRole r) noexcept {
  return r == StrandRole::over ? StrandRole::under : StrandRole::over;
}

struct Passage {
  CrossingId crossing = 0;
  StrandRole role = StrandRole::over;

  bool is_over() const noexcept { return role == StrandRole::over; }
  friend bool operator==(const Passage&, const Passage&) = default;
};

enum class ComponentKind { twin_arc, knot_arc, loop };

constexpr bool is_open(ComponentKind k) noexcept { return k != ComponentKind::loop; }

/// Surgery label (gamma, beta/alpha) carried by a torus component. Inert.
struct SurgeryLabel {
  long long gamma = 0;
  long long beta = 0;
  long long alpha = 1;

  bool is_default() const noexcept { return gamma == 0 && beta == 0 && alpha == 1; }
  friend bool operator==(const SurgeryLabel&, const SurgeryLabel&) = default;
};

struct Component {
  ComponentKind kind = ComponentKind::loop;
  std::string label;
  std::vector<Passage> passages;
  std::optional<SurgeryLabel> surgery;

  bool is_arc() const noexcept { return is_open(kind); }
  friend bool operator==(const Component&, const Component&) = default;
};

enum class DiagramMode { twin, two_knot };

/// Where a passage sits: component index and position within it.
struct PassageRef {
  std::size_t component = 0;
  std::size_t index = 0;
  friend bool operator==(const PassageRef&, const PassageRef&) = default;
};

struct CrossingLocation {
  PassageRef over;
  PassageRef under;
};

struct Diagram {
  DiagramMode mode = DiagramMode::twin;
  std::vector<Component> components;
  std::map<CrossingId, CrossingSign> crossings;

  friend bool operator==(const Diagram&, const Diagram&) = default;

  std::size_t crossing_count() const noexcept { return crossings.size(); }

  std::size_t loop_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(components.begin(), components.end(),
                                                  [](const Component& c) { return !c.is_arc(); }));
  }

  std::optional<std::size_t> find_component(std::string_view label) const {
    for (std::size_t i = 0; i < components.size(); ++i)
      if (components[i].label == label) return i;
    return std::nullopt;
  }

  CrossingSign sign(CrossingId id) const { return crossings.at(id); }

  /// Locates both passages of a crossing. Assumes the role pairing invariant.
  std::optional<CrossingLocation> locate(CrossingId id) const {
    std::optional<PassageRef> over, under;
    for (std::size_t c = 0; c < components.size(); ++c) {
      const auto& ps = components[c].passages;
      for (std::size_t i = 0; i < ps.size(); ++i) {
        if (ps[i].crossing != id) continue;
        (ps[i].is_over() ? over : under) = PassageRef{c, i};
      }
    }
    if (!over || !under) return std::nullopt;
    return CrossingLocation{*over, *under};
  }

  CrossingId next_crossing_id() const { return crossings.empty() ? 1 : crossings.rbegin()->first + 1; }

  /// First label of the form T1, T2, ... not in use.
  std::string fresh_loop_label() const {
    for (int n = 1;; ++n) {
      std::string candidate = "T" + std::to_string(n);
      if (!find_component(candidate)) return candidate;
    }
  }
};

class DiagramError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public DiagramError {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : DiagramError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnknownCrossing : public DiagramError {
 public:
  explicit UnknownCrossing(CrossingId id) : DiagramError("unknown crossing id " + std::to_string(id)) {}
};

class UnknownComponent : public DiagramError {
 public:
  explicit UnknownComponent(std::string_view label)
      : DiagramError("unknown component '" + std::string(label) + "'") {}
};

// ---------------------------------------------------------------------------
// Validation

struct Violation {
  std::string code;
  std::string message;
  std::string component;  // empty when not tied to a component
  std::size_t index = 0;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool has(std::string_view code) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.code == code; });
  }
};

inline ValidationReport validate(const Diagram& d) {
  ValidationReport report;
  auto add = [&](std::string code, std::string message, std::string component = {}, std::size_t index = 0) {
    report.violations.push_back({std::move(code), std::move(message), std::move(component), index});
  };

  std::size_t twin_arcs = 0, knot_arcs = 0;
  std::set<std::string> labels;
  for (const auto& c : d.components) {
    if (c.kind == ComponentKind::twin_arc) ++twin_arcs;
    if (c.kind == ComponentKind::knot_arc) ++knot_arcs;
    if (!labels.insert(c.label).second) add("duplicate-label", "component label '" + c.label + "' repeated", c.label);
    if (c.surgery && c.is_arc())
      add("surgery-on-arc", "surgery label on arc '" + c.label + "'", c.label);
    if (c.surgery && (c.surgery->alpha == 0 || std::gcd(c.surgery->beta, c.surgery->alpha) != 1))
      add("surgery-slope", "slope of '" + c.label + "' is not a pair of coprime integers", c.label);
  }
  if (d.mode == DiagramMode::twin && (twin_arcs != 2 || knot_arcs != 0))
    add("mode-arity", "twin diagrams need exactly two twin arcs");
  if (d.mode == DiagramMode::two_knot && (knot_arcs != 1 || twin_arcs != 0))
    add("mode-arity", "2-knot diagrams need exactly one knot arc");

  struct Seen {
    int over = 0;
    int under = 0;
    std::string component;
    std::size_t index = 0;
  };
  std::map<CrossingId, Seen> seen;
  for (const auto& c : d.components) {
    for (std::size_t i = 0; i < c.passages.size(); ++i) {
      const auto& p = c.passages[i];
      if (p.crossing <= 0)
        add("crossing-id", "crossing ids must be positive integers", c.label, i);
      if (!d.crossings.contains(p.crossing))
        add("unknown-crossing", "passage references crossing " + std::to_string(p.crossing) + " which has no sign",
            c.label, i);
      auto& s = seen[p.crossing];
      if (s.over + s.under == 0) {
        s.component = c.label;
        s.index = i;
      }
      (p.is_over() ? s.over : s.under) += 1;
    }
  }
  for (const auto& [id, sign] : d.crossings) {
    auto it = seen.find(id);
    if (it == seen.end()) {
      add("role-pairing", "crossing " + std::to_string(id) + " has no passages");
      continue;
    }
    const auto& s = it->second;
    if (s.over != 1 || s.under != 1)
      add("role-pairing",
          "crossing " + std::to_string(id) + " has " + std::to_string(s.over) + " over and " +
              std::to_string(s.under) + " under passages (need one of each)",
          s.component, s.index);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Text format
//
//   file      := comment* block
//   block     := ("twin" | "knot") "{" component* "}"
//   component := ("arc" | "loop") LABEL ":" passage* surgery? ";"
//   passage   := ("O" | "U") INT ("+" | "-")
//   surgery   := "(" INT "," INT "/" INT ")"
//
// Lines starting with '#' are comments.

namespace detail {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == '#' && at_line_start()) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  /// Raw next character with no whitespace skipping.
  char peek_raw() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    advance();
  }

  std::string word() {
    skip_space();
    std::string out;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      out += text_[pos_];
      advance();
    }
    if (out.empty()) fail("expected identifier");
    return out;
  }

  long long integer(bool allow_sign) {
    skip_space();
    std::string digits;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      digits += text_[pos_];
      advance();
    }
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      digits += text_[pos_];
      advance();
    }
    if (digits.empty() || digits == "-" || digits == "+") fail("expected integer");
    try {
      return std::stoll(digits);
    } catch (const std::out_of_range&) {
      fail("integer out of range");
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, line_, col_); }
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  bool at_line_start() const {
    for (std::size_t i = pos_; i > 0; --i) {
      char ch = text_[i - 1];
      if (ch == '\n') return true;
      if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

}  // namespace detail

/// Result of syntax-only parsing: the diagram plus sign disagreements that the
/// crossing map cannot represent.
struct ParseResult {
  Diagram diagram;
  std::vector<Violation> sign_conflicts;
};

namespace detail {

/// Parses "{" component* "}" into d, whose mode decides the arc kind.
inline void parse_body(Lexer& lex, Diagram& d, std::vector<Violation>& conflicts) {
  lex.expect('{');
  while (lex.peek() != '}') {
    if (lex.peek() == '\0') lex.fail("unterminated block");
    const std::string kind = lex.word();
    Component comp;
    if (kind == "arc")
      comp.kind = d.mode == DiagramMode::twin ? ComponentKind::twin_arc : ComponentKind::knot_arc;
    else if (kind == "loop")
      comp.kind = ComponentKind::loop;
    else
      lex.fail("expected 'arc' or 'loop', found '" + kind + "'");
    comp.label = lex.word();
    lex.expect(':');
    while (true) {
      char ch = lex.peek();
      if (ch == 'O' || ch == 'U') {
        const std::size_t line = lex.line(), col = lex.column();
        lex.advance();
        if (!std::isdigit(static_cast<unsigned char>(lex.peek_raw()))) lex.fail("expected crossing id");
        const long long id = lex.integer(false);
        const char sc = lex.peek_raw();
        if (sc != '+' && sc != '-') lex.fail("expected crossing sign '+' or '-'");
        lex.advance();
        if (id <= 0 || id > 1'000'000) throw ParseError("crossing id out of range", line, col);
        const auto cid = static_cast<CrossingId>(id);
        const CrossingSign sign = sc == '+' ? CrossingSign::positive : CrossingSign::negative;
        auto [it, inserted] = d.crossings.emplace(cid, sign);
        if (!inserted && it->second != sign)
          conflicts.push_back({"sign-mismatch", "passages of crossing " + std::to_string(cid) + " disagree on its sign",
                               comp.label, comp.passages.size()});
        comp.passages.push_back({cid, ch == 'O' ? StrandRole::over : StrandRole::under});
      } else if (ch == '(') {
        lex.advance();
        SurgeryLabel s;
        s.gamma = lex.integer(true);
        lex.expect(',');
        s.beta = lex.integer(true);
        lex.expect('/');
        s.alpha = lex.integer(true);
        lex.expect(')');
        comp.surgery = s;
        if (lex.peek() != ';') lex.fail("surgery label must end the component");
      } else if (ch == ';') {
        lex.advance();
        break;
      } else {
        lex.fail("expected passage, surgery label or ';'");
      }
    }
    d.components.push_back(std::move(comp));
  }
  lex.expect('}');
}

inline Diagram parse_block(Lexer& lex, std::vector<Violation>& conflicts) {
  const std::string head = lex.word();
  Diagram d;
  if (head == "twin")
    d.mode = DiagramMode::twin;
  else if (head == "knot")
    d.mode = DiagramMode::two_knot;
  else
    lex.fail("expected 'twin' or 'knot', found '" + head + "'");
  parse_body(lex, d, conflicts);
  return d;
}

}  // namespace detail

/// Syntax-only parse; semantic invariants are left to validate().
inline ParseResult parse_unchecked(std::string_view text) {
  detail::Lexer lex(text);
  ParseResult r;
  r.diagram = detail::parse_block(lex, r.sign_conflicts);
  if (!lex.done()) lex.fail("trailing input after block");
  return r;
}

class InvalidDiagram : public DiagramError {
 public:
  explicit InvalidDiagram(std::vector<Violation> violations)
      : DiagramError(describe(violations)), violations_(std::move(violations)) {}
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  static std::string describe(const std::vector<Violation>& vs) {
    std::string out = "invalid diagram";
    for (const auto& v : vs) out += "\n  " + v.code + ": " + v.message;
    return out;
  }
  std::vector<Violation> violations_;
};

/// Parses and validates; throws ParseError or InvalidDiagram.
inline Diagram parse(std::string_view text) {
  auto r = parse_unchecked(text);
  auto report = validate(r.diagram);
  report.violations.insert(report.violations.begin(), r.sign_conflicts.begin(), r.sign_conflicts.end());
  if (!report.ok()) throw InvalidDiagram(std::move(report.violations));
  return std::move(r.diagram);
}

inline std::string passage_text(const Passage& p, CrossingSign s) {
  return std::string(p.is_over() ? "O" : "U") + std::to_string(p.crossing) + sign_char(s);
}

/// Single-line deterministic rendering, e.g. "twin { arc A: O1+ U1+ ; arc B: ; }".
inline std::string serialize(const Diagram& d) {
  std::string out = d.mode == DiagramMode::twin ? "twin {" : "knot {";
  for (const auto& c : d.components) {
    out += c.is_arc() ? " arc " : " loop ";
    out += c.label + ":";
    for (const auto& p : c.passages) {
      auto it = d.crossings.find(p.crossing);
      out += " " + passage_text(p, it == d.crossings.end() ? CrossingSign::positive : it->second);
    }
    if (c.surgery)
      out += " (" + std::to_string(c.surgery->gamma) + ", " + std::to_string(c.surgery->beta) + "/" +
             std::to_string(c.surgery->alpha) + ")";
    out += " ;";
  }
  out += " }";
  return out;
}

/// Arcs keep their order and come first, loops follow sorted by label, and
/// crossings are renumbered 1..n by first appearance.
inline Diagram normalize(const Diagram& d) {
  Diagram out;
  out.mode = d.mode;
  for (const auto& c : d.components)
    if (c.is_arc()) out.components.push_back(c);
  std::vector<Component> loops;
  for (const auto& c : d.components)
    if (!c.is_arc()) loops.push_back(c);
  std::stable_sort(loops.begin(), loops.end(), [](const Component& a, const Component& b) { return a.label < b.label; });
  out.components.insert(out.components.end(), loops.begin(), loops.end());

  std::map<CrossingId, CrossingId> renumber;
  for (auto& c : out.components)
    for (auto& p : c.passages) {
      auto [it, inserted] = renumber.emplace(p.crossing, static_cast<CrossingId>(renumber.size() + 1));
      p.crossing = it->second;
    }
  for (const auto& [id, sign] : d.crossings) {
    auto it = renumber.find(id);
    if (it != renumber.end()) out.crossings[it->second] = sign;
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

inline std::string to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::twin_arc: return "twin_arc";
    case ComponentKind::knot_arc: return "knot_arc";
    case ComponentKind::loop: return "loop";
  }
  return "loop";
}

inline std::string to_string(DiagramMode m) { return m == DiagramMode::twin ? "twin" : "two_knot"; }

inline nlohmann::json to_json(const Diagram& d) {
  nlohmann::json j;
  j["mode"] = to_string(d.mode);
  auto comps = nlohmann::json::array();
  for (const auto& c : d.components) {
    nlohmann::json jc;
    jc["kind"] = to_string(c.kind);
    jc["label"] = c.label;
    auto ps = nlohmann::json::array();
    for (const auto& p : c.passages)
      ps.push_back({{"crossing_id", p.crossing}, {"strand_role", p.is_over() ? "over" : "under"}});
    jc["passages"] = std::move(ps);
    if (c.surgery)
      jc["surgery"] = {{"gamma", c.surgery->gamma}, {"slope", {c.surgery->beta, c.surgery->alpha}}};
    else
      jc["surgery"] = nullptr;
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  nlohmann::json xs = nlohmann::json::object();
  for (const auto& [id, s] : d.crossings) xs[std::to_string(id)] = s == CrossingSign::positive ? "positive" : "negative";
  j["crossings"] = std::move(xs);
  return j;
}

// ---------------------------------------------------------------------------
// Structural queries

enum class CrossingClass { arc_self, arc_arc, arc_loop, loop_self, loop_loop };

inline std::string to_string(CrossingClass c) {
  switch (c) {
    case CrossingClass::arc_self: return "arc_self";
    case CrossingClass::arc_arc: return "arc_arc";
    case CrossingClass::arc_loop: return "arc_loop";
    case CrossingClass::loop_self: return "loop_self";
    case CrossingClass::loop_loop: return "loop_loop";
  }
  return "loop_loop";
}

inline CrossingClass classify_crossing(const Diagram& d, CrossingId id) {
  if (!d.crossings.contains(id)) throw UnknownCrossing(id);
  auto loc = d.locate(id);
  if (!loc) throw UnknownCrossing(id);
  const auto& a = d.components[loc->over.component];
  const auto& b = d.components[loc->under.component];
  const bool same = loc->over.component == loc->under.component;
  if (a.is_arc() && b.is_arc()) return same ? CrossingClass::arc_self : CrossingClass::arc_arc;
  if (a.is_arc() || b.is_arc()) return CrossingClass::arc_loop;
  return same ? CrossingClass::loop_self : CrossingClass::loop_loop;
}

/// Reverses one component. Crossings with exactly one passage on it change sign.
inline Diagram reverse_component(const Diagram& d, std::string_view label) {
  auto idx = d.find_component(label);
  if (!idx) throw UnknownComponent(label);
  Diagram out = d;
  auto& ps = out.components[*idx].passages;
  std::map<CrossingId, int> hits;
  for (const auto& p : ps) ++hits[p.crossing];
  for (const auto& [id, n] : hits)
    if (n == 1) {
      auto it = out.crossings.find(id);
      if (it != out.crossings.end()) it->second = flip(it->second);
    }
  std::reverse(ps.begin(), ps.end());
  return out;
}

/// Finest partition of component indices such that components sharing a
/// crossing are in the same block. Blocks are sorted by smallest member.
inline std::vector<std::vector<std::size_t>> connected_blocks(const Diagram& d) {
  const std::size_t n = d.components.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<CrossingId, std::size_t> first_seen;
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& p : d.components[c].passages) {
      auto [it, inserted] = first_seen.emplace(p.crossing, c);
      if (!inserted) {
        auto a = find(it->second), b = find(c);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
  std::map<std::size_t, std::vector<std::size_t>> groups;
  for (std::size_t c = 0; c < n; ++c) groups[find(c)].push_back(c);
  std::vector<std::vector<std::size_t>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

/// Labels of each block, for reporting.
inline std::vector<std::vector<std::string>> connected_block_labels(const Diagram& d) {
  std::vector<std::vector<std::string>> out;
  for (const auto& block : connected_blocks(d)) {
    auto& labels = out.emplace_back();
    for (auto i : block) labels.push_back(d.components[i].label);
  }
  return out;
}

/// Removes crossings and all their passages.
inline void erase_crossings(Diagram& d, const std::set<CrossingId>& ids) {
  for (auto& c : d.components)
    std::erase_if(c.passages, [&](const Passage& p) { return ids.contains(p.crossing); });
  for (auto id : ids) d.crossings.erase(id);
}

}  // namespace twinskein

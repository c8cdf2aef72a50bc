// Twins built from classical knots and ribbon 2-knots.

#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "classical.hpp"
#include "diagram.hpp"

namespace twinskein {

class ConstructionError : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

/// Spins a classical knot: the closed code is opened at `cut_at` to give arc A
/// of a twin whose second arc is crossingless.
inline Diagram artin_spin(const ClassicalKnotCode& k, std::size_t cut_at = 0) {
  check_classical(k, true);
  const auto& p = k.components.front();
  if (!p.empty() && cut_at >= p.size())
    throw ConstructionError("cut position " + std::to_string(cut_at) + " outside a code of length " +
                            std::to_string(p.size()));
  Diagram d;
  d.mode = DiagramMode::twin;
  Component a{ComponentKind::twin_arc, "A", {}, std::nullopt};
  for (std::size_t i = 0; i < p.size(); ++i) a.passages.push_back(p[(cut_at + i) % p.size()]);
  d.components.push_back(std::move(a));
  d.components.push_back({ComponentKind::twin_arc, "B", {}, std::nullopt});
  d.crossings = k.crossings;
  return d;
}

namespace detail {

inline Diagram require_two_knot(const Diagram& k) {
  if (k.mode != DiagramMode::two_knot) throw ConstructionError("expected a 2-knot diagram");
  auto report = validate(k);
  if (!report.ok()) throw InvalidDiagram(report.violations);
  return k;
}

inline std::string unused_label(const Diagram& d, std::string want) {
  while (d.find_component(want)) want += "'";
  return want;
}

}  // namespace detail

/// Adds the crossingless second sphere in the unbounded face.
inline Diagram twin_closure(const Diagram& k2) {
  detail::require_two_knot(k2);
  Diagram d;
  d.mode = DiagramMode::twin;
  d.crossings = k2.crossings;
  for (const auto& c : k2.components) {
    if (c.kind != ComponentKind::knot_arc) continue;
    Component a = c;
    a.kind = ComponentKind::twin_arc;
    d.components.push_back(std::move(a));
  }
  d.components.push_back({ComponentKind::twin_arc, detail::unused_label(k2, "B"), {}, std::nullopt});
  for (const auto& c : k2.components)
    if (!c.is_arc()) d.components.push_back(c);
  return d;
}

/// Doubling traversal: arc A runs along the 2-knot arc forward (F) and back
/// (R). Each crossing c of sign s becomes FF and RR of sign s and the mixed
/// FR, RF of sign -s (one strand reversed). At an under-passage the doubled
/// strand meets the two parallel overs in the order the parallel orientation
/// dictates; at an over-passage the order is irrelevant because overs commute.
inline Diagram connect_sum_twin(const Diagram& k0) {
  detail::require_two_knot(k0);
  if (k0.loop_count() != 0) throw ConstructionError("connect_sum_twin takes a 2-knot diagram without loops");
  const auto& arc = k0.components.front().passages;

  Diagram d;
  d.mode = DiagramMode::twin;
  // New ids: 4(c-1)+1 .. 4c for FF, RR, FR, RF.
  std::map<CrossingId, CrossingId> base;
  for (const auto& [id, s] : k0.crossings) {
    const CrossingId b = static_cast<CrossingId>(4 * base.size());
    base[id] = b;
    d.crossings[b + 1] = s;
    d.crossings[b + 2] = s;
    d.crossings[b + 3] = flip(s);
    d.crossings[b + 4] = flip(s);
  }
  auto ff = [&](CrossingId c) { return base.at(c) + 1; };
  auto rr = [&](CrossingId c) { return base.at(c) + 2; };
  auto fr = [&](CrossingId c) { return base.at(c) + 3; };  // over on F, under on R
  auto rf = [&](CrossingId c) { return base.at(c) + 4; };  // over on R, under on F
  const auto over = StrandRole::over, under = StrandRole::under;

  Component a{ComponentKind::twin_arc, "A", {}, std::nullopt};
  for (const auto& p : arc) {
    const CrossingId c = p.crossing;
    if (p.is_over()) {
      a.passages.push_back({ff(c), over});
      a.passages.push_back({fr(c), over});
    } else if (k0.sign(c) == CrossingSign::positive) {
      a.passages.push_back({rf(c), under});
      a.passages.push_back({ff(c), under});
    } else {
      a.passages.push_back({ff(c), under});
      a.passages.push_back({rf(c), under});
    }
  }
  for (auto it = arc.rbegin(); it != arc.rend(); ++it) {
    const CrossingId c = it->crossing;
    if (it->is_over()) {
      a.passages.push_back({rr(c), over});
      a.passages.push_back({rf(c), over});
    } else if (k0.sign(c) == CrossingSign::positive) {
      a.passages.push_back({fr(c), under});
      a.passages.push_back({rr(c), under});
    } else {
      a.passages.push_back({rr(c), under});
      a.passages.push_back({fr(c), under});
    }
  }
  d.components.push_back(std::move(a));
  d.components.push_back({ComponentKind::twin_arc, "B", {}, std::nullopt});
  return normalize(d);
}

// ---------------------------------------------------------------------------
// Bundled knot table (kept identical to fixtures/knots.table)

inline constexpr std::string_view knot_table_text = R"(# Classical knot Gauss codes, one closed component each.
# Codes are braid closures; crossing ids are numbered by first appearance.
classical unknot { loop K: ; }
classical 3_1 { loop K: O1+ U2+ O3+ U1+ O2+ U3+ ; }
classical 4_1 { loop K: O1+ U2- O3- U1+ O4+ U3- O2- U4+ ; }
classical 5_1 { loop K: O1+ U2+ O3+ U4+ O5+ U1+ O2+ U3+ O4+ U5+ ; }
classical 5_2 { loop K: O1+ U2+ O3+ O4+ U5+ U1+ O2+ U3+ U6- O5+ U4+ O6- ; }
classical 6_1 { loop K: O1+ U2+ U3- O4+ U5- O6- U4+ U1+ O2+ O7+ U6- O5- U7+ O3- ; }
classical 6_2 { loop K: O1+ U2+ O3+ U4- O5- U1+ O2+ U3+ O6+ U5- O4- U6+ ; }
classical 6_3 { loop K: O1+ U2+ O3+ U4- O5- U1+ O2+ U6- O4- U5- O6- U3+ ; }
classical 7_1 { loop K: O1+ U2+ O3+ U4+ O5+ U6+ O7+ U1+ O2+ U3+ O4+ U5+ O6+ U7+ ; }
classical 7_2 { loop K: O1+ U2+ O3+ O4+ U5+ U6- O7+ U8+ O6- U1+ O2+ U3+ U9- O5+ O8+ U7+ U4+ O9- ; }
classical 7_3 { loop K: O1+ U2+ O3+ U4+ O5+ O6+ U7+ U1+ O2+ U3+ O4+ U5+ U8- O7+ U6+ O8- ; }
classical 7_4 { loop K: O1+ U2+ U3- O4+ U5+ U6- O7+ U8+ O6- U1+ O2+ O9+ U4+ O5+ O8+ U7+ U9+ O3- ; }
classical 7_5 { loop K: O1+ U2+ O3+ U4+ U5- O6+ U7+ U1+ O2+ U3+ O4+ O8+ U6+ O7+ U8+ O5- ; }
classical 7_6 { loop K: O1+ U2+ O3+ U4- O5+ U6+ O4- U1+ O2+ U7- O6+ U5+ O7- U3+ ; }
classical 7_7 { loop K: O1+ U2- O3- U4- O5+ U6+ O4- U1+ O7+ U3- O6+ U5+ O2- U7+ ; }
classical 8_19 { loop K: O1+ O2+ U3+ U4+ O5+ O6+ U2+ U7+ O4+ O8+ U6+ U1+ O7+ O3+ U8+ U5+ ; }
classical 8_20 { loop K: O1+ U2+ O3+ U4- O5- U1+ O2+ U3+ U6- O7- U8- U5- O4- O6- U7- O8- ; }
classical 8_21 { loop K: O1+ U2+ O3+ O4+ U5+ O6+ U4+ O7- U8- O5+ U6+ U1+ O2+ U3+ U7- O8- ; }
)";

class UnknownKnot : public std::out_of_range {
 public:
  explicit UnknownKnot(std::string_view name) : std::out_of_range("unknown knot '" + std::string(name) + "'") {}
};

inline const std::vector<ClassicalKnotCode>& knot_table() {
  static const std::vector<ClassicalKnotCode> table = parse_classical_table(knot_table_text);
  return table;
}

inline ClassicalKnotCode table_knot(std::string_view name) {
  for (const auto& k : knot_table())
    if (k.name == name) return k;
  throw UnknownKnot(name);
}

/// Classical crossing number encoded in a table name such as "7_4".
inline int table_crossing_number(std::string_view name) {
  if (name == "unknot") return 0;
  const auto us = name.find('_');
  return std::stoi(std::string(name.substr(0, us)));
}

}  // namespace twinskein

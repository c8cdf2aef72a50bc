// Rewriting moves on welded Gauss codes.
//
// Over-passages commute freely (the allowed forbidden move), so a maximal run
// of consecutive overs behaves like an unordered set. simplify() exploits this
// by looking for R1/R2/F configurations up to permutation inside over-runs and
// recording the commutes it relied on.

#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "diagram.hpp"

namespace twinskein {

enum class MoveKind { R1, R2, R3, welded_commute, F_move };

inline std::string to_string(MoveKind k) {
  switch (k) {
    case MoveKind::R1: return "R1";
    case MoveKind::R2: return "R2";
    case MoveKind::R3: return "R3";
    case MoveKind::welded_commute: return "welded_commute";
    case MoveKind::F_move: return "F_move";
  }
  return "R1";
}

struct Position {
  std::string component;
  std::size_t index = 0;
};

struct MoveEvent {
  MoveKind kind = MoveKind::R1;
  std::vector<CrossingId> crossings;
  Position position;
};

inline nlohmann::json to_json(const MoveEvent& e) {
  return {{"move_kind", to_string(e.kind)},
          {"crossings", e.crossings},
          {"position", {{"component", e.position.component}, {"index", e.position.index}}}};
}

inline nlohmann::json to_json(const std::vector<MoveEvent>& events) {
  auto arr = nlohmann::json::array();
  for (const auto& e : events) arr.push_back(to_json(e));
  return arr;
}

class MoveError : public DiagramError {
 public:
  using DiagramError::DiagramError;
};

namespace detail {

inline std::size_t component_at(const Diagram& d, const Position& at) {
  auto idx = d.find_component(at.component);
  if (!idx) throw UnknownComponent(at.component);
  if (at.index >= d.components[*idx].passages.size())
    throw MoveError("position " + std::to_string(at.index) + " is past the end of '" + at.component + "'");
  return *idx;
}

/// Index following i, or nullopt at the end of an arc.
inline std::optional<std::size_t> next_index(const Component& c, std::size_t i) {
  const std::size_t n = c.passages.size();
  if (i + 1 < n) return i + 1;
  if (!c.is_arc() && n >= 2) return 0;
  return std::nullopt;
}

inline bool literally_adjacent(const Component& c, std::size_t i, std::size_t j) {
  auto a = next_index(c, i), b = next_index(c, j);
  return (a && *a == j) || (b && *b == i);
}

/// Indices of the maximal runs of over-passages immediately before and after
/// position i (cyclically on loops). Position i itself is excluded.
inline std::vector<std::size_t> over_run(const Component& c, std::size_t i) {
  const auto& p = c.passages;
  const std::size_t n = p.size();
  const bool cyclic = !c.is_arc();
  std::vector<std::size_t> run;
  auto taken = [&](std::size_t j) { return j == i || std::find(run.begin(), run.end(), j) != run.end(); };
  for (std::size_t j = i; j > 0 || cyclic;) {
    j = j == 0 ? n - 1 : j - 1;
    if (taken(j) || !p[j].is_over()) break;
    run.push_back(j);
  }
  for (std::size_t j = i;;) {
    if (j + 1 >= n && !cyclic) break;
    j = (j + 1) % n;
    if (taken(j) || !p[j].is_over()) break;
    run.push_back(j);
  }
  return run;
}

/// Crossings of the over-passages strictly between positions i and j along
/// the shorter route inside an over-run; these are the passages a commute
/// would slide past.
inline std::vector<CrossingId> overs_between(const Component& c, std::size_t from, std::size_t to) {
  const auto& p = c.passages;
  const std::size_t n = p.size();
  std::vector<CrossingId> fwd, bwd;
  bool fwd_ok = false, bwd_ok = false;
  for (std::size_t j = from, steps = 0; steps < n; ++steps) {
    if (j + 1 >= n && c.is_arc()) break;
    j = (j + 1) % n;
    if (j == to) {
      fwd_ok = true;
      break;
    }
    if (!p[j].is_over()) break;
    fwd.push_back(p[j].crossing);
  }
  for (std::size_t j = from, steps = 0; steps < n; ++steps) {
    if (j == 0 && c.is_arc()) break;
    j = j == 0 ? n - 1 : j - 1;
    if (j == to) {
      bwd_ok = true;
      break;
    }
    if (!p[j].is_over()) break;
    bwd.push_back(p[j].crossing);
  }
  if (fwd_ok && (!bwd_ok || fwd.size() <= bwd.size())) return fwd;
  if (bwd_ok) return bwd;
  return {};
}

inline void record_commute(std::vector<MoveEvent>* events, const Component& c, std::size_t from, std::size_t to) {
  if (!events || literally_adjacent(c, from, to)) return;
  auto passed = overs_between(c, from, to);
  if (passed.empty()) return;
  std::vector<CrossingId> ids{c.passages[from].crossing};
  ids.insert(ids.end(), passed.begin(), passed.end());
  events->push_back({MoveKind::welded_commute, std::move(ids), {c.label, std::min(from, to)}});
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Literal moves

/// R1 at the passage `at` and its successor (wrapping on loops).
inline Diagram apply_r1(const Diagram& d, const Position& at) {
  const auto ci = detail::component_at(d, at);
  const auto& comp = d.components[ci];
  auto j = detail::next_index(comp, at.index);
  if (!j || comp.passages[*j].crossing != comp.passages[at.index].crossing)
    throw MoveError("R1: the passages at " + at.component + "[" + std::to_string(at.index) +
                    "] and its successor do not belong to one crossing");
  Diagram out = d;
  erase_crossings(out, {comp.passages[at.index].crossing});
  return out;
}

/// R2 at the pair of passages `at`, `at`+1. The matching pair of the other two
/// passages must also be adjacent (either order) and the signs must differ.
inline Diagram apply_r2(const Diagram& d, const Position& at) {
  const auto ci = detail::component_at(d, at);
  const auto& comp = d.components[ci];
  auto j = detail::next_index(comp, at.index);
  if (!j) throw MoveError("R2: no passage follows the given position");
  const Passage a = comp.passages[at.index], b = comp.passages[*j];
  if (a.crossing == b.crossing) throw MoveError("R2: adjacent passages belong to one crossing");
  if (a.role != b.role) throw MoveError("R2: the adjacent pair must be two overs or two unders");
  if (d.sign(a.crossing) == d.sign(b.crossing)) throw MoveError("R2: crossings have the same sign");
  auto la = d.locate(a.crossing), lb = d.locate(b.crossing);
  const PassageRef pa = a.is_over() ? la->under : la->over;
  const PassageRef pb = a.is_over() ? lb->under : lb->over;
  if (pa.component != pb.component || !detail::literally_adjacent(d.components[pa.component], pa.index, pb.index))
    throw MoveError("R2: the partner passages are not adjacent");
  Diagram out = d;
  erase_crossings(out, {a.crossing, b.crossing});
  return out;
}

/// Transposes two consecutive over-passages.
inline Diagram apply_welded_commute(const Diagram& d, const Position& at) {
  const auto ci = detail::component_at(d, at);
  const auto& comp = d.components[ci];
  auto j = detail::next_index(comp, at.index);
  if (!j) throw MoveError("welded_commute: no passage follows the given position");
  if (!comp.passages[at.index].is_over() || !comp.passages[*j].is_over())
    throw MoveError("welded_commute: both passages must be over-passages");
  Diagram out = d;
  std::swap(out.components[ci].passages[at.index], out.components[ci].passages[*j]);
  return out;
}

enum class Marker { plus, minus };

/// The marker both passages of `id` touch, if they sit on different twin arcs
/// at the same end.
inline std::optional<Marker> f_move_marker(const Diagram& d, CrossingId id) {
  if (d.mode != DiagramMode::twin) return std::nullopt;
  auto loc = d.locate(id);
  if (!loc) return std::nullopt;
  const auto& a = d.components[loc->over.component];
  const auto& b = d.components[loc->under.component];
  if (loc->over.component == loc->under.component || a.kind != ComponentKind::twin_arc ||
      b.kind != ComponentKind::twin_arc)
    return std::nullopt;
  if (loc->over.index == 0 && loc->under.index == 0) return Marker::plus;
  if (loc->over.index + 1 == a.passages.size() && loc->under.index + 1 == b.passages.size()) return Marker::minus;
  return std::nullopt;
}

/// Slides a strand off past a twin intersection point.
inline Diagram apply_f_move(const Diagram& d, CrossingId id) {
  if (!d.crossings.contains(id)) throw UnknownCrossing(id);
  if (d.mode != DiagramMode::twin) throw MoveError("F move: twin mode only");
  if (!f_move_marker(d, id))
    throw MoveError("F move: crossing " + std::to_string(id) +
                    " does not sit at the same marker on both twin arcs");
  Diagram out = d;
  erase_crossings(out, {id});
  return out;
}

// ---------------------------------------------------------------------------
// R3

struct R3Site {
  std::array<CrossingId, 3> crossings{};  // top-middle, top-bottom, middle-bottom
  std::array<PassageRef, 3> strands{};    // first passage of the top, middle, bottom pair
};

namespace detail {

struct AdjacentPair {
  PassageRef first;
  PassageRef second;
};

/// Finds the three strands of a triangle formed by crossings a, b, c.
inline std::optional<R3Site> find_r3_site(const Diagram& d, const std::array<CrossingId, 3>& ids) {
  if (std::set<CrossingId>(ids.begin(), ids.end()).size() != 3) return std::nullopt;
  auto in_triple = [&](CrossingId x) { return std::find(ids.begin(), ids.end(), x) != ids.end(); };
  std::vector<AdjacentPair> candidates;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const auto& comp = d.components[c];
    for (std::size_t i = 0; i < comp.passages.size(); ++i) {
      auto j = next_index(comp, i);
      if (!j || (comp.passages.size() == 2 && *j < i)) continue;
      const auto& p = comp.passages[i];
      const auto& q = comp.passages[*j];
      if (in_triple(p.crossing) && in_triple(q.crossing) && p.crossing != q.crossing)
        candidates.push_back({{c, i}, {c, *j}});
    }
  }
  auto same = [](const PassageRef& x, const PassageRef& y) { return x == y; };
  for (std::size_t x = 0; x < candidates.size(); ++x)
    for (std::size_t y = x + 1; y < candidates.size(); ++y)
      for (std::size_t z = y + 1; z < candidates.size(); ++z) {
        std::array<AdjacentPair, 3> trio{candidates[x], candidates[y], candidates[z]};
        std::vector<PassageRef> used;
        bool disjoint = true;
        for (const auto& pr : trio)
          for (const auto& r : {pr.first, pr.second}) {
            if (std::any_of(used.begin(), used.end(), [&](const PassageRef& u) { return same(u, r); }))
              disjoint = false;
            used.push_back(r);
          }
        if (!disjoint) continue;
        auto role = [&](const PassageRef& r) { return d.components[r.component].passages[r.index].role; };
        auto crossing = [&](const PassageRef& r) { return d.components[r.component].passages[r.index].crossing; };
        std::optional<AdjacentPair> top, middle, bottom;
        for (const auto& pr : trio) {
          const int overs = (role(pr.first) == StrandRole::over) + (role(pr.second) == StrandRole::over);
          (overs == 2 ? top : overs == 1 ? middle : bottom) = pr;
        }
        if (!top || !middle || !bottom) continue;
        const PassageRef m_under = role(middle->first) == StrandRole::under ? middle->first : middle->second;
        const PassageRef m_over = role(middle->first) == StrandRole::over ? middle->first : middle->second;
        const CrossingId tm = crossing(m_under), mb = crossing(m_over);
        CrossingId tb = 0;
        for (auto id : ids)
          if (id != tm && id != mb) tb = id;
        const std::set<CrossingId> on_top{crossing(top->first), crossing(top->second)};
        const std::set<CrossingId> on_bottom{crossing(bottom->first), crossing(bottom->second)};
        if (on_top != std::set<CrossingId>{tm, tb} || on_bottom != std::set<CrossingId>{tb, mb}) continue;
        return R3Site{{tm, tb, mb}, {top->first, middle->first, bottom->first}};
      }
  return std::nullopt;
}

/// Sign condition for a triangle to bound a disk that a strand can slide over.
inline bool r3_signs_consistent(const Diagram& d, const R3Site& s) {
  auto crossing = [&](const PassageRef& r) { return d.components[r.component].passages[r.index].crossing; };
  const auto [tm, tb, mb] = s.crossings;
  const bool t1 = crossing(s.strands[0]) == tm;
  const bool m1 = crossing(s.strands[1]) == tm;
  const bool b1 = crossing(s.strands[2]) == tb;
  const int s_tm = sign_value(d.sign(tm)), s_tb = sign_value(d.sign(tb)), s_mb = sign_value(d.sign(mb));
  return s_tb * s_mb == (t1 == m1 ? 1 : -1) && s_tm * s_tb == (m1 == b1 ? 1 : -1);
}

}  // namespace detail

inline std::optional<R3Site> r3_site(const Diagram& d, const std::array<CrossingId, 3>& ids) {
  auto site = detail::find_r3_site(d, ids);
  if (!site || !detail::r3_signs_consistent(d, *site)) return std::nullopt;
  return site;
}

/// Every crossing triple admitting R3, sorted.
inline std::vector<std::array<CrossingId, 3>> r3_candidates(const Diagram& d) {
  std::vector<std::array<CrossingId, 3>> out;
  std::vector<CrossingId> ids;
  for (const auto& [id, s] : d.crossings) ids.push_back(id);
  for (std::size_t a = 0; a < ids.size(); ++a)
    for (std::size_t b = a + 1; b < ids.size(); ++b)
      for (std::size_t c = b + 1; c < ids.size(); ++c)
        if (r3_site(d, {ids[a], ids[b], ids[c]})) out.push_back({ids[a], ids[b], ids[c]});
  return out;
}

/// Slides one strand across the crossing of the other two: the order of the
/// two passages on each strand of the triangle is reversed.
inline Diagram apply_r3(const Diagram& d, const std::array<CrossingId, 3>& ids) {
  for (auto id : ids)
    if (!d.crossings.contains(id)) throw UnknownCrossing(id);
  auto site = r3_site(d, ids);
  if (!site) throw MoveError("R3: crossings do not form a movable triangle");
  Diagram out = d;
  for (const auto& r : site->strands) {
    auto& comp = out.components[r.component];
    auto j = detail::next_index(comp, r.index);
    std::swap(comp.passages[r.index], comp.passages[*j]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simplification

namespace detail {

inline bool try_r1(Diagram& d, std::vector<MoveEvent>* events) {
  for (const auto& comp : d.components) {
    const auto& p = comp.passages;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i].is_over()) continue;
      for (auto j : over_run(comp, i)) {
        if (p[j].crossing != p[i].crossing) continue;
        const CrossingId c = p[i].crossing;
        record_commute(events, comp, j, i);
        if (events) events->push_back({MoveKind::R1, {c}, {comp.label, std::min(i, j)}});
        erase_crossings(d, {c});
        return true;
      }
    }
  }
  return false;
}

inline bool try_r2(Diagram& d, std::vector<MoveEvent>* events) {
  for (const auto& comp : d.components) {
    const auto& p = comp.passages;
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto j = next_index(comp, i);
      if (!j || p[i].is_over() || p[*j].is_over()) continue;
      const CrossingId c = p[i].crossing, c2 = p[*j].crossing;
      if (c == c2 || d.sign(c) == d.sign(c2)) continue;
      const auto o1 = d.locate(c)->over, o2 = d.locate(c2)->over;
      if (o1.component != o2.component) continue;
      const auto& over_comp = d.components[o1.component];
      auto run = over_run(over_comp, o1.index);
      if (std::find(run.begin(), run.end(), o2.index) == run.end()) continue;
      record_commute(events, over_comp, o2.index, o1.index);
      if (events) events->push_back({MoveKind::R2, {c, c2}, {comp.label, i}});
      erase_crossings(d, {c, c2});
      return true;
    }
  }
  return false;
}

/// Passage indices reachable at one end of an arc: the end passage, plus the
/// over-run it starts when it is an over.
inline std::vector<std::size_t> end_set(const Component& c, Marker end) {
  const auto& p = c.passages;
  std::vector<std::size_t> out;
  if (p.empty()) return out;
  const std::size_t first = end == Marker::plus ? 0 : p.size() - 1;
  out.push_back(first);
  if (!p[first].is_over()) return out;
  if (end == Marker::plus) {
    for (std::size_t j = 1; j < p.size() && p[j].is_over(); ++j) out.push_back(j);
  } else {
    for (std::size_t j = p.size() - 1; j-- > 0 && p[j].is_over();) out.push_back(j);
  }
  return out;
}

inline bool try_f(Diagram& d, std::vector<MoveEvent>* events) {
  if (d.mode != DiagramMode::twin) return false;
  std::vector<std::size_t> arcs;
  for (std::size_t i = 0; i < d.components.size(); ++i)
    if (d.components[i].kind == ComponentKind::twin_arc) arcs.push_back(i);
  if (arcs.size() != 2) return false;
  const auto& a = d.components[arcs[0]];
  const auto& b = d.components[arcs[1]];
  for (Marker end : {Marker::plus, Marker::minus}) {
    auto ea = end_set(a, end), eb = end_set(b, end);
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (auto i : ea)
      for (auto j : eb)
        if (a.passages[i].crossing == b.passages[j].crossing && (!best || i < best->first)) best = {i, j};
    if (!best) continue;
    const CrossingId c = a.passages[best->first].crossing;
    if (events) {
      if (best->first != ea.front()) record_commute(events, a, best->first, ea.front());
      if (best->second != eb.front()) record_commute(events, b, best->second, eb.front());
      events->push_back({MoveKind::F_move, {c}, {a.label, best->first}});
    }
    erase_crossings(d, {c});
    return true;
  }
  return false;
}

}  // namespace detail

struct Simplified {
  Diagram diagram;
  std::vector<MoveEvent> events;
};

/// Greedy deterministic reduction with priority R1 > R2 > F.
inline Simplified simplify(const Diagram& d, bool record = true) {
  Simplified out{d, {}};
  auto* ev = record ? &out.events : nullptr;
  while (detail::try_r1(out.diagram, ev) || detail::try_r2(out.diagram, ev) || detail::try_f(out.diagram, ev)) {
  }
  return out;
}

inline bool is_crossingless_arcs_only(const Diagram& d) {
  return d.crossings.empty() && d.loop_count() == 0;
}

inline bool is_standard_twin(const Diagram& d) {
  return d.mode == DiagramMode::twin && is_crossingless_arcs_only(simplify(d, false).diagram);
}

/// Crossingless knot arc with no loops (the unknotted sphere).
inline bool is_trivial_knot(const Diagram& d) {
  return d.mode == DiagramMode::two_knot && is_crossingless_arcs_only(simplify(d, false).diagram);
}

inline bool has_detached_block(const Diagram& d) {
  for (const auto& block : connected_blocks(d))
    if (std::none_of(block.begin(), block.end(), [&](std::size_t i) { return d.components[i].is_arc(); }))
      return true;
  return false;
}

inline bool is_split(const Diagram& d) { return has_detached_block(simplify(d, false).diagram); }

// ---------------------------------------------------------------------------
// Canonical form

struct CanonicalForm {
  std::string key;
  int sign = 1;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

inline std::string encode_key(const Diagram& d, const std::vector<const Component*>& order,
                              const std::map<CrossingId, CrossingSign>& signs) {
  std::map<CrossingId, int> number;
  std::string key = d.mode == DiagramMode::twin ? "twin" : "knot";
  for (const Component* c : order) {
    key += c->is_arc() ? "|arc:" : "|loop:";
    for (const auto& p : c->passages) {
      auto [it, inserted] = number.emplace(p.crossing, static_cast<int>(number.size()) + 1);
      key += p.is_over() ? 'O' : 'U';
      key += std::to_string(it->second);
      key += sign_char(signs.at(p.crossing));
    }
    if (c->surgery && !c->surgery->is_default())
      key += "(" + std::to_string(c->surgery->gamma) + "," + std::to_string(c->surgery->beta) + "/" +
             std::to_string(c->surgery->alpha) + ")";
  }
  return key;
}

}  // namespace detail

/// Minimal key over crossing renumbering, loop order, loop rotation and loop
/// reversal. The sign is the parity of loop reversals in the chosen
/// representative. Ties prefer fewer reversals, then smaller rotations.
inline CanonicalForm canonicalize(const Diagram& d) {
  std::vector<const Component*> arcs;
  std::vector<std::size_t> loops;
  for (std::size_t i = 0; i < d.components.size(); ++i) {
    if (d.components[i].is_arc())
      arcs.push_back(&d.components[i]);
    else
      loops.push_back(i);
  }

  // Every orientation and rotation of each loop, with the sign flips a
  // reversal implies.
  struct Variant {
    Component comp;
    bool reversed = false;
    std::size_t rotation = 0;
    std::vector<CrossingId> flipped;
  };
  std::map<std::size_t, std::vector<Variant>> variants;
  for (auto li : loops) {
    const auto& src = d.components[li];
    std::map<CrossingId, int> hits;
    for (const auto& p : src.passages) ++hits[p.crossing];
    std::vector<CrossingId> single;
    for (const auto& [id, n] : hits)
      if (n == 1) single.push_back(id);
    for (bool rev : {false, true}) {
      auto ps = src.passages;
      if (rev) std::reverse(ps.begin(), ps.end());
      const std::size_t n = std::max<std::size_t>(ps.size(), 1);
      for (std::size_t r = 0; r < n; ++r) {
        Variant v{src, rev, r, rev ? single : std::vector<CrossingId>{}};
        v.comp.passages.clear();
        for (std::size_t k = 0; k < ps.size(); ++k) v.comp.passages.push_back(ps[(r + k) % ps.size()]);
        variants[li].push_back(std::move(v));
      }
    }
  }

  struct Best {
    std::string key;
    std::size_t reversals = 0;
    std::vector<std::size_t> rotations;
  };
  std::optional<Best> best;

  std::vector<std::size_t> perm = loops;
  std::sort(perm.begin(), perm.end());
  do {
    std::vector<std::size_t> choice(perm.size(), 0);
    while (true) {
      std::vector<const Component*> order = arcs;
      auto signs = d.crossings;
      std::size_t reversals = 0;
      std::vector<std::size_t> rotations;
      for (std::size_t k = 0; k < perm.size(); ++k) {
        const auto& v = variants[perm[k]][choice[k]];
        order.push_back(&v.comp);
        if (v.reversed) {
          ++reversals;
          for (auto id : v.flipped) signs[id] = flip(signs[id]);
        }
        rotations.push_back(v.rotation);
      }
      Best cand{detail::encode_key(d, order, signs), reversals, std::move(rotations)};
      if (!best || std::tie(cand.key, cand.reversals, cand.rotations) <
                       std::tie(best->key, best->reversals, best->rotations))
        best = std::move(cand);

      std::size_t k = 0;
      for (; k < choice.size(); ++k) {
        if (++choice[k] < variants[perm[k]].size()) break;
        choice[k] = 0;
      }
      if (k == choice.size()) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  return {best->key, best->reversals % 2 ? -1 : 1};
}

}  // namespace twinskein

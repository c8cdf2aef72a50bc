// Random diagrams and random move sequences for property testing.

#pragma once

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <random>
#include <vector>

#include "classical.hpp"
#include "diagram.hpp"
#include "moves.hpp"

namespace twinskein::gen {

using Rng = std::mt19937_64;

inline std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
inline bool coin(Rng& rng) { return std::bernoulli_distribution(0.5)(rng); }
inline CrossingSign random_sign(Rng& rng) { return coin(rng) ? CrossingSign::positive : CrossingSign::negative; }

// ---------------------------------------------------------------------------
// Braids

using BraidWord = std::vector<int>;  // +-i for sigma_i^(+-1), 1-based

/// Closure of a braid as a classical code. sigma_i (positive) puts the strand
/// coming from position i over the one from i+1 and is a positive crossing.
inline ClassicalCode braid_closure(int strands, const BraidWord& word) {
  std::vector<std::vector<Passage>> along(static_cast<std::size_t>(strands));
  std::vector<int> at(static_cast<std::size_t>(strands));
  std::iota(at.begin(), at.end(), 0);
  ClassicalCode k;
  CrossingId id = 0;
  for (int g : word) {
    const auto i = static_cast<std::size_t>(std::abs(g) - 1);
    const auto left = static_cast<std::size_t>(at[i]), right = static_cast<std::size_t>(at[i + 1]);
    ++id;
    k.crossings[id] = g > 0 ? CrossingSign::positive : CrossingSign::negative;
    along[left].push_back({id, g > 0 ? StrandRole::over : StrandRole::under});
    along[right].push_back({id, g > 0 ? StrandRole::under : StrandRole::over});
    std::swap(at[i], at[i + 1]);
  }
  std::vector<std::size_t> next(static_cast<std::size_t>(strands));
  for (std::size_t pos = 0; pos < next.size(); ++pos) next[static_cast<std::size_t>(at[pos])] = pos;
  std::vector<bool> done(next.size(), false);
  for (std::size_t s = 0; s < next.size(); ++s) {
    if (done[s]) continue;
    std::vector<Passage> comp;
    for (std::size_t x = s; !done[x]; x = next[x]) {
      done[x] = true;
      comp.insert(comp.end(), along[x].begin(), along[x].end());
    }
    k.components.push_back(std::move(comp));
  }
  return k;
}

inline std::size_t closure_components(int strands, const BraidWord& word) {
  return braid_closure(strands, word).components.size();
}

inline BraidWord random_braid(Rng& rng, int strands, std::size_t length) {
  BraidWord w;
  for (std::size_t i = 0; i < length; ++i) {
    const int g = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(strands - 1)));
    w.push_back(coin(rng) ? g : -g);
  }
  return w;
}

/// Random braid whose closure is a knot. Some lengths cannot close to a knot
/// (too short, or the wrong parity), so the length grows after a few misses.
inline BraidWord random_knot_braid(Rng& rng, int strands, std::size_t length) {
  for (int misses = 0;; ++misses) {
    if (misses == 16) {
      misses = 0;
      ++length;
    }
    auto w = random_braid(rng, strands, length);
    if (closure_components(strands, w) == 1) return w;
  }
}

/// One random Reidemeister-type move on a braid word, keeping the closure's
/// isotopy class: R2 insertion or deletion, the braid relation (R3), far
/// commutation, conjugation, or Markov (de)stabilization (R1).
inline void random_braid_move(Rng& rng, int& strands, BraidWord& w) {
  for (int attempt = 0; attempt < 32; ++attempt) {
    switch (pick(rng, 6)) {
      case 0: {  // insert sigma sigma^-1
        const int g = 1 + static_cast<int>(pick(rng, static_cast<std::size_t>(strands - 1)));
        const int s = coin(rng) ? g : -g;
        const auto at = static_cast<std::ptrdiff_t>(pick(rng, w.size() + 1));
        w.insert(w.begin() + at, {s, -s});
        return;
      }
      case 1: {  // delete a cancelling pair
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
          if (w[i] == -w[i + 1]) {
            w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            return;
          }
        break;
      }
      case 2: {  // braid relation, any signs of the form a b a -> b a b with matching exponents
        if (w.size() < 3) break;
        const std::size_t i = pick(rng, w.size() - 2);
        const int a = w[i], b = w[i + 1], c = w[i + 2];
        if (a == c && std::abs(std::abs(a) - std::abs(b)) == 1 && (a > 0) == (b > 0)) {
          w[i] = b;
          w[i + 1] = a;
          w[i + 2] = b;
          return;
        }
        break;
      }
      case 3: {  // far commutation
        if (w.size() < 2) break;
        const std::size_t i = pick(rng, w.size() - 1);
        if (std::abs(std::abs(w[i]) - std::abs(w[i + 1])) >= 2) {
          std::swap(w[i], w[i + 1]);
          return;
        }
        break;
      }
      case 4: {  // conjugation
        if (w.empty()) break;
        std::rotate(w.begin(), w.begin() + 1, w.end());
        return;
      }
      case 5: {  // stabilization
        if (strands < 5) {
          w.push_back(coin(rng) ? strands : -strands);
          ++strands;
          return;
        }
        break;
      }
    }
  }
  w.insert(w.begin(), {1, -1});
}

// ---------------------------------------------------------------------------
// Welded diagrams

/// Random twin with `n` crossings scattered over both arcs and `loops` loops.
/// Every passage slot is placed independently, so loops may come out empty.
inline Diagram random_twin(Rng& rng, std::size_t n, std::size_t loops, DiagramMode mode = DiagramMode::twin) {
  Diagram d;
  d.mode = mode;
  if (mode == DiagramMode::twin) {
    d.components.push_back({ComponentKind::twin_arc, "A", {}, std::nullopt});
    d.components.push_back({ComponentKind::twin_arc, "B", {}, std::nullopt});
  } else {
    d.components.push_back({ComponentKind::knot_arc, "A", {}, std::nullopt});
  }
  for (std::size_t l = 0; l < loops; ++l)
    d.components.push_back({ComponentKind::loop, "T" + std::to_string(l + 1), {}, SurgeryLabel{}});
  for (CrossingId c = 1; c <= static_cast<CrossingId>(n); ++c) {
    d.crossings[c] = random_sign(rng);
    for (auto role : {StrandRole::over, StrandRole::under}) {
      auto& comp = d.components[pick(rng, d.components.size())];
      const auto at = static_cast<std::ptrdiff_t>(pick(rng, comp.passages.size() + 1));
      comp.passages.insert(comp.passages.begin() + at, {c, role});
    }
  }
  return d;
}

inline Diagram relabel_crossings(const Diagram& d, Rng& rng) {
  std::vector<CrossingId> ids;
  for (const auto& [id, s] : d.crossings) ids.push_back(id);
  auto fresh = ids;
  for (auto& x : fresh) x += 100;
  std::shuffle(fresh.begin(), fresh.end(), rng);
  std::map<CrossingId, CrossingId> to;
  for (std::size_t i = 0; i < ids.size(); ++i) to[ids[i]] = fresh[i];
  Diagram out = d;
  out.crossings.clear();
  for (const auto& [id, s] : d.crossings) out.crossings[to[id]] = s;
  for (auto& c : out.components)
    for (auto& p : c.passages) p.crossing = to[p.crossing];
  return out;
}

/// Reorders the loops and rotates each loop, which does not change the diagram.
inline Diagram shuffle_loops(const Diagram& d, Rng& rng) {
  Diagram out = d;
  std::vector<Component> arcs, loops;
  for (auto& c : out.components) (c.is_arc() ? arcs : loops).push_back(c);
  std::shuffle(loops.begin(), loops.end(), rng);
  for (auto& l : loops)
    if (!l.passages.empty())
      std::rotate(l.passages.begin(), l.passages.begin() + static_cast<std::ptrdiff_t>(pick(rng, l.passages.size())),
                  l.passages.end());
  out.components = arcs;
  out.components.insert(out.components.end(), loops.begin(), loops.end());
  return out;
}

namespace detail {

inline void insert_at(Component& c, std::size_t gap, std::initializer_list<Passage> ps) {
  c.passages.insert(c.passages.begin() + static_cast<std::ptrdiff_t>(gap), ps);
}

}  // namespace detail

/// Adds a kink anywhere.
inline Diagram insert_r1(const Diagram& d, Rng& rng) {
  Diagram out = d;
  const CrossingId c = out.next_crossing_id();
  out.crossings[c] = random_sign(rng);
  auto& comp = out.components[pick(rng, out.components.size())];
  const auto gap = pick(rng, comp.passages.size() + 1);
  if (coin(rng))
    detail::insert_at(comp, gap, {{c, StrandRole::over}, {c, StrandRole::under}});
  else
    detail::insert_at(comp, gap, {{c, StrandRole::under}, {c, StrandRole::over}});
  return out;
}

/// Pushes one strand across another, creating two crossings of opposite sign.
inline Diagram insert_r2(const Diagram& d, Rng& rng) {
  Diagram out = d;
  const CrossingId c = out.next_crossing_id(), c2 = c + 1;
  const auto s = random_sign(rng);
  out.crossings[c] = s;
  out.crossings[c2] = flip(s);
  const auto oi = pick(rng, out.components.size());
  const auto og = pick(rng, out.components[oi].passages.size() + 1);
  detail::insert_at(out.components[oi], og, {{c, StrandRole::over}, {c2, StrandRole::over}});
  const auto ui = pick(rng, out.components.size());
  auto& uc = out.components[ui];
  std::size_t ug = pick(rng, uc.passages.size() + 1);
  if (ui == oi && ug == og + 1) ug = og;  // never split the over pair
  if (coin(rng))
    detail::insert_at(uc, ug, {{c, StrandRole::under}, {c2, StrandRole::under}});
  else
    detail::insert_at(uc, ug, {{c2, StrandRole::under}, {c, StrandRole::under}});
  return out;
}

/// Slides a strand onto a twin intersection point: the reverse of an F move.
inline Diagram insert_f(const Diagram& d, Rng& rng) {
  if (d.mode != DiagramMode::twin) return d;
  Diagram out = d;
  const CrossingId c = out.next_crossing_id();
  out.crossings[c] = random_sign(rng);
  const bool start = coin(rng);
  const bool a_over = coin(rng);
  std::size_t seen = 0;
  for (auto& comp : out.components) {
    if (comp.kind != ComponentKind::twin_arc) continue;
    const StrandRole role = (seen == 0) == a_over ? StrandRole::over : StrandRole::under;
    detail::insert_at(comp, start ? 0 : comp.passages.size(), {{c, role}});
    ++seen;
  }
  return out;
}

/// Commutes a random adjacent pair of overs, if any.
inline Diagram random_commute(const Diagram& d, Rng& rng) {
  std::vector<Position> sites;
  for (const auto& c : d.components)
    for (std::size_t i = 0; i < c.passages.size(); ++i) {
      auto j = twinskein::detail::next_index(c, i);
      if (j && c.passages[i].is_over() && c.passages[*j].is_over()) sites.push_back({c.label, i});
    }
  if (sites.empty()) return d;
  return apply_welded_commute(d, sites[pick(rng, sites.size())]);
}

inline Diagram random_r3(const Diagram& d, Rng& rng) {
  auto sites = r3_candidates(d);
  if (sites.empty()) return d;
  return apply_r3(d, sites[pick(rng, sites.size())]);
}

enum class MoveChoice { r1, r2, r3, commute, f };

/// Applies `count` random equivalence moves (insertions of R1/R2/F
/// configurations, R3 slides and over-commutes).
inline Diagram scramble(const Diagram& d, Rng& rng, std::size_t count) {
  Diagram out = d;
  for (std::size_t i = 0; i < count; ++i) {
    switch (static_cast<MoveChoice>(pick(rng, 5))) {
      case MoveChoice::r1: out = insert_r1(out, rng); break;
      case MoveChoice::r2: out = insert_r2(out, rng); break;
      case MoveChoice::r3: out = random_r3(out, rng); break;
      case MoveChoice::commute: out = random_commute(out, rng); break;
      case MoveChoice::f: out = insert_f(out, rng); break;
    }
  }
  return out;
}

}  // namespace twinskein::gen

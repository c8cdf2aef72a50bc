// Conway and Alexander polynomials of classical knots by skein recursion on
// closed Gauss codes. This is independent of the twin engine and is used to
// check it: walking each component from its base point, the first crossing
// met at an under-passage is switched and smoothed. A diagram with no such
// crossing is descending, hence an unlink, so the recursion always ends.

#pragma once

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "classical.hpp"
#include "laurent.hpp"

namespace twinskein {

namespace detail {

inline std::string conway_key(const ClassicalCode& k) {
  std::map<CrossingId, int> number;
  std::string key;
  for (const auto& comp : k.components) {
    key += '|';
    for (const auto& p : comp) {
      auto [it, inserted] = number.emplace(p.crossing, static_cast<int>(number.size()) + 1);
      key += p.is_over() ? 'O' : 'U';
      key += std::to_string(it->second);
      key += sign_char(k.crossings.at(p.crossing));
    }
  }
  return key;
}

inline LaurentPoly conway_rec(const ClassicalCode& k, std::map<std::string, LaurentPoly>& memo) {
  std::optional<CrossingId> target;
  {
    std::set<CrossingId> seen;
    for (const auto& comp : k.components) {
      for (const auto& p : comp) {
        if (seen.insert(p.crossing).second && !p.is_over()) {
          target = p.crossing;
          break;
        }
      }
      if (target) break;
    }
  }
  if (!target) return LaurentPoly(k.components.size() == 1 ? 1 : 0);

  const std::string key = conway_key(k);
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const CrossingId c = *target;
  ClassicalCode switched = k;
  for (auto& comp : switched.components)
    for (auto& p : comp)
      if (p.crossing == c) p.role = opposite(p.role);
  switched.crossings[c] = flip(k.crossings.at(c));

  ClassicalCode smoothed;
  smoothed.crossings = k.crossings;
  smoothed.crossings.erase(c);
  std::vector<std::pair<std::size_t, std::size_t>> at;
  for (std::size_t ci = 0; ci < k.components.size(); ++ci)
    for (std::size_t i = 0; i < k.components[ci].size(); ++i)
      if (k.components[ci][i].crossing == c) at.emplace_back(ci, i);
  using Seq = std::vector<Passage>;
  if (at[0].first == at[1].first) {
    // Self-crossing: the component splits in two.
    const auto ci = at[0].first;
    const auto& p = k.components[ci];
    const auto i = at[0].second, j = at[1].second;
    for (std::size_t o = 0; o < k.components.size(); ++o)
      if (o != ci) smoothed.components.push_back(k.components[o]);
    Seq outer(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(i));
    outer.insert(outer.end(), p.begin() + static_cast<std::ptrdiff_t>(j) + 1, p.end());
    smoothed.components.push_back(std::move(outer));
    smoothed.components.emplace_back(p.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                     p.begin() + static_cast<std::ptrdiff_t>(j));
  } else {
    // Crossing between two components: they merge.
    const auto [a, i] = at[0];
    const auto [b, j] = at[1];
    const auto& P = k.components[a];
    const auto& Q = k.components[b];
    for (std::size_t o = 0; o < k.components.size(); ++o)
      if (o != a && o != b) smoothed.components.push_back(k.components[o]);
    Seq merged(P.begin(), P.begin() + static_cast<std::ptrdiff_t>(i));
    merged.insert(merged.end(), Q.begin() + static_cast<std::ptrdiff_t>(j) + 1, Q.end());
    merged.insert(merged.end(), Q.begin(), Q.begin() + static_cast<std::ptrdiff_t>(j));
    merged.insert(merged.end(), P.begin() + static_cast<std::ptrdiff_t>(i) + 1, P.end());
    smoothed.components.push_back(std::move(merged));
  }

  const LaurentPoly z = LaurentPoly::var();
  LaurentPoly value = conway_rec(switched, memo);
  const LaurentPoly branch = z * conway_rec(smoothed, memo);
  if (k.crossings.at(c) == CrossingSign::positive)
    value += branch;
  else
    value -= branch;
  memo.emplace(key, value);
  return value;
}

}  // namespace detail

/// Conway polynomial in z of a classical knot or link code.
inline LaurentPoly conway(const ClassicalCode& k) {
  check_classical(k);
  std::map<std::string, LaurentPoly> memo;
  return detail::conway_rec(k, memo);
}

/// Symmetrized Alexander polynomial in u = t^(1/2): the Conway polynomial at
/// z = u - u^-1.
inline LaurentPoly alexander_symmetrized(const ClassicalKnotCode& k) {
  check_classical(k, true);
  return conway(k).compose(LaurentPoly::skein_multiplier());
}

/// Delta_K(t^2), which is the Conway polynomial at z = t - t^-1.
inline LaurentPoly alexander_at_t_squared(const ClassicalKnotCode& k) { return alexander_symmetrized(k); }

/// Symmetrized Delta_K(t) with integer exponents (knots only, where every
/// exponent of the u-form is even).
inline LaurentPoly alexander_in_t(const ClassicalKnotCode& k) {
  const auto u = alexander_symmetrized(k);
  LaurentPoly::TermMap half;
  for (const auto& [e, c] : u.terms()) {
    if (e % 2 != 0) throw std::logic_error("odd exponent in a knot's symmetrized Alexander polynomial");
    half.emplace(e / 2, c);
  }
  return LaurentPoly::from_terms(half);
}

}  // namespace twinskein

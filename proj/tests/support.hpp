#pragma once

#include <random>

#include <gtest/gtest.h>

#include "twinskein.hpp"
#include "twinskein/acceptance.hpp"
#include "twinskein/generators.hpp"

#ifndef TWINSKEIN_FIXTURES
#define TWINSKEIN_FIXTURES "fixtures"
#endif

namespace twinskein::ts {

inline std::filesystem::path fixture(const std::string& name) { return std::filesystem::path(TWINSKEIN_FIXTURES) / name; }

inline LaurentPoly P(const char* text) { return LaurentPoly::parse(text); }

inline LaurentPoly random_poly(gen::Rng& rng, int span = 4, int terms = 4) {
  std::uniform_int_distribution<int> e(-span, span), c(-5, 5);
  LaurentPoly::TermMap m;
  const int n = static_cast<int>(gen::pick(rng, terms + 1));
  for (int i = 0; i < n; ++i) m[e(rng)] += c(rng);
  return LaurentPoly::from_terms(m);
}

// Value of a diagram, or nullopt when the engine leaves it unresolved.
inline std::optional<LaurentPoly> value(const Diagram& d, const SkeinConfig& cfg = {}) {
  auto r = evaluate(d, cfg);
  if (!r.resolved()) return std::nullopt;
  return r.value();
}

}  // namespace twinskein::ts

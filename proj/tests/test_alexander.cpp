#include "support.hpp"

using namespace twinskein;

namespace {

LaurentPoly Z(const char* text) { return LaurentPoly::parse(text, 'z'); }

// Symmetrized Alexander polynomials with Delta(1) = 1.
const std::map<std::string, std::string>& alexander_table() {
  static const std::map<std::string, std::string> t = {
      {"unknot", "1"},
      {"3_1", "t^-1 - 1 + t"},
      {"4_1", "-t^-1 + 3 - t"},
      {"5_1", "t^-2 - t^-1 + 1 - t + t^2"},
      {"5_2", "2t^-1 - 3 + 2t"},
      {"6_1", "-2t^-1 + 5 - 2t"},
      {"6_2", "-t^-2 + 3t^-1 - 3 + 3t - t^2"},
      {"6_3", "t^-2 - 3t^-1 + 5 - 3t + t^2"},
      {"7_1", "t^-3 - t^-2 + t^-1 - 1 + t - t^2 + t^3"},
      {"7_2", "3t^-1 - 5 + 3t"},
      {"7_3", "2t^-2 - 3t^-1 + 3 - 3t + 2t^2"},
      {"7_4", "4t^-1 - 7 + 4t"},
      {"7_5", "2t^-2 - 4t^-1 + 5 - 4t + 2t^2"},
      {"7_6", "-t^-2 + 5t^-1 - 7 + 5t - t^2"},
      {"7_7", "t^-2 - 5t^-1 + 9 - 5t + t^2"},
      {"8_19", "t^-3 - t^-2 + 1 - t^2 + t^3"},
      {"8_20", "t^-2 - 2t^-1 + 3 - 2t + t^2"},
      {"8_21", "-t^-2 + 4t^-1 - 5 + 4t - t^2"},
  };
  return t;
}

// Inserts a kink O c U c (or U c O c) at a random gap of a random component.
ClassicalCode with_kink(const ClassicalCode& k, gen::Rng& rng) {
  ClassicalCode out = k;
  const CrossingId id = out.crossings.empty() ? 1 : out.crossings.rbegin()->first + 1;
  out.crossings[id] = gen::random_sign(rng);
  auto& comp = out.components[gen::pick(rng, out.components.size())];
  const auto at = static_cast<std::ptrdiff_t>(gen::pick(rng, comp.size() + 1));
  const bool over_first = gen::coin(rng);
  comp.insert(comp.begin() + at, {Passage{id, over_first ? StrandRole::over : StrandRole::under},
                                  Passage{id, over_first ? StrandRole::under : StrandRole::over}});
  return out;
}

}  // namespace

TEST(Conway, BaseCases) {
  EXPECT_EQ(conway(table_knot("unknot")), LaurentPoly(1));
  ClassicalCode unlink;
  unlink.components = {{}, {}};
  EXPECT_TRUE(conway(unlink).is_zero());
  EXPECT_EQ(conway(table_knot("3_1")), Z("1 + z^2"));
  EXPECT_EQ(conway(table_knot("4_1")), Z("1 - z^2"));
}

TEST(Conway, HopfLinkAndMirror) {
  EXPECT_EQ(conway(gen::braid_closure(2, {1, 1})), Z("z"));
  EXPECT_EQ(conway(gen::braid_closure(2, {-1, -1})), Z("-z"));
  EXPECT_EQ(conway(gen::braid_closure(2, {-1, -1, -1})), Z("1 + z^2"));
  EXPECT_TRUE(conway(gen::braid_closure(2, {1, -1})).is_zero());
}

TEST(Conway, RejectsInvalidCodes) {
  ClassicalCode bad;
  bad.components = {{Passage{1, StrandRole::over}}};
  bad.crossings[1] = CrossingSign::positive;
  EXPECT_THROW(conway(bad), InvalidClassicalCode);
  ClassicalCode link;
  link.components = {{}, {}};
  EXPECT_THROW(alexander_symmetrized(link), InvalidClassicalCode);
}

TEST(Alexander, Examples) {
  EXPECT_EQ(alexander_symmetrized(table_knot("unknot")), LaurentPoly(1));
  EXPECT_EQ(alexander_symmetrized(table_knot("3_1")), LaurentPoly::parse("u^-2 - 1 + u^2", 'u'));
  EXPECT_EQ(alexander_in_t(table_knot("3_1")), ts::P("t^-1 - 1 + t"));
  EXPECT_EQ(alexander_at_t_squared(table_knot("3_1")), ts::P("t^-2 - 1 + t^2"));
}

TEST(Alexander, WholeTableMatchesKnownPolynomials) {
  for (const auto& k : knot_table()) {
    const auto it = alexander_table().find(k.name);
    ASSERT_NE(it, alexander_table().end()) << k.name;
    EXPECT_EQ(alexander_in_t(k), ts::P(it->second.c_str())) << k.name;
    EXPECT_TRUE(alexander_symmetrized(k).is_symmetric()) << k.name;
    EXPECT_EQ(alexander_at_t_squared(k), substitute_square(alexander_in_t(k))) << k.name;
  }
}

TEST(ConwayProperty, BraidMovesPreserveConway) {
  gen::Rng rng(51);
  for (int i = 0; i < 200; ++i) {
    int strands = 2 + static_cast<int>(gen::pick(rng, 3));
    auto w = gen::random_braid(rng, strands, 1 + gen::pick(rng, 7));
    const auto before = conway(gen::braid_closure(strands, w));
    for (std::size_t s = 0, n = 1 + gen::pick(rng, 8); s < n; ++s) gen::random_braid_move(rng, strands, w);
    ASSERT_EQ(conway(gen::braid_closure(strands, w)), before) << "case " << i;
  }
}

TEST(ConwayProperty, KinksDoNotChangeConway) {
  gen::Rng rng(52);
  for (const auto& k : knot_table()) {
    if (table_crossing_number(k.name) > 7) continue;
    ASSERT_EQ(conway(with_kink(k, rng)), conway(k)) << k.name;
  }
}

TEST(ConwayProperty, SkeinRelation) {
  gen::Rng rng(53);
  for (int i = 0; i < 200; ++i) {
    const int strands = 2 + static_cast<int>(gen::pick(rng, 3));
    auto w = gen::random_braid(rng, strands, 1 + gen::pick(rng, 6));
    const std::size_t at = gen::pick(rng, w.size());
    auto plus = w, minus = w, zero = w;
    plus[at] = std::abs(w[at]);
    minus[at] = -std::abs(w[at]);
    zero.erase(zero.begin() + static_cast<std::ptrdiff_t>(at));
    const auto lhs = conway(gen::braid_closure(strands, plus)) - conway(gen::braid_closure(strands, minus));
    ASSERT_EQ(lhs, LaurentPoly::var() * conway(gen::braid_closure(strands, zero))) << "case " << i;
  }
}

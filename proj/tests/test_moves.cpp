#include "support.hpp"

using namespace twinskein;

namespace {

std::size_t count_kind(const std::vector<MoveEvent>& events, MoveKind k) {
  return static_cast<std::size_t>(
      std::count_if(events.begin(), events.end(), [&](const MoveEvent& e) { return e.kind == k; }));
}

}  // namespace

TEST(Moves, R1Examples) {
  const auto kink = parse("twin { arc A: O1+ U1+ ; arc B: ; }");
  const auto r = apply_r1(kink, {"A", 0});
  EXPECT_TRUE(r.components[0].passages.empty());
  EXPECT_TRUE(r.crossings.empty());

  const auto loop = parse("twin { arc A: ; arc B: ; loop T: O1- U1- ; }");
  const auto l = apply_r1(loop, {"T", 0});
  ASSERT_EQ(l.components.size(), 3u);
  EXPECT_TRUE(l.components[2].passages.empty());

  // Wrapping adjacency on a loop.
  const auto wrap = parse("twin { arc A: ; arc B: ; loop T: U1- O2+ U2+ O1- ; }");
  EXPECT_EQ(apply_r1(wrap, {"T", 3}).crossing_count(), 1u);

  EXPECT_THROW(apply_r1(parse("twin { arc A: O1+ U2+ U1+ O2+ ; arc B: ; }"), {"A", 0}), MoveError);
}

TEST(Moves, R2Examples) {
  const auto d = parse("twin { arc A: O1+ O2- ; arc B: ; loop T: U2- U1+ ; }");
  const auto r = apply_r2(d, {"A", 0});
  EXPECT_TRUE(r.components[0].passages.empty());
  EXPECT_TRUE(r.components[2].passages.empty());
  EXPECT_FALSE(r.crossings.contains(1));
  EXPECT_FALSE(r.crossings.contains(2));

  EXPECT_THROW(apply_r2(parse("twin { arc A: O1+ O2+ ; arc B: ; loop T: U2+ U1+ ; }"), {"A", 0}), MoveError);
  EXPECT_NO_THROW(apply_r2(parse("twin { arc A: U1+ U2- ; arc B: O2- O1+ ; }"), {"A", 0}));
}

TEST(Moves, WeldedCommuteExamples) {
  const auto d = parse("twin { arc A: O1+ O2- U1+ U2- ; arc B: ; }");
  const auto c = apply_welded_commute(d, {"A", 0});
  EXPECT_EQ(serialize(c), "twin { arc A: O2- O1+ U1+ U2- ; arc B: ; }");
  EXPECT_EQ(apply_welded_commute(c, {"A", 0}), d);
  EXPECT_THROW(apply_welded_commute(d, {"A", 2}), MoveError);
  EXPECT_THROW(apply_welded_commute(d, {"A", 1}), MoveError);
}

TEST(Moves, FMoveExamples) {
  const auto d = parse("twin { arc A: O1+ O2+ ; arc B: U1+ U2+ ; }");
  const auto f = apply_f_move(d, 1);
  EXPECT_EQ(serialize(f), "twin { arc A: O2+ ; arc B: U2+ ; }");
  EXPECT_EQ(apply_f_move(f, 2).crossing_count(), 0u);

  EXPECT_THROW(apply_f_move(parse("twin { arc A: O1+ O2+ ; arc B: U2+ U1+ ; }"), 1), MoveError);
  EXPECT_THROW(apply_f_move(parse("twin { arc A: O1+ U1+ ; arc B: ; }"), 1), MoveError);
  EXPECT_THROW(apply_f_move(parse("knot { arc A: O1+ U1+ ; }"), 1), MoveError);
}

TEST(Moves, SimplifyExamples) {
  const auto s = simplify(parse("twin { arc A: O1+ U1+ ; arc B: ; }"));
  EXPECT_TRUE(is_standard_twin(s.diagram));
  ASSERT_EQ(s.events.size(), 1u);
  EXPECT_EQ(s.events[0].kind, MoveKind::R1);

  const auto empty = parse("twin { arc A: ; arc B: ; loop T: ; }");
  EXPECT_EQ(simplify(empty).diagram, empty);
  EXPECT_TRUE(simplify(empty).events.empty());

  // Arc B of the Giller twin carries only a removable kink and an R2 pair.
  const auto g = parse("twin { arc A: U1+ U2+ O3+ U4+ O1+ U3+ O4+ O2+ O6+ O7- ; arc B: O5- U5- U7- U6+ ; }");
  const auto sg = simplify(g);
  EXPECT_TRUE(sg.diagram.components[1].passages.empty());
  EXPECT_EQ(sg.diagram.crossing_count(), 4u);
  EXPECT_EQ(count_kind(sg.events, MoveKind::R1), 1u);
  EXPECT_EQ(count_kind(sg.events, MoveKind::R2), 1u);
}

TEST(Moves, SimplifyUsesCommuteToEnableR1) {
  // The kink on crossing 1 is hidden behind the over-passage of crossing 2.
  const auto d = parse("twin { arc A: O1+ O2+ U1+ ; arc B: U2+ ; }");
  const auto s = simplify(d);
  EXPECT_EQ(s.diagram.crossing_count(), 0u);
  EXPECT_GE(count_kind(s.events, MoveKind::welded_commute), 1u);
  const auto j = to_json(s.events);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["move_kind"], "welded_commute");
}

TEST(Moves, StandardAndSplit) {
  EXPECT_TRUE(is_standard_twin(parse("twin { arc A: ; arc B: ; }")));
  EXPECT_FALSE(is_standard_twin(parse("twin { arc A: ; arc B: ; loop T: ; }")));
  EXPECT_TRUE(is_standard_twin(parse("twin { arc A: O1+ U1+ ; arc B: ; }")));

  EXPECT_TRUE(is_split(parse("twin { arc A: ; arc B: ; loop T: ; }")));
  EXPECT_FALSE(is_split(parse("twin { arc A: O1+ U2+ ; arc B: ; loop T: U1+ O2+ ; }")));
  EXPECT_TRUE(is_split(parse("twin { arc A: ; arc B: ; loop T: O1+ U2- ; loop S: U1+ O2- ; }")));
  // An R2 pair between arc and loop hides the split.
  EXPECT_TRUE(is_split(parse("twin { arc A: O1+ O2- ; arc B: ; loop T: U2- U1+ ; }")));
}

TEST(Moves, CanonicalExamples) {
  const auto std_twin = canonicalize(parse("twin { arc A: ; arc B: ; }"));
  EXPECT_EQ(std_twin.key, "twin|arc:|arc:");
  EXPECT_EQ(std_twin.sign, 1);

  const auto d = parse("twin { arc A: O1+ U2- ; arc B: ; loop T: U1+ O2- O3+ U3+ ; }");
  const auto a = canonicalize(d), b = canonicalize(reverse_component(d, "T"));
  EXPECT_EQ(a.key, b.key);
  EXPECT_EQ(a.sign, -b.sign);

  gen::Rng rng(31);
  EXPECT_EQ(canonicalize(gen::relabel_crossings(d, rng)), a);
}

TEST(Moves, R3Example) {
  // Three strands in one triangle: top over middle and bottom, middle over bottom.
  const auto d = parse("twin { arc A: O1+ O2+ ; arc B: U1+ O3+ ; loop T: U2+ U3+ ; }");
  ASSERT_TRUE(r3_site(d, {1, 2, 3}));
  const auto r = apply_r3(d, {1, 2, 3});
  EXPECT_EQ(serialize(r), "twin { arc A: O2+ O1+ ; arc B: O3+ U1+ ; loop T: U3+ U2+ ; }");
  EXPECT_TRUE(validate(r).ok());
  EXPECT_EQ(apply_r3(r, {1, 2, 3}), d);
  EXPECT_THROW(apply_r3(parse("twin { arc A: O1+ O2- ; arc B: U1+ O3+ ; loop T: U2- U3+ ; }"), {1, 2, 3}),
               MoveError);
}

TEST(MovesProperty, MovesPreserveValidityAndCrossingBounds) {
  gen::Rng rng(32);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen::random_twin(rng, gen::pick(rng, 8), gen::pick(rng, 3));
    const auto s = simplify(d);
    ASSERT_TRUE(validate(s.diagram).ok());
    ASSERT_LE(s.diagram.crossing_count(), d.crossing_count());
    ASSERT_EQ(simplify(s.diagram).diagram, s.diagram);
    ASSERT_EQ(simplify(d).diagram, s.diagram);

    const auto c = gen::random_commute(d, rng);
    ASSERT_TRUE(validate(c).ok());
    ASSERT_EQ(c.crossing_count(), d.crossing_count());

    for (const auto& ids : r3_candidates(d)) {
      const auto r = apply_r3(d, ids);
      ASSERT_TRUE(validate(r).ok());
      ASSERT_EQ(r.crossings, d.crossings);
    }
  }
}

TEST(MovesProperty, InsertedMovesSimplifyAway) {
  gen::Rng rng(33);
  for (int i = 0; i < 300; ++i) {
    const auto d = simplify(gen::random_twin(rng, gen::pick(rng, 6), gen::pick(rng, 2)), false).diagram;
    auto grown = gen::coin(rng) ? gen::insert_r1(d, rng) : gen::insert_r2(d, rng);
    ASSERT_TRUE(validate(grown).ok());
    ASSERT_LE(simplify(grown, false).diagram.crossing_count(), d.crossing_count()) << serialize(grown);
  }
}

TEST(MovesProperty, CanonicalQuotient) {
  gen::Rng rng(34);
  std::size_t signed_cases = 0;
  for (int i = 0; i < 600; ++i) {
    const auto d = gen::random_twin(rng, gen::pick(rng, 7), 1 + gen::pick(rng, 2));
    const auto c = canonicalize(d);
    ASSERT_EQ(canonicalize(gen::relabel_crossings(d, rng)), c);
    ASSERT_EQ(canonicalize(gen::shuffle_loops(d, rng)), c);
    const auto& loop = d.components.back();
    const auto r = canonicalize(reverse_component(d, loop.label));
    ASSERT_EQ(r.key, c.key);

    // With a single loop meeting the arcs an odd number of times, reversal
    // changes the sign multiset, so the two orientations cannot coincide.
    if (d.loop_count() != 1) continue;
    std::size_t mixed = 0;
    for (const auto& [id, s] : d.crossings)
      if (classify_crossing(d, id) == CrossingClass::arc_loop) ++mixed;
    if (mixed % 2 == 0) continue;
    ASSERT_EQ(r.sign, -c.sign) << serialize(d);
    ++signed_cases;
  }
  EXPECT_GE(signed_cases, 100u);
}

TEST(Moves, SymmetricLoopHasNoSign) {
  // A lone kink on a loop reads the same in both directions.
  const auto d = parse("twin { arc A: O1- ; arc B: U1- ; loop T: U4+ O4+ ; }");
  EXPECT_EQ(canonicalize(reverse_component(d, "T")), canonicalize(d));
}

TEST(MovesProperty, CrossinglessLoopFreeTwinIsStandard) {
  gen::Rng rng(35);
  for (int i = 0; i < 50; ++i) {
    const auto d = gen::random_twin(rng, 0, 0);
    ASSERT_TRUE(is_standard_twin(d));
  }
}

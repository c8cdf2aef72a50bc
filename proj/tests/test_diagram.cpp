#include <algorithm>
#include <set>

#include "support.hpp"

using namespace twinskein;

namespace {

bool has_code(const ValidationReport& r, const std::string& code) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const Violation& v) { return v.code == code; });
}

std::multiset<CrossingId> passage_ids(const Diagram& d) {
  std::multiset<CrossingId> ids;
  for (const auto& c : d.components)
    for (const auto& p : c.passages) ids.insert(p.crossing);
  return ids;
}

// Blocks as sets of labels, independent of component order.
std::set<std::set<std::string>> block_sets(const Diagram& d) {
  std::set<std::set<std::string>> out;
  for (const auto& b : connected_block_labels(d)) out.emplace(b.begin(), b.end());
  return out;
}

}  // namespace

TEST(Diagram, ParseStandardTwin) {
  const auto d = parse("twin { arc A: ; arc B: ; }");
  EXPECT_EQ(d.mode, DiagramMode::twin);
  ASSERT_EQ(d.components.size(), 2u);
  EXPECT_TRUE(d.components[0].passages.empty());
  EXPECT_TRUE(d.components[1].passages.empty());
  EXPECT_EQ(d.crossing_count(), 0u);
  EXPECT_EQ(serialize(d), "twin { arc A: ; arc B: ; }");
}

TEST(Diagram, ParseKink) {
  const auto d = parse("twin { arc A: O1+ U1+ ; arc B: ; }");
  ASSERT_EQ(d.components[0].passages.size(), 2u);
  EXPECT_EQ(d.sign(1), CrossingSign::positive);
  EXPECT_EQ(classify_crossing(d, 1), CrossingClass::arc_self);
}

TEST(Diagram, MissingUnderPassage) {
  EXPECT_THROW(parse("twin { arc A: O1+ ; arc B: ; }"), InvalidDiagram);
  try {
    parse("twin { arc A: O1+ ; arc B: ; }");
  } catch (const InvalidDiagram& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations().front().code, "role-pairing");
  }
}

TEST(Diagram, SyntaxErrorCarriesPosition) {
  try {
    parse("twin {\n  arc A: O1+ X1+ ;\n}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_GT(e.column(), 1u);
  }
  EXPECT_THROW(parse("twin { arc A: O1+ U1+ "), ParseError);
  EXPECT_THROW(parse("link { }"), ParseError);
}

TEST(Diagram, CommentsAreIgnored) {
  const auto d = parse("# header\ntwin { arc A: ;\n  # note\n arc B: ; }\n");
  EXPECT_EQ(serialize(d), "twin { arc A: ; arc B: ; }");
}

TEST(Diagram, SignMismatchIsReported) {
  const auto r = parse_unchecked("twin { arc A: O1+ U1- ; arc B: ; }");
  ASSERT_EQ(r.sign_conflicts.size(), 1u);
  EXPECT_EQ(r.sign_conflicts.front().code, "sign-mismatch");
  EXPECT_THROW(parse("twin { arc A: O1+ U1- ; arc B: ; }"), InvalidDiagram);
}

TEST(Diagram, ValidateExamples) {
  EXPECT_TRUE(validate(parse("twin { arc A: ; arc B: ; }")).ok());

  Diagram twice_over = parse("twin { arc A: O1+ U1+ ; arc B: ; }");
  twice_over.components[0].passages[1].role = StrandRole::over;
  const auto r = validate(twice_over);
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].code, "role-pairing");

  Diagram labelled = parse("twin { arc A: ; arc B: ; }");
  labelled.components[0].surgery = SurgeryLabel{};
  const auto s = validate(labelled);
  ASSERT_EQ(s.violations.size(), 1u);
  EXPECT_EQ(s.violations[0].code, "surgery-on-arc");
}

TEST(Diagram, ModeArity) {
  Diagram d = parse("twin { arc A: ; arc B: ; }");
  d.components.pop_back();
  EXPECT_TRUE(has_code(validate(d), "mode-arity"));
  EXPECT_THROW(parse("knot { arc A: ; arc B: ; }"), InvalidDiagram);
  EXPECT_NO_THROW(parse("knot { arc A: O1+ U1+ ; }"));
}

TEST(Diagram, UnknownCrossingAndDuplicateLabel) {
  Diagram d = parse("twin { arc A: O1+ U1+ ; arc B: ; }");
  d.crossings.erase(1);
  EXPECT_TRUE(has_code(validate(d), "unknown-crossing"));
  EXPECT_THROW(parse("twin { arc A: ; arc A: ; }"), InvalidDiagram);
}

TEST(Diagram, SurgeryMetadataRoundTrip) {
  const auto d = parse("twin { arc A: ; arc B: ; loop T: (0, 0/1) ; }");
  EXPECT_NE(serialize(d).find("(0, 0/1)"), std::string::npos);
  const auto e = parse("twin { arc A: ; arc B: ; loop T: (2, 3/5) ; }");
  ASSERT_TRUE(e.components[2].surgery);
  EXPECT_EQ(e.components[2].surgery->gamma, 2);
  EXPECT_EQ(e.components[2].surgery->beta, 3);
  EXPECT_EQ(e.components[2].surgery->alpha, 5);
  EXPECT_EQ(parse(serialize(e)), e);
}

TEST(Diagram, FixturesAreIdempotentUnderSerialize) {
  for (const char* name : {"tw_std.twin", "tw_split.twin", "tw_giller.twin", "tw_unknot_pair.twin", "giller_ex.knot"}) {
    const auto once = serialize(load_diagram(ts::fixture(name)));
    EXPECT_EQ(serialize(parse(once)), once) << name;
  }
}

TEST(Diagram, ClassifyExamples) {
  const auto d = parse("twin { arc A: O1+ U2- O3+ ; arc B: U3+ ; loop T: U1+ O4- U4- ; loop S: O2- ; }");
  EXPECT_EQ(classify_crossing(d, 1), CrossingClass::arc_loop);
  EXPECT_EQ(classify_crossing(d, 2), CrossingClass::arc_loop);
  EXPECT_EQ(classify_crossing(d, 3), CrossingClass::arc_arc);
  EXPECT_EQ(classify_crossing(d, 4), CrossingClass::loop_self);
  EXPECT_THROW(classify_crossing(d, 9), UnknownCrossing);
  const auto e = parse("twin { arc A: ; arc B: ; loop T: U1+ ; loop S: O1+ ; }");
  EXPECT_EQ(classify_crossing(e, 1), CrossingClass::loop_loop);
}

TEST(Diagram, ReverseExamples) {
  const auto empty_loop = parse("twin { arc A: ; arc B: ; loop T: (0, 0/1) ; }");
  EXPECT_EQ(reverse_component(empty_loop, "T"), empty_loop);

  const auto d = parse("twin { arc A: O1+ ; arc B: ; loop T: U1+ (0, 0/1) ; }");
  EXPECT_EQ(reverse_component(d, "T").sign(1), CrossingSign::negative);
  EXPECT_EQ(reverse_component(reverse_component(d, "T"), "T"), d);

  const auto kink = parse("twin { arc A: O1+ U2- U1+ O2- ; arc B: ; }");
  const auto r = reverse_component(kink, "A");
  EXPECT_EQ(r.crossings, kink.crossings);
  EXPECT_EQ(serialize(r), "twin { arc A: O2- U1+ U2- O1+ ; arc B: ; }");
  EXPECT_THROW(reverse_component(d, "Q"), UnknownComponent);
}

TEST(Diagram, BlockExamples) {
  using Blocks = std::set<std::set<std::string>>;
  EXPECT_EQ(block_sets(parse("twin { arc A: ; arc B: ; loop T: ; }")), (Blocks{{"A"}, {"B"}, {"T"}}));
  EXPECT_EQ(block_sets(parse("twin { arc A: O1+ ; arc B: ; loop T: U1+ ; }")), (Blocks{{"A", "T"}, {"B"}}));
  EXPECT_EQ(block_sets(parse("twin { arc A: ; arc B: ; loop T: O1+ ; loop S: U1+ ; }")),
            (Blocks{{"A"}, {"B"}, {"S", "T"}}));
}

TEST(Diagram, JsonMirrorsFields) {
  const auto j = to_json(parse("twin { arc A: O1+ ; arc B: ; loop T: U1+ (0, 0/1) ; }"));
  EXPECT_EQ(j["mode"], "twin");
  EXPECT_EQ(j["components"].size(), 3u);
  EXPECT_EQ(j["components"][2]["kind"], "loop");
}

TEST(DiagramProperty, RoundTripAndNormalForm) {
  gen::Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen::random_twin(rng, gen::pick(rng, 9), gen::pick(rng, 3),
                                    gen::coin(rng) ? DiagramMode::twin : DiagramMode::two_knot);
    ASSERT_TRUE(validate(d).ok());
    const auto text = serialize(normalize(d));
    ASSERT_EQ(normalize(parse(serialize(d))), normalize(d));
    ASSERT_EQ(serialize(parse(text)), text);
    ASSERT_EQ(normalize(normalize(d)), normalize(d));
  }
}

TEST(DiagramProperty, ReversePreservesValidityAndIds) {
  gen::Rng rng(22);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen::random_twin(rng, gen::pick(rng, 9), gen::pick(rng, 3));
    const auto& label = d.components[gen::pick(rng, d.components.size())].label;
    const auto r = reverse_component(d, label);
    ASSERT_TRUE(validate(r).ok());
    ASSERT_EQ(passage_ids(r), passage_ids(d));
    ASSERT_EQ(reverse_component(r, label), d);
    for (const auto& [id, s] : d.crossings) ASSERT_EQ(classify_crossing(r, id), classify_crossing(d, id));
  }
}

TEST(DiagramProperty, ClassifyAndBlocksIgnoreRelabeling) {
  gen::Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    const auto d = gen::random_twin(rng, gen::pick(rng, 9), gen::pick(rng, 4));
    const auto r = gen::relabel_crossings(d, rng);
    std::multiset<CrossingClass> a, b;
    for (const auto& [id, s] : d.crossings) a.insert(classify_crossing(d, id));
    for (const auto& [id, s] : r.crossings) b.insert(classify_crossing(r, id));
    ASSERT_EQ(a, b);
    ASSERT_EQ(block_sets(r), block_sets(d));

    auto shuffled = d;
    std::shuffle(shuffled.components.begin(), shuffled.components.end(), rng);
    ASSERT_EQ(block_sets(shuffled), block_sets(d));
  }
}

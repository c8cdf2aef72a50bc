// The acceptance corpus: nine criteria over the bundled fixtures, shared by
// the `corpus` command and the acceptance test binary.

#pragma once

#include <chrono>
#include <cstdio>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "alexander.hpp"
#include "constructions.hpp"
#include "generators.hpp"
#include "skein.hpp"

namespace twinskein {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Diagram load_diagram(const std::filesystem::path& path) { return parse(read_file(path)); }

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double elapsed_ms = 0;
};

struct AcceptanceOptions {
  std::filesystem::path fixtures = "fixtures";
  LaurentPoly multiplier = LaurentPoly::skein_multiplier();
  std::uint64_t seed = 20240611;
  std::size_t property_cases = 200;
  std::size_t conway_sequences = 100;
};

namespace acceptance {

inline const LaurentPoly& expected_giller() {
  static const LaurentPoly p = LaurentPoly::parse("t^-2 - 1 + t^2");
  return p;
}

struct Check {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

inline std::string outcome_text(const SkeinResult& r) {
  return r.resolved() ? r.value().to_string() : "unresolved (" + r.unresolved().reason + ")";
}

/// Value and trace shape of the twin Tw_G: two standard leaves worth 1 and two
/// twin-torus leaves whose contributions cancel.
inline Check check_giller_twin(const Diagram& d, const LaurentPoly& multiplier) {
  Check c;
  SkeinConfig cfg;
  cfg.multiplier = multiplier;
  cfg.emit_trace = true;
  const auto r = evaluate(d, cfg);
  if (!r.resolved() || r.value() != expected_giller()) {
    c.fail("value " + outcome_text(r) + ", expected " + expected_giller().to_string());
    return c;
  }
  const auto leaves = trace_leaves(*r.trace);
  std::size_t standard = 0;
  std::vector<const TraceLeaf*> torus;
  for (const auto& l : leaves) {
    if (l.node->terminal == Terminal::standard && l.node->value == SymbolicValue(LaurentPoly(1)))
      ++standard;
    else if (l.node->loops == 1)
      torus.push_back(&l);
  }
  if (leaves.size() != 4 || standard != 2 || torus.size() != 2) {
    c.fail("trace has " + std::to_string(leaves.size()) + " leaves (" + std::to_string(standard) +
           " standard, " + std::to_string(torus.size()) + " twin-torus); expected 4 (2, 2)");
    return c;
  }
  const auto sum = torus[0]->contribution + torus[1]->contribution;
  if (torus[0]->contribution == SymbolicValue{} || !(sum == SymbolicValue{})) {
    c.fail("twin-torus contributions " + torus[0]->contribution.to_string() + " and " +
           torus[1]->contribution.to_string() + " do not cancel");
    return c;
  }
  c.detail = "value " + r.value().to_string() + "; leaves: 2 standard, 2 twin-torus cancelling (" +
             torus[0]->contribution.to_string() + ")";
  return c;
}

inline Check check_unknot_pair(const Diagram& d, const LaurentPoly& multiplier) {
  Check c;
  SkeinConfig cfg;
  cfg.multiplier = multiplier;
  cfg.emit_trace = true;
  const auto r = evaluate(d, cfg);
  if (!r.resolved() || r.value() != expected_giller()) {
    c.fail("value " + outcome_text(r) + ", expected " + expected_giller().to_string());
    return c;
  }
  const auto& root = *r.trace;
  if (!root.crossing || root.crossing_sign != CrossingSign::negative || root.children.size() != 2) {
    c.fail("root branch is not at a negative crossing");
    return c;
  }
  const auto& h = root.children[0].node->value;
  const auto& j = root.children[1].node->value;
  if (!(h + (-multiplier) * j == SymbolicValue(r.value()))) {
    c.fail("root value is not I(H) - m I(J)");
    return c;
  }
  c.detail = "value " + r.value().to_string() + " = I(H) - m I(J) with I(H) = " + h.to_string() +
             ", I(J) = " + j.to_string();
  return c;
}

/// Resolvable twin diagrams used by the property suites.
inline std::vector<Diagram> property_pool(gen::Rng& rng, std::size_t want, const SkeinConfig& cfg,
                                          const std::vector<Diagram>& seeds) {
  std::vector<Diagram> pool = seeds;
  for (const auto& k : knot_table())
    if (table_crossing_number(k.name) <= 6) {
      const auto n = k.components.front().size();
      pool.push_back(artin_spin(k, n ? gen::pick(rng, n) : 0));
    }
  std::size_t guard = 0;
  while (pool.size() < want && guard++ < 50 * want) {
    auto d = gen::random_twin(rng, 1 + gen::pick(rng, 5), gen::pick(rng, 2));
    if (evaluate(d, cfg).resolved()) pool.push_back(std::move(d));
  }
  return pool;
}

inline std::string count_text(std::size_t n, const char* what) { return std::to_string(n) + " " + what; }

}  // namespace acceptance

using CriterionFn = std::function<acceptance::Check()>;

inline CriterionResult run_criterion(int id, std::string name, const CriterionFn& fn, double limit_ms = 0) {
  CriterionResult r{id, std::move(name), false, "", 0};
  const auto t0 = std::chrono::steady_clock::now();
  acceptance::Check c;
  try {
    c = fn();
  } catch (const std::exception& e) {
    c.fail(std::string("exception: ") + e.what());
  }
  r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  r.passed = c.ok;
  r.detail = c.detail;
  if (c.ok && limit_ms > 0 && r.elapsed_ms >= limit_ms) {
    r.passed = false;
    r.detail += "; took " + std::to_string(r.elapsed_ms) + " ms, limit " + std::to_string(limit_ms) + " ms";
  }
  return r;
}

inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt) {
  using acceptance::Check;
  std::vector<CriterionResult> out;
  SkeinConfig cfg;
  cfg.multiplier = opt.multiplier;
  const auto& fx = opt.fixtures;

  out.push_back(run_criterion(
      1, "standard twin evaluates to 1",
      [&] {
        Check c;
        const auto r = evaluate(load_diagram(fx / "tw_std.twin"), cfg);
        if (!r.resolved() || r.value() != LaurentPoly(1)) c.fail("got " + acceptance::outcome_text(r));
        else c.detail = "value 1";
        return c;
      },
      10));

  out.push_back(run_criterion(
      2, "split twin evaluates to 0",
      [&] {
        Check c;
        const auto r = evaluate(load_diagram(fx / "tw_split.twin"), cfg);
        if (!r.resolved() || !r.value().is_zero()) c.fail("got " + acceptance::outcome_text(r));
        else c.detail = "value 0";
        return c;
      },
      10));

  out.push_back(run_criterion(
      3, "Tw_G value and cancelling twin-torus leaves",
      [&] { return acceptance::check_giller_twin(load_diagram(fx / "tw_giller.twin"), opt.multiplier); }, 1000));

  out.push_back(run_criterion(
      4, "Tw_U value with a negative first branch",
      [&] { return acceptance::check_unknot_pair(load_diagram(fx / "tw_unknot_pair.twin"), opt.multiplier); },
      1000));

  out.push_back(run_criterion(
      5, "Giller polynomial of the 2-knot example",
      [&] {
        Check c;
        const auto d = load_diagram(fx / "giller_ex.knot");
        const auto r = evaluate(d, cfg);
        if (!r.resolved() || r.value() != acceptance::expected_giller())
          c.fail("got " + acceptance::outcome_text(r));
        else if (!r.value().is_symmetric())
          c.fail("value is not symmetric");
        else
          c.detail = "value " + r.value().to_string();
        const auto closure = serialize(twin_closure(d));
        const auto twin = serialize(load_diagram(fx / "tw_giller.twin"));
        if (closure != twin) c.fail("twin closure " + closure + " differs from tw_giller " + twin);
        return c;
      },
      1000));

  out.push_back(run_criterion(
      6, "Artin spins match the Conway oracle (<= 7 crossings)",
      [&] {
        Check c;
        std::size_t agree = 0;
        std::vector<std::string> unresolved;
        for (const auto& k : knot_table()) {
          if (table_crossing_number(k.name) > 7) continue;
          const auto r = evaluate(artin_spin(k), cfg);
          if (!r.resolved()) {
            unresolved.push_back(k.name);
            continue;
          }
          const auto expect = conway(k).compose(opt.multiplier);
          if (r.value() != expect)
            c.fail(k.name + ": spin " + r.value().to_string() + " but oracle " + expect.to_string());
          else
            ++agree;
        }
        if (c.ok) {
          c.detail = std::to_string(agree) + " knots agree";
          if (!unresolved.empty()) {
            c.detail += "; unresolved:";
            for (const auto& n : unresolved) c.detail += " " + n;
          }
        }
        return c;
      },
      30000));

  out.push_back(run_criterion(7, "property suites", [&] {
    Check c;
    gen::Rng rng(opt.seed);
    const std::size_t want = opt.property_cases;
    std::vector<Diagram> seeds{load_diagram(fx / "tw_giller.twin"), load_diagram(fx / "tw_unknot_pair.twin")};
    const auto pool = acceptance::property_pool(rng, want, cfg, seeds);
    auto value_of = [&](const Diagram& d, const SkeinConfig& k) -> std::optional<LaurentPoly> {
      auto r = evaluate(d, k);
      if (!r.resolved()) return std::nullopt;
      return r.value();
    };
    std::vector<std::string> parts;

    // Skein identity at eligible crossings.
    {
      std::size_t n = 0;
      for (std::size_t i = 0; n < want && i < 20 * want; ++i) {
        const auto d = simplify(pool[i % pool.size()], false).diagram;
        for (const auto& [id, s] : d.crossings) {
          if (!is_eligible(d, id)) continue;
          auto v = value_of(d, cfg), vs = value_of(switch_crossing(d, id), cfg),
               v0 = value_of(smooth_crossing(d, id), cfg);
          if (!v || !vs || !v0) continue;
          const LaurentPoly lhs = s == CrossingSign::positive ? *v - *vs : *vs - *v;
          if (lhs != opt.multiplier * *v0) c.fail("skein identity fails on " + serialize(d) + " at " + std::to_string(id));
          ++n;
        }
      }
      if (n < want) c.fail("skein identity: only " + std::to_string(n) + " cases");
      parts.push_back(acceptance::count_text(n, "skein"));
    }
    // Move invariance.
    {
      std::size_t n = 0, skipped = 0;
      for (std::size_t i = 0; n < want && i < 20 * want; ++i) {
        const auto& d = pool[i % pool.size()];
        const auto moved = gen::scramble(d, rng, 1 + gen::pick(rng, 4));
        auto a = value_of(d, cfg), b = value_of(moved, cfg);
        if (!a || !b) {
          ++skipped;
          continue;
        }
        if (*a != *b) c.fail("move invariance fails: " + serialize(d) + " vs " + serialize(moved));
        ++n;
      }
      if (n < want) c.fail("move invariance: only " + std::to_string(n) + " cases");
      parts.push_back(acceptance::count_text(n, "moves") + " (" + std::to_string(skipped) + " unresolved skipped)");
    }
    // Symmetry of resolved twin values. With loops present the value is
    // symmetric or antisymmetric by the parity of the loop count.
    {
      std::size_t n = 0, with_loops = 0;
      for (std::size_t i = 0; (n < want || with_loops < want) && i < 50 * want; ++i) {
        const std::size_t loops = n < want ? 0 : 1 + gen::pick(rng, 3);
        const auto d = gen::random_twin(rng, 1 + gen::pick(rng, 6), loops);
        auto v = value_of(d, cfg);
        if (!v) continue;
        const LaurentPoly parity(loops % 2 ? -1 : 1);
        if (v->reflect() != parity * *v)
          c.fail("value " + v->to_string() + " of " + serialize(d) + " breaks the reflection rule");
        ++(loops == 0 ? n : with_loops);
      }
      if (n < want || with_loops < want) c.fail("symmetry: only " + std::to_string(n) + " cases");
      parts.push_back(acceptance::count_text(n, "symmetry") + " (+" + std::to_string(with_loops) + " with loops)");
    }
    // Loop reversal sign rule, on random loops and on loops born from
    // smoothing an arc self-crossing. The second kind has counterexamples:
    // splicing the loop in forwards or backwards gives different long knots.
    {
      std::size_t n = 0, bad = 0, born = 0, born_bad = 0;
      std::string example;
      for (std::size_t i = 0; n < want && i < 50 * want; ++i) {
        Diagram d;
        const bool from_smoothing = i % 2 == 1;
        if (!from_smoothing) {
          d = gen::random_twin(rng, 1 + gen::pick(rng, 5), 1 + gen::pick(rng, 2));
        } else {
          const auto base = simplify(pool[gen::pick(rng, pool.size())], false).diagram;
          std::vector<CrossingId> self;
          for (const auto& [id, s] : base.crossings)
            if (classify_crossing(base, id) == CrossingClass::arc_self) self.push_back(id);
          if (self.empty()) continue;
          d = smooth_crossing(base, self[gen::pick(rng, self.size())]);
        }
        std::vector<std::string> loops;
        for (const auto& comp : d.components)
          if (!comp.is_arc()) loops.push_back(comp.label);
        if (loops.empty()) continue;
        const auto label = loops[gen::pick(rng, loops.size())];
        auto v = value_of(d, cfg), w = value_of(reverse_component(d, label), cfg);
        if (!v || !w) continue;
        ++n;
        born += from_smoothing;
        if (*w == -*v) continue;
        ++bad;
        born_bad += from_smoothing;
        if (example.empty())
          example = "reversing " + label + " in " + serialize(d) + " gives " + w->to_string() + ", not -(" +
                    v->to_string() + ")";
      }
      if (n < want) c.fail("sign rule: only " + std::to_string(n) + " cases");
      const std::string tally = std::to_string(n - bad) + "/" + std::to_string(n) + " reversals (" +
                                std::to_string(born - born_bad) + "/" + std::to_string(born) +
                                " with smoothing-born loops)";
      if (bad) c.fail("sign rule: " + tally + "; " + example);
      parts.push_back(tally);
    }
    // Memo on = memo off.
    {
      std::size_t n = 0;
      SkeinConfig off = cfg;
      off.use_memo = false;
      for (std::size_t i = 0; n < want && i < 50 * want; ++i) {
        const auto d = i < pool.size() ? pool[i] : gen::random_twin(rng, 1 + gen::pick(rng, 6), gen::pick(rng, 3));
        auto a = value_of(d, cfg), b = value_of(d, off);
        if (!a || !b) continue;
        if (*a != *b) c.fail("memo changes the value of " + serialize(d));
        ++n;
      }
      if (n < want) c.fail("memo: only " + std::to_string(n) + " cases");
      parts.push_back(acceptance::count_text(n, "memo"));
    }
    // Parse/serialize round trip.
    {
      std::size_t n = 0;
      for (; n < want; ++n) {
        auto d = gen::random_twin(rng, gen::pick(rng, 8), gen::pick(rng, 3),
                                  gen::coin(rng) ? DiagramMode::twin : DiagramMode::two_knot);
        const auto text = serialize(normalize(d));
        const auto back = parse(text);
        if (serialize(back) != text || !(normalize(back) == normalize(d))) c.fail("round trip fails for " + text);
      }
      parts.push_back(acceptance::count_text(n, "round trips"));
    }
    std::string summary;
    for (const auto& p : parts) summary += (summary.empty() ? "" : ", ") + p;
    c.detail = c.ok ? summary : c.detail + " | " + summary;
    return c;
  }));

  out.push_back(run_criterion(8, "Conway oracle self-checks", [&] {
    Check c;
    const auto z = [](const char* s) { return LaurentPoly::parse(s, 'z'); };
    if (conway(table_knot("unknot")) != LaurentPoly(1)) c.fail("unknot");
    ClassicalCode split;
    split.components = {{}, {}};
    if (!conway(split).is_zero()) c.fail("two-component unlink");
    if (!conway(gen::braid_closure(2, {1, -1})).is_zero()) c.fail("split braid closure");
    if (conway(table_knot("3_1")) != z("1 + z^2")) c.fail("3_1 gives " + conway(table_knot("3_1")).to_string("z"));
    if (conway(table_knot("4_1")) != z("1 - z^2")) c.fail("4_1 gives " + conway(table_knot("4_1")).to_string("z"));
    gen::Rng rng(opt.seed + 1);
    std::size_t moves = 0;
    for (std::size_t i = 0; i < opt.conway_sequences; ++i) {
      int strands = 2 + static_cast<int>(gen::pick(rng, 3));
      auto w = gen::random_knot_braid(rng, strands, 2 + gen::pick(rng, 6));
      const auto before = conway(gen::braid_closure(strands, w));
      const std::size_t steps = 1 + gen::pick(rng, 8);
      for (std::size_t s = 0; s < steps; ++s) gen::random_braid_move(rng, strands, w);
      moves += steps;
      const auto after = conway(gen::braid_closure(strands, w));
      if (before != after) c.fail("move sequence " + std::to_string(i) + " changes the Conway polynomial");
    }
    if (c.ok)
      c.detail = "base cases hold; " + std::to_string(opt.conway_sequences) + " move sequences (" +
                 std::to_string(moves) + " moves) invariant";
    return c;
  }));

  out.push_back(run_criterion(9, "multiplier 1 breaks the Tw_G check", [&] {
    Check c;
    const auto broken = acceptance::check_giller_twin(load_diagram(fx / "tw_giller.twin"), LaurentPoly(1));
    if (broken.ok) c.fail("Tw_G check still passes with multiplier 1");
    else c.detail = "with multiplier 1: " + broken.detail;
    return c;
  }));

  return out;
}

inline std::string format_result(const CriterionResult& r) {
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.1f", r.elapsed_ms);
  return std::string(r.passed ? "PASS" : "FAIL") + "  [" + std::to_string(r.id) + "] " + r.name + "  (" + ms +
         " ms)  " + r.detail;
}

}  // namespace twinskein

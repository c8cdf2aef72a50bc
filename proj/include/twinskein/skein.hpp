// Skein recursion for the twin invariant and the 2-knot (Giller) polynomial.
//
// Values are tracked symbolically. A subdiagram the recursion cannot finish
// (depth budget, no eligible crossing, or an expansion that reaches itself
// again) becomes an opaque symbol X[key] named by its canonical key, and the
// symbol is carried through the arithmetic. Because keys are canonical with a
// reversal sign, two subdiagrams that differ by a loop reversal produce
// X[key] and -X[key] and cancel. The result is resolved iff no symbol
// survives at the root.

#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "diagram.hpp"
#include "laurent.hpp"
#include "moves.hpp"

namespace twinskein {

class UnsupportedRibbonIntersection : public DiagramError {
 public:
  explicit UnsupportedRibbonIntersection(CrossingId id)
      : DiagramError("crossing " + std::to_string(id) +
                     " is a ribbon intersection between the two twin arcs; it cannot be smoothed") {}
};

class UnsupportedLoopSmoothing : public DiagramError {
 public:
  explicit UnsupportedLoopSmoothing(CrossingId id)
      : DiagramError("crossing " + std::to_string(id) + " involves loops only; it cannot be smoothed") {}
};

class NoEligibleCrossing : public DiagramError {
 public:
  NoEligibleCrossing() : DiagramError("no arc_self or arc_loop crossing to resolve") {}
};

class NonDefaultSurgery : public DiagramError {
 public:
  explicit NonDefaultSurgery(const std::string& label)
      : DiagramError("loop '" + label + "' carries a non-default surgery label; the skein relations assume (0, 0/1)") {}
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Elementary operations

inline Diagram switch_crossing(const Diagram& d, CrossingId id) {
  auto it = d.crossings.find(id);
  if (it == d.crossings.end()) throw UnknownCrossing(id);
  Diagram out = d;
  for (auto& c : out.components)
    for (auto& p : c.passages)
      if (p.crossing == id) p.role = opposite(p.role);
  out.crossings[id] = flip(it->second);
  return out;
}

inline Diagram smooth_crossing(const Diagram& d, CrossingId id) {
  const auto cls = classify_crossing(d, id);
  const auto loc = *d.locate(id);
  Diagram out = d;
  if (cls == CrossingClass::arc_self) {
    auto& arc = out.components[loc.over.component];
    const auto [i, j] = std::minmax(loc.over.index, loc.under.index);
    Component loop;
    loop.kind = ComponentKind::loop;
    loop.label = d.fresh_loop_label();
    loop.surgery = SurgeryLabel{};
    loop.passages.assign(arc.passages.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                         arc.passages.begin() + static_cast<std::ptrdiff_t>(j));
    arc.passages.erase(arc.passages.begin() + static_cast<std::ptrdiff_t>(i),
                       arc.passages.begin() + static_cast<std::ptrdiff_t>(j) + 1);
    out.components.push_back(std::move(loop));
    out.crossings.erase(id);
    return out;
  }
  if (cls == CrossingClass::arc_loop) {
    const bool over_on_arc = d.components[loc.over.component].is_arc();
    const PassageRef on_arc = over_on_arc ? loc.over : loc.under;
    const PassageRef on_loop = over_on_arc ? loc.under : loc.over;
    const auto& lp = d.components[on_loop.component].passages;
    std::vector<Passage> rotated;
    for (std::size_t k = 1; k < lp.size(); ++k) rotated.push_back(lp[(on_loop.index + k) % lp.size()]);
    auto& ap = out.components[on_arc.component].passages;
    ap.erase(ap.begin() + static_cast<std::ptrdiff_t>(on_arc.index));
    ap.insert(ap.begin() + static_cast<std::ptrdiff_t>(on_arc.index), rotated.begin(), rotated.end());
    out.components.erase(out.components.begin() + static_cast<std::ptrdiff_t>(on_loop.component));
    out.crossings.erase(id);
    return out;
  }
  if (cls == CrossingClass::arc_arc) throw UnsupportedRibbonIntersection(id);
  throw UnsupportedLoopSmoothing(id);
}

enum class Strategy { descending, first_eligible };

inline std::string to_string(Strategy s) { return s == Strategy::descending ? "descending" : "first_eligible"; }

inline bool is_eligible(const Diagram& d, CrossingId id) {
  const auto c = classify_crossing(d, id);
  return c == CrossingClass::arc_self || c == CrossingClass::arc_loop;
}

/// Component indices in normal-form order: arcs as stored, then loops by label.
inline std::vector<std::size_t> walk_order(const Diagram& d) {
  std::vector<std::size_t> order, loops;
  for (std::size_t i = 0; i < d.components.size(); ++i) (d.components[i].is_arc() ? order : loops).push_back(i);
  std::stable_sort(loops.begin(), loops.end(),
                   [&](std::size_t a, std::size_t b) { return d.components[a].label < d.components[b].label; });
  order.insert(order.end(), loops.begin(), loops.end());
  return order;
}

inline CrossingId choose_crossing(const Diagram& d, Strategy strategy) {
  std::set<CrossingId> seen;
  std::optional<CrossingId> first;
  for (auto ci : walk_order(d))
    for (const auto& p : d.components[ci].passages) {
      if (!seen.insert(p.crossing).second) continue;
      if (!is_eligible(d, p.crossing)) continue;
      if (strategy == Strategy::first_eligible) return p.crossing;
      if (!p.is_over()) return p.crossing;
      if (!first) first = p.crossing;
    }
  if (!first) throw NoEligibleCrossing();
  return *first;
}

// ---------------------------------------------------------------------------
// Symbolic values

/// known + sum of coefficient * X[key].
struct SymbolicValue {
  LaurentPoly known;
  std::map<std::string, LaurentPoly> symbols;

  SymbolicValue() = default;
  SymbolicValue(LaurentPoly p) : known(std::move(p)) {}  // NOLINT(google-explicit-constructor)

  static SymbolicValue symbol(const std::string& key, int sign) {
    SymbolicValue v;
    v.symbols[key] = LaurentPoly(sign);
    return v;
  }

  bool resolved() const noexcept { return symbols.empty(); }
  bool references(const std::string& key) const { return symbols.contains(key); }

  SymbolicValue& operator+=(const SymbolicValue& o) {
    known += o.known;
    for (const auto& [k, c] : o.symbols) {
      auto& slot = symbols[k];
      slot += c;
      if (slot.is_zero()) symbols.erase(k);
    }
    return *this;
  }

  friend SymbolicValue operator+(SymbolicValue a, const SymbolicValue& b) { return a += b; }

  friend SymbolicValue operator*(const LaurentPoly& c, const SymbolicValue& v) {
    SymbolicValue r;
    r.known = c * v.known;
    for (const auto& [k, s] : v.symbols) {
      auto p = c * s;
      if (!p.is_zero()) r.symbols.emplace(k, std::move(p));
    }
    return r;
  }

  friend bool operator==(const SymbolicValue&, const SymbolicValue&) = default;

  std::string to_string() const {
    if (symbols.empty()) return known.to_string();
    std::string out = known.is_zero() ? "" : known.to_string();
    for (const auto& [k, c] : symbols) {
      if (!out.empty()) out += " + ";
      out += "(" + c.to_string() + ")*X[" + k + "]";
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json j{{"text", to_string()}, {"known", known.to_json()}};
    if (!symbols.empty()) {
      nlohmann::json s = nlohmann::json::object();
      for (const auto& [k, c] : symbols) s[k] = c.to_json();
      j["symbols"] = std::move(s);
    }
    return j;
  }
};

// ---------------------------------------------------------------------------
// Configuration, trace and result

struct SkeinConfig {
  LaurentPoly multiplier = LaurentPoly::skein_multiplier();
  int depth_budget = 64;
  Strategy strategy = Strategy::descending;
  bool emit_trace = false;
  bool use_memo = true;
  bool parallel = false;
  int parallel_depth = 4;  // branches below this depth run inline

  void check() const {
    if (depth_budget < 1) throw ConfigError("depth budget must be at least 1");
    if (multiplier.is_zero()) throw ConfigError("multiplier must be nonzero");
  }
};

enum class Terminal { none, standard, split, memo, opaque, cycle };

inline std::string to_string(Terminal t) {
  switch (t) {
    case Terminal::none: return "";
    case Terminal::standard: return "standard";
    case Terminal::split: return "split";
    case Terminal::memo: return "memo";
    case Terminal::opaque: return "unresolved";
    case Terminal::cycle: return "cycle";
  }
  return "";
}

struct TraceNode;

struct TraceEdge {
  bool smooth = false;
  LaurentPoly coefficient;
  std::shared_ptr<const TraceNode> node;
};

struct TraceNode {
  std::string key;
  int canonical_sign = 1;
  std::string diagram;
  std::size_t loops = 0;
  Terminal terminal = Terminal::none;
  std::string reason;  // opaque leaves only
  std::optional<CrossingId> crossing;
  CrossingSign crossing_sign = CrossingSign::positive;
  SymbolicValue value;
  std::vector<TraceEdge> children;

  bool is_leaf() const noexcept { return children.empty(); }
};

struct SkeinStats {
  std::size_t nodes_expanded = 0;
  std::size_t memo_hits = 0;
  std::size_t max_depth = 0;
  std::size_t opaque_nodes = 0;

  void merge(const SkeinStats& o) {
    nodes_expanded += o.nodes_expanded;
    memo_hits += o.memo_hits;
    opaque_nodes += o.opaque_nodes;
    max_depth = std::max(max_depth, o.max_depth);
  }
};

struct Unresolved {
  std::string reason;
  SymbolicValue residual;
};

struct SkeinResult {
  std::variant<LaurentPoly, Unresolved> outcome;
  std::shared_ptr<const TraceNode> trace;
  SkeinStats stats;

  bool resolved() const noexcept { return std::holds_alternative<LaurentPoly>(outcome); }
  const LaurentPoly& value() const { return std::get<LaurentPoly>(outcome); }
  const Unresolved& unresolved() const { return std::get<Unresolved>(outcome); }
};

// ---------------------------------------------------------------------------
// Engine

namespace detail {

/// Memo table layer. The root layer is shared by a whole evaluation. Parallel
/// branches write to their own layer on top of their parent's and are folded
/// back in a fixed order on join, so results do not depend on scheduling.
class MemoLayer {
 public:
  explicit MemoLayer(const MemoLayer* parent = nullptr) : parent_(parent) {}

  std::optional<SymbolicValue> find(const std::string& key) const {
    for (const MemoLayer* layer = this; layer; layer = layer->parent_) {
      std::shared_lock lock(layer->mutex_);
      auto it = layer->entries_.find(key);
      if (it != layer->entries_.end()) return it->second;
    }
    return std::nullopt;
  }

  void store(const std::string& key, SymbolicValue value) {
    std::unique_lock lock(mutex_);
    entries_.try_emplace(key, std::move(value));
  }

  void absorb(const MemoLayer& child) {
    std::unique_lock lock(mutex_);
    std::shared_lock child_lock(child.mutex_);
    for (const auto& [k, v] : child.entries_) entries_.try_emplace(k, v);
  }

  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
  }

 private:
  const MemoLayer* parent_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, SymbolicValue> entries_;
};

struct EvalContext {
  const SkeinConfig& cfg;
  MemoLayer* memo;
  SkeinStats stats;
  std::map<std::string, std::string> opaque_reasons;
};

struct NodeResult {
  SymbolicValue value;
  std::shared_ptr<TraceNode> node;
};

inline bool is_terminal_standard(const Diagram& d) { return is_crossingless_arcs_only(d); }

inline NodeResult evaluate_node(const Diagram& input, std::size_t depth, const std::vector<std::string>& stack,
                                EvalContext& ctx) {
  const auto& cfg = ctx.cfg;
  ctx.stats.max_depth = std::max(ctx.stats.max_depth, depth);
  const Diagram s = simplify(input, false).diagram;

  std::shared_ptr<TraceNode> node;
  if (cfg.emit_trace) {
    node = std::make_shared<TraceNode>();
    node->diagram = serialize(s);
    node->loops = s.loop_count();
  }
  auto leaf = [&](Terminal t, SymbolicValue v) {
    if (node) {
      node->terminal = t;
      node->value = v;
    }
    return NodeResult{std::move(v), node};
  };

  if (is_terminal_standard(s)) return leaf(Terminal::standard, LaurentPoly(1));
  if (has_detached_block(s)) return leaf(Terminal::split, LaurentPoly(0));

  const auto canon = canonicalize(s);
  const LaurentPoly sign(canon.sign);
  if (node) {
    node->key = canon.key;
    node->canonical_sign = canon.sign;
  }

  auto collapse = [&](std::string reason) {
    ++ctx.stats.opaque_nodes;
    ctx.opaque_reasons.try_emplace(canon.key, reason);
    if (cfg.use_memo) ctx.memo->store(canon.key, SymbolicValue::symbol(canon.key, 1));
    if (node) {
      node->reason = std::move(reason);
      node->children.clear();
      node->crossing.reset();
    }
    return leaf(Terminal::opaque, SymbolicValue::symbol(canon.key, canon.sign));
  };

  if (cfg.use_memo) {
    if (auto hit = ctx.memo->find(canon.key)) {
      ++ctx.stats.memo_hits;
      return leaf(Terminal::memo, sign * *hit);
    }
  }
  if (std::find(stack.begin(), stack.end(), canon.key) != stack.end())
    return leaf(Terminal::cycle, SymbolicValue::symbol(canon.key, canon.sign));
  if (depth >= static_cast<std::size_t>(cfg.depth_budget)) return collapse("depth budget exhausted");

  CrossingId c = 0;
  try {
    c = choose_crossing(s, cfg.strategy);
  } catch (const NoEligibleCrossing&) {
    return collapse("no eligible crossing (only arc_arc or loop-only crossings remain)");
  }
  ++ctx.stats.nodes_expanded;
  const CrossingSign cs = s.sign(c);
  const LaurentPoly coef = cs == CrossingSign::positive ? cfg.multiplier : -cfg.multiplier;

  auto child_stack = stack;
  child_stack.push_back(canon.key);
  const Diagram switched = switch_crossing(s, c);
  const Diagram smoothed = smooth_crossing(s, c);

  NodeResult sw, sm;
  if (cfg.parallel && depth < static_cast<std::size_t>(cfg.parallel_depth)) {
    MemoLayer left_memo(ctx.memo), right_memo(ctx.memo);
    EvalContext left{cfg, &left_memo, {}, {}}, right{cfg, &right_memo, {}, {}};
    auto fut = std::async(std::launch::async,
                          [&] { return evaluate_node(smoothed, depth + 1, child_stack, right); });
    sw = evaluate_node(switched, depth + 1, child_stack, left);
    sm = fut.get();
    for (auto* part : {&left, &right}) {
      ctx.stats.merge(part->stats);
      for (const auto& [k, r] : part->opaque_reasons) ctx.opaque_reasons.try_emplace(k, r);
    }
    ctx.memo->absorb(left_memo);
    ctx.memo->absorb(right_memo);
  } else {
    sw = evaluate_node(switched, depth + 1, child_stack, ctx);
    sm = evaluate_node(smoothed, depth + 1, child_stack, ctx);
  }

  SymbolicValue v = sw.value + coef * sm.value;
  if (v.references(canon.key)) return collapse("expansion reaches the same diagram again");

  const bool provisional =
      std::any_of(v.symbols.begin(), v.symbols.end(),
                  [&](const auto& kv) { return std::find(stack.begin(), stack.end(), kv.first) != stack.end(); });
  if (cfg.use_memo && !provisional) ctx.memo->store(canon.key, sign * v);

  if (node) {
    node->crossing = c;
    node->crossing_sign = cs;
    node->value = v;
    node->children.push_back({false, LaurentPoly(1), sw.node});
    node->children.push_back({true, coef, sm.node});
  }
  return {std::move(v), node};
}

}  // namespace detail

inline void check_evaluable(const Diagram& d) {
  auto report = validate(d);
  if (!report.ok()) throw InvalidDiagram(report.violations);
  for (const auto& c : d.components)
    if (c.surgery && !c.surgery->is_default()) throw NonDefaultSurgery(c.label);
}

inline SkeinResult evaluate(const Diagram& d, const SkeinConfig& cfg = {}) {
  cfg.check();
  check_evaluable(d);
  detail::MemoLayer memo;
  detail::EvalContext ctx{cfg, &memo, {}, {}};
  auto root = detail::evaluate_node(d, 0, {}, ctx);

  SkeinResult result;
  result.stats = ctx.stats;
  result.trace = root.node;
  if (root.value.resolved()) {
    result.outcome = root.value.known;
  } else {
    std::set<std::string> reasons;
    for (const auto& [k, c] : root.value.symbols) {
      auto it = ctx.opaque_reasons.find(k);
      reasons.insert(it == ctx.opaque_reasons.end() ? "unfinished subdiagram" : it->second);
    }
    std::string reason;
    for (const auto& r : reasons) reason += (reason.empty() ? "" : "; ") + r;
    reason += " [" + std::to_string(root.value.symbols.size()) + " unresolved subdiagram" +
              (root.value.symbols.size() == 1 ? "" : "s") + "]";
    result.outcome = Unresolved{std::move(reason), root.value};
  }
  return result;
}

// ---------------------------------------------------------------------------
// Trace export

enum class TraceFormat { json, dot };

class TraceAbsent : public std::logic_error {
 public:
  TraceAbsent() : std::logic_error("result carries no trace (evaluate with emit_trace)") {}
};

inline nlohmann::json trace_to_json(const TraceNode& n) {
  nlohmann::json j;
  j["key"] = n.key;
  j["canonical_sign"] = n.canonical_sign;
  j["diagram"] = n.diagram;
  j["value"] = n.value.to_json();
  if (n.crossing) {
    j["crossing"] = *n.crossing;
    j["sign"] = std::string(1, sign_char(n.crossing_sign));
  } else {
    j["terminal"] = to_string(n.terminal);
    if (!n.reason.empty()) j["reason"] = n.reason;
  }
  auto kids = nlohmann::json::array();
  for (const auto& e : n.children)
    kids.push_back({{"edge", e.smooth ? "smooth" : "switch"},
                    {"coefficient", e.coefficient.to_string()},
                    {"node", trace_to_json(*e.node)}});
  j["children"] = std::move(kids);
  return j;
}

namespace detail {

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

inline void dot_walk(const TraceNode& n, std::string& out, int& counter) {
  const int id = counter++;
  const std::string what = n.crossing ? "crossing " + std::to_string(*n.crossing) + sign_char(n.crossing_sign)
                                      : to_string(n.terminal);
  const std::string label = dot_escape(n.diagram) + "\\n" + dot_escape(what) + "\\nI = " + dot_escape(n.value.to_string());
  out += "  n" + std::to_string(id) + " [label=\"" + label + "\"" +
         (n.is_leaf() ? ", shape=box" : "") + "];\n";
  for (const auto& e : n.children) {
    const int child = counter;
    dot_walk(*e.node, out, counter);
    const std::string edge = e.smooth ? "smooth \xC3\x97(" + e.coefficient.to_string() + ")" : "switch";
    out += "  n" + std::to_string(id) + " -> n" + std::to_string(child) + " [label=\"" + dot_escape(edge) + "\"];\n";
  }
}

}  // namespace detail

inline std::string export_trace(const SkeinResult& r, TraceFormat format) {
  if (!r.trace) throw TraceAbsent();
  if (format == TraceFormat::json) {
    nlohmann::json j{{"root", trace_to_json(*r.trace)},
                     {"stats",
                      {{"nodes_expanded", r.stats.nodes_expanded},
                       {"memo_hits", r.stats.memo_hits},
                       {"max_depth", r.stats.max_depth},
                       {"opaque_nodes", r.stats.opaque_nodes}}}};
    if (r.resolved())
      j["value"] = r.value().to_string();
    else
      j["unresolved"] = r.unresolved().reason;
    return j.dump(2);
  }
  std::string out = "digraph skein {\n  node [fontname=\"monospace\"];\n";
  int counter = 0;
  detail::dot_walk(*r.trace, out, counter);
  out += "}\n";
  return out;
}

/// Leaves of a trace together with the product of edge coefficients on the
/// path from the root.
struct TraceLeaf {
  const TraceNode* node = nullptr;
  LaurentPoly path_coefficient;
  SymbolicValue contribution;
};

inline std::vector<TraceLeaf> trace_leaves(const TraceNode& root) {
  std::vector<TraceLeaf> out;
  auto walk = [&](auto&& self, const TraceNode& n, const LaurentPoly& coef) -> void {
    if (n.is_leaf()) {
      out.push_back({&n, coef, coef * n.value});
      return;
    }
    for (const auto& e : n.children) self(self, *e.node, coef * e.coefficient);
  };
  walk(walk, root, LaurentPoly(1));
  return out;
}

}  // namespace twinskein

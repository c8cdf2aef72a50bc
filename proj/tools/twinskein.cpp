// twinskein: command-line front end.
//
// Exit codes: 0 success, 1 domain failure (a code such as "role-pairing" or
// "unresolved" is printed first on the line), 2 I/O, parse or usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "twinskein.hpp"
#include "twinskein/acceptance.hpp"

#ifndef TWINSKEIN_FIXTURES
#define TWINSKEIN_FIXTURES "fixtures"
#endif

using namespace twinskein;
using json = nlohmann::json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_input = 2;

struct RunReport {
  std::string command;
  std::string input;
  json outcome;
  json stats = json::object();
  double elapsed_ms = 0;

  json to_json() const {
    return {{"command", command}, {"input", input}, {"outcome", outcome}, {"stats", stats},
            {"elapsed_ms", elapsed_ms}};
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return read_file(path);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

void emit_report(const RunReport& r, bool as_json) {
  if (as_json) std::cout << r.to_json().dump(2) << "\n";
}

// --- validate

int cmd_validate(const std::string& path, bool as_json) {
  const auto t0 = Clock::now();
  const auto parsed = parse_unchecked(read_input(path));
  auto report = validate(parsed.diagram);
  std::vector<Violation> all = parsed.sign_conflicts;
  all.insert(all.end(), report.violations.begin(), report.violations.end());

  RunReport r{"validate", path, json::array(), json::object(), since(t0)};
  for (const auto& v : all) r.outcome.push_back({{"code", v.code}, {"message", v.message}});
  if (as_json)
    emit_report(r, true);
  else if (all.empty())
    std::cout << "valid\n";
  else
    for (const auto& v : all) std::cout << v.code << ": " << v.message << "\n";
  return all.empty() ? exit_ok : exit_domain;
}

// --- invariant

struct InvariantFlags {
  std::string multiplier;
  int depth = 64;
  std::string strategy = "descending";
  std::string trace;
  std::string trace_out;
  bool no_memo = false;
  bool parallel = false;
  bool as_json = false;
};

int cmd_invariant(const std::string& path, const InvariantFlags& f) {
  SkeinConfig cfg;
  if (!f.multiplier.empty()) cfg.multiplier = LaurentPoly::parse(f.multiplier);
  cfg.depth_budget = f.depth;
  cfg.strategy = f.strategy == "first_eligible" ? Strategy::first_eligible : Strategy::descending;
  cfg.use_memo = !f.no_memo;
  cfg.parallel = f.parallel;
  cfg.emit_trace = !f.trace.empty();

  const auto d = parse(read_input(path));
  const auto t0 = Clock::now();
  const auto result = evaluate(d, cfg);

  RunReport r{"invariant", path, {}, {}, since(t0)};
  r.stats = {{"nodes_expanded", result.stats.nodes_expanded},
             {"memo_hits", result.stats.memo_hits},
             {"max_depth", result.stats.max_depth},
             {"opaque_nodes", result.stats.opaque_nodes}};
  if (result.resolved())
    r.outcome = {{"value", result.value().to_string()}};
  else
    r.outcome = {{"unresolved", result.unresolved().reason},
                 {"residual", result.unresolved().residual.to_string()}};

  if (f.as_json)
    emit_report(r, true);
  else if (result.resolved())
    std::cout << result.value().to_string() << "\n";
  else
    std::cout << "unresolved: " << result.unresolved().reason << "\n";

  if (cfg.emit_trace) {
    std::string text = export_trace(result, f.trace == "dot" ? TraceFormat::dot : TraceFormat::json);
    if (text.empty() || text.back() != '\n') text += '\n';
    write_output(f.trace_out, text);
  }
  return result.resolved() ? exit_ok : exit_domain;
}

// --- conway

int cmd_conway(const std::string& path, const std::string& knot, bool as_json) {
  const auto t0 = Clock::now();
  const ClassicalCode k = knot.empty() ? parse_classical(read_input(path)) : table_knot(knot);
  check_classical(k);
  const auto nabla = conway(k);
  const auto delta_u = nabla.compose(LaurentPoly::skein_multiplier());

  RunReport r{"conway", knot.empty() ? path : "knot:" + knot, {}, json::object(), 0};
  r.outcome = {{"conway", nabla.to_string("z")}, {"alexander_u", delta_u.to_string("u")}};
  std::optional<LaurentPoly> delta_t;
  if (k.components.size() == 1) {
    delta_t = alexander_in_t(k);
    r.outcome["alexander_t"] = delta_t->to_string("t");
  }
  r.elapsed_ms = since(t0);

  if (as_json) {
    emit_report(r, true);
  } else {
    std::cout << nabla.to_string("z") << "\n";
    std::cout << "Delta(u), u = t^1/2: " << delta_u.to_string("u") << "\n";
    if (delta_t) std::cout << "Delta(t): " << delta_t->to_string("t") << "\n";
  }
  return exit_ok;
}

// --- spin

int cmd_spin(const std::string& path, const std::string& knot, const std::string& construction,
             std::size_t cut, const std::string& out) {
  Diagram d;
  if (construction == "artin") {
    const ClassicalCode k = knot.empty() ? parse_classical(read_input(path)) : table_knot(knot);
    d = artin_spin(k, cut);
  } else {
    if (!knot.empty()) throw ConstructionError("--construction " + construction + " takes a 2-knot fixture, not --knot");
    const auto k2 = parse(read_input(path));
    d = construction == "closure" ? twin_closure(k2) : connect_sum_twin(k2);
  }
  if (auto report = validate(d); !report.ok()) throw InvalidDiagram(report.violations);
  write_output(out, serialize(d) + "\n");
  return exit_ok;
}

// --- simplify

int cmd_simplify(const std::string& path, bool as_json) {
  const auto t0 = Clock::now();
  const auto s = simplify(parse(read_input(path)));
  RunReport r{"simplify", path, {{"diagram", serialize(s.diagram)}, {"events", to_json(s.events)}}, json::object(),
              since(t0)};
  if (as_json) {
    emit_report(r, true);
  } else {
    std::cout << serialize(s.diagram) << "\n";
    for (const auto& e : s.events) std::cout << to_json(e).dump() << "\n";
  }
  return exit_ok;
}

// --- corpus

int cmd_corpus(const std::string& suite, const std::string& fixtures, const std::string& multiplier, bool as_json) {
  if (suite != "acceptance") throw ConfigError("unknown suite '" + suite + "'");
  AcceptanceOptions opt;
  opt.fixtures = fixtures;
  if (!multiplier.empty()) opt.multiplier = LaurentPoly::parse(multiplier);
  const auto results = run_acceptance(opt);
  bool all = true;
  json rows = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    rows.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail},
                    {"elapsed_ms", r.elapsed_ms}});
    if (!as_json) std::cout << format_result(r) << "\n";
  }
  if (as_json) std::cout << rows.dump(2) << "\n";
  return all ? exit_ok : exit_domain;
}

// Maps exceptions onto exit codes. Domain errors print a short code first.
int guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const IoError& e) {
    std::cerr << "io-error: " << e.what() << "\n";
    return exit_input;
  } catch (const ParseError& e) {
    std::cerr << "parse-error: " << e.what() << "\n";
    return exit_input;
  } catch (const PolyParseError& e) {
    std::cerr << "parse-error: " << e.what() << "\n";
    return exit_input;
  } catch (const InvalidClassicalCode& e) {
    std::cerr << "parse-error: " << e.what() << "\n";
    return exit_input;
  } catch (const InvalidDiagram& e) {
    for (const auto& v : e.violations()) std::cout << v.code << ": " << v.message << "\n";
    return exit_domain;
  } catch (const NonDefaultSurgery& e) {
    std::cout << "non-default-surgery: " << e.what() << "\n";
    return exit_domain;
  } catch (const UnknownKnot& e) {
    std::cout << "unknown-knot: " << e.what() << "\n";
    return exit_domain;
  } catch (const ConstructionError& e) {
    std::cout << "construction: " << e.what() << "\n";
    return exit_domain;
  } catch (const ConfigError& e) {
    std::cerr << "config: " << e.what() << "\n";
    return exit_input;
  } catch (const DiagramError& e) {
    std::cout << "error: " << e.what() << "\n";
    return exit_domain;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Skein invariants of ribbon twins and 2-knots"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print a JSON run report");

  int code = exit_ok;

  std::string path;
  auto* validate_cmd = app.add_subcommand("validate", "Check a diagram fixture");
  validate_cmd->add_option("path", path, "Fixture file, or - for stdin")->required();
  validate_cmd->callback([&] { code = guarded([&] { return cmd_validate(path, as_json); }); });

  InvariantFlags inv;
  auto* invariant_cmd = app.add_subcommand("invariant", "Evaluate the skein invariant");
  invariant_cmd->add_option("path", path, "Fixture file, or - for stdin")->required();
  invariant_cmd->add_option("--multiplier", inv.multiplier, "Skein multiplier (default t - t^-1)");
  invariant_cmd->add_option("--depth", inv.depth, "Depth budget")->check(CLI::PositiveNumber);
  invariant_cmd->add_option("--strategy", inv.strategy, "Crossing choice")
      ->check(CLI::IsMember({"descending", "first_eligible"}));
  invariant_cmd->add_option("--trace", inv.trace, "Emit the skein tree")->check(CLI::IsMember({"json", "dot"}));
  invariant_cmd->add_option("--trace-out", inv.trace_out, "Trace destination (default stdout)");
  invariant_cmd->add_flag("--no-memo", inv.no_memo, "Disable memoization");
  invariant_cmd->add_flag("--parallel", inv.parallel, "Evaluate branches concurrently");
  invariant_cmd->callback([&] {
    inv.as_json = as_json;
    code = guarded([&] { return cmd_invariant(path, inv); });
  });

  std::string knot;
  auto* conway_cmd = app.add_subcommand("conway", "Conway and Alexander polynomials of a classical code");
  auto* conway_path = conway_cmd->add_option("path", path, "Classical code file, or - for stdin");
  auto* conway_knot = conway_cmd->add_option("--knot", knot, "Name from the bundled table");
  conway_path->excludes(conway_knot);
  conway_cmd->callback([&] {
    code = guarded([&] {
      if (path.empty() && knot.empty()) throw ConfigError("give a path or --knot");
      return cmd_conway(path, knot, as_json);
    });
  });

  std::string construction = "artin", out;
  std::size_t cut = 0;
  auto* spin_cmd = app.add_subcommand("spin", "Build a twin fixture");
  auto* spin_path = spin_cmd->add_option("path", path, "Classical code or 2-knot fixture");
  auto* spin_knot = spin_cmd->add_option("--knot", knot, "Name from the bundled table");
  spin_path->excludes(spin_knot);
  spin_cmd->add_option("--construction", construction, "artin, closure or connsum")
      ->check(CLI::IsMember({"artin", "closure", "connsum"}));
  spin_cmd->add_option("--cut", cut, "Base point for the Artin spin");
  spin_cmd->add_option("--out", out, "Output file (default stdout)");
  spin_cmd->callback([&] {
    code = guarded([&] {
      if (path.empty() && knot.empty()) throw ConfigError("give a path or --knot");
      return cmd_spin(path, knot, construction, cut, out);
    });
  });

  auto* simplify_cmd = app.add_subcommand("simplify", "Apply R1, R2 and F reductions");
  simplify_cmd->add_option("path", path, "Fixture file, or - for stdin")->required();
  simplify_cmd->callback([&] { code = guarded([&] { return cmd_simplify(path, as_json); }); });

  std::string suite = "acceptance", fixtures = TWINSKEIN_FIXTURES, multiplier;
  auto* corpus_cmd = app.add_subcommand("corpus", "Run the acceptance corpus");
  corpus_cmd->add_option("--suite", suite, "Suite name")->check(CLI::IsMember({"acceptance"}));
  corpus_cmd->add_option("--fixtures", fixtures, "Fixture directory");
  corpus_cmd->add_option("--multiplier", multiplier, "Override the skein multiplier");
  corpus_cmd->callback([&] { code = guarded([&] { return cmd_corpus(suite, fixtures, multiplier, as_json); }); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? exit_ok : exit_input;
  }
  return code;
}

#include "circlech_cli/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "circlech/circlech.hpp"

namespace circlech::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string family_path;
  std::string other_path;
  std::string output_path;
  std::string law = "classical";
  int orders = 8;
  std::vector<double> times;
  double from = 0.0;
  double time = 1.0;
  double radius = 0.5;
  std::size_t points = 64;
  std::size_t knots = 64;
  std::size_t order = kDefaultOrder;
  std::size_t max_order = kDefaultExtractionOrder;
  std::size_t char_order = 8;
  std::optional<double> tol;
  bool verify = false;
};

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  write_text_file(path, text);
}

GeneratingFamily load_family(const std::string& path) { return family_from_json(read_json_file(path)); }

int cmd_validate(const Options& o, std::ostream& out) {
  std::vector<std::string> violations;
  try {
    load_family(o.family_path);
  } catch (const ValidationError& e) {
    violations = e.violations();
  }
  out << json{{"violations", violations}}.dump(2) << '\n';
  return violations.empty() ? kOk : kFailed;
}

int cmd_moments(const Options& o, std::ostream& out) {
  const GeneratingFamily f = load_family(o.family_path);
  const LawKind kind = parse_law(o.law);
  HemigroupOptions opts;
  opts.order = std::max<std::size_t>(o.order, static_cast<std::size_t>(o.orders) + 1);
  std::string csv = "s,t,n,re,im\n";
  for (const double t : o.times) {
    for (int n = 1; n <= o.orders; ++n) {
      const cplx m = moment(kind, f, o.from, t, n, opts);
      csv += format_double(o.from) + ',' + format_double(t) + ',' + std::to_string(n) + ',' +
             format_double(m.real()) + ',' + format_double(m.imag()) + '\n';
    }
  }
  out << csv;
  return kOk;
}

int cmd_map(const Options& o, std::ostream& out) {
  const GeneratingFamily f = load_family(o.family_path);
  const LawKind kind = parse_law(o.law);
  if (kind == LawKind::Classical) throw InvalidArgument("map: the classical law has no eta-transform");
  if (!(o.radius > 0.0 && o.radius < 1.0)) throw InvalidArgument("map: radius must lie in (0, 1)");
  if (o.points == 0) throw InvalidArgument("map: need at least one point");

  std::vector<double> theta(o.points);
  std::vector<cplx> z(o.points);
  for (std::size_t j = 0; j < o.points; ++j) {
    theta[j] = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(o.points);
    z[j] = std::polar(o.radius, theta[j]);
  }
  std::vector<cplx> w(z);
  switch (kind) {
    case LawKind::Free: {
      const TruncatedSeries eta = free_eta_series(f, o.from, o.time, o.order);
      for (auto& v : w) v = eta.eval(v);
      break;
    }
    case LawKind::Boolean:
      for (auto& v : w) v = boolean_eta(f, o.from, o.time, v);
      break;
    default:
      solve_characteristic_batch(f, o.from, o.time, w);
      break;
  }
  std::string csv = "theta,re,im\n";
  for (std::size_t j = 0; j < o.points; ++j) {
    csv += format_double(theta[j]) + ',' + format_double(w[j].real()) + ',' + format_double(w[j].imag()) + '\n';
  }
  out << csv;
  return kOk;
}

int cmd_solve(const Options& o, std::ostream& out) {
  const GeneratingFamily f = load_family(o.family_path);
  const std::vector<double> times = uniform_times(f.horizon(), o.knots);
  const ChainSample chain = solve_chain(f, times, o.order);
  write_output(o.output_path, chain_to_json_string(chain), out);
  return kOk;
}

int cmd_extract(const Options& o, std::ostream& out) {
  const ChainSample chain = chain_from_json(read_json_file(o.family_path));
  const ExtractionResult ex = extract_generating_family(chain, o.max_order);
  const auto grid = disk_grid(0.5, 5, 8);
  const ResidualReport res = integral_residual(chain, hfamily_from_family(ex.family), grid);

  json diag = to_json(ex.diagnostics);
  diag["residual"] = res.max_residual;
  if (o.output_path.empty()) {
    out << json{{"family", to_json(ex.family)}, {"diagnostics", diag}}.dump(2) << '\n';
  } else {
    write_text_file(o.output_path, to_json(ex.family).dump(2) + '\n');
    out << diag.dump(2) << '\n';
  }
  return kOk;
}

int cmd_subordinate(const Options& o, std::ostream& out, std::ostream& err) {
  const GeneratingFamily f = load_family(o.family_path);
  const SubordinationResult sub = subordinated_family(f, o.order);
  if (!sub.violations.empty()) {
    for (const auto& v : sub.violations) err << "subordinated family: " << v << '\n';
    return kFailed;
  }
  const std::string text = to_json(sub.family).dump(2) + '\n';
  if (!o.verify) {
    write_output(o.output_path, text, out);
    return kOk;
  }
  if (o.output_path.empty()) throw InvalidArgument("subordinate --verify needs -o for the family");
  write_text_file(o.output_path, text);

  std::vector<double> times;
  for (const auto& k : f.knots()) times.push_back(k.t);
  const auto grid = disk_grid(0.5, 5, 5);
  const SubordinationReport rep = verify_subordination(f, sub.family, times, grid, o.order);
  json j{{"max_discrepancy", rep.max_discrepancy},
         {"at_time", rep.at_time},
         {"at_z", complex_json(rep.at_z)},
         {"checks", rep.checks}};
  const bool ok = !o.tol || rep.max_discrepancy <= *o.tol;
  if (o.tol) {
    j["tolerance"] = *o.tol;
    j["pass"] = ok;
  }
  out << j.dump(2) << '\n';
  return ok ? kOk : kFailed;
}

int cmd_compare(const Options& o, std::ostream& out) {
  const GeneratingFamily a = load_family(o.family_path);
  const GeneratingFamily b = load_family(o.other_path);
  ConvergenceReport rep;
  if (o.law == "family") {
    rep = family_distance(a, b, o.char_order);
  } else {
    HemigroupOptions opts;
    opts.order = o.order;
    rep = hemigroup_distance(parse_law(o.law), a, b, o.orders, {}, opts);
  }
  if (!o.tol) {
    json j = to_json(rep);
    j.erase("pass");
    j.erase("tolerance");
    for (auto& e : j["entries"]) e.erase("pass");
    out << j.dump(2) << '\n';
    return kOk;
  }
  rep.apply_tolerance(*o.tol);
  out << to_json(rep).dump(2) << '\n';
  return rep.pass() ? kOk : kFailed;
}

int cmd_roundtrip(const Options& o, std::ostream& out) {
  const GeneratingFamily f = load_family(o.family_path);
  const std::vector<double> times = uniform_times(f.horizon(), o.knots);
  const ChainSample chain = solve_chain(f, times, o.order);
  const ExtractionResult ex = extract_generating_family(chain, o.max_order);

  double sigma = 0.0;
  double alpha = 0.0;
  for (const double t : times) {
    sigma = std::max(sigma, char_distance(f.sigma_at(t), ex.family.sigma_at(t), o.char_order));
    alpha = std::max(alpha, std::abs(f.alpha_at(t) - ex.family.alpha_at(t)));
  }
  const double tol = o.tol.value_or(2e-3);
  const bool ok = sigma <= tol && alpha <= 1e-6;
  json j{{"knots", o.knots},
         {"order", o.order},
         {"distance", sigma},
         {"alpha_error", alpha},
         {"psd_clip_max", ex.diagnostics.psd_clip_max},
         {"tolerance", tol},
         {"pass", ok}};
  out << j.dump(2) << '\n';
  return ok ? kOk : kFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Convolution hemigroups on the unit circle and radial Loewner chains"};
  app.require_subcommand(1);
  Options o;

  const auto law_check = CLI::IsMember({"classical", "free", "boolean", "monotone"});

  auto* validate = app.add_subcommand("validate", "Check a generating family");
  validate->add_option("family", o.family_path, "Generating family JSON")->required();

  auto* moments = app.add_subcommand("moments", "Increment moments as CSV (s,t,n,re,im)");
  moments->add_option("family", o.family_path, "Generating family JSON")->required();
  moments->add_option("--law", o.law, "classical|free|boolean|monotone")->check(law_check);
  moments->add_option("--orders", o.orders, "Largest moment order K (rows n = 1..K)")
      ->check(CLI::Range(1, 256));
  moments->add_option("--times", o.times, "End times t1,t2,...")->delimiter(',')->required();
  moments->add_option("--from", o.from, "Start time s");
  moments->add_option("--order", o.order, "Series truncation order");

  auto* map = app.add_subcommand("map", "Image of the circle |z| = r under eta_{s,t} as CSV");
  map->add_option("family", o.family_path, "Generating family JSON")->required();
  map->add_option("--law", o.law, "free|boolean|monotone")->check(CLI::IsMember({"free", "boolean", "monotone"}))
      ->required();
  map->add_option("--time", o.time, "End time t");
  map->add_option("--from", o.from, "Start time s");
  map->add_option("--radius", o.radius, "Circle radius r");
  map->add_option("--points", o.points, "Number of points M");
  map->add_option("--order", o.order, "Series truncation order (free law)");

  auto* solve = app.add_subcommand("solve", "Solve the Loewner chain on a uniform grid");
  solve->add_option("family", o.family_path, "Generating family JSON")->required();
  solve->add_option("--knots", o.knots, "Number of time intervals")->check(CLI::PositiveNumber);
  solve->add_option("--order", o.order, "Series truncation order")->check(CLI::Range(2, 1024));
  solve->add_option("-o,--output", o.output_path, "Chain JSON (default: stdout)");

  auto* extract = app.add_subcommand("extract", "Recover the generating family of a sampled chain");
  extract->add_option("chain", o.family_path, "Chain JSON")->required();
  extract->add_option("-o,--output", o.output_path, "Family JSON (diagnostics then go to stdout)");
  extract->add_option("--max-order", o.max_order, "Highest moment order kept per interval")
      ->check(CLI::PositiveNumber);

  auto* subordinate = app.add_subcommand("subordinate", "Generating family of the subordinated monotone hemigroup");
  subordinate->add_option("family", o.family_path, "Generating family JSON")->required();
  subordinate->add_option("-o,--output", o.output_path, "Subordinated family JSON (default: stdout)");
  subordinate->add_flag("--verify", o.verify, "Compare the monotone chain with the free eta-transform");
  subordinate->add_option("--order", o.order, "Series truncation order")->check(CLI::Range(2, 1024));
  subordinate->add_option("--tol", o.tol, "Fail when the verification discrepancy exceeds this");

  auto* compare = app.add_subcommand("compare", "Distance between two generating families");
  compare->add_option("a", o.family_path, "First family JSON")->required();
  compare->add_option("b", o.other_path, "Second family JSON")->required();
  compare->add_option("--law", o.law, "classical|free|boolean|monotone|family")
      ->check(CLI::IsMember({"classical", "free", "boolean", "monotone", "family"}));
  compare->add_option("--orders", o.orders, "Largest moment order n_max")->check(CLI::Range(1, 256));
  compare->add_option("--order", o.order, "Series truncation order");
  compare->add_option("--char-order", o.char_order, "Character order K for family distances");
  compare->add_option("--tol", o.tol, "Tolerance; the exit code reflects it");

  auto* roundtrip = app.add_subcommand("roundtrip", "Solve, extract and compare against the input");
  roundtrip->add_option("family", o.family_path, "Generating family JSON")->required();
  roundtrip->add_option("--knots", o.knots, "Number of time intervals")->check(CLI::PositiveNumber);
  roundtrip->add_option("--order", o.order, "Series truncation order")->check(CLI::Range(2, 1024));
  roundtrip->add_option("--max-order", o.max_order, "Highest extracted moment order")
      ->check(CLI::PositiveNumber);
  roundtrip->add_option("--tol", o.tol, "Distance tolerance (default 2e-3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (validate->parsed()) return cmd_validate(o, out);
    if (moments->parsed()) return cmd_moments(o, out);
    if (map->parsed()) return cmd_map(o, out);
    if (solve->parsed()) return cmd_solve(o, out);
    if (extract->parsed()) return cmd_extract(o, out);
    if (subordinate->parsed()) return cmd_subordinate(o, out, err);
    if (compare->parsed()) return cmd_compare(o, out);
    if (roundtrip->parsed()) return cmd_roundtrip(o, out);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const SolverError& e) {
    err << "solver failure at t = " << e.time() << ": " << e.what() << '\n';
    return kSolver;
  } catch (const DomainError& e) {
    err << "solver failure: " << e.what() << '\n';
    return kSolver;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kBadInput;
}

}  // namespace circlech::cli

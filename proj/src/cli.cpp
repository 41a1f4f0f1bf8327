#include "stq/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "stq/compare.hpp"
#include "stq/errors.hpp"
#include "stq/fd_solver.hpp"
#include "stq/greens.hpp"
#include "stq/hierarchy.hpp"
#include "stq/perturbation.hpp"
#include "stq/rs_oracle.hpp"
#include "stq/serialize.hpp"

namespace stq {

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> m{"hierarchy", "exp-eps", "exp-lambda", "poly-eps", "poly-lambda", "green", "rs"};
  return m;
}

const std::vector<std::string>& symbolic_methods() {
  static const std::vector<std::string> m{"hierarchy", "exp-eps", "exp-lambda", "poly-eps", "poly-lambda", "green"};
  return m;
}

namespace {

constexpr int kMaxOrder = 8;
constexpr int kMaxDepth = 40;

bool is_known(const std::string& m) {
  const auto& k = known_methods();
  return std::find(k.begin(), k.end(), m) != k.end();
}

}  // namespace

void validate(const RunConfig& c) {
  if (!is_known(c.method)) throw InvalidArgument("unknown method '" + c.method + "'");
  for (const auto& m : c.methods) {
    if (!is_known(m)) throw InvalidArgument("unknown method '" + m + "'");
  }
  if (c.b <= 0) throw InvalidArgument("b must be positive");
  if (c.order < 0 || c.order > kMaxOrder) {
    throw InvalidArgument("order must be in [0, " + std::to_string(kMaxOrder) + "]");
  }
  if ((c.method == "green" || c.method == "rs") && c.order < 1) {
    throw InvalidArgument(c.method + " needs order >= 1");
  }
  if (c.depth && (*c.depth < 0 || *c.depth > kMaxDepth)) {
    throw InvalidArgument("depth must be in [0, " + std::to_string(kMaxDepth) + "]");
  }
  if (c.g && !(*c.g > 0)) throw InvalidArgument("g must be positive");
  if (c.mu && !(*c.mu >= 0)) throw InvalidArgument("mu must be >= 0");
  for (double m : c.sweep) {
    if (!(m >= 0)) throw InvalidArgument("sweep values must be >= 0");
  }
  if (c.grid < 5) throw InvalidArgument("grid must have at least 5 points");
  if (c.grid_levels < 1 || c.grid_levels > 4) throw InvalidArgument("grid levels must be in [1, 4]");
  if (c.format != "json" && c.format != "csv" && c.format != "text") {
    throw InvalidArgument("format must be json, csv or text");
  }
  parse_param(c.frame);
  if (!(c.rtol > 0)) throw InvalidArgument("rtol must be positive");
}

RunConfig merge_config(RunConfig c, const nlohmann::json& d) {
  try {
    if (!d.is_object()) throw InvalidArgument("config: top level must be an object");
    if (d.contains("method")) c.method = d["method"].get<std::string>();
    if (d.contains("b")) {
      c.b = d["b"].is_string() ? parse_rational(d["b"].get<std::string>()) : Rational(d["b"].get<long>());
    }
    if (d.contains("order")) c.order = d["order"].get<int>();
    if (d.contains("depth") && !d["depth"].is_null()) c.depth = d["depth"].get<int>();
    if (d.contains("g")) c.g = d["g"].get<double>();
    if (d.contains("mu")) c.mu = d["mu"].get<double>();
    if (d.contains("sweep")) c.sweep = d["sweep"].get<std::vector<double>>();
    if (d.contains("grid")) c.grid = d["grid"].get<int>();
    if (d.contains("grid_levels")) c.grid_levels = d["grid_levels"].get<int>();
    if (d.contains("format")) c.format = d["format"].get<std::string>();
    if (d.contains("methods")) c.methods = d["methods"].get<std::vector<std::string>>();
    if (d.contains("frame")) c.frame = d["frame"].get<std::string>();
    if (d.contains("rtol")) c.rtol = d["rtol"].get<double>();
    if (d.contains("min_order")) c.min_order = d["min_order"].get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return c;
}

int default_depth(const std::string& method, int order) {
  if (method == "exp-eps" || method == "poly-eps") return matching_depth(Param::eps, order);
  if (method == "exp-lambda" || method == "poly-lambda") return matching_depth(Param::lambda, order);
  return 1;
}

SeriesSolution run_method(const std::string& method, const Rational& b, int order, std::optional<int> depth) {
  const int d = depth.value_or(default_depth(method, order));
  if (method == "hierarchy") return solve_hierarchy(PotentialSpec::quartic_coupling(b, Param::mu), order, d);
  if (method == "exp-eps") {
    return solve_exponential(PotentialSpec::quartic_coupling(b, Param::eps), Param::eps, {order, d});
  }
  if (method == "exp-lambda") {
    return solve_exponential(PotentialSpec::quartic_coupling(b, Param::lambda), Param::lambda, {order, d});
  }
  if (method == "poly-eps") {
    return solve_polynomial(PotentialSpec::quartic_coupling(b, Param::eps), Param::eps, {order, d});
  }
  if (method == "poly-lambda") {
    return solve_polynomial(PotentialSpec::quartic_coupling(b, Param::lambda), Param::lambda, {order, d});
  }
  if (method == "green") return solve_green(PotentialSpec::quartic_coupling(b, Param::eps), order).series;
  if (method == "rs") return solve_rs(b, order);
  throw InvalidArgument("unknown method '" + method + "'");
}

namespace {

using ojson = nlohmann::ordered_json;

struct Output {
  std::ostream& stream;
  std::unique_ptr<std::ofstream> file;
};

// Depth for one method inside compare/report: the shared mu depth mapped
// to the flavor's matching depth.
std::optional<int> matched_depth(const std::string& method, const RunConfig& c) {
  if (!c.depth) return std::nullopt;
  if (method == "exp-eps" || method == "poly-eps") return matching_depth(Param::eps, c.order, *c.depth);
  if (method == "exp-lambda" || method == "poly-lambda") return matching_depth(Param::lambda, c.order, *c.depth);
  return c.depth;
}

std::vector<SeriesSolution> run_all(const std::vector<std::string>& methods, const RunConfig& c) {
  std::vector<std::future<SeriesSolution>> jobs;
  for (const auto& m : methods) {
    jobs.push_back(std::async(std::launch::async, [m, &c] { return run_method(m, c.b, c.order, matched_depth(m, c)); }));
  }
  std::vector<SeriesSolution> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

void emit_solution(std::ostream& os, const SeriesSolution& s, const std::string& format) {
  if (format == "json") {
    os << to_json(s).dump(2) << '\n';
  } else if (format == "csv") {
    write_csv(os, s);
  } else {
    write_text(os, s);
  }
}

void emit_report(std::ostream& os, const AgreementReport& r, const std::string& format) {
  if (format == "json") {
    os << to_json(r).dump(2) << '\n';
  } else if (format == "csv") {
    write_csv(os, r);
  } else {
    write_text(os, r);
  }
}

SeriesSolution load_solution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("'" + path + "': " + e.what());
  }
  return solution_from_json(j);
}

GridConfig grid_config(const RunConfig& c) {
  GridConfig g;
  g.points = c.grid;
  g.richardson_levels = c.grid_levels;
  return g;
}

// Least-squares slope of log|err| against log mu.
std::optional<double> fit_order(const std::vector<std::pair<double, double>>& mu_err) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& [m, e] : mu_err) {
    if (m > 0 && e > 0) pts.emplace_back(std::log(m), std::log(e));
  }
  if (pts.size() < 2) return std::nullopt;
  double sx = 0, sy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
  }
  const double n = static_cast<double>(pts.size());
  const double mx = sx / n;
  const double my = sy / n;
  double num = 0, den = 0;
  for (const auto& [x, y] : pts) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  if (den == 0) return std::nullopt;
  return num / den;
}

int cmd_run(const RunConfig& c, std::ostream& os) {
  emit_solution(os, run_method(c.method, c.b, c.order, c.depth), c.format);
  return kExitAgree;
}

int cmd_compare(const RunConfig& c, const std::string& golden, std::ostream& os) {
  std::vector<std::string> methods = c.methods.empty() ? symbolic_methods() : c.methods;
  std::vector<SeriesSolution> sols;
  if (!golden.empty()) {
    SeriesSolution g = load_solution(golden);
    if (g.b != c.b) throw InvalidArgument("golden file is for b = " + to_string(g.b) + ", not " + to_string(c.b));
    g.method = "golden:" + g.method;
    sols.push_back(std::move(g));
  } else if (methods.size() < 2) {
    throw InvalidArgument("compare needs at least two methods (or --golden)");
  }
  for (auto& s : run_all(methods, c)) sols.push_back(std::move(s));
  const AgreementReport r = compare_methods(sols, std::nullopt, parse_param(c.frame));
  emit_report(os, r, c.format);
  return r.all_agree() ? kExitAgree : kExitDisagree;
}

int cmd_verify(const RunConfig& c, std::ostream& os) {
  if (!c.g) throw InvalidArgument("verify needs --g");
  if (!c.mu && c.sweep.empty()) throw InvalidArgument("verify needs --mu or --sweep");
  const SeriesSolution sol = normalize_grading(run_method(c.method, c.b, c.order, c.depth), Param::mu);
  const double b = c.b.get_d();
  const GridConfig grid = grid_config(c);

  std::vector<double> mus;
  if (c.mu) mus.push_back(*c.mu);
  for (double m : c.sweep) mus.push_back(m);

  ojson points = ojson::array();
  std::vector<std::pair<double, double>> sweep_err;
  bool ok = true;
  std::ostringstream text;
  text.precision(12);
  text << "verify " << sol.method << " at g = " << *c.g << ", b = " << to_string(c.b) << '\n';
  for (std::size_t k = 0; k < mus.size(); ++k) {
    const double mu = mus[k];
    const SpectralEstimate est = fd_ground_state(*c.g, b, mu, grid);
    const double series = evaluate_energy(sol, *c.g, mu);
    const double abs_diff = std::abs(series - est.energy);
    const double rel = abs_diff / std::abs(est.energy);
    const bool in_sweep = !c.mu || k > 0;
    if (in_sweep) sweep_err.emplace_back(mu, abs_diff);
    if (!in_sweep && rel > c.rtol) ok = false;
    std::vector<double> ratios;
    for (std::size_t i = 0; i + 1 < est.grid_energies.size(); ++i) {
      ratios.push_back((est.energy - est.grid_energies[i]) / (est.energy - est.grid_energies[i + 1]));
    }
    points.push_back({{"mu", mu},
                      {"series_energy", series},
                      {"fd_energy", est.energy},
                      {"abs_diff", abs_diff},
                      {"rel_diff", rel},
                      {"fd_residual", est.residual},
                      {"fd_grid_energies", est.grid_energies},
                      {"refinement_ratios", ratios}});
    text << "  mu = " << mu << ": series " << series << ", fd " << est.energy << ", |dE| " << abs_diff << ", rel "
         << rel << '\n';
  }
  ojson j{{"method", sol.method}, {"b", to_string(c.b)}, {"g", *c.g}, {"rtol", c.rtol}, {"points", points}};
  if (c.sweep.size() >= 2) {
    const std::optional<double> p = fit_order(sweep_err);
    j["fitted_order"] = p ? ojson(*p) : ojson(nullptr);
    j["min_order"] = c.min_order;
    if (!p || *p < c.min_order) ok = false;
    text << "  fitted order " << (p ? std::to_string(*p) : std::string("n/a")) << " (need >= " << c.min_order
         << ")\n";
  }
  j["pass"] = ok;
  text << (ok ? "PASS" : "FAIL") << '\n';

  if (c.format == "json") {
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    os << "mu,series_energy,fd_energy,abs_diff,rel_diff\n";
    os.precision(15);
    for (const auto& p : points) {
      os << p["mu"].get<double>() << ',' << p["series_energy"].get<double>() << ',' << p["fd_energy"].get<double>()
         << ',' << p["abs_diff"].get<double>() << ',' << p["rel_diff"].get<double>() << '\n';
    }
  } else {
    os << text.str();
  }
  return ok ? kExitAgree : kExitDisagree;
}

int cmd_report(const RunConfig& c, std::ostream& os) {
  std::vector<std::string> methods = c.methods.empty() ? known_methods() : c.methods;
  const std::vector<SeriesSolution> sols = run_all(methods, c);
  std::optional<NumericPoint> point;
  if (c.g) {
    const double mu = c.mu.value_or(0.0);
    point = NumericPoint{*c.g, mu, fd_ground_state(*c.g, c.b.get_d(), mu, grid_config(c))};
  }
  const AgreementReport r = compare_methods(sols, point, parse_param(c.frame));
  if (c.format == "json") {
    ojson j;
    ojson arr = ojson::array();
    for (const auto& s : sols) arr.push_back(to_json(s));
    j["solutions"] = std::move(arr);
    j["agreement"] = to_json(r);
    os << j.dump(2) << '\n';
  } else if (c.format == "csv") {
    bool header = true;
    for (const auto& s : sols) {
      write_csv(os, s, header);
      header = false;
    }
  } else {
    for (const auto& s : sols) write_text(os, s);
    write_text(os, r);
  }
  return r.all_agree() ? kExitAgree : kExitDisagree;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-trajectory quadrature for the 2D anharmonic ground state"};
  app.require_subcommand(1);

  RunConfig cli;
  std::string b_text = "1";
  std::string config_path;
  std::string out_path;
  std::string golden;
  int depth = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--b", b_text, "frequency ratio b as p/q");
    sub->add_option("--order", cli.order, "highest power of the perturbation parameter");
    sub->add_option("--depth", depth, "deepest power of 1/g kept");
    sub->add_option("--format", cli.format, "json, csv or text");
    sub->add_option("--out", out_path, "write to a file instead of stdout");
    sub->add_option("--config", config_path, "JSON file with the same fields");
  };
  CLI::App* run = app.add_subcommand("run", "run one pipeline and print the series");
  add_common(run);
  run->add_option("--method", cli.method, "pipeline name");

  CLI::App* compare = app.add_subcommand("compare", "run several pipelines and diff them term by term");
  add_common(compare);
  compare->add_option("--methods", cli.methods, "pipelines to compare")->delimiter(',');
  compare->add_option("--frame", cli.frame, "parameter the comparison is graded in");
  compare->add_option("--golden", golden, "stored solution (JSON) to use as the reference");

  CLI::App* verify = app.add_subcommand("verify", "check the series energy against the finite-difference solver");
  add_common(verify);
  verify->add_option("--method", cli.method, "pipeline name");
  double g = 0, mu = 0;
  verify->add_option("--g", g, "scale factor g");
  verify->add_option("--mu", mu, "coupling mu");
  verify->add_option("--sweep", cli.sweep, "mu values for the convergence-order fit")->delimiter(',');
  verify->add_option("--grid", cli.grid, "coarsest grid points per axis");
  verify->add_option("--grid-levels", cli.grid_levels, "number of Richardson grids");
  verify->add_option("--rtol", cli.rtol, "relative tolerance on the energy");
  verify->add_option("--min-order", cli.min_order, "lower bound on the fitted order");

  CLI::App* report = app.add_subcommand("report", "all pipelines, their agreement and an optional numeric check");
  add_common(report);
  report->add_option("--methods", cli.methods, "pipelines to include")->delimiter(',');
  report->add_option("--frame", cli.frame, "parameter the comparison is graded in");
  report->add_option("--g", g, "scale factor g for a numeric check");
  report->add_option("--mu", mu, "coupling mu for the numeric check");
  report->add_option("--grid", cli.grid, "coarsest grid points per axis");
  report->add_option("--grid-levels", cli.grid_levels, "number of Richardson grids");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitAgree;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [sub](const char* name) {
    try {
      return sub->get_option(name)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };

  RunConfig c;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw InvalidArgument("cannot open config '" + config_path + "'");
      nlohmann::json doc;
      try {
        in >> doc;
      } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument("config '" + config_path + "': " + e.what());
      }
      c = merge_config(c, doc);
    }
    // Explicit flags win over the config file.
    if (given("--method")) c.method = cli.method;
    if (given("--b")) c.b = parse_rational(b_text);
    if (given("--order")) c.order = cli.order;
    if (given("--depth")) c.depth = depth;
    if (given("--format")) c.format = cli.format;
    if (given("--methods")) c.methods = cli.methods;
    if (given("--frame")) c.frame = cli.frame;
    if (given("--g")) c.g = g;
    if (given("--mu")) c.mu = mu;
    if (given("--sweep")) c.sweep = cli.sweep;
    if (given("--grid")) c.grid = cli.grid;
    if (given("--grid-levels")) c.grid_levels = cli.grid_levels;
    if (given("--rtol")) c.rtol = cli.rtol;
    if (given("--min-order")) c.min_order = cli.min_order;
    validate(c);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      err << "error: cannot write '" << out_path << "'\n";
      return kExitUsage;
    }
    os = &file;
  }

  try {
    if (sub == run) return cmd_run(c, *os);
    if (sub == compare) return cmd_compare(c, golden, *os);
    if (sub == verify) return cmd_verify(c, *os);
    return cmd_report(c, *os);
  } catch (const ConvergenceFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDisagree;
  }
}

}  // namespace stq

#include "homog_cli/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "homog/analytic.hpp"
#include "homog/cell_pde.hpp"
#include "homog/dirichlet.hpp"
#include "homog/errors.hpp"
#include "homog/invariant_lp.hpp"
#include "homog/io.hpp"
#include "homog/rates.hpp"

namespace homog::cli {

namespace {

using nlohmann::json;

constexpr const char* kFooter = R"(CSV columns:
  homogenize --method pde --out   y1[,y2],u,H
  homogenize --method lp --out    node,y1[,y2],alpha,zero_vector,weight
  errormap                        l1,l2,phi,hbar_formula,hbar_pde,abs_error,status
  rates                           eps,sample,seed,norm,error
  measure                         node,y1[,y2],alpha,zero_vector,weight

Exit codes: 0 success, 2 invalid input, 3 solver failure.)";

struct QInput {
  std::vector<double> entries;
  std::vector<double> eigs;
  double phi = 0.0;
};

struct HomogenizeArgs {
  std::string op;
  std::string method = "formula";
  QInput q;
  int grid_n = 0;
  std::size_t n_alpha = 0;
  double tol = 0.0;
  bool subtract = true;
  std::string out;
  std::string format = "json";
};

struct ErrormapArgs {
  std::string op;
  double lambda_min = -2.0;
  double lambda_max = 2.0;
  int lambda_count = 21;
  std::vector<double> phis{0.0};
  int grid_n = 32;
  double tol = 0.0;
  std::string out;
  std::string format = "json";
};

struct RatesArgs {
  std::string op = "max_two_linear";
  std::string arrangement = "periodic";
  std::vector<double> eps_list{1.0 / 10, 1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160, 1.0 / 320};
  int samples = 20;
  std::uint64_t seed = 20170101;
  double rhs = 2.0;
  double tol = 1e-10;
  std::string out;
  std::string format = "json";
};

struct MeasureArgs {
  std::string op;
  QInput q;
  int grid_n = 0;
  std::size_t n_alpha = 0;
  double tol = 1e-9;
  std::string out;
  std::string format = "json";
};

json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(what + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_operator_json(const std::string& arg) {
  if (arg.empty()) throw ValidationError("--op is required");
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json_text(arg, "--op");
  return parse_json_text(read_file(arg), arg);
}

SymMat resolve_q(const QInput& in, int dim) {
  if (!in.eigs.empty()) {
    if (!in.entries.empty()) throw ValidationError("give either --Q or --eigs, not both");
    if (in.eigs.size() != 2 || dim != 2) {
      throw ValidationError("--eigs expects two eigenvalues for a 2D operator");
    }
    return SymMat::from_eigen(in.eigs[0], in.eigs[1], in.phi);
  }
  if (dim == 1 && in.entries.size() == 1) return SymMat::scalar(in.entries[0]);
  if (dim == 2 && in.entries.size() == 3) {
    return SymMat::make(in.entries[0], in.entries[1], in.entries[2]);
  }
  throw ValidationError(dim == 1 ? "--Q expects one value for a 1D operator"
                                 : "--Q expects q11,q12,q22 for a 2D operator");
}

void check_format(const std::string& f) {
  if (f != "json" && f != "csv") throw ValidationError("--format must be json or csv");
}

template <class Writer>
void write_out(const std::string& path, Writer&& w) {
  if (path.empty()) return;
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot write '" + path + "'");
  w(os);
}

json echo(const std::string& command, json options) {
  return {{"command", command}, {"options", std::move(options)}};
}

std::vector<double> quantiles(std::vector<double> v, std::initializer_list<double> ps) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::sort(v.begin(), v.end());
  for (double p : ps) {
    const auto k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(v.size()))) ;
    out.push_back(v[std::min(v.size() - 1, k == 0 ? 0 : k - 1)]);
  }
  return out;
}

// ---------------------------------------------------------------- homogenize

int cmd_homogenize(const HomogenizeArgs& a, std::ostream& out) {
  check_format(a.format);
  const json op_json = load_operator_json(a.op);
  const OperatorSpec op = io::operator_from_json(op_json);
  const int dim = dimension(op);
  const SymMat q = resolve_q(a.q, dim);

  HomogResult r;
  int grid_n = a.grid_n;
  double tol = a.tol;
  std::size_t n_alpha = a.n_alpha;
  if (a.method == "formula") {
    r = {hbar_formula(op, q), 0.0, 0, Method::Formula, 0};
    grid_n = 0;
  } else if (a.method == "pde") {
    if (grid_n <= 0) grid_n = dim == 1 ? 20 : 32;
    if (tol <= 0.0) tol = default_cell_tol(dim);
    CellConfig cfg;
    cfg.tol = tol;
    const PeriodicGrid grid(dim, grid_n);
    const CellSolution sol = solve_cell(op, q, grid, cfg);
    r = sol.result;
    write_out(a.out, [&](std::ostream& os) { io::write_corrector_csv(os, grid, sol); });
  } else if (a.method == "lp") {
    if (grid_n <= 0) grid_n = dim == 1 ? 20 : 16;
    if (tol <= 0.0) tol = 1e-9;
    const OperatorSpec resolved = with_resolved_cap(op, dim == 1 ? q.q11 : q.lambda_max());
    if (n_alpha == 0) n_alpha = default_control_count(resolved);
    const LpRoute route = hbar_lp_full(op, q, grid_n, n_alpha, tol);
    r = route.result;
    write_out(a.out, [&](std::ostream& os) { io::write_measure_csv(os, route.outcome.measure); });
  } else {
    throw ValidationError("--method must be pde, lp or formula");
  }

  const double constant = operator_constant(op);
  const double reported = a.subtract ? r.hbar - constant : r.hbar;
  json options{{"op", op_json},
               {"method", a.method},
               {"Q", io::to_json(q)},
               {"subtract-constant", a.subtract},
               {"format", a.format}};
  if (a.method != "formula") {
    options["grid-n"] = grid_n;
    options["tol"] = tol;
  }
  if (a.method == "lp") options["n-alpha"] = n_alpha;
  if (!a.out.empty()) options["out"] = a.out;

  if (a.format == "csv") {
    out << std::setprecision(17) << "method,hbar,hbar_raw,residual,iterations,grid_n\n"
        << a.method << ',' << reported << ',' << r.hbar << ',' << r.residual << ','
        << r.iterations << ',' << r.grid_n << '\n';
    return kOk;
  }
  json result = io::to_json(r);
  result["hbar"] = reported;
  result["hbar_raw"] = r.hbar;
  result["constant"] = constant;
  out << json{{"config", echo("homogenize", options)},
              {"operator", io::to_json(op)},
              {"result", result}}
             .dump(2)
      << '\n';
  return kOk;
}

// ------------------------------------------------------------------ errormap

int cmd_errormap(const ErrormapArgs& a, std::ostream& out) {
  check_format(a.format);
  const json op_json = load_operator_json(a.op);
  const OperatorSpec op = io::operator_from_json(op_json);
  if (kind_of(op) != OperatorKind::StripesPucci) {
    throw ValidationError("errormap requires a stripes_pucci operator");
  }
  if (a.lambda_count < 2 || !(a.lambda_max > a.lambda_min)) {
    throw ValidationError("errormap: need lambda-count >= 2 and lambda-max > lambda-min");
  }
  if (a.phis.empty()) throw ValidationError("errormap: --phi list is empty");
  CellConfig cfg;
  cfg.tol = a.tol > 0.0 ? a.tol : default_cell_tol(2);
  const PeriodicGrid grid(2, a.grid_n);

  std::ostringstream csv;
  csv << std::setprecision(17) << "l1,l2,phi,hbar_formula,hbar_pde,abs_error,status\n";
  std::vector<double> errors;
  double third_quadrant = 0.0;
  std::size_t failures = 0;
  std::size_t bound_violations = 0;
  for (double phi : a.phis) {
    for (int i = 0; i < a.lambda_count; ++i) {
      for (int j = 0; j < a.lambda_count; ++j) {
        const double step = (a.lambda_max - a.lambda_min) / (a.lambda_count - 1);
        const double l1 = a.lambda_min + i * step;
        const double l2 = a.lambda_min + j * step;
        const SymMat q = SymMat::from_eigen(l1, l2, phi);
        const double f = hbar_formula(op, q);
        csv << l1 << ',' << l2 << ',' << phi << ',' << f << ',';
        try {
          const double p = solve_cell(op, q, grid, cfg).result.hbar;
          const double e = std::abs(p - f);
          errors.push_back(e);
          if (l1 <= 0.0 && l2 <= 0.0) third_quadrant = std::max(third_quadrant, e);
          if (f > p + 1e-5) ++bound_violations;
          csv << p << ',' << e << ",ok\n";
        } catch (const SolverError& err) {
          ++failures;
          csv << "nan,nan,failed\n";
        }
      }
    }
  }
  write_out(a.out, [&](std::ostream& os) { os << csv.str(); });
  if (a.format == "csv") {
    out << csv.str();
    return kOk;
  }
  json options{{"op", op_json},
               {"lambda-min", a.lambda_min},
               {"lambda-max", a.lambda_max},
               {"lambda-count", a.lambda_count},
               {"phi", a.phis},
               {"grid-n", a.grid_n},
               {"tol", cfg.tol},
               {"format", a.format}};
  if (!a.out.empty()) options["out"] = a.out;
  const auto qs = quantiles(errors, {0.5, 0.9, 0.99, 1.0});
  json summary{{"points", errors.size() + failures},
               {"failures", failures},
               {"lower_bound_violations", bound_violations},
               {"third_quadrant_max_error", third_quadrant}};
  if (!qs.empty()) {
    summary["error_quantiles"] = {{"p50", qs[0]}, {"p90", qs[1]}, {"p99", qs[2]}, {"max", qs[3]}};
  }
  out << json{{"config", echo("errormap", options)}, {"summary", summary}}.dump(2) << '\n';
  return kOk;
}

// --------------------------------------------------------------------- rates

int cmd_rates(const RatesArgs& a, std::ostream& out) {
  check_format(a.format);
  RateStudyConfig cfg;
  if (a.op == "max_two_linear") {
    cfg.op = StudyOperator::MaxTwoLinear;
  } else if (a.op == "quad1d") {
    cfg.op = StudyOperator::Quad1D;
  } else {
    throw ValidationError("--operator must be max_two_linear or quad1d");
  }
  if (a.arrangement == "periodic") {
    cfg.arrangement = Arrangement::Periodic;
  } else if (a.arrangement == "random") {
    cfg.arrangement = Arrangement::Random;
  } else {
    throw ValidationError("--arrangement must be periodic or random");
  }
  cfg.eps_list = a.eps_list;
  cfg.samples = a.samples;
  cfg.base_seed = a.seed;
  cfg.rhs = a.rhs;
  cfg.solver.tol = a.tol;
  const RateStudyResult r = run_study(cfg);
  write_out(a.out, [&](std::ostream& os) { io::write_rates_csv(os, r); });
  if (a.format == "csv") {
    io::write_rates_csv(out, r);
    return kOk;
  }
  json options{{"operator", a.op},
               {"arrangement", a.arrangement},
               {"eps-list", r.config.eps_list},
               {"samples", r.config.samples},
               {"seed", a.seed},
               {"rhs", a.rhs},
               {"tol", a.tol},
               {"format", a.format}};
  if (!a.out.empty()) options["out"] = a.out;
  json j = io::to_json(r);
  j["study"] = j["config"];
  j["config"] = echo("rates", options);
  out << j.dump(2) << '\n';
  return kOk;
}

// ------------------------------------------------------------------- measure

std::optional<Control> optimal_constant_control(const OperatorSpec& op, const SymMat& q) {
  switch (kind_of(op)) {
    case OperatorKind::Quad1D: {
      const auto& qd = std::get<Quad1D>(op);
      try {
        return Control{quad1d_alpha_star(qd, q.q11), false};
      } catch (const ValidationError&) {
        return std::nullopt;
      }
    }
    case OperatorKind::MaxTwoLinear: {
      const auto& m = std::get<MaxTwoLinear>(op);
      if (m.a0.depends_on_y2() || m.a1.depends_on_y2()) return std::nullopt;
      return Control{contract(m.A, q) >= 0.0 ? 1.0 : 0.0, false};
    }
    case OperatorKind::StripesPucci: {
      const auto& s = std::get<StripesPucci>(op);
      if (q.negative_semidefinite()) return Control::zero();
      try {
        const StripesBound b = stripes_lower_bound(s, q);
        return Control{b.sign < 0 ? -b.t : b.t, false};
      } catch (const ValidationError&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

int cmd_measure(const MeasureArgs& a, std::ostream& out) {
  check_format(a.format);
  const json op_json = load_operator_json(a.op);
  const OperatorSpec op = io::operator_from_json(op_json);
  const int dim = dimension(op);
  const SymMat q = resolve_q(a.q, dim);
  const int grid_n = a.grid_n > 0 ? a.grid_n : (dim == 1 ? 20 : 16);
  const OperatorSpec resolved = with_resolved_cap(op, dim == 1 ? q.q11 : q.lambda_max());
  const std::size_t n_alpha = a.n_alpha > 0 ? a.n_alpha : default_control_count(resolved);
  const LpRoute route = hbar_lp_full(op, q, grid_n, n_alpha, a.tol);
  const DiscreteMeasure& m = route.outcome.measure;
  write_out(a.out, [&](std::ostream& os) { io::write_measure_csv(os, m); });
  if (a.format == "csv") {
    io::write_measure_csv(out, m);
    return kOk;
  }

  // y1-marginal as a density: each y1 column carries mass density * h.
  const std::vector<double> node_mass = m.y_marginal();
  std::vector<double> column(static_cast<std::size_t>(grid_n), 0.0);
  for (std::size_t k = 0; k < node_mass.size(); ++k) {
    column[dim == 1 ? k : k / static_cast<std::size_t>(grid_n)] += node_mass[k];
  }
  const auto control = optimal_constant_control(resolved, q);
  std::optional<AnalyticMeasure> analytic;
  if (control) {
    try {
      analytic = invariant_measure_for_control(resolved, *control);
    } catch (const ValidationError&) {
    }
  }
  json marginal = json::array();
  double max_dev = 0.0;
  for (int i = 0; i < grid_n; ++i) {
    const double y1 = (i + 0.5) / grid_n;
    const double density = column[static_cast<std::size_t>(i)] * grid_n;
    json row{{"y1", y1}, {"density", density}};
    if (analytic) {
      const double p = (*analytic)(y1);
      row["analytic"] = p;
      max_dev = std::max(max_dev, std::abs(density - p));
    }
    marginal.push_back(row);
  }
  json options{{"op", op_json},
               {"Q", io::to_json(q)},
               {"grid-n", grid_n},
               {"n-alpha", n_alpha},
               {"tol", a.tol},
               {"format", a.format}};
  if (!a.out.empty()) options["out"] = a.out;
  json result{{"hbar", route.result.hbar},
              {"adjoint_residual", route.outcome.adjoint_residual},
              {"normalization_error", route.outcome.normalization_error},
              {"min_weight", m.min_weight()},
              {"iterations", route.outcome.iterations},
              {"y1_marginal", marginal}};
  if (analytic) {
    result["analytic_control"] = {{"value", control->value},
                                  {"zero_vector", control->zero_vector}};
    result["max_marginal_deviation"] = max_dev;
  }
  out << json{{"config", echo("measure", options)}, {"result", result}}.dump(2) << '\n';
  return kOk;
}

// -------------------------------------------------------------------- config

std::string flag_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ',';
      s += e.is_string() ? e.get<std::string>() : e.dump();
    }
    return s;
  }
  return v.dump();
}

std::vector<std::string> args_from_config(const json& doc) {
  const json& cfg = doc.contains("config") ? doc.at("config") : doc;
  if (!cfg.is_object() || !cfg.contains("command") || !cfg.contains("options") ||
      !cfg.at("command").is_string() || !cfg.at("options").is_object()) {
    throw ValidationError("--config: expected {\"command\": ..., \"options\": {...}}");
  }
  std::vector<std::string> args{cfg.at("command").get<std::string>()};
  for (const auto& [key, value] : cfg.at("options").items()) {
    args.push_back("--" + key + "=" + flag_value(value));
  }
  return args;
}

void add_q_options(CLI::App* sub, QInput& q) {
  sub->add_option("--Q", q.entries, "Q entries: q11 (1D) or q11,q12,q22 (2D)")
      ->delimiter(',')
      ->allow_extra_args(false);
  sub->add_option("--eigs", q.eigs, "eigenvalues l1,l2 of Q (2D)")
      ->delimiter(',')
      ->allow_extra_args(false);
  sub->add_option("--phi", q.phi, "rotation angle in radians for --eigs");
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             int depth) {
  CLI::App app{"Homogenized operators for convex fully nonlinear elliptic equations",
               "homog"};
  app.footer(kFooter);
  app.require_subcommand(0, 1);
  std::string config_path;
  app.add_option("--config", config_path, "re-run the configuration echoed in a JSON output");

  HomogenizeArgs h;
  auto* hs = app.add_subcommand("homogenize", "compute H-bar(Q) by pde, lp or formula");
  hs->add_option("--op", h.op, "operator JSON file or inline JSON")->required();
  hs->add_option("--method", h.method, "pde | lp | formula")->capture_default_str();
  add_q_options(hs, h.q);
  hs->add_option("--grid-n", h.grid_n, "nodes per dimension (default 20 in 1D, 32/16 in 2D)");
  hs->add_option("--n-alpha", h.n_alpha, "control grid size for lp");
  hs->add_option("--tol", h.tol, "solver tolerance");
  hs->add_flag("--subtract-constant,!--no-subtract-constant", h.subtract,
               "report H-bar minus the operator constant")
      ->capture_default_str();
  hs->add_option("--out", h.out, "CSV output path");
  hs->add_option("--format", h.format, "json | csv")->capture_default_str();

  ErrormapArgs e;
  auto* es = app.add_subcommand("errormap", "formula vs pde errors for stripes_pucci");
  es->add_option("--op", e.op, "operator JSON file or inline JSON")->required();
  es->add_option("--lambda-min", e.lambda_min)->capture_default_str();
  es->add_option("--lambda-max", e.lambda_max)->capture_default_str();
  es->add_option("--lambda-count", e.lambda_count)->capture_default_str();
  es->add_option("--phi", e.phis, "rotation angles")->delimiter(',')->allow_extra_args(false);
  es->add_option("--grid-n", e.grid_n)->capture_default_str();
  es->add_option("--tol", e.tol, "cell solver tolerance");
  es->add_option("--out", e.out, "CSV output path");
  es->add_option("--format", e.format, "json | csv")->capture_default_str();

  RatesArgs r;
  auto* rs = app.add_subcommand("rates", "convergence-rate study on [0, 1]");
  rs->add_option("--operator", r.op, "max_two_linear | quad1d")->capture_default_str();
  rs->add_option("--arrangement", r.arrangement, "periodic | random")->capture_default_str();
  rs->add_option("--eps-list", r.eps_list, "decreasing cell widths")
      ->delimiter(',')
      ->allow_extra_args(false);
  rs->add_option("--samples", r.samples)->capture_default_str();
  rs->add_option("--seed", r.seed)->capture_default_str();
  rs->add_option("--rhs", r.rhs)->capture_default_str();
  rs->add_option("--tol", r.tol, "Dirichlet solver tolerance")->capture_default_str();
  rs->add_option("--out", r.out, "CSV output path");
  rs->add_option("--format", r.format, "json | csv")->capture_default_str();

  MeasureArgs m;
  auto* ms = app.add_subcommand("measure", "optimal discrete invariant measure (lp)");
  ms->add_option("--op", m.op, "operator JSON file or inline JSON")->required();
  add_q_options(ms, m.q);
  ms->add_option("--grid-n", m.grid_n);
  ms->add_option("--n-alpha", m.n_alpha);
  ms->add_option("--tol", m.tol)->capture_default_str();
  ms->add_option("--out", m.out, "CSV output path");
  ms->add_option("--format", m.format, "json | csv")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return kValidationError;
  }

  if (!config_path.empty()) {
    if (depth > 0 || !app.get_subcommands().empty()) {
      throw ValidationError("--config cannot be combined with a subcommand");
    }
    return dispatch(args_from_config(parse_json_text(read_file(config_path), config_path)),
                    out, err, depth + 1);
  }
  if (hs->parsed()) return cmd_homogenize(h, out);
  if (es->parsed()) return cmd_errormap(e, out);
  if (rs->parsed()) return cmd_rates(r, out);
  if (ms->parsed()) return cmd_measure(m, out);
  out << app.help();
  return kValidationError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err, 0);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const SolverError& e) {
    err << "solver failure: " << e.what();
    if (e.best_residual() >= 0.0) err << " (best residual " << e.best_residual() << ")";
    err << '\n';
    return kSolverError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

}  // namespace homog::cli

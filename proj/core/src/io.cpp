#include "homog/io.hpp"

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string_view>

#include "homog/errors.hpp"

namespace homog::io {

namespace {

void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + ": expected an object");
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> allowed,
                    std::string_view what) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
      throw ValidationError(std::string(what) + ": unknown key '" + it.key() + "'");
    }
  }
}

double number(const json& j, std::string_view what) {
  if (!j.is_number()) throw ValidationError(std::string(what) + ": expected a number");
  return j.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), key) : fallback;
}

std::vector<double> numbers(const json& j, std::string_view what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + ": expected an array");
  std::vector<double> out;
  for (const auto& v : j) out.push_back(number(v, what));
  return out;
}

PiecewiseCoeff coeff_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? coeff_from_json(j.at(key)) : PiecewiseCoeff(fallback);
}

}  // namespace

PiecewiseCoeff coeff_from_json(const json& j) {
  if (j.is_number()) return PiecewiseCoeff(j.get<double>());
  require_object(j, "coefficient");
  if (j.contains("cycle")) {
    reject_unknown(j, {"cycle", "pieces"}, "coefficient");
    const auto cycle = numbers(j.at("cycle"), "cycle");
    const auto& pieces = j.at("pieces");
    if (!pieces.is_number_integer() || pieces.get<long>() < 1) {
      throw ValidationError("coefficient: pieces must be a positive integer");
    }
    return PiecewiseCoeff::alternating(cycle, pieces.get<std::size_t>());
  }
  reject_unknown(j, {"breakpoints", "breakpoints_y2", "values"}, "coefficient");
  if (!j.contains("breakpoints") || !j.contains("values")) {
    throw ValidationError("coefficient: need breakpoints and values");
  }
  auto bp = numbers(j.at("breakpoints"), "breakpoints");
  if (!j.contains("breakpoints_y2")) {
    return PiecewiseCoeff(std::move(bp), numbers(j.at("values"), "values"));
  }
  auto bp2 = numbers(j.at("breakpoints_y2"), "breakpoints_y2");
  const auto& rows = j.at("values");
  if (!rows.is_array()) throw ValidationError("coefficient: values must be an array of rows");
  std::vector<double> flat;
  for (const auto& row : rows) {
    const auto r = numbers(row, "values");
    if (r.size() != bp2.size()) {
      throw ValidationError("coefficient: each row needs one value per y2 piece");
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return PiecewiseCoeff(std::move(bp), std::move(bp2), std::move(flat));
}

json to_json(const PiecewiseCoeff& c) {
  if (c.is_constant()) return c.values().front();
  json j{{"breakpoints", c.breakpoints()}};
  if (c.pieces_y2() > 1 || c.depends_on_y2()) {
    j["breakpoints_y2"] = c.breakpoints_y2();
    json rows = json::array();
    for (std::size_t i = 0; i < c.pieces_y1(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < c.pieces_y2(); ++k) row.push_back(c.value(i, k));
      rows.push_back(row);
    }
    j["values"] = rows;
  } else {
    json vals = json::array();
    for (std::size_t i = 0; i < c.pieces_y1(); ++i) vals.push_back(c.value(i));
    j["values"] = vals;
  }
  return j;
}

OperatorSpec operator_from_json(const json& j) {
  require_object(j, "operator");
  if (!j.contains("kind") || !j.at("kind").is_string()) {
    throw ValidationError("operator: missing string field 'kind'");
  }
  const auto kind = j.at("kind").get<std::string>();
  OperatorSpec op;
  if (kind == "stripes_pucci") {
    reject_unknown(j, {"kind", "a", "b"}, "stripes_pucci");
    op = StripesPucci{coeff_or(j, "a", 1.0), coeff_or(j, "b", 0.0)};
  } else if (kind == "max_two_linear") {
    reject_unknown(j, {"kind", "dim", "a0", "a1", "A", "h"}, "max_two_linear");
    MaxTwoLinear m;
    if (j.contains("dim")) {
      if (!j.at("dim").is_number_integer()) throw ValidationError("dim must be 1 or 2");
      m.dim = j.at("dim").get<int>();
    }
    m.a0 = coeff_or(j, "a0", 1.0);
    m.a1 = coeff_or(j, "a1", 0.0);
    m.h = number_or(j, "h", 0.0);
    if (j.contains("A")) {
      const auto a = numbers(j.at("A"), "A");
      if (a.size() == 1) {
        m.A = m.dim == 1 ? SymMat::scalar(a[0]) : SymMat::diag(a[0], a[0]);
      } else if (a.size() == 3) {
        m.A = SymMat::make(a[0], a[1], a[2]);
      } else {
        throw ValidationError("A: expected [a11] or [a11, a12, a22]");
      }
    } else {
      m.A = m.dim == 1 ? SymMat::scalar(1.0) : SymMat::identity(2);
    }
    op = m;
  } else if (kind == "quad1d") {
    reject_unknown(j, {"kind", "a", "b", "c", "alpha_cap"}, "quad1d");
    Quad1D q;
    q.a = number_or(j, "a", 1.0);
    q.b = coeff_or(j, "b", 0.0);
    q.c = number_or(j, "c", 0.0);
    if (j.contains("alpha_cap")) q.alpha_cap = number(j.at("alpha_cap"), "alpha_cap");
    op = q;
  } else {
    throw ValidationError("operator: unknown kind '" + kind + "'");
  }
  validate(op);
  return op;
}

json to_json(const OperatorSpec& op) {
  return std::visit(
      [](const auto& o) -> json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, StripesPucci>) {
          return {{"kind", "stripes_pucci"}, {"a", to_json(o.a)}, {"b", to_json(o.b)}};
        } else if constexpr (std::is_same_v<T, MaxTwoLinear>) {
          json a = o.dim == 1 ? json::array({o.A.q11})
                              : json::array({o.A.q11, o.A.q12, o.A.q22});
          return {{"kind", "max_two_linear"}, {"dim", o.dim}, {"a0", to_json(o.a0)},
                  {"a1", to_json(o.a1)},       {"A", a},        {"h", o.h}};
        } else {
          json j{{"kind", "quad1d"}, {"a", o.a}, {"b", to_json(o.b)}, {"c", o.c}};
          if (o.alpha_cap) j["alpha_cap"] = *o.alpha_cap;
          return j;
        }
      },
      op);
}

json to_json(const SymMat& q) {
  if (q.dim == 1) return json::array({q.q11});
  return json::array({q.q11, q.q12, q.q22});
}

json to_json(const HomogResult& r) {
  return {{"hbar", r.hbar},
          {"residual", r.residual},
          {"iterations", r.iterations},
          {"method", std::string(method_name(r.method))},
          {"grid_n", r.grid_n}};
}

json to_json(const RateStudyConfig& c) {
  return {{"operator", c.op == StudyOperator::MaxTwoLinear ? "max_two_linear" : "quad1d"},
          {"arrangement", std::string(arrangement_name(c.arrangement))},
          {"eps_list", c.eps_list},
          {"samples", c.samples},
          {"base_seed", c.base_seed},
          {"rhs", c.rhs},
          {"solver",
           {{"tol", c.solver.tol},
            {"max_iter", c.solver.max_iter},
            {"dt0", c.solver.dt0},
            {"dt_max", c.solver.dt_max}}}};
}

namespace {

json to_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}, {"mean", i.mean}}; }

}  // namespace

json to_json(const RateStudyResult& r) {
  json norms = json::array();
  for (const auto& s : r.norms) {
    json errs = json::array();
    for (const auto& e : s.error_ci) errs.push_back(to_json(e));
    norms.push_back({{"norm", norm_name(s.norm)},
                     {"slope", s.slope},
                     {"slope_ci", to_json(s.slope_ci)},
                     {"error_ci", errs}});
  }
  json seeds = json::array();
  for (const auto& rec : r.records) {
    json item{{"eps_index", rec.eps_index}, {"sample", rec.sample}, {"seed", rec.seed},
              {"ok", rec.ok}};
    if (!rec.ok) item["error"] = rec.error;
    seeds.push_back(item);
  }
  return {{"config", to_json(r.config)},
          {"hbar_root", r.hbar_root},
          {"failures", r.failures},
          {"norms", norms},
          {"samples", seeds}};
}

void write_corrector_csv(std::ostream& os, const PeriodicGrid& grid,
                         const CellSolution& sol) {
  os.precision(17);
  os << (grid.dim() == 1 ? "y1,u,H\n" : "y1,y2,u,H\n");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const auto y = grid.node(k);
    os << y[0] << ',';
    if (grid.dim() == 2) os << y[1] << ',';
    os << sol.corrector.values[k] << ',' << sol.hamiltonian[k] << '\n';
  }
}

void write_measure_csv(std::ostream& os, const DiscreteMeasure& m) {
  os.precision(17);
  const bool two = m.grid.dim() == 2;
  os << (two ? "node,y1,y2,alpha,zero_vector,weight\n" : "node,y1,alpha,zero_vector,weight\n");
  const std::size_t nc = m.controls.size();
  for (std::size_t i = 0; i < m.grid.size(); ++i) {
    const auto y = m.grid.node(i);
    for (std::size_t j = 0; j < nc; ++j) {
      const Control& c = m.controls.points[j];
      os << i << ',' << y[0] << ',';
      if (two) os << y[1] << ',';
      os << c.value << ',' << (c.zero_vector ? 1 : 0) << ',' << m.weights[i * nc + j] << '\n';
    }
  }
}

void write_field_csv(std::ostream& os, const DirichletSolution& sol) {
  os.precision(17);
  os << "x,u\n";
  for (std::size_t i = 0; i < sol.x.size(); ++i) os << sol.x[i] << ',' << sol.u[i] << '\n';
}

void write_rates_csv(std::ostream& os, const RateStudyResult& r) {
  os.precision(17);
  os << "eps,sample,seed,norm,error\n";
  for (const auto& rec : r.records) {
    if (!rec.ok) continue;
    for (Norm n : all_norms()) {
      os << r.config.eps_list[rec.eps_index] << ',' << rec.sample << ',' << rec.seed << ','
         << norm_name(n) << ',' << pick(rec.errors, n) << '\n';
    }
  }
}

}  // namespace homog::io

#include "homog/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "homog/analytic.hpp"
#include "homog/errors.hpp"

namespace homog {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void validate(const RateStudyConfig& cfg) {
  if (cfg.eps_list.size() < 2) throw ValidationError("rates: need at least two eps values");
  for (std::size_t i = 0; i < cfg.eps_list.size(); ++i) {
    if (!(cfg.eps_list[i] > 0.0)) throw ValidationError("rates: eps must be positive");
    if (i > 0 && !(cfg.eps_list[i] < cfg.eps_list[i - 1])) {
      throw ValidationError("rates: eps_list must be strictly decreasing");
    }
  }
  if (cfg.samples < 1) throw ValidationError("rates: samples must be >= 1");
  if (!std::isfinite(cfg.rhs)) throw ValidationError("rates: rhs must be finite");
}

}  // namespace

StudySetup study_setup(StudyOperator op) {
  if (op == StudyOperator::MaxTwoLinear) {
    MaxTwoLinear spec{1, PiecewiseCoeff::two_halves(1.0, 0.5),
                      PiecewiseCoeff::two_halves(1.5, 2.5), SymMat::scalar(1.0), 1.0};
    return {LocalOperator(LocalOperator::MaxTwo{1.0, 1.5, SymMat::scalar(1.0), 1.0}),
            LocalOperator(LocalOperator::MaxTwo{0.5, 2.5, SymMat::scalar(1.0), 1.0}),
            [spec](double r) { return hbar_max_two_linear(spec, SymMat::scalar(r)); }};
  }
  Quad1D spec{1.0, PiecewiseCoeff::two_halves(0.0, 1.0), 1.0, std::nullopt};
  return {LocalOperator(LocalOperator::Quad{1.0, 0.0, 1.0}),
          LocalOperator(LocalOperator::Quad{1.0, 1.0, 1.0}),
          [spec](double r) { return hbar_quad1d(spec, r); }};
}

NormErrors norm_errors(std::span<const double> u, std::span<const double> ubar, double eps) {
  if (u.size() != ubar.size()) throw ValidationError("norm_errors: size mismatch");
  NormErrors e;
  double sq = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = std::abs(u[i] - ubar[i]);
    e.sup = std::max(e.sup, d);
    sq += d * d;
    e.l1_raw += d;
  }
  e.l2_raw = std::sqrt(sq);
  e.l2 = std::sqrt(eps * sq);
  e.l1 = eps * e.l1_raw;
  return e;
}

std::uint64_t sample_seed(std::uint64_t base_seed, std::size_t eps_index,
                          std::size_t sample_index) {
  const std::uint64_t key = (static_cast<std::uint64_t>(eps_index) << 32) ^
                            static_cast<std::uint64_t>(sample_index);
  return splitmix64(base_seed ^ splitmix64(key));
}

RateFit fit_rate(std::span<const double> eps, std::span<const double> err) {
  if (eps.size() != err.size()) throw ValidationError("fit_rate: size mismatch");
  std::vector<double> lx, ly;
  RateFit fit;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(err[i] > 0.0) || !(eps[i] > 0.0) || !std::isfinite(err[i])) {
      ++fit.dropped;
      continue;
    }
    lx.push_back(std::log(eps[i]));
    ly.push_back(std::log(err[i]));
  }
  fit.used = lx.size();
  if (fit.used < 2) throw ValidationError("fit_rate: fewer than two positive errors");
  const double n = static_cast<double>(fit.used);
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit_rate: eps values must be distinct");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

Interval confidence_interval(std::span<const double> samples) {
  if (samples.empty()) throw ValidationError("confidence_interval: no samples");
  const double m = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / m;
  if (samples.size() == 1) return {mean, mean, mean};
  double ss = 0.0;
  for (double s : samples) ss += (s - mean) * (s - mean);
  const double half = 1.645 * std::sqrt(ss / (m - 1.0)) / std::sqrt(m);
  return {mean - half, mean + half, mean};
}

std::string norm_name(Norm n) {
  switch (n) {
    case Norm::Sup: return "sup";
    case Norm::L2: return "l2";
    case Norm::L1: return "l1";
    case Norm::L2Raw: return "l2_raw";
    case Norm::L1Raw: return "l1_raw";
  }
  return "unknown";
}

double pick(const NormErrors& e, Norm n) {
  switch (n) {
    case Norm::Sup: return e.sup;
    case Norm::L2: return e.l2;
    case Norm::L1: return e.l1;
    case Norm::L2Raw: return e.l2_raw;
    case Norm::L1Raw: return e.l1_raw;
  }
  return 0.0;
}

const std::vector<Norm>& all_norms() {
  static const std::vector<Norm> norms{Norm::Sup, Norm::L2, Norm::L1, Norm::L2Raw,
                                       Norm::L1Raw};
  return norms;
}

const NormSummary& RateStudyResult::summary(Norm n) const {
  for (const auto& s : norms) {
    if (s.norm == n) return s;
  }
  throw ValidationError("rates: norm not in result");
}

RateStudyResult run_study(const RateStudyConfig& cfg_in) {
  validate(cfg_in);
  RateStudyResult out;
  out.config = cfg_in;
  auto& cfg = out.config;
  if (cfg.arrangement == Arrangement::Periodic) cfg.samples = 1;

  const StudySetup setup = study_setup(cfg.op);
  const HomogenizedSolution ubar = solve_homogenized(setup.hbar, cfg.rhs);
  out.hbar_root = ubar.r;

  const std::size_t ne = cfg.eps_list.size();
  const auto ns = static_cast<std::size_t>(cfg.samples);
  for (std::size_t e = 0; e < ne; ++e) {
    for (std::size_t s = 0; s < ns; ++s) {
      SampleRecord rec;
      rec.eps_index = e;
      rec.sample = s;
      rec.seed = sample_seed(cfg.base_seed, e, s);
      const Medium medium = build_medium(cfg.eps_list[e], cfg.arrangement, rec.seed);
      try {
        if (cfg.sample_override) {
          rec.errors = cfg.sample_override(medium);
        } else {
          const DirichletSolution sol =
              solve_eps(setup.first, setup.second, medium, cfg.rhs, cfg.solver);
          rec.errors = norm_errors(sol.u, ubar.sample(sol.x), medium.eps);
        }
      } catch (const SolverError& err) {
        rec.ok = false;
        rec.error = err.what();
        ++out.failures;
      }
      out.records.push_back(std::move(rec));
    }
  }
  if (10 * out.failures > out.records.size()) {
    throw SolverError("rates: more than 10% of samples failed", -1.0,
                      static_cast<long>(out.failures));
  }

  for (Norm norm : all_norms()) {
    NormSummary summary;
    summary.norm = norm;
    std::vector<double> slopes;
    for (std::size_t s = 0; s < ns; ++s) {
      std::vector<double> eps, err;
      for (std::size_t e = 0; e < ne; ++e) {
        const SampleRecord& rec = out.records[e * ns + s];
        if (!rec.ok) continue;
        eps.push_back(cfg.eps_list[e]);
        err.push_back(pick(rec.errors, norm));
      }
      try {
        slopes.push_back(fit_rate(eps, err).slope);
      } catch (const ValidationError&) {
      }
    }
    if (slopes.empty()) throw SolverError("rates: no sample admits a slope fit");
    summary.slope_ci = confidence_interval(slopes);
    summary.slope = summary.slope_ci.mean;
    for (std::size_t e = 0; e < ne; ++e) {
      std::vector<double> vals;
      for (std::size_t s = 0; s < ns; ++s) {
        const SampleRecord& rec = out.records[e * ns + s];
        if (rec.ok) vals.push_back(pick(rec.errors, norm));
      }
      summary.error_ci.push_back(vals.empty() ? Interval{} : confidence_interval(vals));
    }
    out.norms.push_back(std::move(summary));
  }
  return out;
}

}  // namespace homog

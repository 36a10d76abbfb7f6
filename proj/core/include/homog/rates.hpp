#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "homog/dirichlet.hpp"
#include "homog/operators.hpp"

namespace homog {

enum class StudyOperator { MaxTwoLinear, Quad1D };

/// Constituent operators and homogenized operator for the rate study:
/// MaxTwoLinear cells (a0, a1) = (1, 3/2) and (1/2, 5/2) with h = 1;
/// Quad1D cells b = 0 and b = 1 with a = c = 1.
struct StudySetup {
  LocalOperator first;
  LocalOperator second;
  std::function<double(double)> hbar;
};
StudySetup study_setup(StudyOperator op);

struct NormErrors {
  double sup = 0.0;
  double l2 = 0.0;     ///< sqrt(eps sum e^2)
  double l1 = 0.0;     ///< eps sum |e|
  double l2_raw = 0.0; ///< sqrt(sum e^2)
  double l1_raw = 0.0; ///< sum |e|
};

NormErrors norm_errors(std::span<const double> u, std::span<const double> ubar,
                       double eps);

struct RateStudyConfig {
  StudyOperator op = StudyOperator::MaxTwoLinear;
  Arrangement arrangement = Arrangement::Periodic;
  std::vector<double> eps_list{1.0 / 10, 1.0 / 20, 1.0 / 40,
                               1.0 / 80, 1.0 / 160, 1.0 / 320};
  int samples = 20;
  std::uint64_t base_seed = 20170101;
  double rhs = 2.0;
  DirichletConfig solver;
  /// Replaces the eps-scale solve; receives the medium and returns its
  /// errors. Used to inject synthetic error laws.
  std::function<NormErrors(const Medium&)> sample_override;
};

/// Per-(eps, sample) seed: splitmix64 of base_seed combined with indices.
std::uint64_t sample_seed(std::uint64_t base_seed, std::size_t eps_index,
                          std::size_t sample_index);

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::size_t used = 0;
  std::size_t dropped = 0;
};

/// Ordinary least squares of log(err) on log(eps). Non-positive errors are
/// dropped; fewer than two remaining points throws ValidationError.
RateFit fit_rate(std::span<const double> eps, std::span<const double> err);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double mean = 0.0;
};

/// mean +- 1.645 s / sqrt(m), the two-sided 90% normal interval.
Interval confidence_interval(std::span<const double> samples);

enum class Norm { Sup, L2, L1, L2Raw, L1Raw };
std::string norm_name(Norm n);
double pick(const NormErrors& e, Norm n);
const std::vector<Norm>& all_norms();

struct SampleRecord {
  std::size_t eps_index = 0;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  bool ok = true;
  std::string error;
  NormErrors errors;
};

struct NormSummary {
  Norm norm = Norm::Sup;
  /// Mean of per-sample slopes (pooled least squares when balanced).
  double slope = 0.0;
  Interval slope_ci;
  /// Per-eps error intervals, aligned with eps_list.
  std::vector<Interval> error_ci;
};

struct RateStudyResult {
  RateStudyConfig config;
  double hbar_root = 0.0;
  std::vector<SampleRecord> records;
  std::vector<NormSummary> norms;
  std::size_t failures = 0;

  const NormSummary& summary(Norm n) const;
};

/// Runs every (eps, sample) solve, fits slopes per norm and sample, and
/// aggregates. Periodic arrangements use a single sample. Aborts with
/// SolverError if more than 10% of samples fail.
RateStudyResult run_study(const RateStudyConfig& cfg);

}  // namespace homog

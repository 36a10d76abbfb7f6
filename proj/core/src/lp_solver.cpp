#include "homog/lp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "homog/errors.hpp"

namespace homog::lp {

void StandardFormLp::add_column(double cost, const std::vector<std::size_t>& rows_of_col,
                                const std::vector<double>& values_of_col) {
  if (rows_of_col.size() != values_of_col.size()) {
    throw ValidationError("lp: column rows/values size mismatch");
  }
  for (std::size_t k = 0; k < rows_of_col.size(); ++k) {
    if (rows_of_col[k] >= rows) throw ValidationError("lp: row index out of range");
    if (values_of_col[k] == 0.0) continue;
    row_index.push_back(rows_of_col[k]);
    value.push_back(values_of_col[k]);
  }
  objective.push_back(cost);
  col_start.push_back(row_index.size());
}

double StandardFormLp::residual(const std::vector<double>& x) const {
  std::vector<double> r(rhs.begin(), rhs.end());
  for (std::size_t j = 0; j < cols(); ++j) {
    for (std::size_t p = col_start[j]; p < col_start[j + 1]; ++p) {
      r[row_index[p]] -= value[p] * x[j];
    }
  }
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  return worst;
}

double StandardFormLp::evaluate(const std::vector<double>& x) const {
  double s = 0.0;
  for (std::size_t j = 0; j < cols(); ++j) s += objective[j] * x[j];
  return s;
}

namespace {

class RevisedSimplex {
 public:
  RevisedSimplex(const StandardFormLp& lp, const SimplexOptions& opts)
      : lp_(lp),
        opts_(opts),
        m_(lp.rows),
        n_(lp.cols()),
        sign_(m_, 1.0),
        b_(m_),
        binv_(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(m_),
                                        static_cast<Eigen::Index>(m_))),
        xb_(m_),
        basis_(m_),
        position_(n_ + m_, kNonbasic),
        cost_(n_ + m_, 0.0) {
    for (std::size_t i = 0; i < m_; ++i) {
      const double bi = lp.rhs[i];
      sign_[i] = bi < 0.0 ? -1.0 : 1.0;
      b_(idx(i)) = std::abs(bi);
      basis_[i] = n_ + i;
      position_[n_ + i] = static_cast<long>(i);
    }
    xb_ = b_;
  }

  Solution run(const std::vector<std::size_t>& crash) {
    Solution sol;
    if (!crash.empty() && try_crash(crash)) {
      sol.used_crash = true;
      return phase_two(sol);
    }
    // Phase one: minimize the sum of artificials.
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = 0.0;
    for (std::size_t i = 0; i < m_; ++i) cost_[n_ + i] = 1.0;
    Status st = iterate(sol);
    if (st != Status::Optimal) {
      sol.status = st == Status::Unbounded ? Status::Infeasible : st;
      return sol;
    }
    refactor();
    double infeas = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] >= n_) infeas += std::max(0.0, xb_(idx(i)));
    }
    const double scale = std::max(1.0, b_.cwiseAbs().maxCoeff());
    if (infeas > opts_.feasibility_tol * scale) {
      sol.status = Status::Infeasible;
      return sol;
    }
    sol.redundant_rows = drive_out_artificials();
    return phase_two(sol);
  }

 private:
  static constexpr long kNonbasic = -1;

  /// Minimizes -c^T x over structurals from the current feasible basis.
  Solution phase_two(Solution& sol) {
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = -lp_.objective[j];
    for (std::size_t i = 0; i < m_; ++i) cost_[n_ + i] = 0.0;
    sol.status = iterate(sol);
    refactor();
    sol.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.x[basis_[i]] = xb_(idx(i));
    }
    sol.objective = lp_.evaluate(sol.x);
    return sol;
  }

  bool try_crash(const std::vector<std::size_t>& crash) {
    if (crash.size() != m_) return false;
    const std::vector<std::size_t> saved = basis_;
    std::vector<long> pos(n_ + m_, kNonbasic);
    for (std::size_t i = 0; i < m_; ++i) {
      if (crash[i] >= n_ || pos[crash[i]] != kNonbasic) return false;
      pos[crash[i]] = static_cast<long>(i);
    }
    basis_ = crash;
    const double rcond = refactor();
    bool ok = rcond > 1e-12 && xb_.allFinite();
    for (Eigen::Index i = 0; ok && i < xb_.size(); ++i) ok = xb_(i) >= 0.0;
    if (!ok) {
      basis_ = saved;
      refactor();
      return false;
    }
    position_ = std::move(pos);
    return true;
  }

  static Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

  bool is_artificial(std::size_t j) const { return j >= n_; }

  /// B^-1 a_j for structural or artificial column j (rows sign-normalized).
  Eigen::VectorXd ftran(std::size_t j) const {
    if (is_artificial(j)) return binv_.col(idx(j - n_));
    Eigen::VectorXd w = Eigen::VectorXd::Zero(idx(m_));
    for (std::size_t p = lp_.col_start[j]; p < lp_.col_start[j + 1]; ++p) {
      const std::size_t r = lp_.row_index[p];
      w.noalias() += (sign_[r] * lp_.value[p]) * binv_.col(idx(r));
    }
    return w;
  }

  double dot_row(const Eigen::VectorXd& y, std::size_t j) const {
    double s = 0.0;
    for (std::size_t p = lp_.col_start[j]; p < lp_.col_start[j + 1]; ++p) {
      const std::size_t r = lp_.row_index[p];
      s += y(idx(r)) * sign_[r] * lp_.value[p];
    }
    return s;
  }

  /// Rebuilds B^-1 from the basis columns; returns the LU condition estimate.
  double refactor() {
    Eigen::MatrixXd basis_matrix = Eigen::MatrixXd::Zero(idx(m_), idx(m_));
    for (std::size_t i = 0; i < m_; ++i) {
      const std::size_t j = basis_[i];
      if (is_artificial(j)) {
        basis_matrix(idx(j - n_), idx(i)) = 1.0;
        continue;
      }
      for (std::size_t p = lp_.col_start[j]; p < lp_.col_start[j + 1]; ++p) {
        const std::size_t r = lp_.row_index[p];
        basis_matrix(idx(r), idx(i)) += sign_[r] * lp_.value[p];
      }
    }
    const auto lu = basis_matrix.partialPivLu();
    binv_ = lu.inverse();
    xb_.noalias() = binv_ * b_;
    for (Eigen::Index i = 0; i < xb_.size(); ++i) {
      if (xb_(i) < 0.0 && xb_(i) > -opts_.feasibility_tol) xb_(i) = 0.0;
    }
    since_refactor_ = 0;
    return lu.rcond();
  }

  void pivot(std::size_t r, std::size_t entering, const Eigen::VectorXd& w,
             double theta) {
    xb_ -= theta * w;
    xb_(idx(r)) = theta;
    const Eigen::RowVectorXd pivot_row = binv_.row(idx(r)) / w(idx(r));
    Eigen::VectorXd wm = w;
    wm(idx(r)) -= 1.0;
    binv_.noalias() -= wm * pivot_row;
    binv_.row(idx(r)) = pivot_row;
    position_[basis_[r]] = kNonbasic;
    basis_[r] = entering;
    position_[entering] = static_cast<long>(r);
    if (++since_refactor_ >= opts_.refactor_interval) refactor();
  }

  Status iterate(Solution& sol) {
    bool bland = false;
    int degenerate_run = 0;
    Eigen::VectorXd cb(idx(m_));
    while (true) {
      if (sol.iterations >= opts_.max_iterations) return Status::IterationLimit;
      for (std::size_t i = 0; i < m_; ++i) cb(idx(i)) = cost_[basis_[i]];
      const Eigen::VectorXd y = binv_.transpose() * cb;
      if (!y.allFinite()) return Status::IterationLimit;

      std::size_t entering = n_ + m_;
      double best = -opts_.optimality_tol * std::max(1.0, y.cwiseAbs().maxCoeff());
      for (std::size_t j = 0; j < n_; ++j) {
        if (position_[j] != kNonbasic) continue;
        const double d = cost_[j] - dot_row(y, j);
        if (d < best) {
          entering = j;
          best = d;
          if (bland) break;
        }
      }
      if (entering == n_ + m_) return Status::Optimal;

      const Eigen::VectorXd w = ftran(entering);
      // Harris two-pass ratio test: bound the step with relaxed feasibility,
      // then take the largest pivot among rows that block within that bound.
      const double wmax = w.cwiseAbs().maxCoeff();
      const double ptol = opts_.pivot_tol * std::max(1.0, wmax);
      // Under Bland's rule the textbook minimum ratio is used instead.
      const double relax = bland ? 0.0 : opts_.feasibility_tol;
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < m_; ++i) {
        const double wi = w(idx(i));
        if (wi > ptol) {
          bound = std::min(bound, (std::max(0.0, xb_(idx(i))) + relax) / wi);
        }
      }
      std::size_t leave = m_;
      double theta = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double wi = w(idx(i));
        if (wi <= ptol) continue;
        const double ratio = std::max(0.0, xb_(idx(i))) / wi;
        if (ratio > bound) continue;
        bool take = leave == m_;
        if (!take) {
          take = bland ? basis_[i] < basis_[leave] : wi > w(idx(leave));
        }
        if (take) {
          leave = i;
          theta = ratio;
        }
      }
      if (leave == m_) return Status::Unbounded;

      pivot(leave, entering, w, theta);
      ++sol.iterations;
      if (theta <= 1e-13 && ++degenerate_run > opts_.degenerate_limit) bland = true;
      if (theta > 1e-13) degenerate_run = 0;
    }
  }

  /// Pivots basic artificials (at zero level) out against structurals;
  /// returns the number of rows where this is impossible (redundant rows).
  std::size_t drive_out_artificials() {
    std::size_t redundant = 0;
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      const Eigen::VectorXd row = binv_.row(idx(r)).transpose();
      std::size_t pick = n_;
      double mag = 1e-7 * std::max(1.0, row.cwiseAbs().maxCoeff());
      for (std::size_t j = 0; j < n_; ++j) {
        if (position_[j] != kNonbasic) continue;
        const double a = std::abs(dot_row(row, j));
        if (a > mag) {
          mag = a;
          pick = j;
        }
      }
      if (pick == n_) {
        ++redundant;
        continue;
      }
      const Eigen::VectorXd w = ftran(pick);
      pivot(r, pick, w, xb_(idx(r)) / w(idx(r)));
    }
    return redundant;
  }

  const StandardFormLp& lp_;
  SimplexOptions opts_;
  std::size_t m_;
  std::size_t n_;
  std::vector<double> sign_;
  Eigen::VectorXd b_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  std::vector<std::size_t> basis_;
  std::vector<long> position_;
  std::vector<double> cost_;
  int since_refactor_ = 0;
};

}  // namespace

Solution solve(const StandardFormLp& lp, const SimplexOptions& opts,
               const std::vector<std::size_t>& crash) {
  if (lp.rhs.size() != lp.rows) throw ValidationError("lp: rhs size mismatch");
  if (lp.col_start.size() != lp.cols() + 1) throw ValidationError("lp: malformed columns");
  return RevisedSimplex(lp, opts).run(crash);
}

}  // namespace homog::lp

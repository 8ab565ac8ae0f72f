#include "nsbox/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nsbox::lp {

namespace {

class Tableau {
 public:
  Tableau(const Problem& p, const Options& opt) : opt_(opt) {
    n_orig_ = p.num_vars;
    const int n_eq = static_cast<int>(p.eq_rows.size());
    const int n_ub = static_cast<int>(p.ub_rows.size());
    m_ = n_eq + n_ub;
    n_slack_ = n_ub;
    art0_ = n_orig_ + n_slack_;
    ncols_ = art0_ + m_;
    rows_.assign(m_, std::vector<double>(ncols_ + 1, 0.0));
    basis_.resize(m_);

    auto load = [&](int r, const std::vector<double>& coeffs, double rhs, int slack_col) {
      if (static_cast<int>(coeffs.size()) != n_orig_) throw std::invalid_argument("lp: row width mismatch");
      auto& row = rows_[r];
      for (int j = 0; j < n_orig_; ++j) row[j] = coeffs[j];
      if (slack_col >= 0) row[slack_col] = 1.0;
      row[ncols_] = rhs;
      if (rhs < 0.0)
        for (double& v : row) v = -v;
      row[art0_ + r] = 1.0;
      basis_[r] = art0_ + r;
    };
    for (int r = 0; r < n_eq; ++r) load(r, p.eq_rows[r], p.eq_rhs[r], -1);
    for (int r = 0; r < n_ub; ++r) load(n_eq + r, p.ub_rows[r], p.ub_rhs[r], n_orig_ + r);
  }

  Result run(const std::vector<double>& objective) {
    Result res;
    // Phase one: minimise the sum of artificials.
    std::vector<double> c1(ncols_, 0.0);
    for (int j = art0_; j < ncols_; ++j) c1[j] = 1.0;
    if (!iterate(c1, ncols_, res.iterations)) throw std::logic_error("lp: phase one unbounded");
    res.infeasibility = objective_value(c1);
    if (res.infeasibility > opt_.feasibility_tol) {
      res.status = Status::Infeasible;
      res.x = primal();
      return res;
    }
    drive_out_artificials();

    std::vector<double> c2(ncols_, 0.0);
    for (int j = 0; j < n_orig_ && j < static_cast<int>(objective.size()); ++j) c2[j] = objective[j];
    if (!iterate(c2, art0_, res.iterations)) {
      res.status = Status::Unbounded;
      res.x = primal();
      return res;
    }
    res.status = Status::Optimal;
    res.x = primal();
    res.objective = 0.0;
    for (int j = 0; j < n_orig_ && j < static_cast<int>(objective.size()); ++j) res.objective += objective[j] * res.x[j];
    return res;
  }

 private:
  double objective_value(const std::vector<double>& c) const {
    double v = 0.0;
    for (int r = 0; r < m_; ++r) v += c[basis_[r]] * rows_[r][ncols_];
    return v;
  }

  std::vector<double> primal() const {
    std::vector<double> x(n_orig_, 0.0);
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < n_orig_) x[basis_[r]] = std::max(0.0, rows_[r][ncols_]);
    return x;
  }

  void pivot(int r, int col) {
    auto& prow = rows_[r];
    const double pv = prow[col];
    for (double& v : prow) v /= pv;
    for (int i = 0; i < m_; ++i) {
      if (i == r) continue;
      const double f = rows_[i][col];
      if (f == 0.0) continue;
      auto& row = rows_[i];
      for (int j = 0; j <= ncols_; ++j) row[j] -= f * prow[j];
      row[col] = 0.0;
    }
    basis_[r] = col;
  }

  /// Bland's rule over columns [0, col_limit). Returns false when unbounded.
  bool iterate(const std::vector<double>& c, int col_limit, int& iterations) {
    while (iterations < opt_.max_iterations) {
      int enter = -1;
      for (int j = 0; j < col_limit; ++j) {
        double d = c[j];
        for (int r = 0; r < m_; ++r) d -= c[basis_[r]] * rows_[r][j];
        if (d < -opt_.pivot_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int r = 0; r < m_; ++r) {
        const double a = rows_[r][enter];
        if (a <= opt_.pivot_tol) continue;
        const double ratio = rows_[r][ncols_] / a;
        if (ratio < best - 1e-15 || (std::abs(ratio - best) <= 1e-15 && basis_[r] < basis_[leave])) {
          best = ratio;
          leave = r;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
      ++iterations;
    }
    throw std::runtime_error("lp: iteration limit reached");
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art0_) continue;
      int best = -1;
      double mag = 1e-9;
      for (int j = 0; j < art0_; ++j) {
        if (std::abs(rows_[r][j]) > mag) {
          mag = std::abs(rows_[r][j]);
          best = j;
        }
      }
      // A row with no usable column is redundant; its artificial stays basic at zero.
      if (best >= 0) pivot(r, best);
    }
  }

  Options opt_;
  int n_orig_ = 0, n_slack_ = 0, art0_ = 0, ncols_ = 0, m_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<int> basis_;
};

}  // namespace

Result solve(const Problem& problem, const Options& options) {
  if (problem.eq_rows.size() != problem.eq_rhs.size() || problem.ub_rows.size() != problem.ub_rhs.size())
    throw std::invalid_argument("lp: rows and right-hand sides differ in length");
  Tableau t(problem, options);
  return t.run(problem.objective);
}

}  // namespace nsbox::lp

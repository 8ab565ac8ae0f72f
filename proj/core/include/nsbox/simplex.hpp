#pragma once

#include <vector>

namespace nsbox::lp {

/// minimize c.x  subject to  A_eq x = b_eq,  A_ub x <= b_ub,  x >= 0.
struct Problem {
  int num_vars = 0;
  std::vector<double> objective;  // empty: pure feasibility
  std::vector<std::vector<double>> eq_rows;
  std::vector<double> eq_rhs;
  std::vector<std::vector<double>> ub_rows;
  std::vector<double> ub_rhs;

  void add_eq(std::vector<double> row, double rhs) {
    eq_rows.push_back(std::move(row));
    eq_rhs.push_back(rhs);
  }
  void add_ub(std::vector<double> row, double rhs) {
    ub_rows.push_back(std::move(row));
    ub_rhs.push_back(rhs);
  }
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  std::vector<double> x;
  double objective = 0.0;
  /// Phase-one objective: sum of artificial variables at the end of phase one
  /// (zero, up to rounding, for feasible problems).
  double infeasibility = 0.0;
  int iterations = 0;
};

struct Options {
  /// Phase-one objective above this marks the problem infeasible.
  double feasibility_tol = 1e-9;
  /// Pivot and reduced-cost threshold.
  double pivot_tol = 1e-12;
  int max_iterations = 10000;
};

/// Dense two-phase primal simplex with Bland's anti-cycling rule. Meant for
/// the small, well-scaled problems of this library (tens of variables).
Result solve(const Problem& problem, const Options& options = {});

}  // namespace nsbox::lp

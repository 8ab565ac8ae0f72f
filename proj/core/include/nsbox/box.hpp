#pragma once

#include <array>
#include <span>

#include "nsbox/error.hpp"

namespace nsbox {

/// Validation tolerance for probabilities, normalisation and marginals.
inline constexpr double kValTol = 1e-9;
/// Tolerance for derived quantities (discords, decomposition weights).
inline constexpr double kMeasTol = 1e-7;

/// Row-major 4x4 probability table. Row r = 2*i + j for inputs (A_i, B_j);
/// column c = 2*m + n for outcomes (a_m, b_n), with a_m = (-1)^m.
using Table = std::array<std::array<double, 4>, 4>;

constexpr int row_index(int i, int j) noexcept { return 2 * i + j; }
constexpr int col_index(int m, int n) noexcept { return 2 * m + n; }
constexpr double outcome_sign(int m) noexcept { return m == 0 ? 1.0 : -1.0; }

/// Expectation values of a box: e[i][j] = <A_i B_j>, ma[i] = <A_i>, mb[j] = <B_j>.
struct Correlators {
  std::array<std::array<double, 2>, 2> e{};
  std::array<double, 2> ma{};
  std::array<double, 2> mb{};
};

/// A validated two-input/two-output nonsignaling box. Immutable once built.
class Box {
 public:
  /// Validates entries in [0,1], unit row sums and nonsignaling marginals,
  /// each within `tol`. Throws Error{NotAProbability|NotNormalized|Signaling|NonFinite}.
  static Box make(const Table& table, double tol = kValTol);

  const Table& table() const noexcept { return table_; }
  double at(int row, int col) const { return table_[row][col]; }
  /// P(a_m, b_n | A_i, B_j)
  double p(int m, int n, int i, int j) const { return table_[row_index(i, j)][col_index(m, n)]; }

  friend bool operator==(const Box&, const Box&) = default;

 private:
  explicit Box(const Table& t) : table_(t) {}
  Table table_{};
};

/// Throws the same errors as Box::make without constructing.
void validate_table(const Table& table, double tol = kValTol);

Correlators correlators(const Box& box);

/// Rebuilds the unique binary-outcome table with the given correlators:
/// P(m,n|i,j) = (1 + a ma[i] + b mb[j] + ab e[i][j]) / 4.
Box box_from_correlators(const Correlators& c, double tol = kValTol);

/// Entrywise convex combination. Throws WeightMismatch (length or sum) or NegativeWeight.
Box mix(std::span<const Box> boxes, std::span<const double> weights, double tol = kValTol);

/// Two-term convenience: w*a + (1-w)*b.
Box mix2(const Box& a, const Box& b, double w);

/// Max absolute entrywise difference.
double box_distance(const Box& a, const Box& b);
double table_distance(const Table& a, const Table& b);

/// Exchanges the roles of Alice and Bob: P'(m,n|i,j) = P(n,m|j,i).
Box swap_parties(const Box& box);

}  // namespace nsbox

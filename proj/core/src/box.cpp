#include "nsbox/box.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nsbox {

namespace {

std::string where(int row, int col) {
  std::ostringstream os;
  os << "row " << row << " (A" << row / 2 << ",B" << row % 2 << ")";
  if (col >= 0) os << ", column " << col << " (m=" << col / 2 << ",n=" << col % 2 << ")";
  return os.str();
}

}  // namespace

void validate_table(const Table& t, double tol) {
  for (int r = 0; r < 4; ++r) {
    double sum = 0.0;
    for (int c = 0; c < 4; ++c) {
      const double v = t[r][c];
      if (!std::isfinite(v)) throw Error(ErrorKind::NonFinite, "entry at " + where(r, c));
      if (v < -tol || v > 1.0 + tol) {
        std::ostringstream os;
        os << "entry " << v << " at " << where(r, c);
        throw Error(ErrorKind::NotAProbability, os.str());
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      std::ostringstream os;
      os << "row sum " << sum << " at " << where(r, -1);
      throw Error(ErrorKind::NotNormalized, os.str());
    }
  }
  // Alice: P(m|i) must not depend on j.
  for (int i = 0; i < 2; ++i) {
    for (int m = 0; m < 2; ++m) {
      const double p0 = t[row_index(i, 0)][col_index(m, 0)] + t[row_index(i, 0)][col_index(m, 1)];
      const double p1 = t[row_index(i, 1)][col_index(m, 0)] + t[row_index(i, 1)][col_index(m, 1)];
      if (std::abs(p0 - p1) > tol) {
        std::ostringstream os;
        os << "Alice marginal P(m=" << m << "|A" << i << ") differs between B0 (" << p0
           << ") and B1 (" << p1 << "), rows " << row_index(i, 0) << "/" << row_index(i, 1);
        throw Error(ErrorKind::Signaling, os.str());
      }
    }
  }
  for (int j = 0; j < 2; ++j) {
    for (int n = 0; n < 2; ++n) {
      const double p0 = t[row_index(0, j)][col_index(0, n)] + t[row_index(0, j)][col_index(1, n)];
      const double p1 = t[row_index(1, j)][col_index(0, n)] + t[row_index(1, j)][col_index(1, n)];
      if (std::abs(p0 - p1) > tol) {
        std::ostringstream os;
        os << "Bob marginal P(n=" << n << "|B" << j << ") differs between A0 (" << p0
           << ") and A1 (" << p1 << "), rows " << row_index(0, j) << "/" << row_index(1, j);
        throw Error(ErrorKind::Signaling, os.str());
      }
    }
  }
}

Box Box::make(const Table& table, double tol) {
  validate_table(table, tol);
  return Box(table);
}

Correlators correlators(const Box& box) {
  Correlators c;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      double e = 0.0;
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) e += outcome_sign(m) * outcome_sign(n) * box.p(m, n, i, j);
      c.e[i][j] = e;
    }
  }
  // Marginals are read from the j=0 (resp. i=0) row; nonsignaling makes the choice immaterial.
  for (int i = 0; i < 2; ++i) {
    double s = 0.0;
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) s += outcome_sign(m) * box.p(m, n, i, 0);
    c.ma[i] = s;
  }
  for (int j = 0; j < 2; ++j) {
    double s = 0.0;
    for (int m = 0; m < 2; ++m)
      for (int n = 0; n < 2; ++n) s += outcome_sign(n) * box.p(m, n, 0, j);
    c.mb[j] = s;
  }
  return c;
}

Box box_from_correlators(const Correlators& c, double tol) {
  Table t{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          const double a = outcome_sign(m), b = outcome_sign(n);
          t[row_index(i, j)][col_index(m, n)] =
              (1.0 + a * c.ma[i] + b * c.mb[j] + a * b * c.e[i][j]) / 4.0;
        }
  return Box::make(t, tol);
}

Box mix(std::span<const Box> boxes, std::span<const double> weights, double tol) {
  if (boxes.size() != weights.size() || boxes.empty())
    throw Error(ErrorKind::WeightMismatch, "boxes and weights must be non-empty and of equal length");
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (weights[k] < -tol) throw Error(ErrorKind::NegativeWeight, "weight " + std::to_string(k));
    total += weights[k];
  }
  if (std::abs(total - 1.0) > tol)
    throw Error(ErrorKind::WeightMismatch, "weights sum to " + std::to_string(total));
  Table t{};
  for (std::size_t k = 0; k < boxes.size(); ++k)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t[r][c] += weights[k] * boxes[k].at(r, c);
  return Box::make(t, tol);
}

Box mix2(const Box& a, const Box& b, double w) {
  const std::array<Box, 2> boxes{a, b};
  const std::array<double, 2> weights{w, 1.0 - w};
  return mix(boxes, weights);
}

double table_distance(const Table& a, const Table& b) {
  double d = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(a[r][c] - b[r][c]));
  return d;
}

double box_distance(const Box& a, const Box& b) { return table_distance(a.table(), b.table()); }

Box swap_parties(const Box& box) {
  Table t{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) t[row_index(i, j)][col_index(m, n)] = box.p(n, m, j, i);
  return Box::make(t);
}

}  // namespace nsbox

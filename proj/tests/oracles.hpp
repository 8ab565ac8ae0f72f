#pragma once

// Reference computations written directly from the textbook definitions,
// sharing no code with the library beyond the Table layout.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "nsbox/box.hpp"

namespace oracle {

using nsbox::Table;

inline Table indicator(double value, const std::function<bool(int, int, int, int)>& on) {
  Table t{};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) t[2 * x + y][2 * a + b] = on(a, b, x, y) ? value : 0.0;
  return t;
}

// 1/2 where a ^ b = xy ^ alpha x ^ beta y ^ gamma
inline Table pr(int alpha, int beta, int gamma) {
  return indicator(0.5, [=](int a, int b, int x, int y) {
    return (a ^ b) == ((x & y) ^ (alpha & x) ^ (beta & y) ^ gamma);
  });
}

// a = alpha x ^ beta, b = gamma y ^ eps
inline Table det(int alpha, int beta, int gamma, int eps) {
  return indicator(1.0, [=](int a, int b, int x, int y) {
    return a == ((alpha & x) ^ beta) && b == ((gamma & y) ^ eps);
  });
}

inline Table uniform() {
  Table t{};
  for (auto& row : t) row.fill(0.25);
  return t;
}

inline Table combo(std::initializer_list<std::pair<double, Table>> parts) {
  Table t{};
  for (const auto& [w, p] : parts)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t[r][c] += w * p[r][c];
  return t;
}

// <A_x B_y> = sum_ab (-1)^(a+b) P(ab|xy)
inline double corr(const Table& t, int x, int y) {
  const auto& row = t[2 * x + y];
  return row[0] - row[1] - row[2] + row[3];
}

// Standard CHSH expressions, one per choice of the "odd" input pair.
inline std::array<double, 4> bell_moduli(const Table& t) {
  const double e00 = corr(t, 0, 0), e01 = corr(t, 0, 1), e10 = corr(t, 1, 0), e11 = corr(t, 1, 1);
  return {std::abs(e00 + e01 + e10 - e11), std::abs(e00 - e01 + e10 + e11), std::abs(e00 + e01 - e10 + e11),
          std::abs(-e00 + e01 + e10 + e11)};
}

inline double sorted_discord(std::array<double, 4> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return std::abs(v[0] - v[1] - v[2] + v[3]);
}

inline double max_abs_diff(const Table& a, const Table& b) {
  double d = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(a[r][c] - b[r][c]));
  return d;
}

}  // namespace oracle

namespace oracle {

// |<A0B1> + <A1B0>|, |<A0B0> + <A1B1>|, |<A0B1> - <A1B0>|, |<A0B0> - <A1B1>|
inline std::array<double, 4> mermin_moduli(const Table& t) {
  const double e00 = corr(t, 0, 0), e01 = corr(t, 0, 1), e10 = corr(t, 1, 0), e11 = corr(t, 1, 1);
  return {std::abs(e01 + e10), std::abs(e00 + e11), std::abs(e01 - e10), std::abs(e00 - e11)};
}

}  // namespace oracle

#include "nsbox/measures.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

namespace nsbox {

namespace {

double sgn(int parity) { return (parity & 1) ? -1.0 : 1.0; }

}  // namespace

BellFunctions bell_functions(const Correlators& c) {
  BellFunctions out;
  for (const PrIndex& k : PrIndex::all()) {
    const int a = k.alpha, b = k.beta, g = k.gamma;
    out.signed_values[k.ordinal()] = sgn(g) * c.e[0][0] + sgn(b ^ g) * c.e[0][1] +
                                     sgn(a ^ g) * c.e[1][0] + sgn(a ^ b ^ g ^ 1) * c.e[1][1];
  }
  for (int ab = 0; ab < 4; ++ab) out.b[ab] = std::abs(out.signed_values[2 * ab]);
  return out;
}

BellFunctions bell_functions(const Box& box) { return bell_functions(correlators(box)); }

MerminFunctions mermin_functions(const Correlators& c) {
  MerminFunctions out;
  for (const PrIndex& k : PrIndex::all()) {
    const int a = k.alpha, b = k.beta, g = k.gamma;
    const double cross = sgn(b) * c.e[0][1] + sgn(a) * c.e[1][0];
    const double diag = sgn(g) * c.e[0][0] + sgn(a ^ b ^ g ^ 1) * c.e[1][1];
    const int same = (a ^ b) ^ 1;  // alpha ^ beta ^ 1
    const int diff = a ^ b;
    // First branch for alpha = 0, second for alpha = 1.
    const double v = a == 0 ? same * cross + diff * diag : diff * cross + same * diag;
    out.signed_values[k.ordinal()] = v;
  }
  for (int ab = 0; ab < 4; ++ab) {
    out.m[ab] = std::abs(out.signed_values[2 * ab]);
    // gamma only toggles the overall sign
    assert(std::abs(out.m[ab] - std::abs(out.signed_values[2 * ab + 1])) <= 1e-12);
  }
  return out;
}

MerminFunctions mermin_functions(const Box& box) { return mermin_functions(correlators(box)); }

DiscordReport pairing_discord(const std::array<double, 4>& v) {
  DiscordReport r;
  r.components[0] = std::abs(std::abs(v[0] - v[1]) - std::abs(v[2] - v[3]));
  r.components[1] = std::abs(std::abs(v[0] - v[2]) - std::abs(v[1] - v[3]));
  r.components[2] = std::abs(std::abs(v[0] - v[3]) - std::abs(v[1] - v[2]));
  r.argmin = static_cast<int>(std::min_element(r.components.begin(), r.components.end()) - r.components.begin());
  r.value = r.components[r.argmin];
  return r;
}

DiscordReport bell_discord(const Box& box) { return pairing_discord(bell_functions(box).b); }

DiscordReport mermin_discord(const Box& box) { return pairing_discord(mermin_functions(box).m); }

InequalityReport chsh_violation(const Box& box) {
  const auto bf = bell_functions(box);
  const double mx = *std::max_element(bf.signed_values.begin(), bf.signed_values.end());
  return {mx, mx > 2.0 + kMeasTol};
}

SteeringReport steering_value(const Box& box, bool anticommuting_assumed) {
  const auto mf = mermin_functions(box);
  double mx = 0.0;
  for (double v : mf.signed_values) mx = std::max(mx, std::abs(v));
  return {mx, mx > std::sqrt(2.0) + kMeasTol, anticommuting_assumed};
}

std::array<double, 3> bell_monogamy_residuals(const Box& box) {
  const auto bf = bell_functions(box);
  return {4.0 - (bf.b[0] + bf.b[1]), 4.0 - (bf.b[0] + bf.b[2]), 4.0 - (bf.b[0] + bf.b[3])};
}

double gq_monogamy_residual(const Box& box) {
  return 4.0 - (bell_discord(box).value + 2.0 * mermin_discord(box).value);
}

}  // namespace nsbox

#pragma once

#include <array>

#include "nsbox/box.hpp"
#include "nsbox/catalog.hpp"

namespace nsbox {

/// Bell-CHSH family. signed_values is indexed by PrIndex ordinal
/// (B_{alpha beta gamma}); b[2*alpha + beta] = |B_{alpha beta 0}|.
struct BellFunctions {
  std::array<double, 4> b{};
  std::array<double, 8> signed_values{};

  double value(PrIndex k) const { return signed_values[k.ordinal()]; }
};

/// Mermin family, indexed like BellFunctions; m[2*alpha + beta] = |M_{alpha beta 0}|.
struct MerminFunctions {
  std::array<double, 4> m{};
  std::array<double, 8> signed_values{};

  double value(PrIndex k) const { return signed_values[k.ordinal()]; }
};

/// G or Q together with its three pairing components.
struct DiscordReport {
  double value = 0.0;
  std::array<double, 3> components{};
  int argmin = 0;
};

struct InequalityReport {
  double max = 0.0;
  bool violated = false;
};

/// Steering test result. The bound only certifies steering when one side
/// measures anticommuting qubit observables; that premise is carried along
/// as caller-supplied metadata.
struct SteeringReport {
  double max = 0.0;
  bool violated = false;
  bool anticommuting_assumed = true;
};

BellFunctions bell_functions(const Correlators& c);
BellFunctions bell_functions(const Box& box);
MerminFunctions mermin_functions(const Correlators& c);
MerminFunctions mermin_functions(const Box& box);

/// min over the three pairings ||v0-v1|-|v2-v3||, ||v0-v2|-|v1-v3||, ||v0-v3|-|v1-v2||.
DiscordReport pairing_discord(const std::array<double, 4>& v);

/// Bell discord G in [0,4].
DiscordReport bell_discord(const Box& box);
/// Mermin discord Q in [0,2].
DiscordReport mermin_discord(const Box& box);

/// Largest signed B_{alpha beta gamma}; violated iff it exceeds 2 + kMeasTol.
InequalityReport chsh_violation(const Box& box);
/// Largest |M_{alpha beta gamma}|; violated iff it exceeds sqrt2 + kMeasTol.
SteeringReport steering_value(const Box& box, bool anticommuting_assumed = true);

/// 4 - (B_00 + B_j) for j = 01, 10, 11.
std::array<double, 3> bell_monogamy_residuals(const Box& box);
/// 4 - (G + 2Q).
double gq_monogamy_residual(const Box& box);

}  // namespace nsbox

#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nsbox/box.hpp"
#include "nsbox/catalog.hpp"

namespace nsbox {

/// Convex weights over the 24 vertices of the NS polytope.
struct VertexWeights {
  std::array<double, 8> pr{};
  std::array<double, 16> det{};

  double total() const;
  Table reconstruct() const;
};

/// Solves the 24-variable feasibility problem. Any feasible weight vector is
/// returned (they are not unique). Throws Infeasible if the table is not in
/// the NS polytope.
VertexWeights vertex_weights(const Box& box);
VertexWeights vertex_weights(const Table& table);

/// Bell-local iff every signed CHSH value is at most 2 + tol.
bool is_local(const Box& box, double tol = kValTol);

/// Reduction of a PR-box mixture sum_k p_k PR_k to one irreducible PR box.
struct PrReduction {
  double mu = 0.0;
  std::optional<PrIndex> pr;
  /// |p_{2a} - p_{2a+1}| for each anti-pair a = 2*alpha + beta.
  std::array<double, 4> reduced{};
  /// PR weights left after cancelling anti-pairs into white noise and
  /// removing mu from the surviving box.
  std::array<double, 8> remainder{};
  double white_noise_weight = 0.0;
};

/// Weights need not sum to one. Throws NegativeWeight.
PrReduction reduce_pr_mixture(std::span<const double, 8> weights);

/// box = mu * pr_box(pr) + (1 - mu) * residual, with G(residual) = 0.
struct Decomposition2 {
  double mu = 0.0;
  std::optional<PrIndex> pr;
  Box residual = white_noise();
  /// Largest negative residual entry that was clamped to zero.
  double clamp = 0.0;

  Table reconstruct() const;
};

Decomposition2 canonical2(const Box& box);

/// box = mu * pr_box(pr) + nu * q2box + (1 - mu - nu) * residual, with
/// Q(q2box) = 2 and G(residual) = Q(residual) = 0.
struct Decomposition3 {
  double mu = 0.0;
  std::optional<PrIndex> pr;
  double nu = 0.0;
  /// mm Mermin box whose correlator class the q2box belongs to.
  PrIndex mermin{};
  /// Weights over mermin_family(mermin).
  std::array<double, 4> family_weights{0.25, 0.25, 0.25, 0.25};
  Box q2box = mermin_box_mm({});
  Box residual = white_noise();
  double clamp = 0.0;
  /// Smallest residual entry before clamping.
  double slack = 0.0;

  Table reconstruct() const;
};

Decomposition3 canonical3(const Box& box);

enum class Region { NS, Bell, Nmm, NTmm, NQ, Lmm, LQ, G0Q0 };

Region parse_region(std::string_view name);
std::string_view to_string(Region region) noexcept;

struct MembershipResult {
  Region region = Region::NS;
  bool member = false;
  /// Region-specific distance-like measure: 0 for members of LP-defined
  /// regions (phase-one infeasibility otherwise), CHSH excess for BELL,
  /// max(G, Q) for G0Q0, validation excess for NS.
  double slack = 0.0;
};

MembershipResult membership(const Table& table, Region region);
MembershipResult membership(const Box& box, Region region);

/// Vertex set spanning an LP-defined region (empty for NS, BELL and G0Q0).
std::vector<Box> region_vertices(Region region);

}  // namespace nsbox

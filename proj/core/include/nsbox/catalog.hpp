#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "nsbox/box.hpp"

namespace nsbox {

/// Label of a PR box (and of the Mermin, CC and Tsirelson families that
/// share its (alpha, beta, gamma) indexing). Ordinal = 4*alpha + 2*beta + gamma.
struct PrIndex {
  std::uint8_t alpha = 0;
  std::uint8_t beta = 0;
  std::uint8_t gamma = 0;

  int ordinal() const noexcept { return alpha * 4 + beta * 2 + gamma; }
  static PrIndex from_ordinal(int k);
  static std::array<PrIndex, 8> all() noexcept;
  std::string label() const;

  friend bool operator==(const PrIndex&, const PrIndex&) = default;
};

/// Label of a deterministic box: m = alpha*i ^ beta, n = gamma*j ^ epsilon.
/// Ordinal = 8*alpha + 4*beta + 2*gamma + epsilon.
struct DetIndex {
  std::uint8_t alpha = 0;
  std::uint8_t beta = 0;
  std::uint8_t gamma = 0;
  std::uint8_t epsilon = 0;

  int ordinal() const noexcept { return alpha * 8 + beta * 4 + gamma * 2 + epsilon; }
  static DetIndex from_ordinal(int k);
  static std::array<DetIndex, 16> all() noexcept;
  std::string label() const;

  friend bool operator==(const DetIndex&, const DetIndex&) = default;
};

enum class NmmFamily { M, MPrime };

Box pr_box(PrIndex k);
Box det_box(DetIndex l);
Box white_noise();
/// Maximally-mixed-marginals Mermin box; mermin_box_mm({0,0,0}) is the
/// box produced by |psi+> with A=(sx,sy), B=(sx,sy).
Box mermin_box_mm(PrIndex k);
/// The two PR boxes whose uniform mixture is mermin_box_mm(k).
std::array<PrIndex, 2> mermin_mm_components(PrIndex k);
/// Nonmaximally-mixed-marginals Mermin box: uniform mixture of two deterministic boxes.
Box mermin_box_nmm(NmmFamily family, DetIndex l);
/// The two deterministic boxes behind mermin_box_nmm(family, l).
std::array<DetIndex, 2> mermin_nmm_components(NmmFamily family, DetIndex l);
/// Classically correlated box: 1/2 where m ^ n = alpha*i ^ beta*j ^ gamma.
Box cc_box(PrIndex k);
/// (1/sqrt2) pr_box(k) + (1 - 1/sqrt2) white_noise().
Box tsirelson_box(PrIndex k);
/// p pr_box(k) + (1-p) white_noise(); throws OutOfRange for p outside [0,1].
Box isotropic_pr(double p, PrIndex k = {});
/// p mermin_box_mm(000) + (1-p) white_noise(); throws OutOfRange.
Box isotropic_mermin(double p);

/// The PR box whose uniform mixture with pr_box(k) is white noise.
PrIndex anti_pr(PrIndex k) noexcept;

/// One entry of the 32-element raw nmm enumeration, with the id of the
/// distinct box it maps to after deduplication.
struct NmmEntry {
  NmmFamily family;
  DetIndex index;
  int canonical_id;
};

/// Raw enumeration over both families and all 16 indices.
const std::vector<NmmEntry>& nmm_enumeration();
/// Deduplicated nmm Mermin boxes, indexed by canonical_id.
const std::vector<Box>& distinct_nmm_boxes();

/// The four nmm Mermin boxes sharing the correlators of mermin_box_mm(k);
/// their uniform average is mermin_box_mm(k).
const std::array<Box, 4>& mermin_family(PrIndex k);

struct CatalogEntry {
  std::string family;
  std::string label;
  Box box;
};

/// Every named box: 8 PR, 16 deterministic, white noise, 8 mm Mermin,
/// the distinct nmm Mermin boxes, 8 CC and 8 Tsirelson boxes.
std::vector<CatalogEntry> catalog_list();

}  // namespace nsbox

#pragma once

#include <array>
#include <cstdint>

#include "nsbox/box.hpp"

namespace nsbox {

/// One party's local relabeling: input i -> i ^ input_flip, and output
/// m -> m ^ (alpha & i) ^ beta, where i is the input before the flip.
struct PartyRelabel {
  std::uint8_t input_flip = 0;
  std::uint8_t alpha = 0;
  std::uint8_t beta = 0;

  int apply_input(int i) const noexcept { return i ^ input_flip; }
  int apply_output(int i, int m) const noexcept { return m ^ (alpha & i) ^ beta; }

  /// Relabeling equivalent to applying `first` and then *this.
  PartyRelabel after(const PartyRelabel& first) const noexcept;
  PartyRelabel inverse() const noexcept;

  friend bool operator==(const PartyRelabel&, const PartyRelabel&) = default;
};

/// Local reversible operation: independent relabelings for Alice and Bob.
/// Together they form a group of 64 elements (8 per party).
struct Lro {
  PartyRelabel alice;
  PartyRelabel bob;

  static Lro identity() noexcept { return {}; }
  Lro after(const Lro& first) const noexcept { return {alice.after(first.alice), bob.after(first.bob)}; }
  Lro inverse() const noexcept { return {alice.inverse(), bob.inverse()}; }
  /// Dense index in [0, 64).
  int ordinal() const noexcept;
  static Lro from_ordinal(int k) noexcept;
  static std::array<Lro, 64> all() noexcept;

  friend bool operator==(const Lro&, const Lro&) = default;
};

/// Relabels the box: the event (m,n|i,j) becomes (m',n'|i',j').
Box apply_lro(const Box& box, const Lro& t);

}  // namespace nsbox

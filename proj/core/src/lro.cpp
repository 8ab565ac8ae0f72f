#include "nsbox/lro.hpp"

namespace nsbox {

// (i, m) -> (i ^ f1, m ^ a1 i ^ b1) -> (i ^ f1 ^ f2, m ^ (a1 ^ a2) i ^ b1 ^ b2 ^ a2 f1)
PartyRelabel PartyRelabel::after(const PartyRelabel& first) const noexcept {
  return {static_cast<std::uint8_t>(first.input_flip ^ input_flip),
          static_cast<std::uint8_t>(first.alpha ^ alpha),
          static_cast<std::uint8_t>(first.beta ^ beta ^ (alpha & first.input_flip))};
}

PartyRelabel PartyRelabel::inverse() const noexcept {
  return {input_flip, alpha, static_cast<std::uint8_t>(beta ^ (alpha & input_flip))};
}

namespace {

int party_ordinal(const PartyRelabel& p) { return p.input_flip * 4 + p.alpha * 2 + p.beta; }

PartyRelabel party_from_ordinal(int k) {
  return {static_cast<std::uint8_t>((k >> 2) & 1), static_cast<std::uint8_t>((k >> 1) & 1),
          static_cast<std::uint8_t>(k & 1)};
}

}  // namespace

int Lro::ordinal() const noexcept { return party_ordinal(alice) * 8 + party_ordinal(bob); }

Lro Lro::from_ordinal(int k) noexcept { return {party_from_ordinal(k / 8), party_from_ordinal(k % 8)}; }

std::array<Lro, 64> Lro::all() noexcept {
  std::array<Lro, 64> out{};
  for (int k = 0; k < 64; ++k) out[k] = from_ordinal(k);
  return out;
}

Box apply_lro(const Box& box, const Lro& t) {
  Table out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n) {
          const int i2 = t.alice.apply_input(i), j2 = t.bob.apply_input(j);
          const int m2 = t.alice.apply_output(i, m), n2 = t.bob.apply_output(j, n);
          out[row_index(i2, j2)][col_index(m2, n2)] = box.p(m, n, i, j);
        }
  return Box::make(out);
}

}  // namespace nsbox

#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "nsbox/box.hpp"

namespace nsbox {

/// Deterministic random source. The (seed, stream) pair is hashed into the
/// engine seed, so independent streams can be handed to concurrent workers.
/// Draws are built from raw 64-bit engine output, which keeps results
/// bit-identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Unit-rate exponential.
  double exponential();
  /// Standard normal (Box-Muller).
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
};

enum class SampleMode { VertexDirichlet, LocalOnly, NoisyExtremal };

SampleMode parse_sample_mode(std::string_view name);
std::string_view to_string(SampleMode mode) noexcept;

/// vertex-dirichlet: flat Dirichlet weights over all 24 vertices.
/// local-only: flat Dirichlet weights over the 16 deterministic boxes.
/// noisy-extremal: a random vertex mixed with white noise at uniform strength.
Box sample_ns_box(Rng& rng, SampleMode mode);
Box sample_ns_box(std::uint64_t seed, SampleMode mode, std::uint64_t stream = 0);

}  // namespace nsbox

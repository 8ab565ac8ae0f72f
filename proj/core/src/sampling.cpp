#include "nsbox/sampling.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "nsbox/catalog.hpp"

namespace nsbox {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

const std::vector<Box>& vertices() {
  static const std::vector<Box> v = [] {
    std::vector<Box> out;
    out.reserve(24);
    for (const PrIndex& k : PrIndex::all()) out.push_back(pr_box(k));
    for (const DetIndex& l : DetIndex::all()) out.push_back(det_box(l));
    return out;
  }();
  return v;
}

Box dirichlet_mix(Rng& rng, int first, int count) {
  std::array<double, 24> w{};
  double total = 0.0;
  for (int k = 0; k < count; ++k) {
    w[k] = rng.exponential();
    total += w[k];
  }
  Table t{};
  for (int k = 0; k < count; ++k) {
    const Box& v = vertices()[first + k];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) t[r][c] += (w[k] / total) * v.at(r, c);
  }
  return Box::make(t);
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1))) {}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::exponential() { return -std::log1p(-uniform()); }

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t Rng::below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) % n; }

SampleMode parse_sample_mode(std::string_view name) {
  if (name == "vertex-dirichlet") return SampleMode::VertexDirichlet;
  if (name == "local-only") return SampleMode::LocalOnly;
  if (name == "noisy-extremal") return SampleMode::NoisyExtremal;
  throw Error(ErrorKind::Parse, "unknown sample mode '" + std::string(name) + "'");
}

std::string_view to_string(SampleMode mode) noexcept {
  switch (mode) {
    case SampleMode::VertexDirichlet: return "vertex-dirichlet";
    case SampleMode::LocalOnly: return "local-only";
    case SampleMode::NoisyExtremal: return "noisy-extremal";
  }
  return "";
}

Box sample_ns_box(Rng& rng, SampleMode mode) {
  switch (mode) {
    case SampleMode::VertexDirichlet: return dirichlet_mix(rng, 0, 24);
    case SampleMode::LocalOnly: return dirichlet_mix(rng, 8, 16);
    case SampleMode::NoisyExtremal: {
      const Box& v = vertices()[rng.below(24)];
      return mix2(v, white_noise(), rng.uniform());
    }
  }
  return white_noise();
}

Box sample_ns_box(std::uint64_t seed, SampleMode mode, std::uint64_t stream) {
  Rng rng(seed, stream);
  return sample_ns_box(rng, mode);
}

}  // namespace nsbox

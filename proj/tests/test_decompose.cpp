#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "nsbox/catalog.hpp"
#include "nsbox/decompose.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/sampling.hpp"
#include "oracles.hpp"

using namespace nsbox;

namespace {

std::vector<Box> samples(int n, SampleMode mode, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Box> out;
  for (int k = 0; k < n; ++k) out.push_back(sample_ns_box(rng, mode));
  return out;
}

Box random_hull_point(Rng& rng, const std::vector<Box>& vertices) {
  std::vector<double> w(vertices.size());
  double sum = 0.0;
  for (double& x : w) sum += (x = rng.exponential());
  for (double& x : w) x /= sum;
  return mix(vertices, w);
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Parse;
}

}  // namespace

TEST_CASE("vertex weights of extremal boxes") {
  for (const PrIndex& k : PrIndex::all()) {
    const VertexWeights w = vertex_weights(pr_box(k));
    CHECK(w.pr[k.ordinal()] == doctest::Approx(1));
  }
  for (const DetIndex& l : DetIndex::all()) CHECK(vertex_weights(det_box(l)).det[l.ordinal()] == doctest::Approx(1));
}

TEST_CASE("vertex weights reconstruct white noise, the Mermin box and samples") {
  std::vector<Box> boxes{white_noise(), mermin_box_mm({}), tsirelson_box({0, 1, 1}), cc_box({1, 0, 0})};
  for (const Box& b : samples(300, SampleMode::VertexDirichlet, 3)) boxes.push_back(b);
  for (const Box& b : boxes) {
    const VertexWeights w = vertex_weights(b);
    CHECK(oracle::max_abs_diff(w.reconstruct(), b.table()) <= 1e-9);
    CHECK(w.total() == doctest::Approx(1).epsilon(1e-9));
    for (double x : w.pr) CHECK(x >= -1e-9);
    for (double x : w.det) CHECK(x >= -1e-9);
  }
}

TEST_CASE("vertex weights reject signaling tables") {
  Table t = oracle::uniform();
  t[1] = {0.5, 0.5, 0.0, 0.0};
  CHECK(kind_of([&] { vertex_weights(t); }) == ErrorKind::Infeasible);
}

TEST_CASE("locality") {
  CHECK(is_local(isotropic_pr(0.5)));
  CHECK_FALSE(is_local(isotropic_pr(0.6)));
  CHECK(is_local(isotropic_pr(0.5 - 1e-9)));
  CHECK_FALSE(is_local(isotropic_pr(0.5 + 1e-9)));
  for (const PrIndex& k : PrIndex::all()) CHECK(is_local(mermin_box_mm(k)));
  for (const Box& m : distinct_nmm_boxes()) CHECK(is_local(m));
  for (const Box& b : samples(500, SampleMode::LocalOnly, 8)) CHECK(is_local(b));
}

TEST_CASE("PR-mixture reduction examples") {
  std::array<double, 8> w{};
  w[0] = 0.4;
  w[PrIndex{0, 1, 0}.ordinal()] = 0.3;
  w[PrIndex{1, 0, 0}.ordinal()] = 0.2;
  w[PrIndex{1, 1, 0}.ordinal()] = 0.1;
  PrReduction r = reduce_pr_mixture(w);
  CHECK(r.mu == doctest::Approx(0));
  CHECK_FALSE(r.pr.has_value());

  w = {};
  w[5] = 1;
  r = reduce_pr_mixture(w);
  CHECK(r.mu == doctest::Approx(1));
  CHECK(r.pr == PrIndex::from_ordinal(5));

  w = {};
  w[0] = 0.75;
  w[1] = 0.25;
  r = reduce_pr_mixture(w);
  CHECK(r.mu == doctest::Approx(0.5));
  CHECK(r.pr == PrIndex{});
  CHECK(r.white_noise_weight == doctest::Approx(0.5));

  w = {};
  w[3] = -0.1;
  CHECK(kind_of([&] { reduce_pr_mixture(w); }) == ErrorKind::NegativeWeight);
}

TEST_CASE("PR-mixture reduction agrees with the Bell discord of the mixture") {
  Rng rng(2024);
  for (int n = 0; n < 2000; ++n) {
    std::array<double, 8> w{};
    double sum = 0.0;
    for (double& x : w) sum += (x = rng.uniform() < 0.3 ? 0.0 : rng.exponential());
    if (sum == 0.0) continue;
    std::vector<Box> prs;
    for (const PrIndex& k : PrIndex::all()) prs.push_back(pr_box(k));
    std::vector<double> norm(w.begin(), w.end());
    for (double& x : norm) x /= sum;
    const Box mixture = mix(prs, norm);

    const PrReduction r = reduce_pr_mixture(w);
    CHECK(std::abs(4 * r.mu / sum - bell_discord(mixture).value) < 1e-12);

    double total = r.mu + r.white_noise_weight;
    for (double x : r.remainder) {
      CHECK(x >= -1e-12);
      total += x;
    }
    CHECK(total == doctest::Approx(sum));

    // What is left after removing mu of the surviving PR box has no PR content.
    if (sum - r.mu > 1e-9) {
      std::vector<Box> parts = prs;
      parts.push_back(white_noise());
      std::vector<double> rw(r.remainder.begin(), r.remainder.end());
      rw.push_back(r.white_noise_weight);
      for (double& x : rw) x /= sum - r.mu;
      CHECK(bell_discord(mix(parts, rw)).value <= 1e-9);
    }
  }
}

TEST_CASE("canonical2 examples") {
  for (const PrIndex& k : PrIndex::all()) {
    for (double p : {0.1, 0.5, 0.9}) {
      const Decomposition2 d = canonical2(isotropic_pr(p, k));
      CHECK(d.mu == doctest::Approx(p));
      REQUIRE(d.pr.has_value());
      CHECK(*d.pr == k);
      CHECK(box_distance(d.residual, white_noise()) < 1e-12);
    }
  }
  const Decomposition2 wn = canonical2(white_noise());
  CHECK(wn.mu == 0);
  CHECK_FALSE(wn.pr.has_value());
  CHECK(wn.residual == white_noise());

  const Decomposition2 ts = canonical2(tsirelson_box({}));
  CHECK(ts.mu == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(box_distance(ts.residual, white_noise()) < 1e-12);

  const Decomposition2 pr = canonical2(pr_box({1, 1, 0}));
  CHECK(pr.mu == 1);
  CHECK(*pr.pr == PrIndex{1, 1, 0});
  CHECK(pr.residual == white_noise());
}

TEST_CASE("canonical2 invariants on sampled boxes") {
  for (SampleMode mode : {SampleMode::VertexDirichlet, SampleMode::NoisyExtremal}) {
    for (const Box& b : samples(1000, mode, 41)) {
      const Decomposition2 d = canonical2(b);
      CHECK(oracle::max_abs_diff(d.reconstruct(), b.table()) <= 1e-7);
      CHECK(bell_discord(d.residual).value <= 1e-7);
      CHECK(std::abs(4 * d.mu - bell_discord(b).value) <= 1e-7);
      CHECK(d.clamp <= 1e-9);
    }
  }
}

TEST_CASE("some nonlocal boxes admit no 2-decomposition with a G = 0 residual") {
  // Drawn by the vertex-dirichlet sampler.
  const Table t{{{0.22629435614503013, 0.287630145066805, 0.34252088881876475, 0.14355460996940037},
                 {0.4226249697197518, 0.09129953149208334, 0.26064242064046655, 0.22543307814769853},
                 {0.10666866089973973, 0.19376292559151234, 0.46214658406405523, 0.23742182944469298},
                 {0.1995845296050479, 0.10084705688620414, 0.4836828607551704, 0.21588555275357776}}};
  const Box b = Box::make(t);
  const double g = oracle::sorted_discord(oracle::bell_moduli(t));
  CHECK(g == doctest::Approx(0.8273179589553075).epsilon(1e-12));

  // For every PR box and every weight up to G/4, a residual with G = 0 has a
  // negative entry.
  int zero = 0;
  for (const PrIndex& k : PrIndex::all()) {
    const Table pr = oracle::pr(k.alpha, k.beta, k.gamma);
    for (int s = 0; s <= 400; ++s) {
      const double m = g / 4 * s / 400;
      Table r{};
      double lo = 1.0;
      for (int row = 0; row < 4; ++row)
        for (int col = 0; col < 4; ++col) lo = std::min(lo, r[row][col] = (t[row][col] - m * pr[row][col]) / (1 - m));
      if (oracle::sorted_discord(oracle::bell_moduli(r)) > 1e-9) continue;
      ++zero;
      CHECK(lo < -1e-3);
    }
  }
  CHECK(zero > 0);
  CHECK(kind_of([&] { canonical2(b); }) == ErrorKind::NoValidResidual);
}

TEST_CASE("canonical3 on the PR/Mermin/noise family") {
  for (int s = 5; s <= 10; ++s) {
    const double p = s / 10.0;
    const double mu = std::sqrt(1 - p), nu = std::sqrt(p) - std::sqrt(1 - p);
    const Table t = oracle::combo({{mu, oracle::pr(0, 0, 0)},
                                   {nu / 2, oracle::pr(0, 0, 0)},
                                   {nu / 2, oracle::pr(1, 1, 0)},
                                   {1 - mu - nu, oracle::uniform()}});
    const Decomposition3 d = canonical3(Box::make(t));
    CHECK(d.mu == doctest::Approx(mu).epsilon(1e-9));
    CHECK(d.nu == doctest::Approx(nu).epsilon(1e-9));
    if (1 - mu - nu > 1e-9) CHECK(box_distance(d.residual, white_noise()) <= 1e-7);
    CHECK(oracle::max_abs_diff(d.reconstruct(), t) <= 1e-7);
  }
}

TEST_CASE("canonical3 on isotropic Mermin boxes and deterministic boxes") {
  for (double p : {0.2, 0.5, 0.8, 1.0}) {
    const Decomposition3 d = canonical3(isotropic_mermin(p));
    CHECK(d.mu == doctest::Approx(0));
    CHECK(d.nu == doctest::Approx(p));
    CHECK(box_distance(d.residual, white_noise()) <= 1e-7);
    CHECK(mermin_discord(d.q2box).value == doctest::Approx(2));
  }
  for (const DetIndex& l : DetIndex::all()) {
    const Decomposition3 d = canonical3(det_box(l));
    CHECK(d.mu == 0);
    CHECK(d.nu == 0);
    CHECK(d.residual == det_box(l));
  }
}

TEST_CASE("canonical3 invariants on sampled boxes") {
  for (SampleMode mode : {SampleMode::VertexDirichlet, SampleMode::NoisyExtremal}) {
    for (const Box& b : samples(500, mode, 77)) {
      const Decomposition3 d = canonical3(b);
      CHECK(oracle::max_abs_diff(d.reconstruct(), b.table()) <= 1e-7);
      CHECK(bell_discord(d.residual).value <= 1e-7);
      CHECK(mermin_discord(d.residual).value <= 1e-7);
      CHECK(std::abs(mermin_discord(d.q2box).value - 2) <= 1e-7);
      CHECK(d.mu + d.nu <= 1 + 1e-9);
      CHECK(std::abs(4 * d.mu - bell_discord(b).value) <= 1e-7);
      CHECK(std::abs(2 * d.nu - mermin_discord(b).value) <= 1e-7);
      CHECK(std::abs(d.mu - canonical2(b).mu) <= 1e-7);

      // Folding the PR part into the residual leaves a box without Mermin content.
      if (d.nu < 1 - 1e-9) {
        Table folded = oracle::combo({{d.mu, d.pr ? pr_box(*d.pr).table() : Table{}},
                                      {1 - d.mu - d.nu, d.residual.table()}});
        for (auto& row : folded)
          for (double& x : row) x /= 1 - d.nu;
        CHECK(mermin_discord(Box::make(folded, 1e-8)).value <= 1e-7);
      }
    }
  }
}

TEST_CASE("some local boxes admit no 3-decomposition with mu = G/4 and nu = Q/2") {
  // Drawn by the local-only sampler.
  const Table t{{{0.30829808694158151, 0.11946878474618618, 0.33269793177244322, 0.23953519653978916},
                 {0.27244823503477078, 0.15531863665299689, 0.48825009397135977, 0.083983034340872564},
                 {0.11755473031927427, 0.11781621445567049, 0.52344128839475035, 0.24118776683030485},
                 {0.17033189465682491, 0.065039050118119834, 0.59036643434930558, 0.17426262087574962}}};
  const Box b = Box::make(t);
  CHECK(is_local(b));
  const double mu = bell_discord(b).value / 4, nu = mermin_discord(b).value / 2, rest = 1 - mu - nu;

  // Brute force over PR index, Mermin class and a grid on the family weights:
  // every residual with vanishing discords has a clearly negative entry.
  double best = -1.0;
  int candidates = 0;
  for (const PrIndex& k : PrIndex::all()) {
    for (const PrIndex& f : PrIndex::all()) {
      const auto& fam = mermin_family(f);
      const int n = 50;
      for (int a = 0; a <= n; ++a) {
        for (int c = 0; a + c <= n; ++c) {
          for (int d = 0; a + c + d <= n; ++d) {
            const double w[4] = {double(a) / n, double(c) / n, double(d) / n, double(n - a - c - d) / n};
            Table r{};
            double lo = 1.0;
            for (int row = 0; row < 4; ++row) {
              for (int col = 0; col < 4; ++col) {
                double q2 = 0.0;
                for (int x = 0; x < 4; ++x) q2 += w[x] * fam[x].at(row, col);
                r[row][col] = (t[row][col] - mu * pr_box(k).at(row, col) - nu * q2) / rest;
                lo = std::min(lo, r[row][col]);
              }
            }
            const auto bo = oracle::bell_moduli(r), mo = oracle::mermin_moduli(r);
            if (oracle::sorted_discord(bo) > 1e-7 || oracle::sorted_discord(mo) > 1e-7) continue;
            ++candidates;
            best = std::max(best, lo);
          }
        }
      }
    }
  }
  CHECK(candidates > 0);
  CHECK(best < -1e-3);

  try {
    canonical3(b);
    FAIL("decomposition unexpectedly found");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoValidResidual);
    CHECK(std::string(e.what()).find("best slack") != std::string::npos);
  }
  // The 2-term decomposition still exists.
  CHECK_NOTHROW(canonical2(b));
}

TEST_CASE("region names") {
  for (const char* name : {"NS", "BELL", "N_mm", "N_Tmm", "N_Q", "L_mm", "L_Q", "G0Q0"})
    CHECK(to_string(parse_region(name)) == name);
  CHECK(kind_of([] { parse_region("N_X"); }) == ErrorKind::UnknownRegion);
}

TEST_CASE("membership examples") {
  for (const PrIndex& k : PrIndex::all()) {
    CHECK(membership(tsirelson_box(k), Region::NTmm).member);
    CHECK(membership(tsirelson_box(k), Region::NQ).member);
    CHECK_FALSE(membership(pr_box(k), Region::NTmm).member);
    CHECK_FALSE(membership(pr_box(k), Region::NQ).member);
    CHECK(membership(pr_box(k), Region::Nmm).member);
    CHECK(membership(mermin_box_mm(k), Region::LQ).member);
    CHECK(membership(mermin_box_mm(k), Region::NQ).member);
    CHECK_FALSE(membership(pr_box(k), Region::Bell).member);
  }
  CHECK(membership(white_noise(), Region::G0Q0).member);
  CHECK_FALSE(membership(mermin_box_mm({}), Region::G0Q0).member);
  CHECK(membership(det_box({}), Region::Bell).member);
  CHECK_FALSE(membership(det_box({}), Region::Lmm).member);

  Table bad = oracle::uniform();
  bad[0] = {0.5, 0.5, 0.5, 0.5};
  const MembershipResult ns = membership(bad, Region::NS);
  CHECK_FALSE(ns.member);
  CHECK(ns.slack == doctest::Approx(1));
  CHECK(membership(white_noise().table(), Region::NS).member);
}

TEST_CASE("subpolytope containments") {
  Rng rng(5);
  const std::pair<Region, Region> pairs[] = {
      {Region::LQ, Region::NQ}, {Region::NQ, Region::NTmm}, {Region::Lmm, Region::Nmm}, {Region::NTmm, Region::Nmm}};
  for (const auto& [inner, outer] : pairs) {
    const auto verts = region_vertices(inner);
    for (int n = 0; n < 100; ++n) {
      const Box b = random_hull_point(rng, verts);
      CHECK(membership(b, inner).member);
      CHECK(membership(b, outer).member);
    }
  }
}

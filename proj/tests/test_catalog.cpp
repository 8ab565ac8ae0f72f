#include <doctest.h>

#include <cmath>
#include <set>
#include <string>

#include "nsbox/catalog.hpp"
#include "nsbox/lro.hpp"
#include "oracles.hpp"

using namespace nsbox;

namespace {

constexpr double h = 0.5, q = 0.25;

const Table kCanonicalPr{{{h, 0, 0, h}, {h, 0, 0, h}, {h, 0, 0, h}, {0, h, h, 0}}};
const Table kMerminMm{{{h, 0, 0, h}, {q, q, q, q}, {q, q, q, q}, {0, h, h, 0}}};
const Table kCc{{{h, 0, 0, h}, {0, h, h, 0}, {h, 0, 0, h}, {0, h, h, 0}}};
const Table kMerminNmm{{{1, 0, 0, 0}, {h, h, 0, 0}, {h, 0, h, 0}, {0, h, h, 0}}};

}  // namespace

TEST_CASE("PR boxes match the defining XOR rule") {
  for (const PrIndex& k : PrIndex::all())
    CHECK(oracle::max_abs_diff(pr_box(k).table(), oracle::pr(k.alpha, k.beta, k.gamma)) == 0.0);
  CHECK(oracle::max_abs_diff(pr_box({}).table(), kCanonicalPr) == 0.0);
}

TEST_CASE("deterministic boxes match their response functions") {
  for (const DetIndex& l : DetIndex::all())
    CHECK(oracle::max_abs_diff(det_box(l).table(), oracle::det(l.alpha, l.beta, l.gamma, l.epsilon)) == 0.0);
}

TEST_CASE("index ordinals round-trip and reject out-of-range values") {
  for (int k = 0; k < 8; ++k) CHECK(PrIndex::from_ordinal(k).ordinal() == k);
  for (int l = 0; l < 16; ++l) CHECK(DetIndex::from_ordinal(l).ordinal() == l);
  CHECK_THROWS_AS(PrIndex::from_ordinal(8), Error);
  CHECK_THROWS_AS(DetIndex::from_ordinal(-1), Error);
  CHECK(PrIndex{1, 1, 0}.label() == "110");
}

TEST_CASE("anti-PR pairs average to white noise") {
  for (const PrIndex& k : PrIndex::all()) {
    CHECK(anti_pr(anti_pr(k)) == k);
    CHECK(oracle::max_abs_diff(mix2(pr_box(k), pr_box(anti_pr(k)), 0.5).table(), oracle::uniform()) < 1e-15);
  }
}

TEST_CASE("mm Mermin box 000 is the correlated local box with uniform off-diagonal rows") {
  CHECK(oracle::max_abs_diff(mermin_box_mm({}).table(), kMerminMm) == 0.0);
}

TEST_CASE("mm Mermin boxes are uniform mixtures of two PR boxes") {
  for (const PrIndex& k : PrIndex::all()) {
    const auto parts = mermin_mm_components(k);
    const Table expected = oracle::combo({{0.5, oracle::pr(parts[0].alpha, parts[0].beta, parts[0].gamma)},
                                          {0.5, oracle::pr(parts[1].alpha, parts[1].beta, parts[1].gamma)}});
    CHECK(oracle::max_abs_diff(mermin_box_mm(k).table(), expected) < 1e-15);
    CHECK(parts[0] == k);
    // Two rows are uniform, the other two perfectly (anti)correlated.
    int uniform_rows = 0;
    for (const auto& row : mermin_box_mm(k).table()) uniform_rows += row[0] == q && row[1] == q;
    CHECK(uniform_rows == 2);
  }
  for (const PrIndex& a : PrIndex::all())
    for (const PrIndex& b : PrIndex::all())
      if (a.ordinal() < b.ordinal()) CHECK(box_distance(mermin_box_mm(a), mermin_box_mm(b)) > 0.1);
}

TEST_CASE("M' family at 0000 is the nonmaximally-mixed Mermin box") {
  CHECK(oracle::max_abs_diff(mermin_box_nmm(NmmFamily::MPrime, {}).table(), kMerminNmm) == 0.0);
}

TEST_CASE("nmm enumeration: 32 raw entries, deduplicated set, families of four") {
  const auto& raw = nmm_enumeration();
  CHECK(raw.size() == 32);
  const auto& distinct = distinct_nmm_boxes();
  for (const NmmEntry& e : raw) {
    REQUIRE(e.canonical_id >= 0);
    REQUIRE(e.canonical_id < static_cast<int>(distinct.size()));
    CHECK(mermin_box_nmm(e.family, e.index) == distinct[e.canonical_id]);
  }
  for (std::size_t a = 0; a < distinct.size(); ++a)
    for (std::size_t b = a + 1; b < distinct.size(); ++b) CHECK(box_distance(distinct[a], distinct[b]) > 0.1);
  CHECK(distinct.size() == 32);

  for (const PrIndex& k : PrIndex::all()) {
    const auto& fam = mermin_family(k);
    Table avg{};
    for (const Box& b : fam)
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) avg[r][c] += b.at(r, c) / 4;
    CHECK(oracle::max_abs_diff(avg, mermin_box_mm(k).table()) < 1e-15);
  }
}

TEST_CASE("nmm Mermin boxes form one LRO orbit") {
  const Box seed = mermin_box_nmm(NmmFamily::MPrime, {});
  std::set<int> hit;
  for (const Lro& t : Lro::all()) {
    const Box img = apply_lro(seed, t);
    const auto& distinct = distinct_nmm_boxes();
    for (std::size_t id = 0; id < distinct.size(); ++id)
      if (box_distance(img, distinct[id]) < 1e-15) hit.insert(static_cast<int>(id));
  }
  CHECK(hit.size() == distinct_nmm_boxes().size());
}

TEST_CASE("CC box 010 reproduces the classically correlated table") {
  CHECK(oracle::max_abs_diff(cc_box({0, 1, 0}).table(), kCc) == 0.0);
  for (const PrIndex& k : PrIndex::all()) {
    const Table expected = oracle::indicator(
        0.5, [&](int a, int b, int x, int y) { return (a ^ b) == ((k.alpha & x) ^ (k.beta & y) ^ k.gamma); });
    CHECK(oracle::max_abs_diff(cc_box(k).table(), expected) == 0.0);
  }
}

TEST_CASE("Tsirelson and isotropic families") {
  const double w = 1 / std::sqrt(2.0);
  for (const PrIndex& k : PrIndex::all()) {
    const Table expected = oracle::combo({{w, oracle::pr(k.alpha, k.beta, k.gamma)}, {1 - w, oracle::uniform()}});
    CHECK(oracle::max_abs_diff(tsirelson_box(k).table(), expected) < 1e-15);
  }
  CHECK(oracle::max_abs_diff(isotropic_pr(0.0).table(), oracle::uniform()) < 1e-15);
  CHECK(oracle::max_abs_diff(isotropic_pr(1.0, {1, 0, 1}).table(), oracle::pr(1, 0, 1)) < 1e-15);
  CHECK(oracle::max_abs_diff(isotropic_mermin(1.0).table(), kMerminMm) < 1e-15);
  CHECK_THROWS_AS(isotropic_pr(1.2), Error);
  CHECK_THROWS_AS(isotropic_mermin(-0.1), Error);
}

TEST_CASE("catalog listing") {
  const auto list = catalog_list();
  std::size_t expected = 8 + 16 + 1 + 8 + distinct_nmm_boxes().size() + 8 + 8;
  CHECK(list.size() == expected);
  std::set<std::string> keys;
  for (const auto& e : list) keys.insert(e.family + "/" + e.label);
  CHECK(keys.size() == list.size());
}

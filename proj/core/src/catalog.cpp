#include "nsbox/catalog.hpp"

#include <cmath>

namespace nsbox {

namespace {

std::uint8_t bit(int k, int shift) { return static_cast<std::uint8_t>((k >> shift) & 1); }

/// Builds a table with value `v` wherever pred(m, n, i, j) holds.
template <class Pred>
Table indicator_table(double v, Pred pred) {
  Table t{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        for (int n = 0; n < 2; ++n)
          if (pred(m, n, i, j)) t[row_index(i, j)][col_index(m, n)] = v;
  return t;
}

Box average(const Box& a, const Box& b) {
  Table t{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) t[r][c] = 0.5 * (a.at(r, c) + b.at(r, c));
  return Box::make(t);
}

}  // namespace

PrIndex PrIndex::from_ordinal(int k) {
  if (k < 0 || k >= 8) throw Error(ErrorKind::OutOfRange, "PR index ordinal " + std::to_string(k));
  return {bit(k, 2), bit(k, 1), bit(k, 0)};
}

std::array<PrIndex, 8> PrIndex::all() noexcept {
  std::array<PrIndex, 8> out{};
  for (int k = 0; k < 8; ++k) out[k] = {bit(k, 2), bit(k, 1), bit(k, 0)};
  return out;
}

std::string PrIndex::label() const {
  return std::to_string(alpha) + std::to_string(beta) + std::to_string(gamma);
}

DetIndex DetIndex::from_ordinal(int k) {
  if (k < 0 || k >= 16) throw Error(ErrorKind::OutOfRange, "deterministic index ordinal " + std::to_string(k));
  return {bit(k, 3), bit(k, 2), bit(k, 1), bit(k, 0)};
}

std::array<DetIndex, 16> DetIndex::all() noexcept {
  std::array<DetIndex, 16> out{};
  for (int k = 0; k < 16; ++k) out[k] = {bit(k, 3), bit(k, 2), bit(k, 1), bit(k, 0)};
  return out;
}

std::string DetIndex::label() const {
  return std::to_string(alpha) + std::to_string(beta) + std::to_string(gamma) + std::to_string(epsilon);
}

Box pr_box(PrIndex k) {
  return Box::make(indicator_table(0.5, [k](int m, int n, int i, int j) {
    return (m ^ n) == ((i & j) ^ (k.alpha & i) ^ (k.beta & j) ^ k.gamma);
  }));
}

Box det_box(DetIndex l) {
  return Box::make(indicator_table(1.0, [l](int m, int n, int i, int j) {
    return m == ((l.alpha & i) ^ l.beta) && n == ((l.gamma & j) ^ l.epsilon);
  }));
}

Box white_noise() { return Box::make(indicator_table(0.25, [](int, int, int, int) { return true; })); }

std::array<PrIndex, 2> mermin_mm_components(PrIndex k) {
  // The partner agrees with k on the rows where the box is not uniform.
  const std::uint8_t gamma2 = k.beta == 0 ? k.gamma : static_cast<std::uint8_t>(k.gamma ^ 1);
  return {k, PrIndex{static_cast<std::uint8_t>(k.alpha ^ 1), static_cast<std::uint8_t>(k.beta ^ 1), gamma2}};
}

Box mermin_box_mm(PrIndex k) {
  const auto parts = mermin_mm_components(k);
  return average(pr_box(parts[0]), pr_box(parts[1]));
}

std::array<DetIndex, 2> mermin_nmm_components(NmmFamily family, DetIndex l) {
  if (family == NmmFamily::M) {
    // 1/2 (D[m=a, n=b] + D[m=i^g, n=j^e])
    return {DetIndex{0, l.alpha, 0, l.beta}, DetIndex{1, l.gamma, 1, l.epsilon}};
  }
  // 1/2 (D[m=a, n=j^b] + D[m=i^g, n=e])
  return {DetIndex{0, l.alpha, 1, l.beta}, DetIndex{1, l.gamma, 0, l.epsilon}};
}

Box mermin_box_nmm(NmmFamily family, DetIndex l) {
  const auto parts = mermin_nmm_components(family, l);
  return average(det_box(parts[0]), det_box(parts[1]));
}

Box cc_box(PrIndex k) {
  return Box::make(indicator_table(0.5, [k](int m, int n, int i, int j) {
    return (m ^ n) == ((k.alpha & i) ^ (k.beta & j) ^ k.gamma);
  }));
}

Box tsirelson_box(PrIndex k) {
  const double w = 1.0 / std::sqrt(2.0);
  return mix2(pr_box(k), white_noise(), w);
}

Box isotropic_pr(double p, PrIndex k) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "isotropic PR weight must lie in [0,1]");
  return mix2(pr_box(k), white_noise(), p);
}

Box isotropic_mermin(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::OutOfRange, "isotropic Mermin weight must lie in [0,1]");
  return mix2(mermin_box_mm({}), white_noise(), p);
}

PrIndex anti_pr(PrIndex k) noexcept { return {k.alpha, k.beta, static_cast<std::uint8_t>(k.gamma ^ 1)}; }

namespace {

struct NmmTables {
  std::vector<NmmEntry> entries;
  std::vector<Box> distinct;
  std::vector<std::array<Box, 4>> families;  // by PrIndex ordinal
};

bool same_correlators(const Box& a, const Box& b) {
  const auto ca = correlators(a), cb = correlators(b);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (std::abs(ca.e[i][j] - cb.e[i][j]) > 1e-12) return false;
  return true;
}

NmmTables build_nmm() {
  NmmTables out{.entries = {}, .distinct = {}, .families = {}};
  for (NmmFamily f : {NmmFamily::M, NmmFamily::MPrime}) {
    for (const DetIndex& l : DetIndex::all()) {
      const Box b = mermin_box_nmm(f, l);
      int id = -1;
      for (std::size_t d = 0; d < out.distinct.size(); ++d)
        if (box_distance(out.distinct[d], b) < 1e-12) id = static_cast<int>(d);
      if (id < 0) {
        id = static_cast<int>(out.distinct.size());
        out.distinct.push_back(b);
      }
      out.entries.push_back({f, l, id});
    }
  }
  for (const PrIndex& k : PrIndex::all()) {
    const Box mm = mermin_box_mm(k);
    std::vector<Box> members;
    for (const Box& b : out.distinct)
      if (same_correlators(b, mm)) members.push_back(b);
    if (members.size() != 4)
      throw std::logic_error("Mermin family " + k.label() + " has " + std::to_string(members.size()) +
                             " correlator-equivalent nmm boxes, expected 4");
    out.families.push_back({members[0], members[1], members[2], members[3]});
  }
  return out;
}

const NmmTables& nmm_tables() {
  static const NmmTables tables = build_nmm();
  return tables;
}

}  // namespace

const std::vector<NmmEntry>& nmm_enumeration() { return nmm_tables().entries; }

const std::vector<Box>& distinct_nmm_boxes() { return nmm_tables().distinct; }

const std::array<Box, 4>& mermin_family(PrIndex k) { return nmm_tables().families[k.ordinal()]; }

std::vector<CatalogEntry> catalog_list() {
  std::vector<CatalogEntry> out;
  for (const PrIndex& k : PrIndex::all()) out.push_back({"pr", k.label(), pr_box(k)});
  for (const DetIndex& l : DetIndex::all()) out.push_back({"deterministic", l.label(), det_box(l)});
  out.push_back({"white_noise", "", white_noise()});
  for (const PrIndex& k : PrIndex::all()) out.push_back({"mermin_mm", k.label(), mermin_box_mm(k)});
  const auto& distinct = distinct_nmm_boxes();
  std::vector<bool> seen(distinct.size(), false);
  for (const NmmEntry& e : nmm_enumeration()) {
    if (seen[e.canonical_id]) continue;
    seen[e.canonical_id] = true;
    const std::string fam = e.family == NmmFamily::M ? "M" : "M'";
    out.push_back({"mermin_nmm", fam + ":" + e.index.label(), distinct[e.canonical_id]});
  }
  for (const PrIndex& k : PrIndex::all()) out.push_back({"cc", k.label(), cc_box(k)});
  for (const PrIndex& k : PrIndex::all()) out.push_back({"tsirelson", k.label(), tsirelson_box(k)});
  return out;
}

}  // namespace nsbox

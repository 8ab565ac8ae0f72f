#include "nsbox/decompose.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "nsbox/measures.hpp"
#include "nsbox/simplex.hpp"

namespace nsbox {

namespace {

// Discord values below this are treated as exactly zero.
constexpr double kZeroWeight = 1e-12;

Table scaled(const Table& t, double w) {
  Table out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = w * t[r][c];
  return out;
}

void add_to(Table& acc, const Table& t, double w) {
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) acc[r][c] += w * t[r][c];
}

double min_entry(const Table& t) {
  double m = t[0][0];
  for (const auto& row : t)
    for (double v : row) m = std::min(m, v);
  return m;
}

// Zeroes negative entries and rescales every row back to unit sum.
Box clamp_to_box(Table t, double& clamp) {
  clamp = 0.0;
  for (auto& row : t) {
    double sum = 0.0;
    for (double& v : row) {
      if (v < 0.0) {
        clamp = std::max(clamp, -v);
        v = 0.0;
      }
      sum += v;
    }
    for (double& v : row) v /= sum;
  }
  return Box::make(t);
}

std::vector<PrIndex> by_descending_bell(const Box& box) {
  const BellFunctions bf = bell_functions(box);
  const auto all = PrIndex::all();
  std::vector<PrIndex> order(all.begin(), all.end());
  std::stable_sort(order.begin(), order.end(), [&](const PrIndex& a, const PrIndex& b) {
    return bf.value(a) > bf.value(b);
  });
  return order;
}

PrIndex max_bell(const Box& box) { return by_descending_bell(box).front(); }

struct HullResult {
  bool feasible = false;
  double infeasibility = 0.0;
  std::vector<double> weights;
};

HullResult hull_weights(const Table& table, const std::vector<Box>& vertices, double tol) {
  const int n = static_cast<int>(vertices.size());
  lp::Problem prob;
  prob.num_vars = n;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::vector<double> row(n);
      for (int v = 0; v < n; ++v) row[v] = vertices[v].at(r, c);
      prob.add_eq(std::move(row), table[r][c]);
    }
  }
  prob.add_eq(std::vector<double>(n, 1.0), 1.0);
  lp::Options opts;
  opts.feasibility_tol = tol;
  const lp::Result res = lp::solve(prob, opts);
  return {res.status == lp::Status::Optimal, res.infeasibility, res.x};
}

const std::vector<Box>& ns_vertices() {
  static const std::vector<Box> v = [] {
    std::vector<Box> out;
    for (const PrIndex& k : PrIndex::all()) out.push_back(pr_box(k));
    for (const DetIndex& l : DetIndex::all()) out.push_back(det_box(l));
    return out;
  }();
  return v;
}

}  // namespace

double VertexWeights::total() const {
  return std::accumulate(pr.begin(), pr.end(), 0.0) + std::accumulate(det.begin(), det.end(), 0.0);
}

Table VertexWeights::reconstruct() const {
  Table t{};
  for (const PrIndex& k : PrIndex::all()) add_to(t, pr_box(k).table(), pr[k.ordinal()]);
  for (const DetIndex& l : DetIndex::all()) add_to(t, det_box(l).table(), det[l.ordinal()]);
  return t;
}

VertexWeights vertex_weights(const Table& table) {
  // The tolerance covers the 17 equality rows of a table validated at kValTol.
  const HullResult h = hull_weights(table, ns_vertices(), 17 * kValTol);
  if (!h.feasible) {
    std::ostringstream msg;
    msg << "table is outside the NS polytope (phase-one residual " << h.infeasibility << ")";
    throw Error(ErrorKind::Infeasible, msg.str());
  }
  VertexWeights w;
  for (int k = 0; k < 8; ++k) w.pr[k] = h.weights[k];
  for (int l = 0; l < 16; ++l) w.det[l] = h.weights[8 + l];
  return w;
}

VertexWeights vertex_weights(const Box& box) { return vertex_weights(box.table()); }

bool is_local(const Box& box, double tol) {
  const BellFunctions bf = bell_functions(box);
  return std::all_of(bf.signed_values.begin(), bf.signed_values.end(),
                     [tol](double v) { return v <= 2.0 + tol; });
}

PrReduction reduce_pr_mixture(std::span<const double, 8> weights) {
  for (int k = 0; k < 8; ++k) {
    if (!(weights[k] >= 0.0))
      throw Error(ErrorKind::NegativeWeight, "PR weight " + std::to_string(k) + " is " + std::to_string(weights[k]));
  }
  PrReduction out;
  std::array<int, 4> dominant{};
  for (int a = 0; a < 4; ++a) {
    const double p0 = weights[2 * a], p1 = weights[2 * a + 1];
    out.reduced[a] = std::abs(p0 - p1);
    dominant[a] = p0 >= p1 ? 2 * a : 2 * a + 1;
    out.remainder[dominant[a]] = out.reduced[a];
    out.white_noise_weight += 2.0 * std::min(p0, p1);
  }
  const DiscordReport d = pairing_discord(out.reduced);
  out.mu = d.value;
  if (out.mu <= kZeroWeight) {
    out.mu = 0.0;
    return out;
  }
  // Sorted r1 >= r2 >= r3 >= r4: the largest survives when r1 + r4 >= r2 + r3,
  // otherwise the second largest does.
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return out.reduced[a] > out.reduced[b]; });
  const auto& r = out.reduced;
  const int surv = r[order[0]] + r[order[3]] >= r[order[1]] + r[order[2]] ? order[0] : order[1];
  out.pr = PrIndex::from_ordinal(dominant[surv]);
  out.remainder[dominant[surv]] -= out.mu;
  return out;
}

Table Decomposition2::reconstruct() const {
  Table t = scaled(residual.table(), 1.0 - mu);
  if (pr) add_to(t, pr_box(*pr).table(), mu);
  return t;
}

Decomposition2 canonical2(const Box& box) {
  const double g = bell_discord(box).value;
  Decomposition2 out;
  out.mu = g / 4.0;
  if (out.mu <= kZeroWeight) {
    out.mu = 0.0;
    out.residual = box;
    return out;
  }
  if (1.0 - out.mu <= kZeroWeight) {
    out.mu = 1.0;
    out.pr = max_bell(box);
    return out;
  }
  std::ostringstream diag;
  diag << "G=" << g << ";";
  for (const PrIndex& k : by_descending_bell(box)) {
    Table t = box.table();
    add_to(t, pr_box(k).table(), -out.mu);
    t = scaled(t, 1.0 / (1.0 - out.mu));
    const double lo = min_entry(t);
    diag << " " << k.label() << ":min=" << lo;
    if (lo < -kValTol) continue;
    double clamp = 0.0;
    const Box residual = clamp_to_box(t, clamp);
    const double gr = bell_discord(residual).value;
    diag << ",G=" << gr;
    if (gr > kMeasTol) continue;
    out.pr = k;
    out.residual = residual;
    out.clamp = clamp;
    return out;
  }
  throw Error(ErrorKind::NoValidResidual, "no PR index gives a G=0 residual (" + diag.str() + ")");
}

Table Decomposition3::reconstruct() const {
  Table t = scaled(residual.table(), 1.0 - mu - nu);
  if (pr) add_to(t, pr_box(*pr).table(), mu);
  add_to(t, q2box.table(), nu);
  return t;
}

namespace {

struct Candidate3 {
  std::optional<PrIndex> pr;
  PrIndex mermin{};
  std::array<double, 4> weights{};
  double slack = 0.0;
};

// Residual correlators depend only on (pr, mermin), so G and Q of the
// residual are known before any LP is solved.
bool residual_discords_vanish(const Correlators& src, std::optional<PrIndex> pr, std::optional<PrIndex> mermin,
                              double mu, double nu, double rest) {
  Correlators c = src;
  const Correlators cp = pr ? correlators(pr_box(*pr)) : Correlators{};
  const Correlators cm = mermin ? correlators(mermin_box_mm(*mermin)) : Correlators{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c.e[i][j] = (c.e[i][j] - mu * cp.e[i][j] - nu * cm.e[i][j]) / rest;
  return pairing_discord(bell_functions(c).b).value <= kMeasTol &&
         pairing_discord(mermin_functions(c).m).value <= kMeasTol;
}

// Maximises the smallest residual entry t over family weights w:
//   nu * sum_q w_q F_q + rest * t <= base,  sum w = 1,  t = u - shift, u >= 0.
// Residual entries are bounded below by -1/rest, so the shift keeps every
// weight vector feasible and the optimum is the true best slack.
std::optional<std::pair<std::array<double, 4>, double>> best_family_weights(const Table& base, PrIndex mermin,
                                                                            double nu, double rest) {
  const auto& fam = mermin_family(mermin);
  const double shift = 2.0 / rest;
  lp::Problem prob;
  prob.num_vars = 5;
  prob.objective = {0, 0, 0, 0, -1.0};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      std::vector<double> row(5);
      for (int q = 0; q < 4; ++q) row[q] = nu * fam[q].at(r, c);
      row[4] = rest;
      prob.add_ub(std::move(row), base[r][c] + rest * shift);
    }
  }
  prob.add_eq({1, 1, 1, 1, 0}, 1.0);
  const lp::Result res = lp::solve(prob);
  if (res.status != lp::Status::Optimal) return std::nullopt;
  std::array<double, 4> w{};
  double sum = 0.0;
  for (int q = 0; q < 4; ++q) sum += (w[q] = std::max(0.0, res.x[q]));
  for (double& x : w) x /= sum;
  return std::make_pair(w, res.x[4] - shift);
}

}  // namespace

Decomposition3 canonical3(const Box& box) {
  const double g = bell_discord(box).value;
  const double q = mermin_discord(box).value;
  Decomposition3 out;
  out.mu = g / 4.0;
  out.nu = q / 2.0;
  if (out.mu <= kZeroWeight) out.mu = 0.0;
  if (out.nu <= kZeroWeight) out.nu = 0.0;
  const double rest = 1.0 - out.mu - out.nu;
  const bool no_residual = rest <= kZeroWeight;

  std::vector<std::optional<PrIndex>> prs;
  if (out.mu == 0.0) {
    prs.push_back(std::nullopt);
  } else {
    for (const PrIndex& k : by_descending_bell(box)) prs.push_back(k);
  }

  if (out.nu == 0.0) {
    if (out.mu == 0.0) {
      out.residual = box;
      out.slack = min_entry(box.table());
      return out;
    }
    if (no_residual) {
      out.pr = max_bell(box);
      return out;
    }
    std::ostringstream diag;
    diag << "G=" << g << " Q=0;";
    for (const auto& pr : prs) {
      Table t = box.table();
      add_to(t, pr_box(*pr).table(), -out.mu);
      t = scaled(t, 1.0 / rest);
      const double lo = min_entry(t);
      diag << " " << pr->label() << ":min=" << lo;
      if (lo < -kValTol) continue;
      double clamp = 0.0;
      const Box residual = clamp_to_box(t, clamp);
      const double gr = bell_discord(residual).value, qr = mermin_discord(residual).value;
      diag << ",G=" << gr << ",Q=" << qr;
      if (gr > kMeasTol || qr > kMeasTol) continue;
      out.pr = pr;
      out.residual = residual;
      out.clamp = clamp;
      out.slack = lo;
      return out;
    }
    throw Error(ErrorKind::NoValidResidual, diag.str());
  }

  const Correlators src = correlators(box);
  std::optional<Candidate3> best;
  std::ostringstream diag;
  diag << "G=" << g << " Q=" << q << ";";
  int searched = 0;
  for (const auto& pr : prs) {
    Table base = box.table();
    if (pr) add_to(base, pr_box(*pr).table(), -out.mu);
    for (const PrIndex& f : PrIndex::all()) {
      if (!no_residual && !residual_discords_vanish(src, pr, f, out.mu, out.nu, rest)) continue;
      ++searched;
      // With no residual mass the slack is measured in absolute units.
      const auto sol = best_family_weights(base, f, out.nu, no_residual ? 1.0 : rest);
      if (!sol) continue;
      if (!best || sol->second > best->slack) best = Candidate3{pr, f, sol->first, sol->second};
    }
  }
  if (!best || best->slack < -kValTol) {
    diag << " searched " << searched << " (pr, mermin) pairs";
    if (best) diag << ", best slack " << best->slack << " at pr=" << (best->pr ? best->pr->label() : "none")
                   << " mermin=" << best->mermin.label();
    throw Error(ErrorKind::NoValidResidual, diag.str());
  }

  out.pr = best->pr;
  out.mermin = best->mermin;
  out.family_weights = best->weights;
  out.slack = best->slack;
  const auto& fam = mermin_family(best->mermin);
  out.q2box = mix(std::span<const Box>(fam.data(), 4), std::span<const double>(best->weights.data(), 4));
  if (no_residual) {
    out.residual = white_noise();
    return out;
  }
  Table t = box.table();
  if (out.pr) add_to(t, pr_box(*out.pr).table(), -out.mu);
  add_to(t, out.q2box.table(), -out.nu);
  out.residual = clamp_to_box(scaled(t, 1.0 / rest), out.clamp);
  const double gr = bell_discord(out.residual).value;
  const double qr = mermin_discord(out.residual).value;
  if (gr > kMeasTol || qr > kMeasTol) {
    diag << " best residual has G=" << gr << " Q=" << qr;
    throw Error(ErrorKind::NoValidResidual, diag.str());
  }
  return out;
}

Region parse_region(std::string_view name) {
  static const std::array<std::pair<std::string_view, Region>, 8> names{{
      {"NS", Region::NS},
      {"BELL", Region::Bell},
      {"N_mm", Region::Nmm},
      {"N_Tmm", Region::NTmm},
      {"N_Q", Region::NQ},
      {"L_mm", Region::Lmm},
      {"L_Q", Region::LQ},
      {"G0Q0", Region::G0Q0},
  }};
  for (const auto& [n, r] : names)
    if (n == name) return r;
  throw Error(ErrorKind::UnknownRegion, "unknown region '" + std::string(name) +
                                            "' (expected NS, BELL, N_mm, N_Tmm, N_Q, L_mm, L_Q or G0Q0)");
}

std::string_view to_string(Region region) noexcept {
  switch (region) {
    case Region::NS: return "NS";
    case Region::Bell: return "BELL";
    case Region::Nmm: return "N_mm";
    case Region::NTmm: return "N_Tmm";
    case Region::NQ: return "N_Q";
    case Region::Lmm: return "L_mm";
    case Region::LQ: return "L_Q";
    case Region::G0Q0: return "G0Q0";
  }
  return "?";
}

std::vector<Box> region_vertices(Region region) {
  std::vector<Box> out;
  const auto add = [&](Box (*make)(PrIndex)) {
    for (const PrIndex& k : PrIndex::all()) out.push_back(make(k));
  };
  switch (region) {
    case Region::Nmm: add(pr_box); add(cc_box); break;
    case Region::NTmm: add(tsirelson_box); add(cc_box); break;
    case Region::NQ: add(tsirelson_box); add(mermin_box_mm); break;
    case Region::Lmm: add(cc_box); break;
    case Region::LQ: add(mermin_box_mm); break;
    case Region::NS:
    case Region::Bell:
    case Region::G0Q0: break;
  }
  return out;
}

MembershipResult membership(const Table& table, Region region) {
  MembershipResult out;
  out.region = region;
  if (region == Region::NS) {
    try {
      validate_table(table);
      out.member = true;
    } catch (const Error& e) {
      out.member = false;
      double excess = 0.0;
      for (const auto& row : table) {
        double sum = 0.0;
        for (double v : row) {
          excess = std::max({excess, -v, v - 1.0});
          sum += v;
        }
        excess = std::max(excess, std::abs(sum - 1.0));
      }
      out.slack = excess;
    }
    return out;
  }
  const Box box = Box::make(table);
  return membership(box, region);
}

MembershipResult membership(const Box& box, Region region) {
  MembershipResult out;
  out.region = region;
  switch (region) {
    case Region::NS:
      out.member = true;
      return out;
    case Region::Bell: {
      out.member = is_local(box);
      out.slack = std::max(0.0, chsh_violation(box).max - 2.0);
      return out;
    }
    case Region::G0Q0: {
      const double g = bell_discord(box).value, q = mermin_discord(box).value;
      out.member = g <= kMeasTol && q <= kMeasTol;
      out.slack = std::max(g, q);
      return out;
    }
    default: break;
  }
  static const std::array<std::vector<Box>, 8> vertex_sets = [] {
    std::array<std::vector<Box>, 8> sets;
    for (int r = 0; r < 8; ++r) sets[r] = region_vertices(static_cast<Region>(r));
    return sets;
  }();
  const HullResult h = hull_weights(box.table(), vertex_sets[static_cast<int>(region)], 17 * kValTol);
  out.member = h.feasible;
  out.slack = h.infeasibility;
  return out;
}

}  // namespace nsbox

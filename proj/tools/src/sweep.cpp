#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "nsbox/cli.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/quantum.hpp"
#include "parallel.hpp"

namespace nsbox::cli {
namespace {

constexpr double kGridTol = 1e-12;

bool is_theta_preset(std::string_view p) {
  return p == "pr_schmidt" || p == "steer_schmidt" || p == "bms_xy" || p == "bms_xz";
}

std::pair<double, double> axis_domain(const SweepSpec& s) {
  if (s.axis == "theta") return {0.0, std::numbers::pi / 4};
  return {0.0, 1.0};
}

struct Point {
  TwoQubitState state;
  double theta;  // Schmidt angle linked to the grid point
  double p;      // mixing weight linked to the grid point
};

Point make_point(const SweepSpec& s, double x) {
  if (s.family == "schmidt") {
    const double theta = s.axis == "theta" ? x : std::asin(std::sqrt(std::clamp(x, 0.0, 1.0))) / 2;
    const double tau = std::pow(std::sin(2 * theta), 2);
    return {schmidt_state(theta), theta, tau};
  }
  const double p = std::clamp(x, 0.0, 1.0);
  const double theta = std::asin(p) / 2;
  if (s.family == "werner") return {werner_state(p), theta, p};
  if (s.family == "psi_plus_cc") return {psi_plus_cc_mixture(p), theta, p};
  return {make_state("psi_plus", {}), theta, p};
}

double quantity(std::string_view q, const Box& box, const std::optional<Decomposition3>& d3) {
  if (q == "B") return chsh_violation(box).max;
  if (q == "G") return bell_discord(box).value;
  if (q == "Q") return mermin_discord(box).value;
  if (q == "M") return steering_value(box).max;
  if (!d3) return std::numeric_limits<double>::quiet_NaN();
  return q == "mu" ? d3->mu : d3->nu;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

struct FormulaEntry {
  const char* family;
  const char* preset;
  const char* text;
};

constexpr FormulaEntry kFormulas[] = {
    {"schmidt", "tsirelson", "B = 2*sqrt(2*tau); G = 2*sqrt(2*tau)"},
    {"schmidt", "mt", "B = 2*sqrt(2*tau); G = 2*sqrt(2*tau)"},
    {"schmidt", "pr_schmidt", "B = 2*sqrt(1+tau); G = 4*tau/sqrt(1+tau)"},
    {"schmidt", "mermin", "M = 2*sqrt(tau); Q = 2*sqrt(tau)"},
    {"schmidt", "steer_schmidt", "M = sqrt(2)*sqrt(1+tau); Q = 2*sqrt(2)*tau/sqrt(1+tau)"},
    {"schmidt", "bms_xy",
     "G = 2*sqrt(2*tau)*|s-c|; Q = sqrt(2*tau)*||c+s|-|c-s||; c = cos(2*theta), s = sin(2*theta), "
     "tau = s^2"},
    {"werner", "mermin", "Q = 2*p; steering violated iff p > 1/sqrt(2)"},
    {"werner", "tsirelson", "G = 2*sqrt(2)*p; B = 2*sqrt(2)*p"},
    {"werner", "mt", "G = 2*sqrt(2)*p; B = 2*sqrt(2)*p"},
    {"werner", "werner_bm",
     "G = 2*sqrt(2)*p*|sqrt(p)-sqrt(1-p)|; Q = sqrt(2)*p*|sqrt(p)+sqrt(1-p)-|sqrt(p)-sqrt(1-p)||"},
    {"psi_plus_cc", "tsirelson", "G = 2*sqrt(2)*p; B = 2*sqrt(2)*p"},
    {"psi_plus_cc", "pr_schmidt", "B = 2*sqrt(1+p^2); G = 4*p^2/sqrt(1+p^2)"},
    {"psi_plus", "interp", "mu = sqrt(1-p); nu = sqrt(p)-sqrt(1-p)"},
};

}  // namespace

void validate(const SweepSpec& s) {
  if (s.family == "schmidt") {
    if (s.axis != "tau" && s.axis != "theta")
      throw Error(ErrorKind::Parse, "schmidt sweeps run along tau or theta, not '" + s.axis + "'");
  } else if (s.family == "werner" || s.family == "psi_plus_cc" || s.family == "psi_plus") {
    if (s.axis != "p") throw Error(ErrorKind::Parse, s.family + " sweeps run along p, not '" + s.axis + "'");
  } else {
    throw Error(ErrorKind::UnknownState, "no sweepable family '" + s.family + "'");
  }
  if (s.steps < 2) throw Error(ErrorKind::OutOfRange, "a sweep needs at least 2 steps");
  const auto [lo, hi] = axis_domain(s);
  for (double v : {s.start, s.stop})
    if (!std::isfinite(v) || v < lo - kGridTol || v > hi + kGridTol)
      throw Error(ErrorKind::OutOfRange, "grid endpoint " + format_number(v) + " outside [" + format_number(lo) +
                                             ", " + format_number(hi) + "] for axis " + s.axis);
  preset_param_count(s.preset);
  if (s.quantities.empty()) throw Error(ErrorKind::Parse, "no quantities requested");
  for (const auto& q : s.quantities)
    if (q != "B" && q != "G" && q != "Q" && q != "M" && q != "mu" && q != "nu")
      throw Error(ErrorKind::Parse, "unknown quantity '" + q + "' (expected B, G, Q, M, mu, nu)");
}

std::string sweep_formula(const SweepSpec& s) {
  for (const auto& f : kFormulas)
    if (s.family == f.family && s.preset == f.preset) return f.text;
  return {};
}

SweepResult run_sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  SweepResult r;
  r.spec = spec;
  r.formula = sweep_formula(spec);
  r.columns.push_back(spec.axis);
  r.columns.insert(r.columns.end(), spec.quantities.begin(), spec.quantities.end());
  const bool want_d3 = std::any_of(spec.quantities.begin(), spec.quantities.end(),
                                   [](const std::string& q) { return q == "mu" || q == "nu"; });
  const int params = preset_param_count(spec.preset);

  r.rows.assign(spec.steps, {});
  std::vector<char> failed(spec.steps, 0);
  detail::parallel_for(spec.steps, threads, [&](std::size_t k) {
    const double x = k + 1 == static_cast<std::size_t>(spec.steps)
                         ? spec.stop
                         : spec.start + (spec.stop - spec.start) * static_cast<double>(k) / (spec.steps - 1);
    const Point pt = make_point(spec, x);
    std::vector<double> pp;
    if (params == 1) pp.push_back(is_theta_preset(spec.preset) ? pt.theta : pt.p);
    const Box box = born_box(pt.state, preset_settings(spec.preset, pp));
    std::optional<Decomposition3> d3;
    if (want_d3) {
      try {
        d3 = canonical3(box);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::NoValidResidual) throw;
        failed[k] = 1;
      }
    }
    auto& row = r.rows[k];
    row.push_back(x);
    for (const auto& q : spec.quantities) row.push_back(quantity(q, box, d3));
  });
  r.decomposition_failures = static_cast<int>(std::count(failed.begin(), failed.end(), 1));
  return r;
}

void write_csv(std::ostream& out, const SweepResult& r) {
  const auto& s = r.spec;
  out << "# " << s.family << " sweep over " << s.axis << ", preset " << s.preset << ": "
      << (r.formula.empty() ? "no closed form registered" : r.formula) << '\n';
  for (std::size_t c = 0; c < r.columns.size(); ++c) out << (c ? "," : "") << r.columns[c];
  out << '\n';
  for (const auto& row : r.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
    out << '\n';
  }
}

Json to_json(const SweepResult& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json j = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) j[r.columns[c]] = std::isnan(row[c]) ? Json() : Json(row[c]);
    rows.push_back(std::move(j));
  }
  return {
      {"family", r.spec.family},
      {"axis", r.spec.axis},
      {"preset", r.spec.preset},
      {"formula", r.formula.empty() ? Json() : Json(r.formula)},
      {"decomposition_failures", r.decomposition_failures},
      {"rows", std::move(rows)},
  };
}

}  // namespace nsbox::cli

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nsbox/cli.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/quantum.hpp"
#include "parallel.hpp"

namespace nsbox::cli {
namespace {

struct Metric {
  std::string name;
  double threshold;  // infinity for purely informational metrics
};

struct Outcome {
  std::vector<double> values;  // one per metric, NaN when not computed
  std::vector<std::string> failures;  // stages aborted by an error, as "stage Kind"
  std::string label;
};

struct Property {
  std::vector<Metric> metrics;
  std::int64_t units;
  /// Runs one unit of work, which may cover several cases.
  std::function<std::vector<Outcome>(std::int64_t, Rng&)> unit;
};

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::array<std::pair<Region, Region>, 4> kContainments{{
    {Region::LQ, Region::NQ},
    {Region::NQ, Region::NTmm},
    {Region::Lmm, Region::Nmm},
    {Region::NTmm, Region::Nmm},
}};

Box sample_region(Rng& rng, const std::vector<Box>& vertices) {
  std::vector<double> w(vertices.size());
  double total = 0.0;
  for (auto& x : w) total += (x = rng.exponential());
  for (auto& x : w) x /= total;
  return mix(vertices, w);
}

Property make_property(const CheckOptions& o) {
  const double meas = std::max(o.tol, kMeasTol);
  const auto& p = o.property;
  if (p == "bell-monogamy")
    return {{{"bell_sum_excess", o.tol}}, o.n, [&o](std::int64_t, Rng& rng) {
              const auto r = bell_monogamy_residuals(sample_ns_box(rng, o.mode));
              return std::vector<Outcome>{{{-std::min({r[0], r[1], r[2]})}, {}, {}}};
            }};
  if (p == "gq-monogamy")
    return {{{"gq_excess", o.tol}}, o.n, [&o](std::int64_t, Rng& rng) {
              return std::vector<Outcome>{{{-gq_monogamy_residual(sample_ns_box(rng, o.mode))}, {}, {}}};
            }};
  if (p == "cqqc-null")
    return {{{"G", o.tol}, {"Q", o.tol}}, 2 * o.n, [&o](std::int64_t k, Rng& rng) {
              const bool cq = k < o.n;
              const auto st = cq ? random_cq_state(rng) : random_qc_state(rng);
              std::vector<Outcome> out;
              for (int s = 0; s < o.settings_per_state; ++s) {
                const Box box = born_box(st, random_settings(rng));
                std::ostringstream label;
                label << (cq ? "cq" : "qc") << " state " << (cq ? k : k - o.n) << ", settings " << s;
                out.push_back({{bell_discord(box).value, mermin_discord(box).value}, {}, label.str()});
              }
              return out;
            }};
  if (p == "rbmd")
    return {{{"rbmd_gap", o.tol}, {"tsirelson_excess", o.tol}}, o.n, [](std::int64_t, Rng& rng) {
              const auto w = random_me_weights(rng);
              const auto st = me_mixture(w);
              const double g = bell_discord(born_box(st, preset_settings("mt"))).value;
              const double q = mermin_discord(born_box(st, preset_settings("mm"))).value;
              return std::vector<Outcome>{
                  {{std::abs(g - std::numbers::sqrt2 * q), g - 2 * std::numbers::sqrt2}, {}, {}}};
            }};
  if (p == "decomp-roundtrip")
    return {{{"vertex_reconstruction", o.tol},
             {"canonical2_reconstruction", meas},
             {"canonical2_residual_G", meas},
             {"canonical3_reconstruction", meas},
             {"canonical3_residual_G", meas},
             {"canonical3_residual_Q", meas}},
            o.n,
            [&o](std::int64_t, Rng& rng) {
              const Box box = sample_ns_box(rng, o.mode);
              Outcome out{std::vector<double>(6, kNaN), {}, {}};
              auto stage = [&](const char* name, auto&& body) {
                try {
                  body();
                } catch (const Error& e) {
                  out.failures.push_back(std::string(name) + " " + std::string(to_string(e.kind())));
                  out.label += (out.label.empty() ? "" : "; ") + std::string(name) + ": " + e.what();
                }
              };
              stage("vertex", [&] { out.values[0] = table_distance(vertex_weights(box).reconstruct(), box.table()); });
              stage("canonical2", [&] {
                const auto d2 = canonical2(box);
                out.values[1] = table_distance(d2.reconstruct(), box.table());
                out.values[2] = bell_discord(d2.residual).value;
              });
              stage("canonical3", [&] {
                const auto d3 = canonical3(box);
                out.values[3] = table_distance(d3.reconstruct(), box.table());
                out.values[4] = bell_discord(d3.residual).value;
                out.values[5] = mermin_discord(d3.residual).value;
              });
              return std::vector<Outcome>{out};
            }};
  if (p == "containment")
    return {{{"inner_slack", kInf}, {"outer_slack", kInf}}, 4 * o.n, [&o](std::int64_t k, Rng& rng) {
              const auto [inner, outer] = kContainments[k / o.n];
              const Box box = sample_region(rng, region_vertices(inner));
              const auto in = membership(box, inner);
              const auto out = membership(box, outer);
              std::string label = std::string(to_string(inner)) + " sample inside " + std::string(to_string(outer));
              std::vector<std::string> failures;
              if (!in.member) failures.push_back("not in inner region");
              if (!out.member) failures.push_back("not in outer region");
              return std::vector<Outcome>{{{in.slack, out.slack}, failures, label}};
            }};
  throw Error(ErrorKind::Parse, "unknown property '" + p + "'");
}

}  // namespace

std::vector<std::string> check_properties() {
  return {"bell-monogamy", "gq-monogamy", "cqqc-null", "rbmd", "decomp-roundtrip", "containment"};
}

RunReport run_check(const CheckOptions& o) {
  if (o.n < 1) throw Error(ErrorKind::Parse, "n must be at least 1");
  if (o.property == "cqqc-null" && o.settings_per_state < 1)
    throw Error(ErrorKind::Parse, "settings per state must be at least 1");
  const auto start = std::chrono::steady_clock::now();
  const Property prop = make_property(o);

  std::vector<std::vector<Outcome>> results(prop.units);
  detail::parallel_for(prop.units, o.threads, [&](std::size_t k) {
    Rng rng(o.seed, k);
    results[k] = prop.unit(static_cast<std::int64_t>(k), rng);
  });

  RunReport r;
  r.property = o.property;
  r.seed = o.seed;
  for (const auto& m : prop.metrics) {
    r.worst[m.name] = kNaN;
    if (std::isfinite(m.threshold)) r.thresholds[m.name] = m.threshold;
  }
  for (const auto& unit : results) {
    for (const auto& c : unit) {
      const std::int64_t index = r.run++;
      std::vector<std::string> reasons = c.failures;
      for (std::size_t i = 0; i < prop.metrics.size(); ++i) {
        const double v = c.values[i];
        if (std::isnan(v)) continue;
        double& w = r.worst[prop.metrics[i].name];
        if (std::isnan(w) || v > w) w = v;
        if (v > prop.metrics[i].threshold) reasons.push_back(prop.metrics[i].name);
      }
      if (reasons.empty()) {
        ++r.passed;
        continue;
      }
      ++r.failed;
      for (const auto& reason : reasons) ++r.failures_by_kind[reason];
      if (r.first_failure.empty()) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "case " << index;
        if (!c.label.empty()) msg << " (" << c.label << ")";
        for (std::size_t i = 0; i < reasons.size(); ++i) msg << (i ? ", " : ": ") << reasons[i];
        for (std::size_t i = 0; i < prop.metrics.size(); ++i)
          if (!std::isnan(c.values[i])) msg << ", " << prop.metrics[i].name << " = " << c.values[i];
        r.first_failure = msg.str();
      }
    }
  }
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json to_json(const RunReport& r) {
  Json worst = Json::object();
  for (const auto& [k, v] : r.worst) worst[k] = std::isnan(v) ? Json() : Json(v);
  return {
      {"property", r.property},
      {"seed", r.seed},
      {"run", r.run},
      {"passed", r.passed},
      {"failed", r.failed},
      {"worst", std::move(worst)},
      {"thresholds", r.thresholds},
      {"failures_by_kind", r.failures_by_kind},
      {"first_failure", r.first_failure.empty() ? Json() : Json(r.first_failure)},
  };
}

}  // namespace nsbox::cli

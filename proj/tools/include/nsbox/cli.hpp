#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "nsbox/decompose.hpp"
#include "nsbox/json_io.hpp"
#include "nsbox/sampling.hpp"

namespace nsbox::cli {

enum ExitCode : int { kOk = 0, kValidation = 1, kPropertyFailure = 2, kUsage = 3 };

/// Tolerance used when NSBOX_TOL is unset and --tol is not given.
double default_tolerance();

Json measure_report(const Box& box, bool anticommuting_assumed = true);
/// mode is one of vertex, canonical2, canonical3; throws Error{Parse} otherwise.
Json decompose_report(const Box& box, std::string_view mode);
Json membership_report(const Box& box, Region region);
Json catalog_report();
Json quantum_report(std::string_view state, const std::vector<double>& state_params, std::string_view settings,
                    const std::vector<double>& settings_params);

/// A one-parameter family of boxes: a state family swept along one axis and
/// measured with a settings preset. Presets taking an angle receive the
/// Schmidt angle of the grid point (theta = asin(sqrt(tau))/2 on a tau axis,
/// asin(p)/2 on a p axis); presets taking a weight receive p directly.
struct SweepSpec {
  std::string family;  // schmidt, werner, psi_plus_cc, psi_plus
  std::string axis;    // tau or theta for schmidt, p otherwise
  double start = 0.0;
  double stop = 1.0;
  int steps = 101;
  std::string preset;
  std::vector<std::string> quantities;  // B, G, Q, M, mu, nu
};

struct SweepResult {
  SweepSpec spec;
  std::string formula;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  /// Grid points where canonical3 found no valid residual (mu, nu are NaN there).
  int decomposition_failures = 0;
};

/// Throws Error{OutOfRange|Parse|UnknownPreset|UnknownState} for a bad spec.
void validate(const SweepSpec& spec);
SweepResult run_sweep(const SweepSpec& spec, unsigned threads = 0);
/// Analytic reference for the (family, preset) pair, or an empty string.
std::string sweep_formula(const SweepSpec& spec);
void write_csv(std::ostream& out, const SweepResult& result);
Json to_json(const SweepResult& result);

struct CheckOptions {
  std::string property;  // bell-monogamy, gq-monogamy, cqqc-null, rbmd, decomp-roundtrip, containment
  std::int64_t n = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
  /// cqqc-null: settings drawn per state.
  int settings_per_state = 100;
  SampleMode mode = SampleMode::VertexDirichlet;
  unsigned threads = 0;
};

struct RunReport {
  std::string property;
  std::int64_t run = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;
  std::uint64_t seed = 0;
  /// Largest value of each monitored quantity; a case fails when any exceeds its threshold.
  std::map<std::string, double> worst;
  std::map<std::string, double> thresholds;
  /// Failing cases per reason (a metric name or "stage ErrorKind"); a case may count under several.
  std::map<std::string, std::int64_t> failures_by_kind;
  std::string first_failure;
  double wall_seconds = 0.0;
};

std::vector<std::string> check_properties();
/// Throws Error{Parse} for an unknown property or n < 1.
RunReport run_check(const CheckOptions& options);
/// Wall time is left out so that reports are reproducible byte for byte.
Json to_json(const RunReport& report);

/// Full command-line entry point.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace nsbox::cli

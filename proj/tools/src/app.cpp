#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nsbox/cli.hpp"
#include "nsbox/quantum.hpp"

namespace nsbox::cli {
namespace {

struct Globals {
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::int64_t n = 1000;
  std::string out;
  std::string format;

  double tolerance() const { return tol ? *tol : default_tolerance(); }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Box load_box(const std::string& path, std::istream& in, double tol) {
  if (path.empty() || path == "-") return read_box(in, tol);
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open '" + path + "'");
  return read_box(file, tol);
}

void emit(const Globals& g, std::ostream& out, const std::string& text) {
  if (g.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + g.out + "'");
  file << text;
  if (!file.flush()) throw std::runtime_error("write to '" + g.out + "' failed");
}

void require_json(const Globals& g) {
  if (!g.format.empty() && g.format != "json") throw UsageError("this command only writes json");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonsignaling box toolkit: Bell and Mermin discords, decompositions, quantum boxes", "nsbox"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "Validation tolerance (default: NSBOX_TOL or 1e-9)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--n", g.n, "Number of random cases")->capture_default_str();
  app.add_option("--out", g.out, "Write output to a file instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  std::string input;
  auto* box = app.add_subcommand("box", "Operations on a single box read as JSON");
  box->require_subcommand(1);
  bool no_anticommuting = false;
  auto* measure = box->add_subcommand("measure", "Bell/Mermin functions, discords and inequality tests");
  measure->add_option("input", input, "Box JSON file ('-' or omitted: stdin)");
  measure->add_flag("--no-anticommuting", no_anticommuting,
                    "Do not assume anticommuting observables when reporting steering");
  std::string mode = "canonical3";
  auto* decompose = box->add_subcommand("decompose", "Convex decomposition of a box");
  decompose->add_option("input", input, "Box JSON file ('-' or omitted: stdin)");
  decompose->add_option("--mode", mode, "vertex, canonical2 or canonical3")
      ->check(CLI::IsMember({"vertex", "canonical2", "canonical3"}))
      ->capture_default_str();
  std::string region;
  auto* member = box->add_subcommand("member", "Membership in a named region");
  member->add_option("input", input, "Box JSON file ('-' or omitted: stdin)");
  member->add_option("--region", region, "NS, BELL, N_mm, N_Tmm, N_Q, L_mm, L_Q or G0Q0")->required();

  auto* catalog = app.add_subcommand("catalog", "Named extremal and reference boxes");
  catalog->require_subcommand(1);
  auto* catalog_list_cmd = catalog->add_subcommand("list", "Print every catalog box");

  auto* quantum = app.add_subcommand("quantum", "Boxes from two-qubit states");
  quantum->require_subcommand(1);
  std::string state, settings;
  std::vector<double> state_params, settings_params;
  auto* gen = quantum->add_subcommand("gen", "Born-rule box for a named state and settings preset");
  gen->add_option("--state", state, "State family")->required();
  gen->add_option("--params", state_params, "State parameters");
  gen->add_option("--settings", settings, "Settings preset")->required();
  gen->add_option("--settings-params", settings_params, "Settings preset parameters");

  SweepSpec spec;
  std::optional<double> start, stop;
  std::string quantities = "B,G,Q,M";
  unsigned threads = 0;
  auto* sweep = app.add_subcommand("sweep", "Sweep a state family and record box quantities");
  sweep->add_option("--family", spec.family, "schmidt, werner, psi_plus_cc or psi_plus")->required();
  sweep->add_option("--axis", spec.axis, "tau or theta for schmidt, p otherwise");
  sweep->add_option("--start", start, "First grid point (default: start of the axis domain)");
  sweep->add_option("--stop", stop, "Last grid point (default: end of the axis domain)");
  sweep->add_option("--steps", spec.steps, "Number of grid points")->capture_default_str();
  sweep->add_option("--preset", spec.preset, "Settings preset")->required();
  sweep->add_option("--quantities", quantities, "Comma-separated subset of B, G, Q, M, mu, nu")
      ->capture_default_str();
  sweep->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");

  CheckOptions check;
  std::string sample_mode = "vertex-dirichlet";
  auto* check_cmd = app.add_subcommand("check", "Randomized property campaign");
  check_cmd->add_option("property", check.property, "Property to check")
      ->required()
      ->check(CLI::IsMember(check_properties()));
  check_cmd->add_option("--mode", sample_mode, "Box sampler: vertex-dirichlet, local-only or noisy-extremal")
      ->check(CLI::IsMember({"vertex-dirichlet", "local-only", "noisy-extremal"}))
      ->capture_default_str();
  check_cmd->add_option("--settings-per-state", check.settings_per_state,
                        "cqqc-null: random settings per state (--n states of each kind)")
      ->capture_default_str();
  check_cmd->add_option("--threads", check.threads, "Worker threads (0: hardware concurrency)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    if (measure->parsed()) {
      require_json(g);
      emit(g, out, dump(measure_report(load_box(input, in, g.tolerance()), !no_anticommuting)));
    } else if (decompose->parsed()) {
      require_json(g);
      emit(g, out, dump(decompose_report(load_box(input, in, g.tolerance()), mode)));
    } else if (member->parsed()) {
      require_json(g);
      const Region r = parse_region(region);
      emit(g, out, dump(membership_report(load_box(input, in, g.tolerance()), r)));
    } else if (catalog_list_cmd->parsed()) {
      require_json(g);
      emit(g, out, dump(catalog_report()));
    } else if (gen->parsed()) {
      require_json(g);
      emit(g, out, dump(quantum_report(state, state_params, settings, settings_params)));
    } else if (sweep->parsed()) {
      if (spec.axis.empty()) spec.axis = spec.family == "schmidt" ? "tau" : "p";
      const double hi = spec.axis == "theta" ? std::numbers::pi / 4 : 1.0;
      spec.start = start.value_or(0.0);
      spec.stop = stop.value_or(hi);
      std::stringstream list(quantities);
      for (std::string q; std::getline(list, q, ',');)
        if (!q.empty()) spec.quantities.push_back(q);
      const auto result = run_sweep(spec, threads);
      std::ostringstream text;
      if (g.format == "json")
        text << dump(to_json(result));
      else
        write_csv(text, result);
      emit(g, out, text.str());
      if (result.decomposition_failures > 0) {
        err << "error: NoValidResidual: canonical3 failed at " << result.decomposition_failures
            << " grid point(s); mu and nu are nan there\n";
        return kValidation;
      }
    } else if (check_cmd->parsed()) {
      require_json(g);
      check.n = g.n;
      check.seed = g.seed;
      check.tol = g.tolerance();
      check.mode = parse_sample_mode(sample_mode);
      const auto report = run_check(check);
      emit(g, out, dump(to_json(report)));
      err << "wall time: " << report.wall_seconds << " s\n";
      return report.failed > 0 ? kPropertyFailure : kOk;
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kOk;
}

}  // namespace nsbox::cli

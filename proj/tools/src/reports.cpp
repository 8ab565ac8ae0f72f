#include <cstdlib>
#include <string>

#include "nsbox/cli.hpp"
#include "nsbox/measures.hpp"
#include "nsbox/quantum.hpp"

namespace nsbox::cli {

double default_tolerance() {
  if (const char* env = std::getenv("NSBOX_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0))
      throw Error(ErrorKind::Parse, std::string("NSBOX_TOL is not a positive number: ") + env);
    return v;
  }
  return kValTol;
}

Json measure_report(const Box& box, bool anticommuting_assumed) {
  const auto chsh = chsh_violation(box);
  const auto steer = steering_value(box, anticommuting_assumed);
  const auto bell = bell_monogamy_residuals(box);
  return {
      {"bell_functions", to_json(bell_functions(box))},
      {"mermin_functions", to_json(mermin_functions(box))},
      {"G", to_json(bell_discord(box))},
      {"Q", to_json(mermin_discord(box))},
      {"chsh", {{"max", chsh.max}, {"violated", chsh.violated}}},
      {"steering",
       {{"max", steer.max}, {"violated", steer.violated}, {"anticommuting_assumed", steer.anticommuting_assumed}}},
      {"monogamy", {{"bell", bell}, {"gq", gq_monogamy_residual(box)}}},
  };
}

Json decompose_report(const Box& box, std::string_view mode) {
  if (mode == "vertex") return to_json(vertex_weights(box));
  if (mode == "canonical2") return to_json(canonical2(box));
  if (mode == "canonical3") return to_json(canonical3(box));
  throw Error(ErrorKind::Parse, "unknown decomposition mode '" + std::string(mode) + "'");
}

Json membership_report(const Box& box, Region region) { return to_json(membership(box, region)); }

Json catalog_report() {
  Json out = Json::array();
  for (const auto& e : catalog_list())
    out.push_back({{"family", e.family}, {"label", e.label}, {"table", to_json(e.box)["table"]}});
  return out;
}

Json quantum_report(std::string_view state, const std::vector<double>& state_params, std::string_view settings,
                    const std::vector<double>& settings_params) {
  const auto st = make_state(state, state_params);
  const auto box = born_box(st, preset_settings(settings, settings_params));
  Json out{
      {"state", state},
      {"params", state_params},
      {"settings", settings},
      {"settings_params", settings_params},
      {"box", to_json(box)["table"]},
      {"measures", measure_report(box)},
  };
  if (const auto tau = st.tangle()) out["tangle"] = *tau;
  return out;
}

}  // namespace nsbox::cli

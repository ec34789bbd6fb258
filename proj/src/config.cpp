#include "mtgg/config.hpp"

#include <fstream>

#include "mtgg/errors.hpp"

namespace mtgg {

namespace {

using nlohmann::json;

template <typename T>
T fetch(const json& section, const std::string& scope, const std::string& key,
        T fallback) {
  if (!section.contains(key)) return fallback;
  try {
    return section.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config field " + scope + "." + key +
                      " has the wrong type");
  }
}

json section_of(const json& root, const std::string& key) {
  if (!root.contains(key)) return json::object();
  if (!root.at(key).is_object()) {
    throw ConfigError("config field " + key + " must be an object");
  }
  return root.at(key);
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::kCsv;
  if (text == "json") return OutputFormat::kJson;
  throw ConfigError("output.format must be \"csv\" or \"json\"");
}

PolicySelection parse_policy(const json& sim) {
  PolicySelection policy;
  if (!sim.contains("policy")) return policy;
  const json& p = sim.at("policy");
  if (p.is_string()) {
    const std::string name = p.get<std::string>();
    if (name == "min") {
      policy.source = PolicySource::kMin;
    } else if (name == "solve-first") {
      policy.source = PolicySource::kSolveFirst;
    } else {
      throw ConfigError("sim.policy must be \"min\", \"solve-first\", or an "
                        "object with a2/tau");
    }
    return policy;
  }
  if (!p.is_object()) {
    throw ConfigError("sim.policy must be a string or an object");
  }
  policy.source = PolicySource::kExplicit;
  policy.a2 = fetch<double>(p, "sim.policy", "a2", -1.0);
  policy.tau = fetch<double>(p, "sim.policy", "tau", 0.0);
  return policy;
}

}  // namespace

ExperimentConfig config_from_json(const json& root_in) {
  if (!root_in.is_object()) {
    throw ConfigError("config root must be a JSON object");
  }
  // Accept an emitted record wholesale: its "config" member is the config.
  const json& root =
      root_in.contains("config") && root_in.at("config").is_object()
          ? root_in.at("config")
          : root_in;

  ExperimentConfig config;

  const json game = section_of(root, "game");
  config.game.sigma1_sq = fetch<double>(game, "game", "sigma1_sq", 1.0);
  config.game.sigma2_sq = fetch<double>(game, "game", "sigma2_sq", 1.0);
  config.game.alpha1_sq = fetch<double>(game, "game", "alpha1_sq", 1.0);
  config.game.alpha2_sq = fetch<double>(game, "game", "alpha2_sq", 1.0);
  config.game.n_agents = fetch<int>(game, "game", "n_agents", 10);
  config.game.degree = fetch<int>(game, "game", "degree", 4);
  config.game.diffuse = fetch<bool>(game, "game", "diffuse", false);

  const json solve = section_of(root, "solve");
  config.solve.sample_count =
      fetch<std::uint64_t>(solve, "solve", "samples", 10'000);
  config.solve.max_iters = fetch<int>(solve, "solve", "max_iters", 100);
  config.solve.conv_tol = fetch<double>(solve, "solve", "conv_tol", 1e-4);
  config.solve.seed = fetch<std::uint64_t>(solve, "solve", "seed", 1);
  config.solve.init_a2 = fetch<double>(solve, "solve", "init_a2", -1.0);
  config.solve.init_tau = fetch<double>(solve, "solve", "init_tau", 0.0);
  config.solve.relaxation = fetch<double>(solve, "solve", "relaxation", 1.0);
  config.solve.root_tol = fetch<double>(solve, "solve", "root_tol", 1e-10);

  const json sim = section_of(root, "sim");
  config.sim.trials = fetch<std::uint64_t>(sim, "sim", "trials", 10'000);
  config.sim.seed = fetch<std::uint64_t>(sim, "sim", "seed", 2);
  config.sim.policy = parse_policy(sim);
  config.sim.noise_sweep =
      fetch<std::vector<double>>(sim, "sim", "noise_sweep", {});
  const json deviation = section_of(sim, "deviation");
  config.sim.deviation.enabled =
      fetch<bool>(deviation, "sim.deviation", "enabled", false);
  config.sim.deviation.grid_side =
      fetch<int>(deviation, "sim.deviation", "grid_side", 9);
  config.sim.deviation.a2_span =
      fetch<double>(deviation, "sim.deviation", "a2_span", 1.0);
  config.sim.deviation.tau_span =
      fetch<double>(deviation, "sim.deviation", "tau_span", 2.0);
  config.sim.deviation.include_br_curve =
      fetch<bool>(deviation, "sim.deviation", "include_br_curve", true);
  config.sim.deviation.trials =
      fetch<std::uint64_t>(deviation, "sim.deviation", "trials", 100'000);

  const json br = section_of(root, "br_curve");
  config.br_curve.y2_min = fetch<double>(br, "br_curve", "y2_min", -20.0);
  config.br_curve.y2_max = fetch<double>(br, "br_curve", "y2_max", 20.0);
  config.br_curve.points = fetch<int>(br, "br_curve", "points", 201);

  const json verify = section_of(root, "verify");
  config.verify.mc_samples =
      fetch<std::uint64_t>(verify, "verify", "mc_samples", 1'000'000);
  config.verify.oracle_points =
      fetch<int>(verify, "verify", "oracle_points", 50);
  config.verify.diagonal_points =
      fetch<int>(verify, "verify", "diagonal_points", 100);
  config.verify.sign_points = fetch<int>(verify, "verify", "sign_points", 1000);
  config.verify.monotone_instances =
      fetch<int>(verify, "verify", "monotone_instances", 20);
  config.verify.monotone_grid =
      fetch<int>(verify, "verify", "monotone_grid", 100);
  config.verify.deviation_trials =
      fetch<std::uint64_t>(verify, "verify", "deviation_trials", 100'000);
  config.verify.seed = fetch<std::uint64_t>(verify, "verify", "seed", 2026);
  config.verify.corrupt_w_var =
      fetch<bool>(verify, "verify", "corrupt_w_var", false);

  config.rho_list = fetch<std::vector<double>>(root, "", "rho_list", {});

  const json output = section_of(root, "output");
  config.output.path = fetch<std::string>(output, "output", "path", "");
  config.output.format =
      parse_format(fetch<std::string>(output, "output", "format", "json"));

  config.threads = fetch<int>(root, "", "threads", 0);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file: " + path.string());
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file " + path.string() +
                      " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
  json j;
  j["game"] = {{"sigma1_sq", config.game.sigma1_sq},
               {"sigma2_sq", config.game.sigma2_sq},
               {"alpha1_sq", config.game.alpha1_sq},
               {"alpha2_sq", config.game.alpha2_sq},
               {"n_agents", config.game.n_agents},
               {"degree", config.game.degree},
               {"diffuse", config.game.diffuse}};
  j["solve"] = {{"samples", config.solve.sample_count},
                {"max_iters", config.solve.max_iters},
                {"conv_tol", config.solve.conv_tol},
                {"seed", config.solve.seed},
                {"init_a2", config.solve.init_a2},
                {"init_tau", config.solve.init_tau},
                {"relaxation", config.solve.relaxation},
                {"root_tol", config.solve.root_tol}};
  json policy;
  switch (config.sim.policy.source) {
    case PolicySource::kMin:
      policy = "min";
      break;
    case PolicySource::kSolveFirst:
      policy = "solve-first";
      break;
    case PolicySource::kExplicit:
      policy = {{"a2", config.sim.policy.a2}, {"tau", config.sim.policy.tau}};
      break;
  }
  j["sim"] = {{"trials", config.sim.trials},
              {"seed", config.sim.seed},
              {"policy", policy},
              {"noise_sweep", config.sim.noise_sweep},
              {"deviation",
               {{"enabled", config.sim.deviation.enabled},
                {"grid_side", config.sim.deviation.grid_side},
                {"a2_span", config.sim.deviation.a2_span},
                {"tau_span", config.sim.deviation.tau_span},
                {"include_br_curve", config.sim.deviation.include_br_curve},
                {"trials", config.sim.deviation.trials}}}};
  j["br_curve"] = {{"y2_min", config.br_curve.y2_min},
                   {"y2_max", config.br_curve.y2_max},
                   {"points", config.br_curve.points}};
  j["verify"] = {{"mc_samples", config.verify.mc_samples},
                 {"oracle_points", config.verify.oracle_points},
                 {"diagonal_points", config.verify.diagonal_points},
                 {"sign_points", config.verify.sign_points},
                 {"monotone_instances", config.verify.monotone_instances},
                 {"monotone_grid", config.verify.monotone_grid},
                 {"deviation_trials", config.verify.deviation_trials},
                 {"seed", config.verify.seed},
                 {"corrupt_w_var", config.verify.corrupt_w_var}};
  j["rho_list"] = config.rho_list;
  j["output"] = {
      {"path", config.output.path},
      {"format", config.output.format == OutputFormat::kCsv ? "csv" : "json"}};
  j["threads"] = config.threads;
  return j;
}

std::string config_hash(const ExperimentConfig& config) {
  const std::string canonical = config_to_json(config).dump();
  std::uint64_t hash = 0xCBF29CE484222325ull;
  for (unsigned char byte : canonical) {
    hash ^= byte;
    hash *= 0x100000001B3ull;
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "fnv1a:%016llx",
                static_cast<unsigned long long>(hash));
  return buffer;
}

}  // namespace mtgg

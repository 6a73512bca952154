#include "rwre/config.hpp"

#include <cstdio>
#include <fstream>

namespace rwre {

using nlohmann::json;

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Numbers may arrive as %.17g strings (the canonical dump format).
double as_double(const json& v) {
  if (v.is_string()) return std::stod(v.get<std::string>());
  return v.get<double>();
}

int parse_offset_key(const std::string& key) {
  std::size_t pos = 0;
  const int v = std::stoi(key, &pos);
  if (pos != key.size()) throw ConfigError("law: bad offset key '" + key + "'");
  return v;
}

SiteLaw parse_site_probs(JumpSupport support, const json& probs) {
  std::vector<double> p(static_cast<std::size_t>(support.width()), 0.0);
  for (const auto& [key, value] : probs.items()) {
    const int offset = parse_offset_key(key);
    if (offset < -support.left || offset > support.right) {
      throw ConfigError("law: offset " + key + " outside support");
    }
    p[static_cast<std::size_t>(offset + support.left)] = as_double(value);
  }
  return SiteLaw(support, std::move(p));
}

}  // namespace

EnvironmentLaw parse_law(const json& spec) {
  if (!spec.is_object()) throw ConfigError("law: must be an object");
  const std::string kind = spec.value("kind", std::string{});
  if (kind == "nearest_neighbor") {
    std::vector<NearestNeighborLaw::Atom> atoms;
    for (const auto& a : spec.at("p_atoms")) {
      atoms.push_back({as_double(a.at("p")),
                       a.contains("weight") ? as_double(a.at("weight")) : 1.0});
    }
    return EnvironmentLaw::nearest_neighbor(std::move(atoms));
  }
  JumpSupport support{};
  if (spec.contains("support")) {
    support.left = spec.at("support").at("L").get<int>();
    support.right = spec.at("support").at("R").get<int>();
  } else {
    throw ConfigError("law: 'support' required for kind '" + kind + "'");
  }
  if (kind == "atomic") {
    std::vector<AtomicLaw::Atom> atoms;
    for (const auto& a : spec.at("atoms")) {
      atoms.push_back({parse_site_probs(support, a.at("probs")),
                       a.contains("weight") ? as_double(a.at("weight")) : 1.0});
    }
    return EnvironmentLaw::atomic(support, std::move(atoms));
  }
  if (kind == "dirichlet") {
    std::vector<double> alpha(static_cast<std::size_t>(support.width()), 0.0);
    for (const auto& [key, value] : spec.at("alpha").items()) {
      const int offset = parse_offset_key(key);
      if (offset < -support.left || offset > support.right) {
        throw ConfigError("law: alpha offset " + key + " outside support");
      }
      alpha[static_cast<std::size_t>(offset + support.left)] = as_double(value);
    }
    return EnvironmentLaw::dirichlet(support, std::move(alpha));
  }
  throw ConfigError("law: unknown kind '" + kind + "'");
}

ExperimentConfig parse_config(const json& doc) {
  std::vector<std::string> errors;
  std::optional<EnvironmentLaw> law;
  if (!doc.contains("law")) {
    errors.push_back("law: missing");
  } else {
    try {
      law = parse_law(doc.at("law"));
    } catch (const std::exception& e) {
      errors.push_back(e.what());
    }
  }

  std::uint64_t seed = 0;
  if (!doc.contains("seed")) {
    errors.push_back("seed: missing (a master seed is required; there is no wall-clock default)");
  } else {
    seed = doc.at("seed").get<std::uint64_t>();
  }

  Budget budget;
  if (doc.contains("budget")) {
    const auto& b = doc.at("budget");
    auto get = [&](const char* key, std::int64_t& slot) {
      if (b.contains(key)) slot = b.at(key).get<std::int64_t>();
    };
    get("n_steps", budget.n_steps);
    get("replicas", budget.replicas);
    get("diag_replicas", budget.diag_replicas);
    get("step_cap", budget.step_cap);
    get("barrier", budget.barrier);
    get("confirm_distance", budget.confirm_distance);
    get("search_cap_levels", budget.search_cap_levels);
    get("nbar_samples", budget.nbar_samples);
    get("dump_trajectories", budget.dump_trajectories);
    if (b.contains("cascade_window")) {
      budget.cascade_lo = b.at("cascade_window").at(0).get<std::int64_t>();
      budget.cascade_hi = b.at("cascade_window").at(1).get<std::int64_t>();
    }
  }
  auto require_positive = [&](const char* name, std::int64_t v) {
    if (v <= 0) errors.push_back(std::string("budget.") + name + ": must be positive");
  };
  require_positive("n_steps", budget.n_steps);
  require_positive("replicas", budget.replicas);
  require_positive("step_cap", budget.step_cap);
  require_positive("barrier", budget.barrier);
  require_positive("search_cap_levels", budget.search_cap_levels);
  require_positive("nbar_samples", budget.nbar_samples);
  if (budget.diag_replicas < 0) {
    errors.push_back("budget.diag_replicas: must be >= 0 (0 selects the replica count)");
  }
  if (budget.confirm_distance < 0) {
    errors.push_back("budget.confirm_distance: must be >= 0 (0 selects the default L+R)");
  }
  if (budget.cascade_lo >= budget.cascade_hi) {
    errors.push_back("budget.cascade_window: requires lo < hi");
  }
  if (budget.dump_trajectories < 0) {
    errors.push_back("budget.dump_trajectories: must be >= 0");
  }

  Thresholds thresholds;
  if (doc.contains("thresholds")) {
    const auto& t = doc.at("thresholds");
    if (t.contains("sigma_mult")) thresholds.sigma_mult = as_double(t.at("sigma_mult"));
    if (t.contains("growth_tol")) thresholds.growth_tol = as_double(t.at("growth_tol"));
    if (t.contains("censor_max")) thresholds.censor_max = as_double(t.at("censor_max"));
  }
  if (thresholds.sigma_mult <= 0) errors.push_back("thresholds.sigma_mult: must be positive");
  if (thresholds.growth_tol <= 0) errors.push_back("thresholds.growth_tol: must be positive");
  if (thresholds.censor_max < 0 || thresholds.censor_max > 1) {
    errors.push_back("thresholds.censor_max: must lie in [0,1]");
  }

  if (!errors.empty()) {
    std::string msg = "invalid config:";
    for (const auto& e : errors) msg += "\n  - " + e;
    throw ConfigError(msg);
  }

  ExperimentConfig cfg{*law, budget, thresholds, seed, doc.value("quenched", false),
                       /*workers=*/1, "out", "", false, false};
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return parse_config(doc);
}

json law_to_json(const EnvironmentLaw& law) {
  json out;
  out["kind"] = law.kind_name();
  out["support"] = {{"L", law.left()}, {"R", law.right()}};
  if (const auto* a = std::get_if<AtomicLaw>(&law.kind())) {
    json atoms = json::array();
    for (const auto& atom : a->atoms) {
      json probs;
      for (int k = -law.left(); k <= law.right(); ++k) {
        if (atom.law.prob(k) > 0.0) probs[std::to_string(k)] = fmt17(atom.law.prob(k));
      }
      atoms.push_back({{"weight", fmt17(atom.weight)}, {"probs", probs}});
    }
    out["atoms"] = atoms;
  } else if (const auto* nn = std::get_if<NearestNeighborLaw>(&law.kind())) {
    json atoms = json::array();
    for (const auto& atom : nn->atoms) {
      atoms.push_back({{"p", fmt17(atom.p)}, {"weight", fmt17(atom.weight)}});
    }
    out["p_atoms"] = atoms;
  } else {
    const auto& d = std::get<DirichletLaw>(law.kind());
    json alpha;
    for (int k = -law.left(); k <= law.right(); ++k) {
      const double a = d.alpha[static_cast<std::size_t>(k + law.left())];
      if (a > 0.0) alpha[std::to_string(k)] = fmt17(a);
    }
    out["alpha"] = alpha;
  }
  return out;
}

json config_to_json(const ExperimentConfig& config) {
  json out;
  out["law"] = law_to_json(config.law);
  out["seed"] = config.master_seed;
  out["quenched"] = config.quenched;
  out["budget"] = {
      {"n_steps", config.budget.n_steps},
      {"replicas", config.budget.replicas},
      {"diag_replicas", config.budget.diag_replicas},
      {"step_cap", config.budget.step_cap},
      {"barrier", config.budget.barrier},
      {"confirm_distance", config.budget.confirm_distance},
      {"cascade_window", {config.budget.cascade_lo, config.budget.cascade_hi}},
      {"search_cap_levels", config.budget.search_cap_levels},
      {"nbar_samples", config.budget.nbar_samples},
      {"dump_trajectories", config.budget.dump_trajectories},
  };
  out["thresholds"] = {
      {"sigma_mult", fmt17(config.thresholds.sigma_mult)},
      {"growth_tol", fmt17(config.thresholds.growth_tol)},
      {"censor_max", fmt17(config.thresholds.censor_max)},
  };
  return out;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string canon = config_to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::int64_t effective_diag_replicas(const Budget& budget) {
  return budget.diag_replicas > 0 ? budget.diag_replicas : budget.replicas;
}

std::int64_t effective_confirm_distance(const ExperimentConfig& config) {
  if (config.budget.confirm_distance > 0) return config.budget.confirm_distance;
  return config.law.left() + config.law.right();
}

}  // namespace rwre

#include "rwre/run.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rwre/cascade.hpp"
#include "rwre/estimators.hpp"
#include "rwre/oracle.hpp"
#include "rwre/parallel.hpp"
#include "rwre/regen.hpp"

namespace rwre {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string hex64(std::uint64_t x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(x));
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json estimate_to_json(const EstimateWithCI& est) {
  json out;
  out["point"] = fmt17(est.point);
  out["stderr"] = fmt17(est.stderr_);
  out["n"] = est.n;
  out["censored_fraction"] = fmt17(est.censored_fraction);
  out["bound"] = est.bound == BoundKind::Lower   ? "LOWER_BOUND"
                 : est.bound == BoundKind::Upper ? "UPPER_BOUND"
                                                 : "point";
  out["method"] = est.method;
  if (!est.diagnostic.empty()) out["diagnostic"] = est.diagnostic;
  return out;
}

json diverging_to_json(const DivergingEstimate& est) {
  json out;
  out["base"] = estimate_to_json(est.base);
  out["caps"] = est.caps;
  out["by_cap"] = {fmt17(est.by_cap[0]), fmt17(est.by_cap[1]), fmt17(est.by_cap[2])};
  out["growth"] = {fmt17(est.growth1), fmt17(est.growth2)};
  out["diverging"] = est.diverging;
  return out;
}

struct ManifestBuilder {
  explicit ManifestBuilder(const ExperimentConfig& config, const std::string& sub)
      : start(std::chrono::steady_clock::now()) {
    manifest["tool"] = "rwre";
    manifest["version"] = kToolVersion;
    manifest["subcommand"] = sub;
    manifest["config_hash"] = hex64(config_hash(config));
    manifest["config"] = config_to_json(config);
    manifest["outputs"] = json::array();
  }
  void add_output(const fs::path& path) { manifest["outputs"].push_back(path.filename().string()); }
  json finish(const fs::path& out_dir) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    manifest["wall_time_s"] =
        std::chrono::duration_cast<std::chrono::duration<double>>(elapsed).count();
    write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
    return manifest;
  }
  json manifest;
  std::chrono::steady_clock::time_point start;
};

RunResult run_simulate(const ExperimentConfig& cfg, const fs::path& out) {
  ManifestBuilder mb(cfg, "simulate");
  const auto n = static_cast<std::size_t>(cfg.budget.replicas);
  std::vector<std::int64_t> finals(n), maxima(n), minima(n);
  const std::int64_t n_dump =
      std::min<std::int64_t>(cfg.budget.dump_trajectories, cfg.budget.replicas);
  std::vector<std::string> dumps(static_cast<std::size_t>(n_dump));
  const std::uint64_t law_hash = config_hash(cfg);

  parallel_for(cfg.budget.replicas, cfg.workers, [&](std::int64_t i) {
    EnvironmentWindow env(cfg.law, replica_env_seed(cfg.master_seed, i, cfg.quenched));
    Stream rng = Stream::keyed(cfg.master_seed, StreamDomain::WalkReplica, i);
    const WalkPath path = simulate_path(env, 0, cfg.budget.n_steps, rng);
    const auto u = static_cast<std::size_t>(i);
    finals[u] = path.positions.back();
    maxima[u] = *std::max_element(path.positions.begin(), path.positions.end());
    minima[u] = *std::min_element(path.positions.begin(), path.positions.end());
    if (i < n_dump) {
      std::ostringstream os;
      os << "# rwre-trajectory v1 seed=" << cfg.master_seed
         << " law=" << hex64(law_hash) << " replica=" << i << " start=0\n";
      for (std::int64_t p : path.positions) os << p << "\n";
      dumps[u] = os.str();
    }
  });

  std::ostringstream csv;
  csv << "replica,final,max,min\n";
  for (std::size_t i = 0; i < n; ++i) {
    csv << i << "," << finals[i] << "," << maxima[i] << "," << minima[i] << "\n";
  }
  write_text(out / "positions.csv", csv.str());
  mb.add_output(out / "positions.csv");

  if (n_dump > 0) {
    fs::create_directories(out / "trajectories");
    for (std::int64_t i = 0; i < n_dump; ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "replica_%06lld.txt",
                    static_cast<long long>(i));
      write_text(out / "trajectories" / name, dumps[static_cast<std::size_t>(i)]);
    }
    mb.manifest["trajectories"] = n_dump;
  }
  return {mb.finish(out), 0};
}

RunResult run_regen_scan(const ExperimentConfig& cfg, const fs::path& out) {
  ManifestBuilder mb(cfg, "regen-scan");
  const fs::path in_dir = cfg.in_dir.empty() ? out : fs::path(cfg.in_dir);
  const fs::path traj_dir = in_dir / "trajectories";
  if (!fs::is_directory(traj_dir)) {
    throw ConfigError("regen-scan: no trajectories directory under " + in_dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(traj_dir)) {
    if (entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());

  const std::int64_t D = effective_confirm_distance(cfg);
  std::ostringstream regen_csv, incr_csv;
  regen_csv << "file,k,tau,position\n";
  incr_csv << "file,k,dt,dx\n";
  for (const auto& file : files) {
    std::ifstream in(file);
    std::string line;
    WalkPath path;
    bool first = true;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const std::int64_t pos = std::stoll(line);
      if (first) {
        path.start = pos;
        first = false;
      }
      path.positions.push_back(pos);
    }
    const RegenerationRecord rec = detect_regenerations(path, D);
    for (std::size_t k = 0; k < rec.times.size(); ++k) {
      regen_csv << file.filename().string() << "," << (k + 1) << ","
                << rec.times[k] << "," << rec.positions[k] << "\n";
    }
    const IncrementSample sample = increments(rec);
    for (std::size_t k = 0; k < sample.pairs.size(); ++k) {
      incr_csv << file.filename().string() << "," << (k + 2) << ","
               << sample.pairs[k].first << "," << sample.pairs[k].second << "\n";
    }
  }
  write_text(out / "regenerations.csv", regen_csv.str());
  write_text(out / "increments.csv", incr_csv.str());
  mb.add_output(out / "regenerations.csv");
  mb.add_output(out / "increments.csv");
  mb.manifest["confirm_distance"] = D;
  return {mb.finish(out), 0};
}

RunResult run_cascade(const ExperimentConfig& cfg, const fs::path& out) {
  ManifestBuilder mb(cfg, "cascade");
  Cascade cascade(cfg.law, cfg.master_seed, cfg.budget.step_cap);
  const std::int64_t censored =
      cascade.build(cfg.budget.cascade_lo, cfg.budget.cascade_hi);
  const int R = cfg.law.right();
  const std::int64_t lo_level = level_of(cfg.budget.cascade_lo, R) + 1;
  const std::int64_t hi_level = level_of(cfg.budget.cascade_hi, R);

  std::ostringstream coal_csv, levels_csv;
  coal_csv << "site,level\n";
  levels_csv << "level,coalesced,site\n";
  for (std::int64_t k = lo_level; k <= hi_level; ++k) {
    const auto site = cascade.coalescence_site(k);
    levels_csv << k << "," << (site ? 1 : 0) << "," << (site ? std::to_string(*site) : "") << "\n";
    if (site) coal_csv << *site << "," << k << "\n";
  }
  write_text(out / "coalescences.csv", coal_csv.str());
  write_text(out / "levels.csv", levels_csv.str());
  mb.add_output(out / "coalescences.csv");
  mb.add_output(out / "levels.csv");

  std::ostringstream nbar_csv;
  nbar_csv << "sample,seed,x_star,value,censored\n";
  const auto n = static_cast<std::size_t>(cfg.budget.nbar_samples);
  std::vector<Nbar0Sample> samples(n);
  parallel_for(cfg.budget.nbar_samples, cfg.workers, [&](std::int64_t i) {
    const std::uint64_t s = stream_key(cfg.master_seed, StreamDomain::NbarSample, i);
    samples[static_cast<std::size_t>(i)] =
        sample_Nbar0(cfg.law, s, cfg.budget.search_cap_levels, cfg.budget.barrier,
                     cfg.budget.step_cap);
  });
  std::int64_t nbar_censored = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[i];
    nbar_csv << i << ","
             << hex64(stream_key(cfg.master_seed, StreamDomain::NbarSample,
                                 static_cast<std::int64_t>(i)))
             << "," << s.coalescence_site << "," << s.value << ","
             << (s.censored ? 1 : 0) << "\n";
    if (s.censored) ++nbar_censored;
  }
  write_text(out / "nbar.csv", nbar_csv.str());
  mb.add_output(out / "nbar.csv");
  mb.manifest["censoring"] = {{"cascade_walks", censored},
                              {"nbar_samples", nbar_censored}};
  return {mb.finish(out), 0};
}

json build_estimates(const ExperimentConfig& cfg, BallisticityVerdict* verdict_out) {
  EstimatorOpts opts{cfg.quenched, cfg.workers};
  const auto slope = estimate_velocity_slope(cfg.law, cfg.budget.n_steps,
                                             cfg.budget.replicas, cfg.master_seed, opts);
  const auto regen = estimate_velocity_regen(cfg.law, cfg.budget.n_steps,
                                             cfg.budget.replicas,
                                             effective_confirm_distance(cfg),
                                             cfg.master_seed, opts);
  const auto occupation = estimate_velocity_occupation(
      cfg.law, cfg.budget.nbar_samples, cfg.budget.search_cap_levels,
      cfg.budget.barrier, cfg.budget.step_cap, cfg.master_seed, opts);
  const std::int64_t diag = effective_diag_replicas(cfg.budget);
  const auto h1 = estimate_mean_h1(cfg.law, diag, cfg.budget.step_cap,
                                   cfg.master_seed, cfg.thresholds.growth_tol, opts);
  const auto n0 = estimate_mean_n0(cfg.law, diag, cfg.budget.barrier,
                                   cfg.budget.step_cap, cfg.master_seed,
                                   cfg.thresholds.growth_tol, opts);
  json out;
  out["velocity_slope"] = estimate_to_json(slope);
  out["velocity_regen"] = estimate_to_json(regen);
  out["velocity_occupation"] = estimate_to_json(occupation);
  out["mean_h1"] = diverging_to_json(h1);
  out["mean_n0"] = diverging_to_json(n0);
  if (verdict_out != nullptr) {
    verdict_out->slope = slope;
    verdict_out->mean_h1 = h1;
    verdict_out->mean_n0 = n0;
  }
  return out;
}

std::string estimates_text(const json& est) {
  std::ostringstream os;
  auto row = [&](const std::string& name, const json& e) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%-22s %14s +/- %-12s n=%-8lld censored=%s\n",
                  name.c_str(), e.at("point").get<std::string>().c_str(),
                  e.at("stderr").get<std::string>().c_str(),
                  static_cast<long long>(e.at("n").get<std::int64_t>()),
                  e.at("censored_fraction").get<std::string>().c_str());
    os << buf;
  };
  row("velocity_slope", est.at("velocity_slope"));
  row("velocity_regen", est.at("velocity_regen"));
  row("velocity_occupation", est.at("velocity_occupation"));
  row("mean_h1", est.at("mean_h1").at("base"));
  row("mean_n0", est.at("mean_n0").at("base"));
  os << "mean_h1 diverging: " << (est.at("mean_h1").at("diverging").get<bool>() ? "yes" : "no")
     << "   mean_n0 diverging: "
     << (est.at("mean_n0").at("diverging").get<bool>() ? "yes" : "no") << "\n";
  return os.str();
}

RunResult run_estimate(const ExperimentConfig& cfg, const fs::path& out) {
  ManifestBuilder mb(cfg, "estimate");
  const json est = build_estimates(cfg, nullptr);
  write_text(out / "estimates.json", est.dump(2) + "\n");
  write_text(out / "estimates.txt", estimates_text(est));
  mb.add_output(out / "estimates.json");
  mb.add_output(out / "estimates.txt");

  if (cfg.raw) {
    // per-replica raw statistics (slope only; heavier dumps go through simulate)
    std::vector<double> slopes(static_cast<std::size_t>(cfg.budget.replicas));
    parallel_for(cfg.budget.replicas, cfg.workers, [&](std::int64_t i) {
      EnvironmentWindow env(cfg.law, replica_env_seed(cfg.master_seed, i, cfg.quenched));
      Stream rng = Stream::keyed(cfg.master_seed, StreamDomain::WalkReplica, i);
      std::int64_t pos = 0;
      for (std::int64_t s = 0; s < cfg.budget.n_steps; ++s) pos = step(env, pos, rng);
      slopes[static_cast<std::size_t>(i)] =
          static_cast<double>(pos) / static_cast<double>(cfg.budget.n_steps);
    });
    std::ostringstream csv;
    csv << "replica,slope\n";
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      csv << i << "," << fmt17(slopes[i]) << "\n";
    }
    write_text(out / "raw_slope.csv", csv.str());
    mb.add_output(out / "raw_slope.csv");
  }
  return {mb.finish(out), 0};
}

RunResult run_oracle(const ExperimentConfig& cfg, const fs::path& out) {
  ManifestBuilder mb(cfg, "oracle");
  json doc;
  try {
    const NNOracleResult r = nn_solomon(cfg.law);
    doc["regime"] = regime_name(r.regime);
    doc["v"] = fmt17(r.v);
    doc["mean_rho"] = fmt17(r.mean_rho);
    doc["mean_log_rho"] = fmt17(r.mean_log_rho);
  } catch (const UnsupportedLaw&) {
    doc["regime"] = nullptr;
  }
  if (cfg.law.deterministic()) {
    const SiteLaw atom = cfg.law.single_atom();
    doc["homogeneous_velocity"] = fmt17(homogeneous_velocity(atom));
    const auto hit = expected_hit_right_linear({atom}, 200000, 1e-9);
    doc["expected_h1"] = {{"value", fmt17(hit.value)},
                          {"lower", fmt17(hit.lower)},
                          {"upper", fmt17(hit.upper)},
                          {"M", hit.truncation},
                          {"converged", hit.converged}};
    const auto occ =
        expected_occupation_linear({atom}, cfg.budget.barrier, 200000, 1e-9);
    doc["expected_n0"] = {{"value", fmt17(occ.value)},
                          {"lower", fmt17(occ.lower)},
                          {"upper", fmt17(occ.upper)},
                          {"M", occ.truncation},
                          {"barrier", cfg.budget.barrier},
                          {"converged", occ.converged}};
  }
  write_text(out / "oracle.json", doc.dump(2) + "\n");
  mb.add_output(out / "oracle.json");
  return {mb.finish(out), 0};
}

RunResult run_verdict(const ExperimentConfig& cfg, const fs::path& out) {
  ManifestBuilder mb(cfg, "verdict");
  EstimatorOpts opts{cfg.quenched, cfg.workers};
  const BallisticityVerdict verdict = ballisticity_verdict(
      cfg.law, cfg.budget, cfg.thresholds, cfg.master_seed, opts);
  json doc;
  doc["verdict"] = verdict_name(verdict.verdict);
  doc["notes"] = verdict.notes;
  doc["evidence"] = {{"velocity_slope", estimate_to_json(verdict.slope)},
                     {"mean_h1", diverging_to_json(verdict.mean_h1)},
                     {"mean_n0", diverging_to_json(verdict.mean_n0)}};
  write_text(out / "verdict.json", doc.dump(2) + "\n");
  std::ostringstream txt;
  txt << "verdict: " << verdict_name(verdict.verdict) << "\n" << verdict.notes << "\n";
  write_text(out / "verdict.txt", txt.str());
  mb.add_output(out / "verdict.json");
  mb.add_output(out / "verdict.txt");
  const int code =
      (verdict.verdict == Verdict::Inconclusive && cfg.strict) ? 3 : 0;
  return {mb.finish(out), code};
}

}  // namespace

RunResult run_subcommand(const ExperimentConfig& config, const std::string& subcommand) {
  const fs::path out(config.out_dir);
  fs::create_directories(out);
  if (subcommand == "simulate") return run_simulate(config, out);
  if (subcommand == "regen-scan") return run_regen_scan(config, out);
  if (subcommand == "cascade") return run_cascade(config, out);
  if (subcommand == "estimate") return run_estimate(config, out);
  if (subcommand == "oracle") return run_oracle(config, out);
  if (subcommand == "verdict") return run_verdict(config, out);
  throw ConfigError("unknown subcommand: " + subcommand);
}

}  // namespace rwre

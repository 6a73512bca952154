#include "rwre/environment.hpp"

#include <cmath>
#include <numeric>

namespace rwre {

namespace {

void check_weights(const std::vector<double>& weights) {
  double sum = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw ConfigError("environment law: negative atom weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kProbSumTolerance) {
    throw ConfigError("environment law: atom weights must sum to 1");
  }
}

template <typename Atom>
std::size_t pick_atom(const std::vector<Atom>& atoms, Stream& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    acc += atoms[i].weight;
    if (u < acc) return i;
  }
  return atoms.size() - 1;
}

}  // namespace

EnvironmentLaw EnvironmentLaw::atomic(JumpSupport support,
                                      std::vector<AtomicLaw::Atom> atoms) {
  if (atoms.empty()) throw ConfigError("atomic law: needs at least one atom");
  std::vector<double> weights;
  for (const auto& a : atoms) {
    if (!(a.law.support() == support)) {
      throw ConfigError("atomic law: all atoms must share the jump support");
    }
    weights.push_back(a.weight);
  }
  check_weights(weights);
  return EnvironmentLaw(support, AtomicLaw{std::move(atoms)});
}

EnvironmentLaw EnvironmentLaw::nearest_neighbor(
    std::vector<NearestNeighborLaw::Atom> atoms) {
  if (atoms.empty()) throw ConfigError("nearest-neighbor law: needs at least one atom");
  std::vector<double> weights;
  for (const auto& a : atoms) {
    if (!(a.p > 0.0) || !(a.p < 1.0)) {
      throw ConfigError("nearest-neighbor law: p must lie in (0,1)");
    }
    weights.push_back(a.weight);
  }
  check_weights(weights);
  return EnvironmentLaw({1, 1}, NearestNeighborLaw{std::move(atoms)});
}

EnvironmentLaw EnvironmentLaw::dirichlet(JumpSupport support,
                                         std::vector<double> alpha) {
  if (alpha.size() != static_cast<std::size_t>(support.width())) {
    throw ConfigError("dirichlet law: alpha must have one entry per offset -L..R");
  }
  bool any = false;
  for (double a : alpha) {
    if (a < 0.0) throw ConfigError("dirichlet law: alpha entries must be >= 0");
    if (a > 0.0) any = true;
  }
  if (!any) throw ConfigError("dirichlet law: alpha must have a positive entry");
  return EnvironmentLaw(support, DirichletLaw{std::move(alpha)});
}

SiteLaw EnvironmentLaw::sample_site_law(std::uint64_t master_seed,
                                        std::int64_t site) const {
  Stream rng = Stream::keyed(master_seed, StreamDomain::EnvSite, site);
  if (const auto* a = std::get_if<AtomicLaw>(&kind_)) {
    return a->atoms[pick_atom(a->atoms, rng)].law;
  }
  if (const auto* nn = std::get_if<NearestNeighborLaw>(&kind_)) {
    return nearest_neighbor_site_law(nn->atoms[pick_atom(nn->atoms, rng)].p);
  }
  const auto& d = std::get<DirichletLaw>(kind_);
  std::vector<double> g(d.alpha.size(), 0.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < d.alpha.size(); ++i) {
    if (d.alpha[i] > 0.0) {
      g[i] = sample_gamma(d.alpha[i], rng);
      sum += g[i];
    }
  }
  for (double& x : g) x /= sum;
  return SiteLaw(support_, std::move(g));
}

bool EnvironmentLaw::deterministic() const {
  if (const auto* a = std::get_if<AtomicLaw>(&kind_)) return a->atoms.size() == 1;
  if (const auto* nn = std::get_if<NearestNeighborLaw>(&kind_)) return nn->atoms.size() == 1;
  return false;
}

SiteLaw EnvironmentLaw::single_atom() const {
  if (!deterministic()) {
    throw UnsupportedLaw("single_atom: environment law is not deterministic");
  }
  if (const auto* a = std::get_if<AtomicLaw>(&kind_)) return a->atoms.front().law;
  return nearest_neighbor_site_law(
      std::get<NearestNeighborLaw>(kind_).atoms.front().p);
}

std::vector<AtomicLaw::Atom> EnvironmentLaw::atom_view() const {
  std::vector<AtomicLaw::Atom> out;
  if (const auto* a = std::get_if<AtomicLaw>(&kind_)) {
    out = a->atoms;
  } else if (const auto* nn = std::get_if<NearestNeighborLaw>(&kind_)) {
    for (const auto& atom : nn->atoms) {
      out.push_back({nearest_neighbor_site_law(atom.p), atom.weight});
    }
  } else {
    const auto& d = std::get<DirichletLaw>(kind_);
    const double total = std::accumulate(d.alpha.begin(), d.alpha.end(), 0.0);
    std::vector<double> mean(d.alpha.size());
    for (std::size_t i = 0; i < d.alpha.size(); ++i) mean[i] = d.alpha[i] / total;
    out.push_back({SiteLaw(support_, std::move(mean)), 1.0});
  }
  return out;
}

std::string EnvironmentLaw::kind_name() const {
  if (std::holds_alternative<AtomicLaw>(kind_)) return "atomic";
  if (std::holds_alternative<NearestNeighborLaw>(kind_)) return "nearest_neighbor";
  return "dirichlet";
}

ConditionReport validate_conditions(const EnvironmentLaw& law) {
  ConditionReport report;
  // C3 holds by construction: site laws only carry offsets in [-L, R].
  report.support_ok = true;

  const auto atoms = law.atom_view();
  bool all_two_sided = true;
  std::int64_t gcd = 0;
  bool first = true;
  for (const auto& atom : atoms) {
    if (!atom.law.has_negative_offset() || !atom.law.has_positive_offset()) {
      all_two_sided = false;
    }
    for (int k = -law.left(); k <= law.right(); ++k) {
      if (k != 0 && atom.law.prob(k) > 0.0) {
        gcd = std::gcd(gcd, static_cast<std::int64_t>(std::abs(k)));
      }
    }
    const double m = atom.law.mean_offset();
    if (first) {
      report.min_mean_offset = report.max_mean_offset = m;
      first = false;
    } else {
      report.min_mean_offset = std::min(report.min_mean_offset, m);
      report.max_mean_offset = std::max(report.max_mean_offset, m);
    }
  }

  if (!all_two_sided) {
    report.irreducible_sufficient = false;
    report.c2_note =
        "SUFFICIENT_ONLY: not verified (an atom lacks a negative or positive "
        "offset; the walk may still be irreducible on its orbit)";
  } else if (gcd != 1) {
    report.irreducible_sufficient = false;
    report.c2_note = "SUFFICIENT_ONLY: not verified (support offsets have gcd " +
                     std::to_string(gcd) + ")";
  } else {
    report.irreducible_sufficient = true;
    report.c2_note = "SUFFICIENT_ONLY: passed (two-sided support, offset gcd 1)";
  }
  return report;
}

EnvironmentWindow::EnvironmentWindow(EnvironmentLaw law, std::uint64_t master_seed)
    : law_(std::move(law)), master_seed_(master_seed) {}

void EnvironmentWindow::ensure(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw ConfigError("environment window: lo must be <= hi");
  if (sites_.empty()) {
    lo_ = lo;
    for (std::int64_t s = lo; s <= hi; ++s) {
      sites_.push_back(law_.sample_site_law(master_seed_, s));
    }
    return;
  }
  while (lo < lo_) {
    --lo_;
    sites_.push_front(law_.sample_site_law(master_seed_, lo_));
  }
  for (std::int64_t s = this->hi() + 1; s <= hi; ++s) {
    sites_.push_back(law_.sample_site_law(master_seed_, s));
  }
}

const SiteLaw& EnvironmentWindow::at(std::int64_t site) {
  if (sites_.empty() || site < lo_ || site > hi()) ensure(site, site);
  return sites_[static_cast<std::size_t>(site - lo_)];
}

}  // namespace rwre

#include "koch/bounds.hpp"

#include "koch/diameter.hpp"
#include "koch/koch_surface.hpp"

#include <algorithm>
#include <cmath>

namespace koch {

namespace {

std::uint64_t budget_of(const BoundOptions& o) {
  return o.node_budget ? o.node_budget : env_node_budget(kDefaultNodeBudget);
}

int depth_of(const BoundOptions& o, int n) { return o.depth >= 0 ? o.depth : default_sampling_depth(n); }

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

int default_sampling_depth(int n) { return std::max(6 - n, 2); }

RatioResult b_k(const IfsSystem& ifs, int n, int k, double s, const BoundOptions& opts) {
  if (n < 1) throw DomainError("level must be at least 1");
  const double total = static_cast<double>(checked_power(ifs.size(), n, kDefaultCellBudget));
  if (k < 1 || k > total) throw DomainError("family size must lie in [1, M^n]");
  PairTable t = build_pair_table(ifs, n, depth_of(opts, n), opts.threads);
  if (!opts.skip_family && binomial(t.count, k) <= static_cast<double>(kExhaustiveSubsets))
    return min_ratio_exhaustive(t, s, total, k, kExhaustiveSubsets);
  SearchOptions so;
  so.threads = opts.threads;
  so.node_budget = budget_of(opts);
  so.fixed_k = k;
  so.skip_family = opts.skip_family;
  return min_ratio_search(t, s, total, so);
}

RatioResult a_n(const IfsSystem& ifs, int n, double s, const BoundOptions& opts) {
  if (n < 1) throw DomainError("level must be at least 1");
  const double total = static_cast<double>(checked_power(ifs.size(), n, kDefaultCellBudget));
  PairTable t = build_pair_table(ifs, n, depth_of(opts, n), opts.threads);
  SearchOptions so;
  so.threads = opts.threads;
  so.node_budget = budget_of(opts);
  so.skip_family = opts.skip_family;
  return min_ratio_search(t, s, total, so);
}

double gamma_n(const IfsSystem& ifs, int n, int hausdorff_depth) {
  if (hausdorff_depth < 0) hausdorff_depth = default_hausdorff_depth(ifs);
  return 2.0 * std::pow(ifs.max_ratio(), n) * max_level1_hausdorff(ifs, hausdorff_depth).hi;
}

double theorem3_lower(double a_n_lo, double s, double gamma, double beta, double r_max,
                      double diam_k_hi) {
  if (!(beta > 0)) throw DomainError("beta must be positive");
  if (!(r_max > 0 && r_max < 1)) throw DomainError("r_max must lie in (0, 1)");
  return a_n_lo * std::pow(diam_k_hi, s) * std::exp(-s * gamma / (beta * (1.0 - r_max)));
}

double final_correction(int N, int n, double s) {
  validate_n(N);
  if (N == 2) return std::exp(-s * (std::sqrt(2.0) + std::sqrt(6.0)) * std::pow(2.0, 6 - n));
  return std::exp(-s * std::sqrt(6.0) * std::pow(static_cast<double>(N), 3 - n));
}

double implied_beta(int N) {
  validate_n(N);
  if (N == 2) return (std::sqrt(6.0) - std::sqrt(2.0)) / 128.0;
  return std::sqrt(6.0) / (3.0 * N * N * N);
}

BoundReport final_bounds(int N, int n, const Interval& a, double s) {
  BoundReport r;
  r.N = N;
  r.n = n;
  r.s = s;
  r.a = a;
  r.gamma = 2.0 * std::pow(1.0 / N, n) * (1.0 - 1.0 / N);
  r.beta_used = implied_beta(N);
  r.correction = final_correction(N, n, s);
  r.upper = a.hi;
  r.lower = a.lo * r.correction;
  return r;
}

BoundReport compute_bounds(int N, int n, const BoundOptions& opts) {
  KochSurfaceSpec spec = build_koch_surface_ifs(N);
  const double s = similarity_dimension(spec.ifs);
  RatioResult res = a_n(spec.ifs, n, s, opts);
  BoundReport r = final_bounds(N, n, res.ratio, s);
  r.depth = spec.ifs.vertex_exact() ? 0 : depth_of(opts, n);
  r.gamma = gamma_n(spec.ifs, n);
  auto words = enumerate_words(spec.ifs.size(), n);
  for (int i : res.witness) r.witness.push_back(words[i].str());
  r.stats = res.stats;
  return r;
}

Json bound_report_json(const BoundReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["N"] = r.N;
  j["n"] = r.n;
  j["s"] = r.s;
  j["a_n"] = {{"lo", r.a.lo}, {"hi", r.a.hi}, {"depth", r.depth}};
  j["gamma_n"] = r.gamma;
  j["beta_used"] = r.beta_used;
  j["correction"] = r.correction;
  j["lower"] = r.lower;
  j["upper"] = r.upper;
  j["witness_words"] = r.witness;
  j["stats"] = {{"nodes", r.stats.nodes},
                {"families", r.stats.families},
                {"pruned_bound", r.stats.pruned_bound},
                {"pruned_candidates", r.stats.pruned_candidates},
                {"batches", r.stats.batches}};
  return j;
}

}  // namespace koch

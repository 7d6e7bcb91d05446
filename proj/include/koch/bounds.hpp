#pragma once

#include "koch/family_search.hpp"
#include "koch/json_io.hpp"

#include <string>

namespace koch {

struct BoundOptions {
  int threads = 1;
  std::uint64_t node_budget = 0;  // 0: KOCH_BUDGET_NODES or the built-in default
  int depth = -1;                 // sampling depth; ignored for vertex-exact systems
  std::function<bool(const std::vector<int>&)> skip_family;
};

inline constexpr std::uint64_t kDefaultNodeBudget = 200'000'000;
// b_k switches to plain enumeration when C(M^n, k) is at most this
inline constexpr std::uint64_t kExhaustiveSubsets = 5'000'000;

int default_sampling_depth(int n);

RatioResult b_k(const IfsSystem& ifs, int n, int k, double s, const BoundOptions& opts = {});
RatioResult a_n(const IfsSystem& ifs, int n, double s, const BoundOptions& opts = {});

// 2 r_max^n times the upper end of the largest level-1 Hausdorff distance
double gamma_n(const IfsSystem& ifs, int n, int hausdorff_depth = -1);

double theorem3_lower(double a_n_lo, double s, double gamma, double beta, double r_max,
                      double diam_k_hi);

// exp(-s_2 (sqrt2 + sqrt6) / 2^(n-6)) for N = 2, exp(-s_N sqrt6 / N^(n-3)) otherwise
double final_correction(int N, int n, double s);

// The beta for which theorem3_lower with |K| = 1, gamma_n = 2 N^-n (1 - 1/N) and
// r_max = 1/N reproduces final_correction.
double implied_beta(int N);

struct BoundReport {
  int N = 0;
  int n = 0;
  double s = 0.0;
  Interval a;
  int depth = 0;
  double gamma = 0.0;
  double beta_used = 0.0;
  double correction = 1.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<std::string> witness;
  SearchStats stats;
};

BoundReport final_bounds(int N, int n, const Interval& a, double s);

// a_n for K_N followed by final_bounds; fills gamma, witness and stats.
BoundReport compute_bounds(int N, int n, const BoundOptions& opts = {});

Json bound_report_json(const BoundReport& r);

}  // namespace koch

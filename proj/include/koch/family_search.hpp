#pragma once

#include "koch/ifs.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace koch {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
  bool operator==(const Interval&) const = default;
};

// Pairwise diameters of level-n cells: entry (i, j) brackets |K^(i) u K^(j)|, the
// diagonal brackets the cell diameter. In vertex-exact mode lo == hi holds the exact
// enclosure-vertex value (before roundoff widening).
struct PairTable {
  int count = 0;
  int level = 0;
  int depth = 0;
  bool exact = false;
  std::vector<double> lo, hi;

  double dlo(int i, int j) const { return lo[static_cast<std::size_t>(i) * count + j]; }
  double dhi(int i, int j) const { return hi[static_cast<std::size_t>(i) * count + j]; }
};

PairTable build_pair_table(const IfsSystem& ifs, int n, int depth, int threads = 1);

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t families = 0;
  std::uint64_t pruned_bound = 0;
  std::uint64_t pruned_candidates = 0;
  std::uint64_t batches = 0;
};

struct SearchOptions {
  int threads = 1;
  std::uint64_t node_budget = 0;  // 0: no limit
  int fixed_k = 0;                // 0: any family size
  // When set, families for which it returns true are not recorded (their
  // supersets are still explored).
  std::function<bool(const std::vector<int>&)> skip_family;
};

struct RatioResult {
  Interval ratio;  // certified [lo, hi] of min |U|^s / mu(U)
  std::vector<int> witness;  // family attaining the lower end
  SearchStats stats;
};

// |U|^s * M^n / k without roundoff widening
double nominal_ratio(double diameter, double s, double cells_total, int k);

// Branch-and-bound minimum of the diameter^s / measure ratio over nonempty families of
// level-n cells (of size fixed_k when set). Anchor = least index in the family;
// candidates ordered by distance to the anchor. Anchors run in fixed batches against
// the incumbent at the start of each batch, so results do not depend on `threads`.
RatioResult min_ratio_search(const PairTable& table, double s, double cells_total,
                             const SearchOptions& opts = {});

// Plain enumeration of every family (or every fixed_k-subset); for small tables.
RatioResult min_ratio_exhaustive(const PairTable& table, double s, double cells_total,
                                 int fixed_k = 0, std::uint64_t budget = 100'000'000);

std::uint64_t env_node_budget(std::uint64_t fallback);

}  // namespace koch

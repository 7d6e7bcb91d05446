#include "koch/family_search.hpp"

#include "koch/geometry.hpp"
#include "koch/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

namespace koch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kBatch = 16;

}  // namespace

PairTable build_pair_table(const IfsSystem& ifs, int n, int depth, int threads) {
  PairTable t;
  t.level = n;
  t.exact = ifs.vertex_exact();
  t.depth = t.exact ? 0 : depth;
  auto maps = level_maps(ifs, n);
  t.count = static_cast<int>(maps.size());
  std::vector<std::vector<Vec3>> corners(t.count), samples(t.count);
  std::vector<Similitude> refine = t.exact ? std::vector<Similitude>{} : level_maps(ifs, depth);
  for (int i = 0; i < t.count; ++i) {
    for (const auto& v : ifs.enclosure().vertices) corners[i].push_back(maps[i].apply(v));
    if (!t.exact)
      for (const auto& u : refine)
        for (const auto& g : ifs.generators()) samples[i].push_back(maps[i].after(u).apply(g));
  }
  const std::size_t cells = static_cast<std::size_t>(t.count);
  t.lo.assign(cells * cells, 0.0);
  t.hi.assign(cells * cells, 0.0);
  const double slack = 2.0 * std::pow(ifs.max_ratio(), n + depth) * ifs.diameter_of_attractor().hi;
  parallel_for(t.count, threads, [&](int i) {
    for (int j = i; j < t.count; ++j) {
      double hi = std::max(geom::max_cross_distance(corners[i], corners[j]),
                           std::max(geom::max_pairwise_distance(corners[i]),
                                    geom::max_pairwise_distance(corners[j])));
      double lo = hi;
      if (!t.exact) {
        lo = std::max(geom::max_cross_distance(samples[i], samples[j]),
                      std::max(geom::max_pairwise_distance(samples[i]),
                               geom::max_pairwise_distance(samples[j])));
        hi = std::max(lo, std::min(hi, lo + slack));
      }
      t.lo[i * cells + j] = t.lo[j * cells + i] = lo;
      t.hi[i * cells + j] = t.hi[j * cells + i] = hi;
    }
  });
  return t;
}

double nominal_ratio(double diameter, double s, double cells_total, int k) {
  return std::pow(diameter, s) * cells_total / k;
}

std::uint64_t env_node_budget(std::uint64_t fallback) {
  if (const char* v = std::getenv("KOCH_BUDGET_NODES")) {
    char* end = nullptr;
    unsigned long long b = std::strtoull(v, &end, 10);
    if (end != v && b > 0) return b;
  }
  return fallback;
}

namespace {

struct Incumbent {
  double lo = kInf;
  double hi = kInf;
  std::vector<int> witness;
};

class Worker {
 public:
  Worker(const PairTable& t, double s, double total, const SearchOptions& o, Incumbent start)
      : t_(t), s_(s), total_(total), o_(o), inc_(std::move(start)) {}

  void run_anchor(int a) {
    std::vector<int> cand;
    for (int c = a + 1; c < t_.count; ++c) cand.push_back(c);
    std::stable_sort(cand.begin(), cand.end(), [&](int x, int y) { return t_.dlo(a, x) < t_.dlo(a, y); });
    std::vector<double> elo(cand.size()), ehi(cand.size());
    for (std::size_t i = 0; i < cand.size(); ++i) {
      elo[i] = t_.dlo(a, cand[i]);
      ehi[i] = t_.dhi(a, cand[i]);
    }
    fam_.assign(1, a);
    node(t_.dlo(a, a), t_.dhi(a, a), cand, elo, ehi);
  }

  const Incumbent& incumbent() const { return inc_; }
  const SearchStats& stats() const { return st_; }
  bool over_budget() const { return over_; }

 private:
  bool passes(double bound) const { return t_.exact ? bound < inc_.lo : bound <= inc_.hi; }

  void evaluate(double dlo, double dhi) {
    const int k = static_cast<int>(fam_.size());
    ++st_.families;
    double rlo = nominal_ratio(dlo, s_, total_, k), rhi = nominal_ratio(dhi, s_, total_, k);
    if (!(rlo < inc_.lo || rhi < inc_.hi)) return;
    if (o_.skip_family && o_.skip_family(fam_)) return;
    if (rlo < inc_.lo) {
      inc_.lo = rlo;
      inc_.witness = fam_;
    }
    inc_.hi = std::min(inc_.hi, rhi);
  }

  void node(double dlo, double dhi, const std::vector<int>& R, const std::vector<double>& elo,
            const std::vector<double>& ehi) {
    if (over_) return;
    if (o_.node_budget && ++st_.nodes > o_.node_budget) {
      over_ = true;
      return;
    }
    if (!o_.node_budget) ++st_.nodes;
    const int k = static_cast<int>(fam_.size());
    const int fixed = o_.fixed_k;
    if (!fixed || k == fixed) evaluate(dlo, dhi);
    if (fixed && k >= fixed) return;
    const int m = static_cast<int>(R.size());
    if (m == 0) return;

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return elo[x] < elo[y]; });
    std::vector<char> useful(m, 0);
    if (fixed) {
      const int need = fixed - k;
      if (need > m) {
        ++st_.pruned_bound;
        return;
      }
      const double eneed = elo[order[need - 1]];
      if (!passes(nominal_ratio(std::max(dlo, eneed), s_, total_, fixed))) {
        ++st_.pruned_bound;
        return;
      }
      for (int i = 0; i < m; ++i)
        useful[i] = passes(nominal_ratio(std::max({dlo, eneed, elo[i]}), s_, total_, fixed));
    } else {
      // suffix minima of the optimistic ratio with t added cells
      double best = kInf;
      for (int t = m; t >= 1; --t) {
        best = std::min(best, nominal_ratio(std::max(dlo, elo[order[t - 1]]), s_, total_, k + t));
        useful[order[t - 1]] = passes(best);
      }
      if (!passes(best)) {
        ++st_.pruned_bound;
        return;
      }
    }

    std::vector<int> U;
    std::vector<double> ulo, uhi;
    for (int i = 0; i < m; ++i)
      if (useful[i]) {
        U.push_back(R[i]);
        ulo.push_back(elo[i]);
        uhi.push_back(ehi[i]);
      }
    st_.pruned_candidates += m - U.size();
    const int u = static_cast<int>(U.size());
    std::vector<int> R2;
    std::vector<double> lo2, hi2;
    for (int i = 0; i < u; ++i) {
      if (fixed && u - i < fixed - k) break;
      const int c = U[i];
      R2.assign(U.begin() + i + 1, U.end());
      lo2.resize(R2.size());
      hi2.resize(R2.size());
      for (std::size_t j = 0; j < R2.size(); ++j) {
        lo2[j] = std::max(ulo[i + 1 + j], t_.dlo(c, R2[j]));
        hi2[j] = std::max(uhi[i + 1 + j], t_.dhi(c, R2[j]));
      }
      fam_.push_back(c);
      node(std::max(dlo, ulo[i]), std::max(dhi, uhi[i]), R2, lo2, hi2);
      fam_.pop_back();
      if (over_) return;
    }
  }

  const PairTable& t_;
  double s_, total_;
  const SearchOptions& o_;
  Incumbent inc_;
  SearchStats st_;
  std::vector<int> fam_;
  bool over_ = false;
};

void seed(const PairTable& t, double s, double total, const SearchOptions& o, Incumbent& inc) {
  auto offer = [&](const std::vector<int>& fam, double dlo, double dhi) {
    if (o.fixed_k && static_cast<int>(fam.size()) != o.fixed_k) return;
    double rlo = nominal_ratio(dlo, s, total, static_cast<int>(fam.size()));
    double rhi = nominal_ratio(dhi, s, total, static_cast<int>(fam.size()));
    if (!(rlo < inc.lo || rhi < inc.hi)) return;
    if (o.skip_family && o.skip_family(fam)) return;
    if (rlo < inc.lo) inc.lo = rlo, inc.witness = fam;
    inc.hi = std::min(inc.hi, rhi);
  };
  const int limit = std::min(t.count, o.fixed_k ? o.fixed_k : 64);
  for (int a = 0; a < t.count; ++a) {
    std::vector<int> cand(t.count);
    std::iota(cand.begin(), cand.end(), 0);
    std::stable_sort(cand.begin(), cand.end(), [&](int x, int y) {
      if (x == a || y == a) return x == a && y != a;
      return t.dlo(a, x) < t.dlo(a, y);
    });
    std::vector<int> fam;
    double dlo = 0.0, dhi = 0.0;
    for (int i = 0; i < limit; ++i) {
      int c = cand[i];
      for (int f : fam) dlo = std::max(dlo, t.dlo(c, f)), dhi = std::max(dhi, t.dhi(c, f));
      dlo = std::max(dlo, t.dlo(c, c));
      dhi = std::max(dhi, t.dhi(c, c));
      fam.push_back(c);
      std::vector<int> sorted = fam;
      std::sort(sorted.begin(), sorted.end());
      offer(sorted, dlo, dhi);
    }
  }
}

RatioResult finish(const Incumbent& inc, SearchStats stats) {
  RatioResult r;
  r.ratio = {inc.lo * (1 - kRoundoff), inc.hi * (1 + kRoundoff)};
  r.witness = inc.witness;
  std::sort(r.witness.begin(), r.witness.end());
  r.stats = stats;
  return r;
}

}  // namespace

RatioResult min_ratio_search(const PairTable& table, double s, double cells_total,
                             const SearchOptions& opts) {
  if (opts.fixed_k < 0 || opts.fixed_k > table.count) throw DomainError("family size out of range");
  Incumbent global;
  seed(table, s, cells_total, opts, global);
  SearchStats total;
  for (int start = 0; start < table.count; start += kBatch) {
    const int len = std::min(kBatch, table.count - start);
    std::vector<Worker> workers;
    workers.reserve(len);
    for (int i = 0; i < len; ++i) workers.emplace_back(table, s, cells_total, opts, global);
    parallel_for(len, opts.threads, [&](int i) { workers[i].run_anchor(start + i); });
    ++total.batches;
    for (auto& w : workers) {
      const auto& st = w.stats();
      total.nodes += st.nodes;
      total.families += st.families;
      total.pruned_bound += st.pruned_bound;
      total.pruned_candidates += st.pruned_candidates;
      if (w.over_budget() || (opts.node_budget && total.nodes > opts.node_budget))
        throw BudgetExceeded("search node budget exhausted before the minimum was certified",
                             total.nodes);
      const auto& inc = w.incumbent();
      if (inc.lo < global.lo) {
        global.lo = inc.lo;
        global.witness = inc.witness;
      }
      global.hi = std::min(global.hi, inc.hi);
    }
  }
  return finish(global, total);
}

RatioResult min_ratio_exhaustive(const PairTable& table, double s, double cells_total, int fixed_k,
                                 std::uint64_t budget) {
  const int n = table.count;
  Incumbent inc;
  SearchStats st;
  std::vector<int> fam;
  // include/exclude recursion with running diameters
  std::function<void(int, double, double)> rec = [&](int next, double dlo, double dhi) {
    const int k = static_cast<int>(fam.size());
    if (k > 0 && (!fixed_k || k == fixed_k)) {
      if (++st.families > budget) throw BudgetExceeded("enumeration budget exceeded", st.families);
      double rlo = nominal_ratio(dlo, s, cells_total, k), rhi = nominal_ratio(dhi, s, cells_total, k);
      if (rlo < inc.lo) inc.lo = rlo, inc.witness = fam;
      inc.hi = std::min(inc.hi, rhi);
    }
    if (fixed_k && k == fixed_k) return;
    for (int c = next; c < n; ++c) {
      if (fixed_k && n - c < fixed_k - k) break;
      double lo = std::max(dlo, table.dlo(c, c)), hi = std::max(dhi, table.dhi(c, c));
      for (int f : fam) lo = std::max(lo, table.dlo(c, f)), hi = std::max(hi, table.dhi(c, f));
      fam.push_back(c);
      ++st.nodes;
      rec(c + 1, lo, hi);
      fam.pop_back();
    }
  };
  rec(0, 0.0, 0.0);
  return finish(inc, st);
}

}  // namespace koch

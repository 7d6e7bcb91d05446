#include "koch/verifier.hpp"

#include "koch/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace koch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kDefaultCaseBudget = 50'000'000;
constexpr int kBatch = 16;

bool single_one_cell(const std::vector<Word>& family) {
  for (const auto& w : family)
    if (w.empty() || w.letters.back() != family.front().letters.back()) return false;
  return true;
}

bool meets(const CaseContext& ctx, const std::vector<Word>& family, const Region& r) {
  for (const auto& w : family)
    if (ctx.geometry().intersects_region(w, r.cells)) return true;
  return false;
}

std::optional<std::vector<Word>> expand_with(const CaseContext& ctx, const Similitude& S,
                                             const std::vector<Word>& family) {
  const int n = static_cast<int>(family.front().size());
  const CellIndex& up = ctx.index(n - 1);
  const int M = ctx.spec().ifs.size();
  const Similitude inv = S.inverse();
  std::vector<Word> out;
  std::set<int> seen;
  for (const auto& w : family) {
    std::vector<Vec3> pre;
    for (const auto& v : ctx.geometry().vertices(w)) pre.push_back(inv.apply(v));
    auto idx = up.find(pre);
    if (!idx || !seen.insert(*idx).second) return std::nullopt;
    std::vector<int> letters(n - 1);
    for (int p = n - 2, k = *idx; p >= 0; --p, k /= M) letters[p] = k % M + 1;
    out.emplace_back(std::move(letters));
  }
  return out;
}

}  // namespace

bool evaluate_predicate(const CaseContext& ctx, const CasePredicate& c, const std::vector<Word>& family) {
  if (family.empty()) throw DomainError("family must be nonempty");
  if (single_one_cell(family)) return false;
  const auto& g = ctx.geometry();
  for (const auto& r : c.intersect_forbidden)
    if (meets(ctx, family, r)) return false;
  for (const auto& r : c.intersect_required)
    if (!meets(ctx, family, r)) return false;
  for (const auto& r : c.containment_forbidden)
    if (std::all_of(family.begin(), family.end(), [&](const Word& w) { return g.contained(w, r.cells); }))
      return false;
  if (!c.containment_required.empty()) {
    bool inside = false;
    for (const auto& r : c.containment_required)
      inside = inside || std::all_of(family.begin(), family.end(),
                                     [&](const Word& w) { return g.contained(w, r.cells); });
    if (!inside) return false;
  }
  return true;
}

int top_level_case(const CaseContext& ctx, const std::vector<Word>& family) {
  if (family.empty()) throw DomainError("family must be nonempty");
  if (single_one_cell(family)) return 0;
  int met = 0;
  for (int j = 1; j <= 3; ++j) met += meets(ctx, family, ctx.cell(j));
  return 4 - met;
}

std::optional<std::vector<Word>> scale_up(const CaseContext& ctx, const CasePredicate& c,
                                          const std::vector<Word>& family) {
  auto k = scaling_index(ctx, c, family);
  if (!k) return std::nullopt;
  return expand_with(ctx, c.expansions[*k], family);
}

std::optional<std::size_t> scaling_index(const CaseContext& ctx, const CasePredicate& c,
                                         const std::vector<Word>& family) {
  if (family.empty() || family.front().empty()) return std::nullopt;
  for (std::size_t k = 0; k < c.expansions.size(); ++k) {
    auto up = expand_with(ctx, c.expansions[k], family);
    if (!up) continue;
    bool ok = true;
    for (const auto& r : c.intersect_required) ok = ok && meets(ctx, *up, r);
    if (ok) return k;
  }
  return std::nullopt;
}

bool is_scaleable(const CaseContext& ctx, const CasePredicate& c, const std::vector<Word>& family) {
  return scale_up(ctx, c, family).has_value();
}

bool ratio_preserving_expansion(const CaseContext& ctx, const std::vector<Word>& family) {
  if (family.empty() || family.front().empty()) return false;
  if (single_one_cell(family)) return true;
  for (const auto& c : ctx.cases())
    for (const auto& S : c.expansions)
      if (expand_with(ctx, S, family)) return true;
  return false;
}

namespace {

// Minimum-diameter hitting-family search over the admissible cells of one case.
struct CaseSearch {
  const CaseContext& ctx;
  const CasePredicate& pc;
  const CaseSearchOptions& opts;
  int n = 0;
  int V = 0;
  std::vector<Word> words;
  std::vector<Vec3> verts;  // V per cell
  std::vector<Vec3> centre;
  std::vector<int> last;
  std::vector<std::vector<char>> hits;  // per constraint, per cell
  std::uint64_t budget = 0;

  CaseSearch(const CaseContext& x, const CasePredicate& p, const CaseSearchOptions& o)
      : ctx(x), pc(p), opts(o) {}

  double dist(int i, int j) const {
    double best = 0.0;
    for (int a = 0; a < V; ++a)
      for (int b = 0; b < V; ++b) best = std::max(best, (verts[i * V + a] - verts[j * V + b]).squaredNorm());
    return std::sqrt(best);
  }
  double reach(int i) const {  // centre to farthest vertex
    double r = 0.0;
    for (int a = 0; a < V; ++a) r = std::max(r, (verts[i * V + a] - centre[i]).norm());
    return r;
  }

  bool in_domain(const Similitude& inv, int c) const {
    std::vector<Vec3> pre;
    for (int a = 0; a < V; ++a) pre.push_back(inv.apply(verts[c * V + a]));
    return ctx.index(n - 1).find(pre).has_value();
  }

  std::vector<Word> family_words(const std::vector<int>& fam) const {
    std::vector<Word> out;
    for (int i : fam) out.push_back(words[i]);
    return out;
  }
};

struct Worker {
  const CaseSearch& cs;
  const std::vector<int>& pool;  // candidate cells for this alternative, ascending
  double inc;
  std::vector<int> witness;
  std::vector<int> fam;
  std::vector<int> near_hit, near_all;
  std::uint64_t nodes = 0, families = 0, skipped = 0;

  bool in_fam(int c) const { return std::find(fam.begin(), fam.end(), c) != fam.end(); }

  double grow(double dc, int c) const {
    double d = std::max(dc, cs.dist(c, c));
    for (int f : fam) d = std::max(d, cs.dist(c, f));
    return d;
  }

  void tick() {
    if (++nodes > cs.budget) throw BudgetExceeded("case search node budget exhausted", nodes);
  }

  bool satisfied_by(int c, int j) const {
    if (j < static_cast<int>(cs.hits.size())) return cs.hits[j][c];
    return cs.last[c] != cs.last[fam.front()];
  }

  void record(double dc) {
    if (dc < inc) inc = dc, witness = fam;
  }

  // fam satisfies the case. When it is scaleable through S, every non-scaleable
  // superset holds a cell outside the domain of S, so branching on those cells
  // reaches a non-scaleable subset of any such superset.
  void extend(double dc) {
    std::optional<std::size_t> k;
    if (cs.opts.exclude_scaleable) k = scaling_index(cs.ctx, cs.pc, cs.family_words(fam));
    if (!k) {
      record(dc);
      return;
    }
    ++skipped;
    const Similitude inv = cs.pc.expansions[*k].inverse();
    for (int c : near_all) {
      if (in_fam(c) || cs.in_domain(inv, c)) continue;
      double nd = grow(dc, c);
      if (nd >= inc) continue;
      tick();
      fam.push_back(c);
      ++families;
      extend(nd);
      fam.pop_back();
    }
  }

  void dfs(double dc) {
    tick();
    const int constraints = static_cast<int>(cs.hits.size()) + 1;
    // cheapest completion of every unmet constraint; branch on the tightest one
    int branch = -1;
    std::size_t branch_count = 0;
    for (int j = 0; j < constraints; ++j) {
      bool met = false;
      for (int f : fam) met = met || satisfied_by(f, j);
      if (met) continue;
      double best = kInf;
      std::size_t count = 0;
      for (int c : near_hit) {
        if (!satisfied_by(c, j) || in_fam(c)) continue;
        double nd = grow(dc, c);
        if (nd < inc) ++count, best = std::min(best, nd);
      }
      if (count == 0) return;
      if (branch < 0 || count < branch_count) branch = j, branch_count = count;
    }
    if (branch < 0) {
      ++families;
      extend(dc);
      return;
    }
    std::vector<std::pair<double, int>> opts;
    for (int c : near_hit)
      if (satisfied_by(c, branch) && !in_fam(c)) {
        double nd = grow(dc, c);
        if (nd < inc) opts.push_back({nd, c});
      }
    std::sort(opts.begin(), opts.end());
    for (const auto& [nd, c] : opts) {
      if (nd >= inc) break;
      fam.push_back(c);
      dfs(nd);
      fam.pop_back();
    }
  }

  void run(int anchor) {
    const double da = cs.dist(anchor, anchor);
    if (da >= inc) return;
    near_hit.clear();
    near_all.clear();
    const double ra = cs.reach(anchor);
    std::vector<std::pair<double, int>> near;
    for (int c : pool) {
      if (c <= anchor) continue;
      if ((cs.centre[c] - cs.centre[anchor]).norm() - ra - cs.reach(c) >= inc) continue;
      double d = cs.dist(anchor, c);
      if (d < inc) near.push_back({d, c});
    }
    std::sort(near.begin(), near.end());
    for (const auto& [d, c] : near) {
      near_all.push_back(c);
      bool useful = cs.last[c] != cs.last[anchor];
      for (const auto& h : cs.hits) useful = useful || h[c];
      if (useful) near_hit.push_back(c);
    }
    if (!cs.opts.exclude_scaleable) near_all.clear();
    fam.assign(1, anchor);
    dfs(da);
  }
};

}  // namespace

CaseSearchResult min_case_diameter(const CaseContext& ctx, const CasePredicate& c, int n,
                                   const CaseSearchOptions& opts) {
  if (n < 1) throw DomainError("level must be at least 1");
  const auto& ifs = ctx.spec().ifs;
  const auto& g = ctx.geometry();
  CaseSearch cs(ctx, c, opts);
  ctx.index(n - 1);  // built before workers share the context
  cs.n = n;
  cs.V = static_cast<int>(ifs.enclosure().vertices.size());
  cs.budget = opts.node_budget ? opts.node_budget : env_node_budget(kDefaultCaseBudget);
  cs.words = enumerate_words(ifs.size(), n);
  const auto maps = level_maps(ifs, n);
  const int count = static_cast<int>(maps.size());
  for (int i = 0; i < count; ++i) {
    Vec3 sum = Vec3::Zero();
    for (const auto& v : ifs.enclosure().vertices) {
      cs.verts.push_back(maps[i].apply(v));
      sum += cs.verts.back();
    }
    cs.centre.push_back(sum / cs.V);
    cs.last.push_back(cs.words[i].letters.back());
  }

  std::vector<char> admissible(count, 1);
  std::vector<int> adm;
  for (int i = 0; i < count; ++i) {
    for (const auto& r : c.intersect_forbidden)
      if (admissible[i] && g.intersects_region(cs.words[i], r.cells)) admissible[i] = 0;
    if (admissible[i]) adm.push_back(i);
  }
  for (const auto& r : c.intersect_required) {
    std::vector<char> h(count, 0);
    for (int i : adm) h[i] = g.intersects_region(cs.words[i], r.cells);
    cs.hits.push_back(std::move(h));
  }
  for (const auto& r : c.containment_forbidden) {
    std::vector<char> h(count, 0);
    for (int i : adm) h[i] = !g.contained(cs.words[i], r.cells);
    cs.hits.push_back(std::move(h));
  }
  std::vector<std::vector<int>> pools;
  if (c.containment_required.empty()) {
    pools.push_back(adm);
  } else {
    for (const auto& r : c.containment_required) {
      std::vector<int> p;
      for (int i : adm)
        if (g.contained(cs.words[i], r.cells)) p.push_back(i);
      pools.push_back(std::move(p));
    }
  }

  CaseSearchResult res;
  res.admissible_cells = adm.size();
  double inc = kInf;
  std::vector<int> witness;
  for (const auto& pool : pools) {
    for (std::size_t start = 0; start < pool.size(); start += kBatch) {
      const int len = static_cast<int>(std::min<std::size_t>(kBatch, pool.size() - start));
      std::vector<Worker> workers;
      workers.reserve(len);
      for (int i = 0; i < len; ++i) workers.push_back(Worker{cs, pool, inc, {}, {}, {}, {}});
      parallel_for(len, opts.threads, [&](int i) { workers[i].run(pool[start + i]); });
      for (auto& w : workers) {
        res.nodes += w.nodes;
        res.families += w.families;
        res.scaleable_skipped += w.skipped;
        if (w.inc < inc) inc = w.inc, witness = w.witness;
      }
      if (res.nodes > cs.budget) throw BudgetExceeded("case search node budget exhausted", res.nodes);
    }
  }
  if (inc == kInf) {
    res.vacuous = true;
    return res;
  }
  std::sort(witness.begin(), witness.end());
  res.witness = cs.family_words(witness);
  res.diameter = {inc * (1 - kRoundoff), inc * (1 + kRoundoff)};
  return res;
}

BetaReport verify_beta(const CaseContext& ctx, const CasePredicate& c, int n, double beta,
                       const CaseSearchOptions& opts) {
  BetaReport r;
  r.case_id = c.id;
  r.N = ctx.N();
  r.n = n;
  r.beta = beta;
  r.result = min_case_diameter(ctx, c, n, opts);
  r.pass = r.result.vacuous || r.result.diameter.lo >= beta - kBetaTolerance;
  return r;
}

Json beta_report_json(const BetaReport& r) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["case_id"] = r.case_id;
  j["N"] = r.N;
  j["n"] = r.n;
  j["beta"] = r.beta;
  if (r.result.vacuous)
    j["min_diameter"] = nullptr;
  else
    j["min_diameter"] = {{"lo", r.result.diameter.lo}, {"hi", r.result.diameter.hi}};
  j["status"] = r.pass ? "PASS" : "FAIL";
  j["vacuous"] = r.result.vacuous;
  std::vector<std::string> w;
  for (const auto& x : r.result.witness) w.push_back(x.str());
  j["witness_words"] = w;
  j["stats"] = {{"nodes", r.result.nodes},
                {"families", r.result.families},
                {"scaleable_skipped", r.result.scaleable_skipped},
                {"admissible_cells", r.result.admissible_cells}};
  return j;
}

double square_lemma_bound(double ell) {
  if (!(ell > 0)) throw DomainError("square diagonal must be positive");
  return ell * (std::sqrt(3.0) - 1.0) / 16.0;
}

double flap_lemma_bound(int N) {
  validate_n(N);
  if (N == 2) throw DomainError("the flap bound applies to N > 2");
  return std::sqrt(6.0) / (3.0 * N * N * N);
}

Case3aPoints case3a_constraint_points() {
  const auto p = base_triangle();
  const Vec3 p4 = apex_point(2);
  auto mid = [](const Vec3& a, const Vec3& b) { return Vec3((a + b) / 2); };
  const Vec3 p12 = mid(p[0], p[1]), p13 = mid(p[0], p[2]), p23 = mid(p[1], p[2]);
  const double a = std::sqrt(6.0) - 2.0, b = (3.0 - std::sqrt(6.0)) / 2.0;
  return {mid(p12, p13), a * p13 + b * p23 + b * p4, a * p12 + b * p23 + b * p4};
}

double dihedral_angle(const KochSurfaceSpec& spec, int a, int b) {
  std::array<Vec3, 3> ta, tb;
  for (int i = 0; i < 3; ++i) {
    ta[i] = spec.ifs.map(a).apply(spec.base_vertices[i]);
    tb[i] = spec.ifs.map(b).apply(spec.base_vertices[i]);
  }
  int shared = 0;
  Vec3 free = Vec3::Zero();
  for (const auto& v : tb) {
    bool on = false;
    for (const auto& u : ta) on = on || (u - v).norm() < 1e-12;
    if (on)
      ++shared;
    else
      free = v;
  }
  if (shared != 2) throw DomainError("cells do not share exactly one edge");
  const Vec3 na = (ta[1] - ta[0]).cross(ta[2] - ta[0]).normalized();
  const Vec3 nb = (tb[1] - tb[0]).cross(tb[2] - tb[0]).normalized();
  const double angle = std::acos(std::clamp(na.dot(nb), -1.0, 1.0));
  if (angle < 1e-12) return 0.0;
  return na.dot(free - ta[0]) > 0 ? angle : -angle;
}

}  // namespace koch

// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include "koch/bounds.hpp"
#include "koch/crystal.hpp"
#include "koch/diameter.hpp"
#include "koch/geometry.hpp"
#include "koch/mesh.hpp"
#include "koch/osc.hpp"
#include "koch/verifier.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

using namespace koch;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, bool ok, const std::string& detail) {
  std::printf("%s  %-22s %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

void a1_for_k2() {
  auto t0 = std::chrono::steady_clock::now();
  BoundReport r = compute_bounds(2, 1);
  double dt = seconds_since(t0);
  const double s = std::log(6.0) / std::log(2.0);
  const double closed = 2 * std::pow(std::sqrt(6.0) / 4, s);
  bool ok = r.a.contains(closed) && r.a.width() <= 1e-3 && dt < 1.0;
  report("a_1 K_2", ok, fmt("[%.15g, %.15g] vs %.15g, width %.2e, %.3f s", r.a.lo, r.a.hi, closed, r.a.width(), dt));
}

void dimension() {
  double worst = 0;
  for (int N : {2, 4, 5, 7, 8}) {
    double s = similarity_dimension(build_koch_surface_ifs(N).ifs);
    worst = std::max(worst, std::abs(s - std::log(N * N + 2.0) / std::log(double(N))));
    worst = std::max(worst, std::abs((N * N + 2) * std::pow(1.0 / N, s) - 1.0));
  }
  report("dimension", worst <= 1e-12, fmt("max deviation %.2e over N = 2,4,5,7,8", worst));
}

void sandwich() {
  try {
    auto t0 = std::chrono::steady_clock::now();
    BoundReport r1 = compute_bounds(2, 1);
    auto t1 = std::chrono::steady_clock::now();
    BoundReport r2 = compute_bounds(2, 2);
    double dt2 = seconds_since(t1);
    (void)t0;
    const double s = r1.s;
    bool ok = true;
    for (const auto* r : {&r1, &r2}) {
      double lower = r->a.lo * std::exp(-s * (std::sqrt(2.0) + std::sqrt(6.0)) / std::pow(2.0, r->n - 6));
      ok = ok && std::abs(lower - r->lower) <= 1e-12 * std::abs(lower) && r->lower <= r->upper && r->upper == r->a.hi;
    }
    ok = ok && r2.a.lo <= r1.a.hi && dt2 < 300;
    report("sandwich K_2", ok,
           fmt("a_1 hi %.12g, a_2 [%.12g, %.12g], lower_2 %.3e, n=2 in %.2f s", r1.a.hi, r2.a.lo, r2.a.hi, r2.lower, dt2));
  } catch (const std::exception& e) {
    report("sandwich K_2", false, std::string("inconclusive: ") + e.what());
  }
}

void beta_registry() {
  bool ok = true;
  std::string detail;
  double slowest = 0;
  int checked = 0, vacuous = 0;
  auto run = [&](const CaseContext& ctx, const CasePredicate& c, int n, bool need_nonvacuous) {
    auto t0 = std::chrono::steady_clock::now();
    BetaReport r;
    try {
      r = verify_beta(ctx, c, n, c.beta);
    } catch (const std::exception& e) {
      ok = false;
      detail += " " + c.id + "@" + std::to_string(n) + ":" + e.what();
      return;
    }
    double dt = seconds_since(t0);
    slowest = std::max(slowest, dt);
    ++checked;
    vacuous += r.result.vacuous;
    if (!r.pass || dt >= 120 || (need_nonvacuous && r.result.vacuous)) {
      ok = false;
      detail += fmt(" %s@n=%d:%s(%.4g)", c.id.c_str(), n, r.pass ? "slow/vacuous" : "FAIL", r.result.diameter.lo);
    }
  };
  CaseContext k2(2);
  for (const auto& c : k2.cases()) run(k2, c, 2, false);
  for (const auto& c : k2.cases()) run(k2, c, 3, true);
  for (int N : {4, 5}) {
    CaseContext kn(N);
    for (const char* id : {"1", "2b", "3a", "3b", "3c", "4a", "4c"}) run(kn, kn.find_case(id), 2, false);
  }

  // negative control: a fake beta of 0.3 for K_2 Case 1 must be refuted
  auto t0 = std::chrono::steady_clock::now();
  const auto& c1 = k2.find_case("1");
  BetaReport at2 = verify_beta(k2, c1, 2, 0.3);
  BetaReport neg = verify_beta(k2, c1, 5, 0.3);
  double dtn = seconds_since(t0);
  std::string wit;
  for (const auto& w : neg.result.witness) wit += (wit.empty() ? "" : ",") + w.str();
  bool neg_ok = !neg.pass && neg.result.diameter.lo >= 0.25 - kBetaTolerance && neg.result.diameter.hi < 0.3 && dtn < 120;
  ok = ok && neg_ok;
  report("beta registry", ok,
         fmt("%d checks (%d vacuous at n=2), slowest %.2f s; control beta=0.3: n=2 %s (min %.4g), n=5 %s "
             "witness {%s} diameter [%.6g, %.6g]%s",
             checked, vacuous, slowest, at2.pass ? "PASS" : "FAIL", at2.result.diameter.lo, neg.pass ? "PASS" : "FAIL",
             wit.c_str(), neg.result.diameter.lo, neg.result.diameter.hi, detail.c_str()));
}

void geometry_fixtures() {
  auto q = case3a_constraint_points();
  double dq = std::abs((q.q1 - q.q2).norm() - (std::sqrt(6.0) - 2) / 2);
  double worst_angle = 0;
  for (int N : {2, 4, 5, 7})
    worst_angle = std::max(worst_angle, std::abs(dihedral_angle(build_koch_surface_ifs(N), 1, 4) - std::acos(1.0 / 3)));
  bool haus = true;
  std::string h;
  for (int N : {2, 4, 5}) {
    const auto spec = build_koch_surface_ifs(N);
    auto m = max_level1_hausdorff(spec.ifs, default_hausdorff_depth(spec.ifs));
    haus = haus && m.contains(1.0 - 1.0 / N);
    h += fmt(" N=%d [%.6g, %.6g]", N, m.lo, m.hi);
  }
  report("geometry fixtures", dq <= 1e-10 && worst_angle <= 1e-10 && haus,
         fmt("|q1-q2| err %.1e, dihedral err %.1e, level-1 Hausdorff:%s", dq, worst_angle, h.c_str()));
}

void osc() {
  bool ok = true;
  std::string d;
  for (int N : {2, 4, 5, 7}) {
    const auto spec = build_koch_surface_ifs(N);
    auto good = check_open_set_condition(spec.ifs, spec.ifs.enclosure(), 4);
    auto bad = check_open_set_condition(spec.ifs, spec.ifs.enclosure().scaled_about_centroid(0.5), 4);
    ok = ok && good.pass && !bad.pass;
    d += fmt(" N=%d %s/%s", N, good.pass ? "pass" : "FAIL", bad.pass ? "pass" : "fail");
  }
  report("OSC", ok, "tetrahedron/shrunk:" + d);
}

void c2_cube() {
  auto mesh = prefractal_mesh(build_crystal(2), 3);
  auto hull = geom::convex_hull(mesh.vertices);
  auto corners = hull.corner_vertices();
  const double h = std::sqrt(2.0) / 4;
  double err = corners.size() == 8 ? 0.0 : INFINITY;
  std::set<std::array<int, 3>> signs;
  for (int i : corners) {
    const Vec3& p = hull.points[i];
    err = std::max(err, (p.cwiseAbs() - Vec3(h, h, h)).cwiseAbs().maxCoeff());
    signs.insert({p.x() > 0, p.y() > 0, p.z() > 0});
  }
  double vol = std::pow(std::sqrt(2.0) / 2, 3);
  double verr = std::abs(hull.volume() - vol);
  bool ok = corners.size() == 8 && signs.size() == 8 && err <= 1e-9 && verr <= 1e-8;
  report("C_2 cube", ok, fmt("%zu corners, corner error %.1e, volume %.12g (want %.12g)", corners.size(), err,
                             hull.volume(), vol));
}

// On each glued edge both adjoining surfaces must use the same welded vertices.
bool glued_edges_match(const CrystalSpec& c, const TriangleMesh& mesh, int level) {
  for (const auto& e : c.shared_edges) {
    std::set<int> on[2];
    const Vec3 dir = e.to - e.from;
    for (std::size_t f = 0; f < mesh.faces.size(); ++f) {
      int comp = mesh.face_component[f];
      if (comp != e.a && comp != e.b) continue;
      for (int v : mesh.faces[f]) {
        Vec3 rel = mesh.vertices[v] - e.from;
        double t = rel.dot(dir) / dir.squaredNorm();
        if ((rel - t * dir).norm() < 1e-12 && t > -1e-12 && t < 1 + 1e-12) on[comp == e.b].insert(v);
      }
    }
    const std::size_t want = static_cast<std::size_t>(std::pow(c.N, level)) + 1;
    if (on[0] != on[1] || on[0].size() != want) return false;
  }
  return true;
}

void mesh_counts() {
  bool ok = true;
  std::string d;
  for (auto [N, L] : {std::pair{2, 3}, std::pair{4, 2}, std::pair{5, 2}}) {
    std::size_t want = static_cast<std::size_t>(std::pow(N * N + 2, L));
    auto s = prefractal_mesh(build_koch_surface_ifs(N), L);
    auto spec = build_crystal(N);
    auto cm = prefractal_mesh(spec, L);
    bool glued = glued_edges_match(spec, cm, L);
    ok = ok && s.faces.size() == want && cm.faces.size() == 4 * want && glued;
    d += fmt(" (%d,%d) %zu/%zu%s", N, L, s.faces.size(), cm.faces.size(), glued ? "" : " edge mismatch");
  }
  report("mesh counts", ok, "surface/crystal faces:" + d);
}

void oracle_equivalence() {
  bool ok = true;
  std::string d;
  for (int N : {2, 4}) {
    auto t0 = std::chrono::steady_clock::now();
    const auto spec = build_koch_surface_ifs(N);
    const double s = similarity_dimension(spec.ifs);
    PairTable t = build_pair_table(spec.ifs, 1, 0);
    const double total = spec.ifs.size();
    auto bb = min_ratio_search(t, s, total);
    auto ex = min_ratio_exhaustive(t, s, total);
    double dt = seconds_since(t0);
    bool same = bb.ratio == ex.ratio && dt < 60;
    ok = ok && same;
    d += fmt(" K_%d [%.17g, %.17g] %s %.2f s;", N, bb.ratio.lo, bb.ratio.hi, same ? "==" : "!=", dt);
  }
  report("oracle equivalence", ok, d);
}

}  // namespace

int main() {
  a1_for_k2();
  dimension();
  sandwich();
  beta_registry();
  geometry_fixtures();
  osc();
  c2_cube();
  mesh_counts();
  oracle_equivalence();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures ? 1 : 0;
}

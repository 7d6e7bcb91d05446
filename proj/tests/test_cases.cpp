#include "doctest.h"
#include "koch/verifier.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace koch;

namespace {

std::vector<Word> sorted(std::vector<Word> w) {
  std::sort(w.begin(), w.end());
  return w;
}

std::vector<Word> union_cells(std::initializer_list<Region> parts) {
  std::vector<Word> out;
  for (const auto& p : parts) out.insert(out.end(), p.cells.begin(), p.cells.end());
  return sorted(out);
}

// diameter of a union of K_N cells from the enclosure vertices of each cell
double family_diameter(const CaseContext& ctx, const std::vector<Word>& fam) {
  std::vector<Vec3> pts;
  for (const auto& w : fam)
    for (const auto& v : ctx.geometry().vertices(w)) pts.push_back(v);
  return oracle::diameter(pts);
}

// K_2 diameter from the explicit formulas
double k2_diameter(const std::vector<Word>& fam) {
  std::vector<oracle::V3> pts;
  for (const auto& w : fam)
    for (const auto& v : oracle::k2_cell_vertices(w.letters)) pts.push_back(v);
  return oracle::diameter(pts);
}

// Smallest diameter over families of at most `kmax` level-n cells that satisfy the
// predicate; INFINITY when none does.
template <typename Diam>
std::pair<double, std::vector<Word>> brute_min(const CaseContext& ctx, const CasePredicate& c, int n,
                                               int kmax, Diam diam) {
  auto cells = enumerate_words(ctx.spec().ifs.size(), n);
  const int m = static_cast<int>(cells.size());
  double best = INFINITY;
  std::vector<Word> arg, fam;
  std::vector<int> idx;
  auto rec = [&](auto&& self, int start) -> void {
    if (!fam.empty()) {
      double d = diam(fam);
      if (d < best && evaluate_predicate(ctx, c, fam)) best = d, arg = fam;
    }
    if (static_cast<int>(fam.size()) == kmax) return;
    for (int i = start; i < m; ++i) {
      fam.push_back(cells[i]);
      if (diam(fam) < best) self(self, i + 1);
      fam.pop_back();
    }
  };
  rec(rec, 0);
  return {best, arg};
}

}  // namespace

TEST_CASE("registered K_2 regions are corner regions") {
  CaseContext ctx(2);
  const auto& sp = ctx.spec();
  CHECK(sorted(ctx.corner_region("c", ctx.middle_vertex(1, 2), 2).cells) == sorted(k2::r_2_3b().cells));
  CHECK(sorted(ctx.corner_region("t", sp.apex, 2).cells) == sorted(k2::r_4a().cells));
  // q_1 is the common corner of R_1 .. R_4 and of the R' cells
  Vec3 q1 = case3a_constraint_points().q1;
  CHECK(sorted(ctx.corner_region("q", q1, 2).cells) == union_cells({k2::r(1), k2::r(2), k2::r(3), k2::r(4)}));
  CHECK(sorted(ctx.corner_region("q", q1, 3).cells) ==
        union_cells({k2::r_prime(1), k2::r_prime(2), k2::r_prime(3), k2::r_prime(4)}));
  CHECK_THROWS_AS(ctx.corner_region("none", Vec3(5, 5, 5), 2), DomainError);
}

TEST_CASE("R_5 cells meet the peak cells") {
  CaseContext ctx(2);
  for (const auto& w : k2::r(5).cells) {
    CHECK(w.size() == 3);
    CHECK(ctx.geometry().intersects_region(w, {Word{4}, Word{5}, Word{6}}));
  }
}

TEST_CASE("cell predicates") {
  CaseContext ctx(2);
  const auto& g = ctx.geometry();
  CHECK(g.intersects(Word{1}, Word{1}));
  CHECK(g.intersects(Word{4, 4}, Word{1}));
  CHECK(g.intersects(Word{1}, Word{2}));
  CHECK_FALSE(g.intersects(Word{1, 1}, Word{3, 3}));
  CHECK_FALSE(g.contained(Word{5}, k2::r_2_3b().cells));
  CHECK(g.contained(Word{3, 1, 2}, k2::r_2_3b().cells));
  CHECK(g.contained(Word{1}, {Word{1, 1}, Word{2, 1}, Word{3, 1}, Word{4, 1}, Word{5, 1}, Word{6, 1}}));
  CHECK_FALSE(g.contained(Word{1}, {Word{1, 1}, Word{2, 1}, Word{3, 1}, Word{4, 1}, Word{5, 1}}));
}

TEST_CASE("intersection agrees with the explicit maps") {
  // touching cells share a vertex image or an edge, disjoint ones are far apart
  CaseContext ctx(2);
  auto words = enumerate_words(6, 2);
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j) {
      auto a = oracle::k2_cell_vertices(words[i].letters), b = oracle::k2_cell_vertices(words[j].letters);
      double gap = INFINITY;
      for (const auto& u : a)
        for (const auto& v : b) gap = std::min(gap, (u - v).norm());
      if (gap < 1e-12) CHECK(ctx.geometry().intersects(words[i], words[j]));
    }
}

TEST_CASE("case registry") {
  CaseContext k2(2);
  std::vector<std::string> ids;
  for (const auto& c : k2.cases()) ids.push_back(c.id);
  CHECK(ids == std::vector<std::string>{"K2/Case1", "K2/Case2b", "K2/Case3a", "K2/Case3b", "K2/Case3c.ii",
                                        "K2/Case3c.iii", "K2/Case3c.iv", "K2/Case3c.v", "K2/Case4a",
                                        "K2/Case4b"});
  CHECK(k2.find_case("1").id == "K2/Case1");
  CHECK(k2.find_case("Case3c.ii").id == "K2/Case3c.ii");
  CHECK(k2.find_case("K2/Case4b").beta == doctest::Approx((oracle::r3 - 1) / 32).epsilon(1e-14));
  CHECK_THROWS_AS(k2.find_case("9"), DomainError);
  const double r2 = oracle::r2, r3 = oracle::r3, r6 = oracle::r6;
  CHECK(k2.find_case("1").beta == 0.25);
  CHECK(k2.find_case("2b").beta == doctest::Approx(r2 / 8).epsilon(1e-15));
  CHECK(k2.find_case("3a").beta == doctest::Approx((r6 - 2) / 2).epsilon(1e-15));
  CHECK(k2.find_case("3b").beta == 0.125);
  CHECK(k2.find_case("3c.ii").beta == doctest::Approx(r2 * (r3 - 1) / 128).epsilon(1e-15));
  CHECK(k2.find_case("3c.iii").beta == doctest::Approx((r3 - 1) / 64).epsilon(1e-15));
  CHECK(k2.find_case("3c.iv").beta == doctest::Approx(r2 / 16).epsilon(1e-15));
  CHECK(k2.find_case("3c.v").beta == doctest::Approx(r2 / 16).epsilon(1e-15));
  CHECK(k2.find_case("4a").beta == doctest::Approx((r6 - 2) / 4).epsilon(1e-15));

  CaseContext k5(5);
  const double N = 5;
  CHECK(k5.find_case("1").beta == doctest::Approx(1 / (2 * N)).epsilon(1e-15));
  CHECK(k5.find_case("2b").beta == doctest::Approx(r3 / (2 * N * N)).epsilon(1e-15));
  CHECK(k5.find_case("3a").beta == doctest::Approx((r6 - 2) / N).epsilon(1e-15));
  CHECK(k5.find_case("3b").beta == doctest::Approx(r6 / (3 * N * N)).epsilon(1e-15));
  CHECK(k5.find_case("3c").beta == doctest::Approx(r6 / 375).epsilon(1e-15));
  CHECK(k5.find_case("4a").beta == doctest::Approx((r6 - 2) / (N * N)).epsilon(1e-15));
  CHECK(k5.find_case("4c").beta == doctest::Approx(r3 / (2 * N * N)).epsilon(1e-15));
}

TEST_CASE("registered expansions are similarities of ratio 1/N") {
  for (int N : {2, 4}) {
    CaseContext ctx(N);
    for (const auto& c : ctx.cases())
      for (const auto& S : c.expansions) {
        CHECK(S.ratio == doctest::Approx(1.0 / N).epsilon(1e-12));
        CHECK(S.orthogonality_defect() < 1e-9);
      }
  }
  CaseContext k2(2);
  CHECK(k2.find_case("2b").expansions.size() > 0);
  CHECK(k2.find_case("1").expansions.empty());
}

TEST_CASE("is_scaleable") {
  CaseContext ctx(2);
  const auto& c2 = ctx.find_case("2b");
  CHECK(is_scaleable(ctx, c2, {Word{1, 2}, Word{2, 1}}));
  CHECK(is_scaleable(ctx, c2, {Word{1, 2}, Word{2, 1}, Word{3, 4}}));
  CHECK(is_scaleable(ctx, c2, {Word{1, 1, 2}, Word{2, 2, 1}}));
  CHECK_FALSE(is_scaleable(ctx, c2, {Word{1, 1}, Word{2, 1}}));
  CHECK_FALSE(is_scaleable(ctx, c2, enumerate_words(6, 2)));
  for (const auto& c : ctx.cases()) CHECK_FALSE(is_scaleable(ctx, c, enumerate_words(6, 2)));
  auto up = scale_up(ctx, c2, {Word{1, 2}, Word{2, 1}});
  REQUIRE(up.has_value());
  CHECK(up->size() == 2);
  for (const auto& w : *up) CHECK(w.size() == 1);
  CHECK(ratio_preserving_expansion(ctx, {Word{1, 1}, Word{2, 1}}));
  CHECK_FALSE(ratio_preserving_expansion(ctx, enumerate_words(6, 1)));
}

TEST_CASE("top-level cases partition families") {
  std::mt19937 rng(11);
  for (int N : {2, 4}) {
    CaseContext ctx(N);
    auto words = enumerate_words(ctx.spec().ifs.size(), 2);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    std::uniform_int_distribution<int> size(1, 5);
    for (int t = 0; t < 300; ++t) {
      std::vector<Word> fam;
      for (int k = size(rng); k > 0; --k) fam.push_back(words[pick(rng)]);
      std::sort(fam.begin(), fam.end());
      fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
      int tl = top_level_case(ctx, fam);
      bool single = std::all_of(fam.begin(), fam.end(), [&](const Word& w) { return w.letters.back() == fam[0].letters.back(); });
      CHECK((tl == 0) == single);
      if (single) continue;
      int met = 0;
      for (int b = 1; b <= 3; ++b) met += ctx.geometry().intersects_region(Word{b}, fam);
      CHECK(tl == 4 - met);
      // registered predicates of different top-level cases never both hold
      for (const auto& c : ctx.cases()) {
        if (!evaluate_predicate(ctx, c, fam)) continue;
        int want = c.id[c.id.find("Case") + 4] - '0';
        CHECK(want == tl);
      }
      if (tl == 1) CHECK(evaluate_predicate(ctx, ctx.find_case("1"), fam));
    }
  }
}

TEST_CASE("K_2 sub-cases are mutually exclusive") {
  std::mt19937 rng(5);
  CaseContext ctx(2);
  auto words = enumerate_words(6, 3);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int t = 0; t < 400; ++t) {
    std::vector<Word> fam;
    for (int k = 0; k < 4; ++k) fam.push_back(words[pick(rng)]);
    std::sort(fam.begin(), fam.end());
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
    int held = 0;
    for (const char* id : {"3a", "3b", "3c.ii", "3c.iii", "3c.iv", "3c.v"})
      held += evaluate_predicate(ctx, ctx.find_case(id), fam);
    CHECK(held <= 1);
    CHECK(evaluate_predicate(ctx, ctx.find_case("4a"), fam) + evaluate_predicate(ctx, ctx.find_case("4b"), fam) <= 1);
  }
}

TEST_CASE("min_case_diameter against brute force, K_2 n = 2") {
  CaseContext ctx(2);
  for (const auto& c : ctx.cases()) {
    CAPTURE(c.id);
    auto res = min_case_diameter(ctx, c, 2);
    auto [best, arg] = brute_min(ctx, c, 2, 4, k2_diameter);
    if (res.vacuous) {
      CHECK(best == INFINITY);
      continue;
    }
    CHECK(res.diameter.lo <= best);
    CHECK(res.diameter.contains(k2_diameter(res.witness)));
    CHECK(evaluate_predicate(ctx, c, res.witness));
    if (res.witness.size() <= 4) CHECK(res.diameter.contains(best));
  }
}

TEST_CASE("min_case_diameter against brute force, K_4 n = 1") {
  CaseContext ctx(4);
  auto diam = [&](const std::vector<Word>& f) { return family_diameter(ctx, f); };
  for (const auto& c : ctx.cases()) {
    CAPTURE(c.id);
    auto res = min_case_diameter(ctx, c, 1);
    auto [best, arg] = brute_min(ctx, c, 1, 4, diam);
    if (res.vacuous) {
      CHECK(best == INFINITY);
      continue;
    }
    CHECK(res.diameter.lo <= best);
    if (res.witness.size() <= 4) CHECK(res.diameter.contains(best));
  }
}

TEST_CASE("excluding scaleable families never lowers the minimum") {
  CaseContext ctx(2);
  for (const char* id : {"2b", "3b", "3c.ii", "3c.iv", "4b"}) {
    CAPTURE(id);
    const auto& c = ctx.find_case(id);
    CaseSearchOptions ex;
    ex.exclude_scaleable = true;
    auto a = min_case_diameter(ctx, c, 3), b = min_case_diameter(ctx, c, 3, ex);
    REQUIRE_FALSE(a.vacuous);
    CHECK(b.diameter.lo >= a.diameter.lo);
    CHECK_FALSE(is_scaleable(ctx, c, b.witness));
  }
}

TEST_CASE("verify_beta") {
  CaseContext ctx(2);
  auto pass = verify_beta(ctx, ctx.find_case("4b"), 2, ctx.find_case("4b").beta);
  CHECK(pass.pass);
  auto one = verify_beta(ctx, ctx.find_case("1"), 3, 0.25);
  CHECK(one.pass);
  CHECK(one.result.diameter.lo >= 0.25);
  auto fail = verify_beta(ctx, ctx.find_case("1"), 4, 0.3);
  CHECK_FALSE(fail.pass);
  CHECK(fail.result.diameter.hi < 0.3);
  CHECK(k2_diameter(fail.result.witness) == doctest::Approx(fail.result.diameter.lo).epsilon(1e-9));
  Json j = beta_report_json(fail);
  CHECK(j["status"] == "FAIL");
  CHECK(j["case_id"] == "K2/Case1");
  CHECK(j["witness_words"].size() == fail.result.witness.size());

  CaseContext k5(5);
  CHECK(verify_beta(k5, k5.find_case("3c"), 2, oracle::r6 / 375).pass);
  CaseContext k4(4);
  auto c1 = min_case_diameter(k4, k4.find_case("1"), 2);
  CHECK(c1.diameter.lo >= 0.125 - kBetaTolerance);
}

TEST_CASE("lemma bounds") {
  const double r2 = oracle::r2, r3 = oracle::r3, r6 = oracle::r6;
  CHECK(square_lemma_bound(1) == doctest::Approx((r3 - 1) / 16).epsilon(1e-15));
  CHECK(square_lemma_bound(r2 / 8) == doctest::Approx(r2 * (r3 - 1) / 128).epsilon(1e-15));
  for (double l : {0.1, 0.7, 3.0}) CHECK(square_lemma_bound(2 * l) == doctest::Approx(2 * square_lemma_bound(l)));
  CHECK(flap_lemma_bound(4) == doctest::Approx(r6 / 192).epsilon(1e-15));
  CHECK(flap_lemma_bound(5) == doctest::Approx(r6 / 375).epsilon(1e-15));
  CHECK_THROWS_AS(flap_lemma_bound(2), DomainError);
}

TEST_CASE("case 3a constraint points") {
  auto q = case3a_constraint_points();
  const double side = (oracle::r6 - 2) / 2;
  CHECK(std::abs((q.q1 - q.q2).norm() - side) < 1e-10);
  CHECK(std::abs((q.q2 - q.q3).norm() - side) < 1e-10);
  CHECK(std::abs((q.q1 - q.q3).norm() - side) < 1e-10);
  CHECK(q.q1.z() == 0.0);
  // q_1 from the base vertices directly
  oracle::V3 p12 = (oracle::p(1) + oracle::p(2)) / 2, p13 = (oracle::p(1) + oracle::p(3)) / 2;
  CHECK((q.q1 - (p12 + p13) / 2).norm() < 1e-15);
}

TEST_CASE("dihedral angles") {
  const double theta = std::acos(1.0 / 3);
  for (int N : {2, 4, 5, 7}) {
    const auto spec = build_koch_surface_ifs(N);
    CHECK(std::abs(dihedral_angle(spec, 1, 4) - theta) < 1e-10);
    CHECK(std::abs(dihedral_angle(spec, 4, 5) - (theta - M_PI)) < 1e-10);
    int flat = 0;
    for (int j = 7; j <= spec.ifs.size(); ++j) {
      double angle;
      try {
        angle = dihedral_angle(spec, 1, j);
      } catch (const DomainError&) {
        continue;
      }
      CHECK(std::abs(angle) < 1e-10);
      ++flat;
    }
    if (N > 2) CHECK(flat > 0);
    CHECK_THROWS_AS(dihedral_angle(spec, 4, 4), DomainError);
  }
}

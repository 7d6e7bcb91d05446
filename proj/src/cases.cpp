#include "koch/cases.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace koch {

namespace {

std::vector<Word> words(std::initializer_list<const char*> list) {
  std::vector<Word> out;
  for (const char* w : list) out.push_back(Word::parse(w));
  return out;
}

Region named(const std::string& name, std::initializer_list<const char*> list) {
  return {name, words(list)};
}

}  // namespace

Region region_union(const std::string& name, const std::vector<Region>& parts) {
  Region r{name, {}};
  for (const auto& p : parts)
    for (const auto& w : p.cells)
      if (std::find(r.cells.begin(), r.cells.end(), w) == r.cells.end()) r.cells.push_back(w);
  return r;
}

namespace k2 {

Region r_2_3b() { return named("R_(2,3b)", {"12", "34", "25", "21"}); }
Region r_4a() { return named("R_(4a)", {"14", "15", "16"}); }

Region r(int i) {
  switch (i) {
    case 1: return named("R_1", {"21", "34"});
    case 2: return named("R_2", {"51", "64"});
    case 3: return named("R_3", {"61", "54"});
    case 4: return named("R_4", {"31", "24"});
    case 5: return named("R_5", {"141", "151", "161", "144", "154", "164"});
  }
  throw DomainError("R_i is defined for i = 1..5");
}

Region r_prime(int i) {
  switch (i) {
    case 1: return named("R'_1", {"321", "234"});
    case 2: return named("R'_2", {"351", "264"});
    case 3: return named("R'_3", {"261", "354"});
    case 4: return named("R'_4", {"231", "324"});
  }
  throw DomainError("R'_i is defined for i = 1..4");
}

}  // namespace k2

CaseContext::CaseContext(int N) : spec_(build_koch_surface_ifs(N)), geom_(spec_.ifs) {
  if (N == 2)
    register_k2();
  else
    register_kn();
}

Region CaseContext::cell(int letter) const {
  return {"K^(" + std::to_string(letter) + ")", {Word{letter}}};
}

Vec3 CaseContext::middle_vertex(int a, int b) const {
  if (a == b || a < 1 || a > 3 || b < 1 || b > 3) throw DomainError("need two distinct base cells");
  return spec_.middle_vertices[6 - a - b - 1];
}

Region CaseContext::corner_region(const std::string& name, const Vec3& v, int level) const {
  Region r{name, {}};
  auto all = enumerate_words(spec_.ifs.size(), level);
  auto maps = level_maps(spec_.ifs, level);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const auto& p : spec_.ifs.enclosure().vertices)
      if ((maps[i].apply(p) - v).cwiseAbs().maxCoeff() <= 1e-12) {
        r.cells.push_back(all[i]);
        break;
      }
  if (r.cells.empty()) throw DomainError("no cell has a vertex at the requested corner");
  return r;
}

const CellIndex& CaseContext::index(int level) const {
  if (level < 0) throw DomainError("negative level");
  if (indices_.size() <= static_cast<std::size_t>(level)) indices_.resize(level + 1);
  if (!indices_[level]) indices_[level] = std::make_unique<CellIndex>(spec_.ifs, level);
  return *indices_[level];
}

std::vector<Similitude> CaseContext::find_expansions(const Region& region) const {
  if (region.cells.empty()) return {};
  const std::size_t L = region.cells.front().size();
  for (const auto& w : region.cells)
    if (w.size() != L || L == 0) throw DomainError("expansion regions need cells of one positive level");
  const double r = 1.0 / spec_.N;
  const CellIndex& up = index(static_cast<int>(L) - 1);
  const auto target = geom_.vertices(region.cells.front());
  std::vector<Similitude> found;
  std::array<int, 4> perm;
  for (const auto& f : level_maps(spec_.ifs, static_cast<int>(L) - 1)) {
    std::vector<Vec3> src;
    for (const auto& v : spec_.ifs.enclosure().vertices) src.push_back(f.apply(v));
    Mat3 E;
    for (int c = 0; c < 3; ++c) E.col(c) = src[c + 1] - src[0];
    const Mat3 Einv = E.inverse();
    std::iota(perm.begin(), perm.end(), 0);
    do {
      Mat3 D;
      for (int c = 0; c < 3; ++c) D.col(c) = target[perm[c + 1]] - target[perm[0]];
      Mat3 A = D * Einv;
      if ((A.transpose() * A - r * r * Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-9) continue;
      Similitude S = Similitude::from_parts(A, target[perm[0]] - A * src[0]);
      Similitude inv = S.inverse();
      bool all = true;
      for (const auto& w : region.cells) {
        std::vector<Vec3> pre;
        for (const auto& v : geom_.vertices(w)) pre.push_back(inv.apply(v));
        if (!up.find(pre)) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      bool dup = false;
      for (const auto& g : found) dup = dup || max_abs_difference(g, S) < 1e-9;
      if (!dup) found.push_back(S);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return found;
}

void CaseContext::add(CasePredicate c, const std::vector<Region>& scaling) {
  c.N = spec_.N;
  for (const auto& reg : scaling) {
    for (auto& S : find_expansions(reg)) {
      bool dup = false;
      for (const auto& g : c.expansions) dup = dup || max_abs_difference(g, S) < 1e-9;
      if (!dup) c.expansions.push_back(S);
    }
    c.expansion_regions.push_back(reg.name);
  }
  if (!(c.beta > 0)) throw DomainError("beta must be positive");
  cases_.push_back(std::move(c));
}

void CaseContext::register_k2() {
  const Region B1 = cell(1), B2 = cell(2), B3 = cell(3), P4 = cell(4), P5 = cell(5), P6 = cell(6);
  const Region corner = k2::r_2_3b(), top = k2::r_4a();
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);

  add({"K2/Case1", 0, 0.25, "1/4", {B1, B2, B3}, {}, {}, {}, {}, {}}, {});
  add({"K2/Case2b", 0, s2 / 8, "sqrt2/8", {B1, B2}, {B3}, {corner}, {}, {}, {}}, {corner});
  add({"K2/Case3a", 0, (s6 - 2) / 2, "(sqrt6-2)/2", {B1, P5, P6}, {B2, B3}, {}, {}, {}, {}}, {});
  add({"K2/Case3b", 0, 0.125, "1/8", {B1, P5}, {B2, B3, P6}, {corner}, {}, {}, {}}, {corner});

  std::vector<Region> rr, rp;
  for (int i = 1; i <= 5; ++i) rr.push_back(k2::r(i));
  for (int i = 1; i <= 4; ++i) rp.push_back(k2::r_prime(i));
  const Region rp_all = region_union("R'_1..4", rp);
  const Region r12 = region_union("R_1uR_2", {rr[0], rr[1]});
  const Region r34 = region_union("R_3uR_4", {rr[2], rr[3]});
  const Region r23 = region_union("R_2uR_3", {rr[1], rr[2]});
  const Region r1234 = region_union("R_1..4", {rr[0], rr[1], rr[2], rr[3]});
  const Region r14 = region_union("K^(1)uK^(4)", {B1, P4});
  std::vector<Region> excl_i(rr.begin(), rr.end());
  excl_i.push_back(rp_all);
  std::vector<Region> scaling(rr.begin(), rr.end());
  scaling.push_back(rp_all);

  auto base3c = [&](const std::string& id, double beta, const std::string& text,
                    std::vector<Region> not_in, std::vector<Region> inside) {
    return CasePredicate{id, 0, beta, text, {B1}, {B2, B3, P5, P6}, std::move(not_in), std::move(inside), {}, {}};
  };
  auto ex_ii = excl_i;
  add(base3c("K2/Case3c.ii", s2 * (s3 - 1) / 128, "sqrt2(sqrt3-1)/128", ex_ii, {r12, r34}), scaling);
  auto ex_iii = excl_i;
  ex_iii.insert(ex_iii.end(), {r12, r34});
  add(base3c("K2/Case3c.iii", (s3 - 1) / 64, "(sqrt3-1)/64", ex_iii, {r23}), scaling);
  auto ex_iv = ex_iii;
  ex_iv.push_back(r23);
  add(base3c("K2/Case3c.iv", s2 / 16, "sqrt2/16", ex_iv, {r1234}), scaling);
  auto ex_v = ex_iv;
  ex_v.push_back(r1234);
  add(base3c("K2/Case3c.v", s2 / 16, "sqrt2/16", ex_v, {r14}), scaling);

  add({"K2/Case4a", 0, (s6 - 2) / 4, "(sqrt6-2)/4", {P4, P5, P6}, {B1, B2, B3}, {top}, {}, {}, {}}, {top});
  add({"K2/Case4b", 0, (s3 - 1) / 32, "(sqrt3-1)/32", {P4, P5}, {B1, B2, B3, P6}, {}, {}, {}, {}},
      {top, corner});
}

void CaseContext::register_kn() {
  const int N = spec_.N;
  const double n2 = double(N) * N, n3 = n2 * N;
  const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0);
  const Region B1 = cell(1), B2 = cell(2), B3 = cell(3), P4 = cell(4), P5 = cell(5), P6 = cell(6);
  const Region c12 = corner_region("R_(2,3b,4c)", middle_vertex(1, 2), 2);
  const Region c13 = corner_region("R_(2,3b,4c)'", middle_vertex(1, 3), 2);
  const Region top = corner_region("R_(4a)", spec_.apex, 2);

  add({"KN/Case1", 0, 1.0 / (2 * N), "1/(2N)", {B1, B2, B3}, {}, {}, {}, {}, {}}, {});
  add({"KN/Case2b", 0, s3 / (2 * n2), "sqrt3/(2N^2)", {B1, B2}, {B3}, {c12}, {}, {}, {}}, {c12});
  add({"KN/Case3a", 0, (s6 - 2) / N, "(sqrt6-2)/N", {B1, P5, P6}, {B2, B3}, {}, {}, {}, {}}, {});
  add({"KN/Case3b", 0, s6 / (3 * n2), "sqrt6/(3N^2)", {B1, P5}, {B2, B3, P6}, {c12}, {}, {}, {}}, {c12});
  add({"KN/Case3c", 0, s6 / (3 * n3), "sqrt6/(3N^3)", {B1}, {B2, B3, P5, P6}, {}, {}, {}, {}}, {c12, c13});
  add({"KN/Case4a", 0, (s6 - 2) / n2, "(sqrt6-2)/N^2", {P4, P5, P6}, {B1, B2, B3}, {top}, {}, {}, {}}, {top});
  add({"KN/Case4b", 0, s6 / (3 * n3), "sqrt6/(3N^3)", {P4, P5}, {B1, B2, B3, P6}, {}, {}, {}, {}}, {top, c12});
  add({"KN/Case4c", 0, s3 / (2 * n2), "sqrt3/(2N^2)", {P4}, {B1, B2, B3, P5, P6}, {c12, c13}, {}, {}, {}},
      {c12, c13});
  add({"KN/Case4d", 0, s6 / (3 * n3), "sqrt6/(3N^3)", {}, {B1, B2, B3, P4, P5, P6}, {}, {}, {}, {}}, {});
}

const CasePredicate& CaseContext::find_case(const std::string& id) const {
  const std::string prefix = spec_.N == 2 ? "K2/" : "KN/";
  std::string full = id;
  if (full.rfind("K2/", 0) != 0 && full.rfind("KN/", 0) != 0) {
    if (full.rfind("Case", 0) != 0) full = "Case" + full;
    full = prefix + full;
  }
  for (const auto& c : cases_)
    if (c.id == full) return c;
  std::string known;
  for (const auto& c : cases_) known += (known.empty() ? "" : ", ") + c.id;
  throw DomainError("unknown case '" + id + "' for N = " + std::to_string(spec_.N) + " (known: " + known + ")");
}

}  // namespace koch

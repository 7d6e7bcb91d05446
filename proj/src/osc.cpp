#include "koch/osc.hpp"

#include "koch/geometry.hpp"

#include <cmath>
#include <limits>

namespace koch {

namespace {

constexpr double kSlack = 1e-12;
constexpr std::size_t kMaxViolations = 20;

void record(OscReport& r, std::string msg) {
  r.pass = false;
  if (r.violations.size() < kMaxViolations) r.violations.push_back(std::move(msg));
}

void descend(const IfsSystem& ifs, const std::vector<ConvexPolytope::HalfSpace>& hs,
             const std::vector<Vec3>& verts, const Similitude& s, Word& w, int depth,
             OscReport& rep) {
  for (int l = 1; l <= ifs.size(); ++l) {
    Similitude f = s.after(ifs.map(l));  // word l w: F_w o F_l
    w.letters.insert(w.letters.begin(), l);
    for (std::size_t v = 0; v < verts.size(); ++v) {
      Vec3 p = f.apply(verts[v]);
      ++rep.points_checked;
      for (const auto& h : hs) {
        if (h.normal.dot(p) - h.offset > kSlack) {
          record(rep, "containment: vertex " + std::to_string(v + 1) + " of S_" + w.str() +
                          "(V) lies outside V");
          break;
        }
      }
    }
    if (static_cast<int>(w.size()) < depth && rep.violations.size() < kMaxViolations)
      descend(ifs, hs, verts, f, w, depth, rep);
    w.letters.erase(w.letters.begin());
  }
}

}  // namespace

OscReport check_open_set_condition(const IfsSystem& ifs, const ConvexPolytope& open_polytope,
                                   int depth) {
  if (depth < 1) throw DomainError("OSC depth must be at least 1");
  auto hs = open_polytope.half_spaces();
  if (hs.size() < 4) throw DomainError("open set must be a full-dimensional polytope");
  OscReport rep;
  rep.depth = depth;
  Word w;
  descend(ifs, hs, open_polytope.vertices, Similitude::identity(), w, depth, rep);

  rep.min_separation_gap = std::numeric_limits<double>::infinity();
  std::vector<std::vector<Vec3>> images;
  for (const auto& m : ifs.maps()) images.push_back(open_polytope.transformed(m).vertices);
  for (int i = 0; i < ifs.size(); ++i)
    for (int j = i + 1; j < ifs.size(); ++j) {
      ++rep.pairs_checked;
      double gap = geom::separation_gap(images[i], images[j], open_polytope);
      rep.min_separation_gap = std::min(rep.min_separation_gap, gap);
      // open images are disjoint when the closed ones are at most touching
      if (gap < -kSlack)
        record(rep, "separation: S_" + std::to_string(i + 1) + "(V) and S_" + std::to_string(j + 1) +
                        "(V) overlap");
    }
  return rep;
}

}  // namespace koch

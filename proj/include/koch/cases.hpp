#pragma once

#include "koch/cell_geometry.hpp"
#include "koch/koch_surface.hpp"

#include <memory>
#include <string>
#include <vector>

namespace koch {

struct Region {
  std::string name;
  std::vector<Word> cells;
};

Region region_union(const std::string& name, const std::vector<Region>& parts);

struct CasePredicate {
  std::string id;  // "K2/Case3c.ii", "KN/Case4c", ...
  int N = 0;
  double beta = 0.0;
  std::string beta_text;
  std::vector<Region> intersect_required;
  std::vector<Region> intersect_forbidden;
  std::vector<Region> containment_forbidden;
  // When nonempty the family must lie inside at least one of these regions.
  std::vector<Region> containment_required;
  // Similarities S of ratio 1/N such that S^-1 maps every cell of some registered
  // critical region onto a cell one level up.
  std::vector<Similitude> expansions;
  std::vector<std::string> expansion_regions;
};

// Surface, cell predicates and named regions for one N. Not copyable: the cell
// geometry refers to the surface IFS.
class CaseContext {
 public:
  explicit CaseContext(int N);
  CaseContext(const CaseContext&) = delete;
  CaseContext& operator=(const CaseContext&) = delete;

  int N() const { return spec_.N; }
  const KochSurfaceSpec& spec() const { return spec_; }
  const CellGeometry& geometry() const { return geom_; }

  Region cell(int letter) const;
  // Level-L cells having v as a vertex image.
  Region corner_region(const std::string& name, const Vec3& v, int level) const;
  // Similarities of ratio 1/N carrying level-(L-1) cells onto every cell of a
  // region whose cells all have level L.
  std::vector<Similitude> find_expansions(const Region& region) const;

  // Vertex of the middle triangle shared by K^(a) and K^(b), a != b in {1,2,3}.
  Vec3 middle_vertex(int a, int b) const;

  const std::vector<CasePredicate>& cases() const { return cases_; }
  // Accepts "K2/Case1", "Case1" or "1" style ids.
  const CasePredicate& find_case(const std::string& id) const;

  const CellIndex& index(int level) const;

 private:
  void register_k2();
  void register_kn();
  void add(CasePredicate c, const std::vector<Region>& scaling);

  KochSurfaceSpec spec_;
  CellGeometry geom_;
  std::vector<CasePredicate> cases_;
  mutable std::vector<std::unique_ptr<CellIndex>> indices_;
};

// Named K_2 regions with words in the library convention (K^(jw) inside K^(w)).
namespace k2 {
Region r_2_3b();
Region r_4a();
Region r(int i);        // R_1 .. R_5
Region r_prime(int i);  // R'_1 .. R'_4
}  // namespace k2

}  // namespace koch

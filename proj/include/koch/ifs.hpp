#pragma once

#include "koch/similitude.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace koch {

// Letters are 1-based. The word w1 w2 ... wn names F_wn o ... o F_w1, so the
// last letter selects the level-1 cell that contains K^(w).
struct Word {
  std::vector<int> letters;

  Word() = default;
  Word(std::initializer_list<int> l) : letters(l) {}
  explicit Word(std::vector<int> l) : letters(std::move(l)) {}

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  int operator[](std::size_t i) const { return letters[i]; }
  bool operator==(const Word&) const = default;
  auto operator<=>(const Word&) const = default;

  // Digits concatenated when every letter is < 10, dot separated otherwise.
  std::string str() const;
  static Word parse(const std::string& text);

  // true when `tail` is a suffix of this word, i.e. K^(this) is inside K^(tail).
  bool has_suffix(const Word& tail) const;
  Word prepend(int letter) const;
};

struct DiameterInterval {
  double lo = 0.0;
  double hi = 0.0;
  int depth = 0;

  bool contains(double x) const { return lo <= x && x <= hi; }
  double width() const { return hi - lo; }
};

// Convex polytope given by vertices and outward-oriented faces (vertex index cycles).
struct ConvexPolytope {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;

  struct HalfSpace {
    Vec3 normal;  // unit, outward
    double offset;
  };

  static ConvexPolytope tetrahedron(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);
  static ConvexPolytope box(const Vec3& lo, const Vec3& hi);

  std::vector<HalfSpace> half_spaces() const;
  std::vector<std::pair<int, int>> edges() const;
  Vec3 centroid() const;
  ConvexPolytope transformed(const Similitude& s) const;
  ConvexPolytope scaled_about_centroid(double factor) const;
  bool contains(const Vec3& p, double slack) const;
};

class IfsSystem {
 public:
  // generators default to the fixed points of the maps; enclosure defaults to a box
  // around an invariant ball. Both must contain / lie in the attractor's hull.
  IfsSystem(std::vector<Similitude> maps, std::string label,
            std::vector<Vec3> generators = {},
            std::optional<ConvexPolytope> enclosure = std::nullopt);

  const std::vector<Similitude>& maps() const { return maps_; }
  const Similitude& map(int letter) const { return maps_.at(letter - 1); }
  int size() const { return static_cast<int>(maps_.size()); }
  std::optional<double> common_ratio() const { return common_ratio_; }
  double max_ratio() const { return max_ratio_; }
  const DiameterInterval& diameter_of_attractor() const { return diameter_; }
  const std::string& label() const { return label_; }
  const std::vector<Vec3>& generators() const { return generators_; }
  const ConvexPolytope& enclosure() const { return enclosure_; }
  // Every enclosure vertex is a point of the attractor, so the diameter of any
  // union of cells equals the largest distance among enclosure-vertex images.
  bool vertex_exact() const { return vertex_exact_; }

 private:
  std::vector<Similitude> maps_;
  std::optional<double> common_ratio_;
  double max_ratio_ = 0.0;
  DiameterInterval diameter_;
  std::string label_;
  std::vector<Vec3> generators_;
  ConvexPolytope enclosure_;
  bool vertex_exact_ = false;
};

struct Cell {
  Word word;
  Similitude map;
  int depth = 0;
  std::vector<Vec3> sample_points;      // F_word o F_u (g) for |u| = depth
  std::vector<Vec3> enclosure_vertices;  // F_word applied to the enclosure vertices
};

Vec3 fixed_point(const Similitude& s);

Similitude compose_word(const IfsSystem& ifs, const Word& word);
double cell_measure(const IfsSystem& ifs, const Word& word, double s);
Cell make_cell(const IfsSystem& ifs, const Word& word, int depth = 0);

inline constexpr std::uint64_t kDefaultCellBudget = 20'000'000;

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t budget);
// All M^n words in lexicographic order.
std::vector<Word> enumerate_words(int alphabet, int n, std::uint64_t budget = kDefaultCellBudget);
std::vector<Cell> enumerate_cells(const IfsSystem& ifs, int n, int depth = 0,
                                  std::uint64_t budget = kDefaultCellBudget);
// Composite maps of all level-n words, lexicographic order.
std::vector<Similitude> level_maps(const IfsSystem& ifs, int n,
                                   std::uint64_t budget = kDefaultCellBudget);

double similarity_dimension(const IfsSystem& ifs);

}  // namespace koch

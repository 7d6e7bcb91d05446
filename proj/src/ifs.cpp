#include "koch/ifs.hpp"

#include "koch/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace koch {

std::string Word::str() const {
  bool small = std::all_of(letters.begin(), letters.end(), [](int l) { return l < 10; });
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (!small && i > 0) out += '.';
    out += std::to_string(letters[i]);
  }
  return out;
}

Word Word::parse(const std::string& text) {
  Word w;
  if (text.find('.') != std::string::npos) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, '.')) w.letters.push_back(std::stoi(part));
  } else {
    for (char c : text) {
      if (c < '1' || c > '9') throw DomainError("bad letter in word: " + text);
      w.letters.push_back(c - '0');
    }
  }
  return w;
}

bool Word::has_suffix(const Word& tail) const {
  if (tail.size() > size()) return false;
  return std::equal(tail.letters.begin(), tail.letters.end(), letters.end() - tail.size());
}

Word Word::prepend(int letter) const {
  Word w;
  w.letters.reserve(size() + 1);
  w.letters.push_back(letter);
  w.letters.insert(w.letters.end(), letters.begin(), letters.end());
  return w;
}

ConvexPolytope ConvexPolytope::tetrahedron(const Vec3& a, const Vec3& b, const Vec3& c,
                                           const Vec3& d) {
  ConvexPolytope p;
  p.vertices = {a, b, c, d};
  p.faces = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  Vec3 in = p.centroid();
  for (auto& f : p.faces) {
    Vec3 n = (p.vertices[f[1]] - p.vertices[f[0]]).cross(p.vertices[f[2]] - p.vertices[f[0]]);
    if (n.dot(p.vertices[f[0]] - in) < 0) std::swap(f[1], f[2]);
  }
  return p;
}

ConvexPolytope ConvexPolytope::box(const Vec3& lo, const Vec3& hi) {
  ConvexPolytope p;
  for (int i = 0; i < 8; ++i)
    p.vertices.emplace_back(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(),
                            i & 4 ? hi.z() : lo.z());
  p.faces = {{0, 2, 3, 1}, {4, 5, 7, 6}, {0, 1, 5, 4}, {2, 6, 7, 3}, {0, 4, 6, 2}, {1, 3, 7, 5}};
  return p;
}

std::vector<ConvexPolytope::HalfSpace> ConvexPolytope::half_spaces() const {
  std::vector<HalfSpace> out;
  Vec3 in = centroid();
  for (const auto& f : faces) {
    Vec3 n = (vertices[f[1]] - vertices[f[0]]).cross(vertices[f[2]] - vertices[f[0]]);
    double len = n.norm();
    if (len == 0.0) continue;  // flat polytope: the face carries no half-space
    n /= len;
    if (n.dot(vertices[f[0]] - in) < 0) n = -n;
    out.push_back({n, n.dot(vertices[f[0]])});
  }
  return out;
}

std::vector<std::pair<int, int>> ConvexPolytope::edges() const {
  std::set<std::pair<int, int>> es;
  for (const auto& f : faces)
    for (std::size_t i = 0; i < f.size(); ++i) {
      int a = f[i], b = f[(i + 1) % f.size()];
      es.insert({std::min(a, b), std::max(a, b)});
    }
  return {es.begin(), es.end()};
}

Vec3 ConvexPolytope::centroid() const {
  Vec3 c = Vec3::Zero();
  for (const auto& v : vertices) c += v;
  return c / static_cast<double>(vertices.size());
}

ConvexPolytope ConvexPolytope::transformed(const Similitude& s) const {
  ConvexPolytope p = *this;
  for (auto& v : p.vertices) v = s.apply(v);
  return p;
}

ConvexPolytope ConvexPolytope::scaled_about_centroid(double factor) const {
  return transformed(Similitude::homothety(centroid(), factor));
}

bool ConvexPolytope::contains(const Vec3& p, double slack) const {
  for (const auto& h : half_spaces())
    if (h.normal.dot(p) - h.offset > slack) return false;
  return true;
}

Vec3 fixed_point(const Similitude& s) {
  return (Mat3::Identity() - s.linear).partialPivLu().solve(s.translation);
}

namespace {

bool near_any(const Vec3& p, const std::vector<Vec3>& pts, double tol) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vec3& q) { return (p - q).norm() <= tol; });
}

}  // namespace

IfsSystem::IfsSystem(std::vector<Similitude> maps, std::string label, std::vector<Vec3> generators,
                     std::optional<ConvexPolytope> enclosure)
    : maps_(std::move(maps)), label_(std::move(label)) {
  if (maps_.size() < 2) throw DomainError("an IFS needs at least two maps");
  for (const auto& m : maps_) {
    if (!(m.ratio > 0.0 && m.ratio < 1.0)) throw DomainError("map ratio outside (0,1)");
    if (m.orthogonality_defect() > 1e-10) throw DomainError("map is not a similitude");
    max_ratio_ = std::max(max_ratio_, m.ratio);
  }
  if (std::all_of(maps_.begin(), maps_.end(), [&](const auto& m) { return m.ratio == maps_[0].ratio; }))
    common_ratio_ = maps_[0].ratio;

  // Points known to lie in the attractor: fixed points and their first images.
  std::vector<Vec3> known;
  for (const auto& m : maps_) known.push_back(fixed_point(m));
  const std::size_t nfix = known.size();
  for (const auto& m : maps_)
    for (std::size_t i = 0; i < nfix; ++i) known.push_back(m.apply(known[i]));

  generators_ = generators.empty() ? std::vector<Vec3>(known.begin(), known.begin() + nfix)
                                   : std::move(generators);
  for (const auto& g : generators_)
    if (!near_any(g, known, 1e-12)) throw DomainError("generator point is not certified to lie in K");

  if (enclosure) {
    enclosure_ = std::move(*enclosure);
    for (const auto& m : maps_)
      for (const auto& v : enclosure_.vertices)
        if (!enclosure_.contains(m.apply(v), 1e-12))
          throw DomainError("enclosure is not mapped into itself");
  } else {
    // invariant ball around the centroid of the fixed points
    Vec3 c = Vec3::Zero();
    for (std::size_t i = 0; i < nfix; ++i) c += known[i];
    c /= static_cast<double>(nfix);
    double radius = 0.0;
    for (const auto& m : maps_) radius = std::max(radius, (m.apply(c) - c).norm() / (1.0 - m.ratio));
    radius *= 1.0 + 1e-9;
    Vec3 rr = Vec3::Constant(radius);
    enclosure_ = ConvexPolytope::box(c - rr, c + rr);
  }
  vertex_exact_ = std::all_of(enclosure_.vertices.begin(), enclosure_.vertices.end(),
                              [&](const Vec3& v) { return near_any(v, known, 1e-12); });

  double enc_diam = geom::max_pairwise_distance(enclosure_.vertices);
  if (vertex_exact_) {
    diameter_ = {enc_diam * (1 - kRoundoff), enc_diam * (1 + kRoundoff), 0};
  } else {
    int depth = 0;
    while (generators_.size() * std::pow(maps_.size(), depth + 1) <= 1500) ++depth;
    std::vector<Vec3> pts;
    for (const auto& m : level_maps(*this, depth))
      for (const auto& g : generators_) pts.push_back(m.apply(g));
    double lo = geom::max_pairwise_distance(pts);
    double hi = std::min(enc_diam, lo + 2 * std::pow(max_ratio_, depth) * enc_diam);
    diameter_ = {lo * (1 - kRoundoff), hi * (1 + kRoundoff), depth};
  }
}

Similitude compose_word(const IfsSystem& ifs, const Word& word) {
  Similitude s = Similitude::identity();
  for (int l : word.letters) {
    if (l < 1 || l > ifs.size()) throw DomainError("letter out of range: " + std::to_string(l));
    s = ifs.map(l).after(s);
  }
  return s;
}

double cell_measure(const IfsSystem& ifs, const Word& word, double s) {
  if (!(s > 0.0)) throw DomainError("dimension must be positive");
  double mu = 1.0;
  for (int l : word.letters) mu *= std::pow(ifs.map(l).ratio, s);
  return mu;
}

std::uint64_t checked_power(std::uint64_t base, int exp, std::uint64_t budget) {
  if (exp < 0) throw DomainError("negative level");
  std::uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > budget / base) throw BudgetExceeded("enumeration budget exceeded", std::numeric_limits<std::uint64_t>::max());
    v *= base;
  }
  if (v > budget) throw BudgetExceeded("enumeration budget exceeded: " + std::to_string(v) + " cells", v);
  return v;
}

std::vector<Word> enumerate_words(int alphabet, int n, std::uint64_t budget) {
  std::uint64_t count = checked_power(alphabet, n, budget);
  std::vector<Word> out;
  out.reserve(count);
  std::vector<int> cur(n, 1);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(cur);
    for (int p = n - 1; p >= 0; --p) {
      if (++cur[p] <= alphabet) break;
      cur[p] = 1;
    }
  }
  return out;
}

std::vector<Similitude> level_maps(const IfsSystem& ifs, int n, std::uint64_t budget) {
  checked_power(ifs.size(), n, budget);
  std::vector<Similitude> cur{Similitude::identity()};
  // lexicographic in (w1..wn) with F_wn outermost: extend on the outside
  for (int k = 0; k < n; ++k) {
    std::vector<Similitude> next;
    next.reserve(cur.size() * ifs.size());
    for (const auto& s : cur)
      for (const auto& m : ifs.maps()) next.push_back(m.after(s));
    cur = std::move(next);
  }
  return cur;
}

Cell make_cell(const IfsSystem& ifs, const Word& word, int depth) {
  Cell c;
  c.word = word;
  c.map = compose_word(ifs, word);
  c.depth = depth;
  for (const auto& u : level_maps(ifs, depth)) {
    Similitude f = c.map.after(u);
    for (const auto& g : ifs.generators()) c.sample_points.push_back(f.apply(g));
  }
  for (const auto& v : ifs.enclosure().vertices) c.enclosure_vertices.push_back(c.map.apply(v));
  return c;
}

std::vector<Cell> enumerate_cells(const IfsSystem& ifs, int n, int depth, std::uint64_t budget) {
  auto words = enumerate_words(ifs.size(), n, budget);
  std::vector<Cell> cells;
  cells.reserve(words.size());
  for (auto& w : words) cells.push_back(make_cell(ifs, w, depth));
  return cells;
}

double similarity_dimension(const IfsSystem& ifs) {
  if (auto r = ifs.common_ratio()) return std::log(static_cast<double>(ifs.size())) / std::log(1.0 / *r);
  auto f = [&](double s) {
    double sum = 0.0;
    for (const auto& m : ifs.maps()) sum += std::pow(m.ratio, s);
    return sum - 1.0;
  };
  double lo = 0.0, hi = 1.0;
  while (f(hi) > 0) hi *= 2;
  while (hi - lo > 1e-14 * std::max(1.0, hi)) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace koch

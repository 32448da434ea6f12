#pragma once

// Exact rational polyhedral geometry: cells with both descriptions, faces,
// affine spans and lattices, volumes, cell complexes and refinement.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "superform/double_description.hpp"
#include "superform/error.hpp"
#include "superform/rational.hpp"

namespace superform {

/// x ↦ <direction, x> + offset. As a constraint it means "form(x) >= 0".
struct AffineForm {
  Vec direction;
  Scalar offset = 0;

  Scalar operator()(std::span<const Scalar> x) const { return dot(direction, x) + offset; }
  AffineForm operator-() const { return {-direction, -offset}; }
  bool operator==(const AffineForm&) const = default;
};

/// x ↦ linear x + translation, from Q^source_dim to Q^target_dim.
struct AffineMap {
  Matrix linear;  ///< target_dim rows, source_dim columns
  Vec translation;
  std::size_t source_dim = 0;

  std::size_t target_dim() const { return translation.size(); }
  Vec apply(std::span<const Scalar> x) const { return mat_vec(linear, x) + translation; }
  Vec apply_linear(std::span<const Scalar> v) const { return mat_vec(linear, v); }

  static AffineMap identity(std::size_t n) { return {superform::identity(n), zero_vec(n), n}; }

  /// (*this) ∘ inner
  AffineMap after(const AffineMap& inner) const {
    return {mat_mul(linear, inner.linear, inner.source_dim), apply(inner.translation), inner.source_dim};
  }

  /// The affine form ℓ ∘ (*this) on the source space.
  AffineForm pull(const AffineForm& form) const {
    Vec dir = zero_vec(source_dim);
    for (std::size_t i = 0; i < linear.size(); ++i)
      for (std::size_t j = 0; j < source_dim; ++j) dir[j] += form.direction[i] * linear[i][j];
    return {dir, form(translation)};
  }
};

namespace detail {

inline AffineForm normalize_inequality(const AffineForm& f) {
  Vec all = f.direction;
  all.push_back(f.offset);
  Vec p = primitive(all);
  AffineForm out;
  out.offset = p.back();
  p.pop_back();
  out.direction = std::move(p);
  return out;
}

inline std::vector<Vec> sorted_unique(std::vector<Vec> v) {
  std::sort(v.begin(), v.end(), lex_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// A non-empty rational polyhedron of Q^r, stored in canonical form:
/// irredundant facets and independent equalities (h-rep), and the minimal
/// generators (v-rep). Vertices lie in the orthogonal complement of the
/// lineality space, so the v-rep is unique.
class Cell {
 public:
  /// Intersection of the half-spaces {form >= 0}; throws EmptyCell.
  static Cell from_halfspaces(std::span<const AffineForm> halfspaces, std::size_t ambient_dim) {
    auto gens = generators_of(halfspaces, ambient_dim);
    if (gens.vertices.empty()) throw EmptyCell("half-space intersection is empty");
    return Cell(ambient_dim, std::move(gens), Canonical{});
  }

  /// conv(vertices) + cone(rays) + span(lines); vertices must be non-empty.
  static Cell from_generators(std::size_t ambient_dim, std::vector<Vec> vertices, std::vector<Vec> rays = {},
                              std::vector<Vec> lines = {}) {
    if (vertices.empty()) throw EmptyCell("a cell needs at least one point");
    for (const auto* group : {&vertices, &rays, &lines})
      for (const auto& v : *group)
        if (v.size() != ambient_dim) throw AmbientMismatch("generator has the wrong length");
    return Cell(ambient_dim, std::move(vertices), std::move(rays), std::move(lines));
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return span_basis_.size(); }
  bool is_bounded() const { return rays_.empty() && lines_.empty(); }

  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Vec>& rays() const { return rays_; }
  const std::vector<Vec>& lines() const { return lines_; }
  const std::vector<AffineForm>& facets() const { return facets_; }
  const std::vector<AffineForm>& equalities() const { return equalities_; }

  /// Every constraint as an inequality; each equality contributes two.
  std::vector<AffineForm> h_rep() const {
    std::vector<AffineForm> out = facets_;
    for (const auto& e : equalities_) {
      out.push_back(e);
      out.push_back(-e);
    }
    return out;
  }

  /// Lexicographically smallest vertex; the origin of span coordinates.
  const Vec& base_point() const { return vertices_.front(); }
  /// Reduced-row-echelon basis of the direction space (pivot entries are 1).
  const std::vector<Vec>& span_basis() const { return span_basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  /// Z-basis of direction space ∩ Z^r.
  const std::vector<Vec>& lattice_basis() const { return lattice_basis_; }

  /// Coordinates of a direction vector in the span basis (its pivot entries).
  Vec direction_coordinates(std::span<const Scalar> v) const {
    Vec c(pivots_.size());
    for (std::size_t i = 0; i < pivots_.size(); ++i) c[i] = v[pivots_[i]];
    return c;
  }
  Vec point_coordinates(std::span<const Scalar> x) const {
    Vec d(x.begin(), x.end());
    return direction_coordinates(d - base_point());
  }
  Vec point_from_coordinates(std::span<const Scalar> t) const {
    Vec x = base_point();
    for (std::size_t i = 0; i < t.size(); ++i) x = x + t[i] * span_basis_[i];
    return x;
  }
  /// |det| of the lattice basis in span coordinates: lattice covolume factor.
  Scalar lattice_index() const {
    Matrix m;
    for (const auto& l : lattice_basis_) m.push_back(direction_coordinates(l));
    Scalar d = determinant(m);
    return d < 0 ? Scalar(-d) : d;
  }

  bool contains(std::span<const Scalar> x) const {
    for (const auto& e : equalities_)
      if (e(x) != 0) return false;
    for (const auto& f : facets_)
      if (f(x) < 0) return false;
    return true;
  }

  /// Barycenter of the vertices pushed along every ray: a relative-interior point.
  Vec relative_interior_point() const {
    Vec p = zero_vec(ambient_);
    for (const auto& v : vertices_) p = p + v;
    p = Scalar(1, vertices_.size()) * p;
    for (const auto& r : rays_) p = p + r;
    return p;
  }

  /// Canonical generator data; two cells are equal iff these agree.
  bool operator==(const Cell& other) const {
    return ambient_ == other.ambient_ && vertices_ == other.vertices_ && rays_ == other.rays_ &&
           lines_ == other.lines_;
  }
  bool operator<(const Cell& other) const {
    if (ambient_ != other.ambient_) return ambient_ < other.ambient_;
    if (vertices_ != other.vertices_) return vertices_ < other.vertices_;
    if (rays_ != other.rays_) return rays_ < other.rays_;
    return lines_ < other.lines_;
  }

  /// Generator indices (into vertices(), rays()) tight on a constraint.
  std::pair<std::vector<std::size_t>, std::vector<std::size_t>> tight_generators(const AffineForm& f) const {
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < vertices_.size(); ++i)
      if (f(vertices_[i]) == 0) out.first.push_back(i);
    for (std::size_t i = 0; i < rays_.size(); ++i)
      if (dot(f.direction, rays_[i]) == 0) out.second.push_back(i);
    return out;
  }

  /// Face spanned by a subset of this cell's generators (a face's generators
  /// are exactly the parent's generators lying on it).
  Cell face_from_indices(const std::vector<std::size_t>& vertex_ids, const std::vector<std::size_t>& ray_ids) const {
    Generators g;
    for (auto i : vertex_ids) g.vertices.push_back(vertices_[i]);
    for (auto i : ray_ids) g.rays.push_back(rays_[i]);
    g.lines = lines_;
    return Cell(ambient_, std::move(g), Canonical{});
  }

 private:
  struct Generators {
    std::vector<Vec> vertices, rays, lines;
  };
  struct Canonical {};

  // Generators already minimal with vertices and rays orthogonal to the lines.
  Cell(std::size_t ambient, Generators gens, Canonical) : ambient_(ambient) {
    vertices_ = detail::sorted_unique(std::move(gens.vertices));
    rays_ = detail::sorted_unique(std::move(gens.rays));
    lines_ = std::move(gens.lines);
    compute_hrep(vertices_, rays_, lines_);
    compute_span();
  }

  Cell(std::size_t ambient, std::vector<Vec> vertices, std::vector<Vec> rays, std::vector<Vec> lines)
      : ambient_(ambient) {
    compute_hrep(vertices, rays, lines);
    auto gens = generators_of(h_rep(), ambient_);
    vertices_ = detail::sorted_unique(std::move(gens.vertices));
    rays_ = detail::sorted_unique(std::move(gens.rays));
    lines_ = std::move(gens.lines);
    compute_span();
  }

  static Generators generators_of(std::span<const AffineForm> halfspaces, std::size_t r) {
    std::vector<Vec> rows;
    for (const auto& h : halfspaces) {
      if (h.direction.size() != r) throw AmbientMismatch("half-space has the wrong dimension");
      Vec row = h.direction;
      row.push_back(h.offset);
      rows.push_back(std::move(row));
    }
    rows.push_back(unit_vec(r + 1, r));
    auto cone = dd::cone_generators(rows, r + 1);
    Generators g;
    for (auto& ray : cone.rays) {
      Scalar t = ray[r];
      ray.pop_back();
      if (t > 0) {
        g.vertices.push_back((1 / t) * ray);
      } else {
        g.rays.push_back(std::move(ray));
      }
    }
    Matrix lines;
    for (auto& l : cone.lineality) {
      l.pop_back();
      lines.push_back(std::move(l));
    }
    rref(lines, r);
    g.lines = std::move(lines);
    return g;
  }

  void compute_hrep(const std::vector<Vec>& vertices, const std::vector<Vec>& rays, const std::vector<Vec>& lines) {
    const std::size_t r = ambient_;
    std::vector<Vec> rows;
    for (const auto& v : vertices) {
      Vec row = v;
      row.push_back(1);
      rows.push_back(std::move(row));
    }
    for (const auto& ray : rays) {
      Vec row = ray;
      row.push_back(0);
      rows.push_back(std::move(row));
    }
    for (const auto& l : lines) {
      Vec row = l;
      row.push_back(0);
      rows.push_back(row);
      rows.push_back(-row);
    }
    auto dual = dd::cone_generators(rows, r + 1);

    std::vector<Vec> directions;
    for (std::size_t i = 1; i < vertices.size(); ++i) directions.push_back(vertices[i] - vertices[0]);
    directions.insert(directions.end(), rays.begin(), rays.end());
    directions.insert(directions.end(), lines.begin(), lines.end());

    facets_.clear();
    for (const auto& ray : dual.rays) {
      AffineForm f{Vec(ray.begin(), ray.end() - 1), ray.back()};
      bool trivial = std::all_of(directions.begin(), directions.end(),
                                 [&](const Vec& d) { return dot(f.direction, d) == 0; });
      if (trivial) continue;  // constant positive on the affine hull
      facets_.push_back(detail::normalize_inequality(f));
    }
    std::sort(facets_.begin(), facets_.end(), [](const AffineForm& a, const AffineForm& b) {
      if (a.direction != b.direction) return lex_less(a.direction, b.direction);
      return a.offset < b.offset;
    });
    Matrix eq(dual.lineality.begin(), dual.lineality.end());
    rref(eq, r + 1);
    equalities_.clear();
    for (auto& row : eq) {
      Vec p = primitive(row);
      equalities_.push_back({Vec(p.begin(), p.end() - 1), p.back()});
    }
  }

  void compute_span() {
    std::vector<Vec> directions;
    for (std::size_t i = 1; i < vertices_.size(); ++i) directions.push_back(vertices_[i] - vertices_[0]);
    directions.insert(directions.end(), rays_.begin(), rays_.end());
    directions.insert(directions.end(), lines_.begin(), lines_.end());
    Matrix m(directions.begin(), directions.end());
    pivots_ = rref(m, ambient_);
    span_basis_ = std::move(m);
    lattice_basis_ = saturated_lattice_basis(span_basis_, ambient_);
  }

  std::size_t ambient_ = 0;
  std::vector<Vec> vertices_, rays_, lines_;
  std::vector<AffineForm> facets_, equalities_;
  std::vector<Vec> span_basis_;
  std::vector<std::size_t> pivots_;
  std::vector<Vec> lattice_basis_;
};

/// build_cell: intersection of half-spaces {form >= 0} in Q^ambient_dim.
inline Cell build_cell(std::span<const AffineForm> halfspaces, std::size_t ambient_dim) {
  return Cell::from_halfspaces(halfspaces, ambient_dim);
}

/// Intersection of two cells, or nullopt when empty.
inline std::optional<Cell> intersect(const Cell& a, const Cell& b) {
  auto h = a.h_rep();
  auto hb = b.h_rep();
  h.insert(h.end(), hb.begin(), hb.end());
  try {
    return Cell::from_halfspaces(h, a.ambient_dim());
  } catch (const EmptyCell&) {
    return std::nullopt;
  }
}

namespace detail {

struct FaceCandidate {
  std::vector<std::size_t> vertices, rays;
  bool operator<(const FaceCandidate& o) const {
    return std::tie(vertices, rays) < std::tie(o.vertices, o.rays);
  }
};

inline std::size_t generator_dim(const Cell& c, const FaceCandidate& f) {
  std::vector<Vec> dirs;
  for (std::size_t i = 1; i < f.vertices.size(); ++i)
    dirs.push_back(c.vertices()[f.vertices[i]] - c.vertices()[f.vertices[0]]);
  for (auto i : f.rays) dirs.push_back(c.rays()[i]);
  dirs.insert(dirs.end(), c.lines().begin(), c.lines().end());
  return rank_of(dirs, c.ambient_dim());
}

inline std::vector<std::size_t> intersect_sorted(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace detail

/// All faces of the given codimension (0 ≤ codim ≤ dim).
inline std::vector<Cell> faces(const Cell& cell, std::size_t codim) {
  if (codim > cell.dim()) throw InvalidArgument("codimension exceeds the cell dimension");
  detail::FaceCandidate whole;
  whole.vertices.resize(cell.vertices().size());
  std::iota(whole.vertices.begin(), whole.vertices.end(), 0);
  whole.rays.resize(cell.rays().size());
  std::iota(whole.rays.begin(), whole.rays.end(), 0);

  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> facet_sets;
  for (const auto& f : cell.facets()) facet_sets.push_back(cell.tight_generators(f));

  std::set<detail::FaceCandidate> level{whole};
  std::size_t current = cell.dim();
  for (std::size_t step = 0; step < codim; ++step) {
    std::set<detail::FaceCandidate> next;
    for (const auto& face : level) {
      for (const auto& [fv, fr] : facet_sets) {
        detail::FaceCandidate sub{detail::intersect_sorted(face.vertices, fv), detail::intersect_sorted(face.rays, fr)};
        if (sub.vertices.empty()) continue;
        if (detail::generator_dim(cell, sub) + 1 != current) continue;
        next.insert(std::move(sub));
      }
    }
    level = std::move(next);
    --current;
  }
  std::vector<Cell> out;
  for (const auto& f : level) out.push_back(cell.face_from_indices(f.vertices, f.rays));
  std::sort(out.begin(), out.end());
  return out;
}

/// Faces of every codimension, the cell itself included.
inline std::vector<Cell> all_faces(const Cell& cell) {
  std::vector<Cell> out;
  for (std::size_t c = 0; c <= cell.dim(); ++c) {
    auto f = faces(cell, c);
    out.insert(out.end(), f.begin(), f.end());
  }
  return out;
}

namespace detail {

/// d is a recession direction of c (a lineality direction when both_ways).
inline bool recedes(const Cell& c, const Vec& d, bool both_ways) {
  for (const auto& e : c.equalities())
    if (dot(e.direction, d) != 0) return false;
  for (const auto& f : c.facets()) {
    Scalar s = dot(f.direction, d);
    if (s < 0 || (both_ways && s != 0)) return false;
  }
  return true;
}

}  // namespace detail

/// Whether every point of `inner` lies in `outer`.
inline bool cell_within(const Cell& inner, const Cell& outer) {
  if (inner.ambient_dim() != outer.ambient_dim()) return false;
  for (const auto& v : inner.vertices())
    if (!outer.contains(v)) return false;
  for (const auto& r : inner.rays())
    if (!detail::recedes(outer, r, false)) return false;
  for (const auto& l : inner.lines())
    if (!detail::recedes(outer, l, true)) return false;
  return true;
}

/// A subset of `cell` is a face iff it equals the smallest face containing it.
inline bool is_face_of(const Cell& candidate, const Cell& cell) {
  if (candidate.dim() > cell.dim() || !cell_within(candidate, cell)) return false;
  std::vector<const AffineForm*> tight;
  for (const auto& f : cell.facets()) {
    bool all = std::all_of(candidate.vertices().begin(), candidate.vertices().end(),
                           [&](const Vec& v) { return f(v) == 0; }) &&
               std::all_of(candidate.rays().begin(), candidate.rays().end(),
                           [&](const Vec& r) { return dot(f.direction, r) == 0; });
    if (all) tight.push_back(&f);
  }
  for (const auto& v : cell.vertices()) {
    bool in = std::all_of(tight.begin(), tight.end(), [&](const AffineForm* f) { return (*f)(v) == 0; });
    if (in && !candidate.contains(v)) return false;
  }
  for (const auto& r : cell.rays()) {
    bool in = std::all_of(tight.begin(), tight.end(), [&](const AffineForm* f) { return dot(f->direction, r) == 0; });
    if (in && !detail::recedes(candidate, r, false)) return false;
  }
  for (const auto& l : cell.lines())
    if (!detail::recedes(candidate, l, true)) return false;
  return true;
}

/// Recursive triangulation of a bounded cell: cone from the first vertex over
/// the triangulated facets that avoid it. Each simplex lists its dim+1 vertices.
inline std::vector<std::vector<Vec>> triangulate(const Cell& cell) {
  if (!cell.is_bounded()) throw UnboundedCell("cannot triangulate an unbounded cell");
  if (cell.dim() == 0) return {{cell.vertices().front()}};
  const Vec& apex = cell.base_point();
  std::vector<std::vector<Vec>> out;
  for (const auto& facet : faces(cell, 1)) {
    if (facet.contains(apex)) continue;
    for (auto simplex : triangulate(facet)) {
      simplex.insert(simplex.begin(), apex);
      out.push_back(std::move(simplex));
    }
  }
  return out;
}

enum class VolumeMode { euclidean, lattice };

/// Volume in span coordinates (euclidean; Lebesgue for full-dimensional
/// cells) or normalized so a primitive lattice simplex has volume 1/dim!.
inline Scalar cell_volume(const Cell& cell, VolumeMode mode) {
  if (!cell.is_bounded()) throw UnboundedCell("volume of an unbounded cell");
  const std::size_t n = cell.dim();
  Scalar total = 0;
  for (const auto& simplex : triangulate(cell)) {
    Matrix m;
    Vec t0 = cell.point_coordinates(simplex[0]);
    for (std::size_t i = 1; i <= n; ++i) m.push_back(cell.point_coordinates(simplex[i]) - t0);
    Scalar d = n == 0 ? Scalar(1) : determinant(m);
    total += d < 0 ? Scalar(-d) : d;
  }
  total /= factorial(static_cast<unsigned>(n));
  if (mode == VolumeMode::lattice) total /= cell.lattice_index();
  return total;
}

/// Polyhedral complex closed under faces. `cells()` is sorted by dimension,
/// then canonically; `maximal_cells()` are indices of cells that are faces of
/// no other member.
class CellComplex {
 public:
  CellComplex() = default;
  explicit CellComplex(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  std::size_t ambient_dim() const { return ambient_; }
  const std::vector<Cell>& cells() const { return cells_; }
  const Cell& cell(std::size_t i) const { return cells_.at(i); }
  std::size_t size() const { return cells_.size(); }
  /// (child, parent) pairs with child a facet (codim-1 face) of parent.
  const std::vector<std::pair<std::size_t, std::size_t>>& face_lattice() const { return face_lattice_; }
  const std::vector<std::size_t>& maximal_cells() const { return maximal_; }

  int dim() const {
    int d = -1;
    for (const auto& c : cells_) d = std::max(d, static_cast<int>(c.dim()));
    return d;
  }
  bool is_pure() const {
    for (auto m : maximal_)
      if (static_cast<int>(cells_[m].dim()) != dim()) return false;
    return true;
  }

  std::vector<std::size_t> cells_of_dim(std::size_t d) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cells_.size(); ++i)
      if (cells_[i].dim() == d) out.push_back(i);
    return out;
  }
  std::optional<std::size_t> index_of(const Cell& c) const {
    auto it = std::lower_bound(cells_.begin(), cells_.end(), c, order);
    if (it != cells_.end() && *it == c) return static_cast<std::size_t>(it - cells_.begin());
    return std::nullopt;
  }
  /// Parents of a cell in the face lattice (cells having it as a facet).
  std::vector<std::size_t> cofaces(std::size_t child) const {
    std::vector<std::size_t> out;
    for (const auto& [c, p] : face_lattice_)
      if (c == child) out.push_back(p);
    return out;
  }
  /// Facets of a cell within the complex.
  std::vector<std::size_t> facets_of(std::size_t parent) const {
    std::vector<std::size_t> out;
    for (const auto& [c, p] : face_lattice_)
      if (p == parent) out.push_back(c);
    return out;
  }

  /// Builds the face closure; throws NotADecomposition for a bad pair.
  /// `validate` off skips the pairwise check for cells known to tile correctly.
  static CellComplex build(std::span<const Cell> generators, std::size_t ambient_dim, bool validate = true) {
    for (const auto& c : generators)
      if (c.ambient_dim() != ambient_dim) throw AmbientMismatch("cell outside the common ambient space");
    for (std::size_t i = 0; validate && i < generators.size(); ++i) {
      for (std::size_t j = i + 1; j < generators.size(); ++j) {
        auto meet = intersect(generators[i], generators[j]);
        if (!meet) continue;
        if (!is_face_of(*meet, generators[i]) || !is_face_of(*meet, generators[j]))
          throw NotADecomposition("cells " + std::to_string(i) + " and " + std::to_string(j) +
                                  " meet in a set that is not a common face");
      }
    }
    CellComplex cx(ambient_dim);
    std::map<Cell, std::vector<Cell>> facet_map;
    std::vector<Cell> stack(generators.begin(), generators.end());
    while (!stack.empty()) {
      Cell c = std::move(stack.back());
      stack.pop_back();
      if (facet_map.count(c)) continue;
      auto fs = c.dim() == 0 ? std::vector<Cell>{} : faces(c, 1);
      for (const auto& f : fs)
        if (!facet_map.count(f)) stack.push_back(f);
      facet_map.emplace(std::move(c), std::move(fs));
    }
    for (const auto& [c, fs] : facet_map) cx.cells_.push_back(c);
    std::stable_sort(cx.cells_.begin(), cx.cells_.end(), order);
    for (std::size_t p = 0; p < cx.cells_.size(); ++p)
      for (const auto& f : facet_map.at(cx.cells_[p])) cx.face_lattice_.emplace_back(*cx.index_of(f), p);
    std::sort(cx.face_lattice_.begin(), cx.face_lattice_.end());
    std::vector<bool> has_parent(cx.cells_.size(), false);
    for (const auto& [c, p] : cx.face_lattice_) has_parent[c] = true;
    for (std::size_t i = 0; i < cx.cells_.size(); ++i)
      if (!has_parent[i]) cx.maximal_.push_back(i);
    return cx;
  }

 private:
  static bool order(const Cell& a, const Cell& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a < b;
  }

  std::size_t ambient_ = 0;
  std::vector<Cell> cells_;
  std::vector<std::pair<std::size_t, std::size_t>> face_lattice_;
  std::vector<std::size_t> maximal_;
};

inline CellComplex cell_complex(std::span<const Cell> cells, std::optional<std::size_t> ambient_dim = std::nullopt) {
  std::size_t r = ambient_dim ? *ambient_dim : (cells.empty() ? 0 : cells.front().ambient_dim());
  return CellComplex::build(cells, r);
}

/// Face closure of cells already known to meet along common faces.
inline CellComplex trusted_cell_complex(std::span<const Cell> cells, std::size_t ambient_dim) {
  return CellComplex::build(cells, ambient_dim, false);
}

/// Pure-dimensional complex with a positive weight on each maximal cell.
class WeightedComplex {
 public:
  WeightedComplex() = default;
  /// `weights[i]` belongs to complex.maximal_cells()[i].
  WeightedComplex(CellComplex complex, std::vector<Scalar> weights, std::optional<std::size_t> dim = std::nullopt)
      : complex_(std::move(complex)), weights_(std::move(weights)) {
    if (!complex_.is_pure()) throw NotPure("weighted complexes must be pure-dimensional");
    if (weights_.size() != complex_.maximal_cells().size())
      throw InvalidArgument("one weight per maximal cell is required");
    for (const auto& w : weights_)
      if (w <= 0) throw InvalidArgument("weights must be positive");
    dim_ = complex_.maximal_cells().empty() ? (dim ? *dim : 0) : complex_.cell(complex_.maximal_cells()[0]).dim();
    if (dim && !complex_.maximal_cells().empty() && *dim != dim_) throw NotPure("declared dimension mismatch");
  }

  const CellComplex& complex() const { return complex_; }
  const std::vector<Scalar>& weights() const { return weights_; }
  std::size_t dim() const { return dim_; }
  Scalar weight_of_cell(std::size_t cell_index) const {
    const auto& m = complex_.maximal_cells();
    auto it = std::find(m.begin(), m.end(), cell_index);
    if (it == m.end()) throw InvalidArgument("cell is not maximal");
    return weights_[static_cast<std::size_t>(it - m.begin())];
  }

 private:
  CellComplex complex_;
  std::vector<Scalar> weights_;
  std::size_t dim_ = 0;
};

/// Splits every maximal cell along each cutter hyperplane {form = 0}.
inline CellComplex refine(const CellComplex& complex, std::span<const AffineForm> cutters) {
  std::vector<Cell> pieces;
  for (auto m : complex.maximal_cells()) pieces.push_back(complex.cell(m));
  for (const auto& cut : cutters) {
    std::vector<Cell> next;
    for (const auto& piece : pieces) {
      bool above = false, below = false;
      for (const auto& v : piece.vertices()) {
        int s = sign(cut(v));
        above |= s > 0;
        below |= s < 0;
      }
      for (const auto& r : piece.rays()) {
        int s = sign(dot(cut.direction, r));
        above |= s > 0;
        below |= s < 0;
      }
      for (const auto& l : piece.lines()) {
        if (dot(cut.direction, l) != 0) above = below = true;
      }
      if (!(above && below)) {
        next.push_back(piece);
        continue;
      }
      for (const auto& side : {cut, -cut}) {
        auto h = piece.h_rep();
        h.push_back(side);
        next.push_back(Cell::from_halfspaces(h, complex.ambient_dim()));
      }
    }
    pieces = std::move(next);
  }
  return CellComplex::build(pieces, complex.ambient_dim());
}

/// Image of a cell under an affine map.
inline Cell image(const AffineMap& u, const Cell& c) {
  std::vector<Vec> v, r, l;
  for (const auto& x : c.vertices()) v.push_back(u.apply(x));
  for (const auto& x : c.rays()) r.push_back(u.apply_linear(x));
  for (const auto& x : c.lines()) l.push_back(u.apply_linear(x));
  return Cell::from_generators(u.target_dim(), v, r, l);
}

}  // namespace superform

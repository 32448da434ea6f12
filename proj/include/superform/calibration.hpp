#pragma once

// Vector-volumes, calibrations of pure complexes, discordance and pushforward.
//
// A vector-volume on an n-dimensional cell is stored as one scalar a: the
// class of (span basis b_1..b_n declared direct, a · b_1∧…∧b_n). Its
// multivector coordinates are a times the Plücker coordinates of the basis.

#include <cstdlib>
#include <map>
#include <optional>
#include <vector>

#include "superform/error.hpp"
#include "superform/polyhedra.hpp"
#include "superform/rational.hpp"
#include "superform/superforms.hpp"

namespace superform {

/// Coordinates in the exterior basis e_K of Λ^k(Q^r), K increasing; no zeros stored.
using Multivector = std::map<IndexSet, Scalar>;

inline void add_to(Multivector& acc, const Multivector& v, const Scalar& factor = 1) {
  for (const auto& [k, c] : v) {
    Scalar add = factor * c;
    if (add == 0) continue;
    auto [it, fresh] = acc.try_emplace(k, add);
    if (!fresh) {
      it->second += add;
      if (it->second == 0) acc.erase(it);
    }
  }
}

/// b_1∧…∧b_k for the rows of `basis`.
inline Multivector plucker(const std::vector<Vec>& basis, std::size_t r) {
  Multivector out;
  Matrix cols(r, Vec(basis.size()));
  for (std::size_t k = 0; k < basis.size(); ++k)
    for (std::size_t i = 0; i < r; ++i) cols[i][k] = basis[k][i];
  IndexSet all(basis.size());
  std::iota(all.begin(), all.end(), 0);
  for (const auto& K : detail::subsets_of_size(r, basis.size())) {
    Scalar d = detail::minor(cols, K, all);
    if (d != 0) out[K] = d;
  }
  return out;
}

struct VectorVolume {
  Scalar coefficient;  ///< relative to the cell's span basis

  Multivector multivector(const Cell& cell) const {
    Multivector out;
    add_to(out, plucker(cell.span_basis(), cell.ambient_dim()), coefficient);
    return out;
  }
};

class Calibration {
 public:
  Calibration() = default;
  /// `coefficients[k]` calibrates complex.maximal_cells()[k].
  Calibration(CellComplex complex, std::vector<Scalar> coefficients, std::optional<std::size_t> dim = std::nullopt)
      : complex_(std::move(complex)), coefficients_(std::move(coefficients)) {
    if (!complex_.is_pure()) throw NotPure("calibrated complexes must be pure-dimensional");
    if (coefficients_.size() != complex_.maximal_cells().size())
      throw InvalidArgument("one vector-volume per maximal cell is required");
    dim_ = complex_.maximal_cells().empty() ? dim.value_or(0) : complex_.cell(complex_.maximal_cells()[0]).dim();
    if (dim && *dim != dim_) {
      // a zero calibration may sit on a lower-dimensional carrier (collapsed image)
      bool zero = std::all_of(coefficients_.begin(), coefficients_.end(), [](const Scalar& a) { return a == 0; });
      if (!zero || *dim < dim_) throw NotPure("declared dimension mismatch");
      dim_ = *dim;
    }
  }

  const CellComplex& complex() const { return complex_; }
  std::size_t dim() const { return dim_; }
  std::size_t ambient_dim() const { return complex_.ambient_dim(); }
  const std::vector<Scalar>& coefficients() const { return coefficients_; }
  VectorVolume volume(std::size_t k) const { return {coefficients_.at(k)}; }
  /// Position of a maximal cell (index into complex().cells()) in maximal_cells().
  std::size_t slot_of(std::size_t cell_index) const {
    const auto& m = complex_.maximal_cells();
    auto it = std::find(m.begin(), m.end(), cell_index);
    if (it == m.end()) throw InvalidArgument("cell is not maximal");
    return static_cast<std::size_t>(it - m.begin());
  }
  Multivector multivector(std::size_t k) const {
    if (coefficients_.at(k) == 0) return {};
    return volume(k).multivector(complex_.cell(complex_.maximal_cells()[k]));
  }

  bool operator==(const Calibration& o) const {
    return complex_.cells() == o.complex_.cells() && coefficients_ == o.coefficients_;
  }

 private:
  CellComplex complex_;
  std::vector<Scalar> coefficients_;
  std::size_t dim_ = 0;
};

/// weight(D) times the primitive lattice n-vector of each maximal cell's span.
inline Calibration canonical_calibration(const WeightedComplex& wc) {
  std::vector<Scalar> a;
  const auto& m = wc.complex().maximal_cells();
  for (std::size_t k = 0; k < m.size(); ++k) a.push_back(wc.weights()[k] * wc.complex().cell(m[k]).lattice_index());
  return Calibration(wc.complex(), std::move(a), wc.dim());
}

struct Discordance {
  std::size_t face = 0;  ///< index into complex().cells()
  int orientation = 1;   ///< ±1 relative to the face's span basis
  Multivector multivector;

  bool harmonious() const { return multivector.empty(); }
  Discordance flipped() const {
    Discordance d = *this;
    d.orientation = -d.orientation;
    for (auto& [k, c] : d.multivector) c = -c;
    return d;
  }
  /// Representative whose first nonzero coordinate is positive.
  Discordance canonical() const {
    if (!multivector.empty() && multivector.begin()->second < 0) return flipped();
    if (multivector.empty() && orientation < 0) return flipped();
    return *this;
  }
  /// Equality of classes under the simultaneous sign flip.
  bool equivalent(const Discordance& o) const {
    auto a = canonical(), b = o.canonical();
    return a.face == b.face && a.orientation == b.orientation && a.multivector == b.multivector;
  }
};

/// +1 or -1: whether (outward, oriented face basis) is direct for the cell.
inline int outward_sign(const Cell& cell, const Cell& face, int orientation) {
  Vec outward = face.relative_interior_point() - cell.relative_interior_point();
  Matrix m;
  m.push_back(cell.direction_coordinates(outward));
  for (const auto& b : face.span_basis()) m.push_back(cell.direction_coordinates(b));
  int s = sign(determinant(m));
  return s * orientation;
}

/// Multivector of the vector-volume of maximal slot k, oriented by the
/// outward normal at `face` and the face orientation.
inline Multivector oriented_at_face(const Calibration& cal, std::size_t face, std::size_t k, int orientation) {
  const auto& cx = cal.complex();
  const Cell& c = cx.cell(cx.maximal_cells()[k]);
  Multivector out;
  add_to(out, cal.multivector(k), Scalar(outward_sign(c, cx.cell(face), orientation)));
  return out;
}

/// Maximal slots whose cell has `face` as a facet.
inline std::vector<std::size_t> adjacent_slots(const Calibration& cal, std::size_t face) {
  std::vector<std::size_t> out;
  for (auto parent : cal.complex().cofaces(face)) {
    const auto& m = cal.complex().maximal_cells();
    auto it = std::find(m.begin(), m.end(), parent);
    if (it != m.end()) out.push_back(static_cast<std::size_t>(it - m.begin()));
  }
  return out;
}

inline Discordance discordance(const Calibration& cal, std::size_t face, int orientation = 1) {
  const auto& cx = cal.complex();
  if (face >= cx.size() || cx.cell(face).dim() + 1 != cal.dim())
    throw NotCodimOne("discordance needs a codimension-one cell");
  auto slots = adjacent_slots(cal, face);
  if (slots.empty()) throw NotCodimOne("cell is not a facet of a maximal cell");
  Discordance d;
  d.face = face;
  d.orientation = orientation;
  for (auto k : slots) add_to(d.multivector, oriented_at_face(cal, face, k, orientation));
  return d;
}

inline Discordance discordance(const Calibration& cal, const Cell& face, int orientation = 1) {
  auto idx = cal.complex().index_of(face);
  if (!idx) throw NotCodimOne("cell is not part of the calibrated complex");
  return discordance(cal, *idx, orientation);
}

/// Indices of the codimension-one cells that are facets of maximal cells.
inline std::vector<std::size_t> codim_one_cells(const Calibration& cal) {
  std::vector<std::size_t> out;
  if (cal.dim() == 0) return out;
  for (auto f : cal.complex().cells_of_dim(cal.dim() - 1))
    if (!adjacent_slots(cal, f).empty()) out.push_back(f);
  return out;
}

/// Discordances at every non-harmonious codimension-one cell, canonical orientation.
inline std::vector<Discordance> boundary_data(const Calibration& cal) {
  std::vector<Discordance> out;
  for (auto f : codim_one_cells(cal)) {
    Discordance d = discordance(cal, f);
    if (!d.harmonious()) out.push_back(std::move(d));
  }
  return out;
}

/// Refines the carrier along the cutters; each new maximal cell keeps the
/// vector-volume of the old cell containing it.
inline Calibration refine(const Calibration& cal, std::span<const AffineForm> cutters) {
  CellComplex fine = refine(cal.complex(), cutters);
  std::vector<Scalar> a;
  const auto& old_max = cal.complex().maximal_cells();
  for (auto m : fine.maximal_cells()) {
    const Cell& piece = fine.cell(m);
    std::optional<std::size_t> host;
    for (std::size_t k = 0; k < old_max.size() && !host; ++k)
      if (cell_within(piece, cal.complex().cell(old_max[k]))) host = k;
    if (!host) throw InvalidArgument("refined cell outside the original complex");
    const Cell& old = cal.complex().cell(old_max[*host]);
    // same span; re-express the coefficient against the piece's basis
    Matrix m2;
    for (const auto& b : piece.span_basis()) m2.push_back(old.direction_coordinates(b));
    a.push_back(cal.coefficients()[*host] * determinant(m2));
  }
  return Calibration(std::move(fine), std::move(a), cal.dim());
}

/// u_*μ on a target complex whose maximal cells are exactly the
/// full-dimensional images of source maximal cells.
inline Calibration pushforward_calibration(const AffineMap& u, const Calibration& cal, const CellComplex& target) {
  if (u.source_dim != cal.ambient_dim() || u.target_dim() != target.ambient_dim())
    throw AmbientMismatch("map does not connect the calibrated and target spaces");
  const auto& tmax = target.maximal_cells();
  const std::size_t n = cal.dim();
  if (!target.is_pure() || target.dim() > static_cast<int>(n))
    throw IncompatibleDecompositions("target must be pure of at most the calibrated dimension");
  std::vector<Scalar> a(tmax.size(), Scalar(0));
  const auto& smax = cal.complex().maximal_cells();
  for (std::size_t k = 0; k < smax.size(); ++k) {
    const Cell& c = cal.complex().cell(smax[k]);
    Cell img = image(u, c);
    if (img.dim() < n) continue;
    auto idx = target.index_of(img);
    auto slot = idx ? std::find(tmax.begin(), tmax.end(), *idx) : tmax.end();
    if (slot == tmax.end()) throw IncompatibleDecompositions("image of a cell is not a cell of the target");
    Matrix t;
    for (const auto& b : c.span_basis()) t.push_back(img.direction_coordinates(u.apply_linear(b)));
    Scalar d = determinant(t);
    a[static_cast<std::size_t>(slot - tmax.begin())] += cal.coefficients()[k] * (d < 0 ? Scalar(-d) : d);
  }
  return Calibration(target, std::move(a), n);
}

struct PushforwardSetup {
  Calibration source;  ///< refined so that every image is a target cell
  CellComplex target;
};

/// Common refinement making u_* defined: images are cut by each other's
/// facet and span hyperplanes and the source is cut by the pulled-back ones.
inline PushforwardSetup prepare_pushforward(const AffineMap& u, const Calibration& cal) {
  const std::size_t n = cal.dim();
  std::vector<Cell> images;
  for (auto m : cal.complex().maximal_cells()) {
    Cell img = image(u, cal.complex().cell(m));
    if (img.dim() == n) images.push_back(std::move(img));
  }
  std::vector<AffineForm> cutters;
  for (const auto& img : images) {
    for (const auto& f : img.facets()) cutters.push_back(f);
    for (const auto& e : img.equalities()) cutters.push_back(e);
  }
  std::sort(cutters.begin(), cutters.end(), [](const AffineForm& a, const AffineForm& b) {
    if (a.direction != b.direction) return lex_less(a.direction, b.direction);
    return a.offset < b.offset;
  });
  cutters.erase(std::unique(cutters.begin(), cutters.end()), cutters.end());

  std::vector<AffineForm> pulled;
  for (const auto& c : cutters) {
    AffineForm p = u.pull(c);
    if (!is_zero(p.direction)) pulled.push_back(p);
  }
  Calibration source = refine(cal, pulled);

  std::set<Cell> pieces;
  for (auto m : source.complex().maximal_cells()) {
    Cell img = image(u, source.complex().cell(m));
    if (img.dim() == n) pieces.insert(std::move(img));
  }
  std::vector<Cell> cells(pieces.begin(), pieces.end());
  try {
    return {std::move(source), cell_complex(cells, u.target_dim())};
  } catch (const NotADecomposition& e) {
    throw IncompatibleDecompositions(std::string("images do not form a decomposition: ") + e.what());
  }
}

}  // namespace superform

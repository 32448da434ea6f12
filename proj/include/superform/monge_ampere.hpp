#pragma once

// Tropical polynomials, their linearity complexes, corner loci and
// Monge-Ampère measures; log-sum-exp smoothing as a floating-point check.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "superform/calibration.hpp"
#include "superform/error.hpp"
#include "superform/polyhedra.hpp"
#include "superform/polynomial.hpp"
#include "superform/rational.hpp"

namespace superform {

struct TropicalTerm {
  Vec exponent;
  Scalar coefficient;
};

/// x ↦ max_i (<m_i, x> + c_i); exponents distinct and sorted.
class TropicalPolynomial {
 public:
  TropicalPolynomial() = default;
  TropicalPolynomial(std::size_t n, std::vector<TropicalTerm> terms) : n_(n) {
    if (terms.empty()) throw InvalidArgument("a tropical polynomial needs at least one term");
    std::map<Vec, Scalar, bool (*)(const Vec&, const Vec&)> merged(
        [](const Vec& a, const Vec& b) { return lex_less(a, b); });
    for (auto& t : terms) {
      if (t.exponent.size() != n) throw AmbientMismatch("exponent has the wrong length");
      auto [it, fresh] = merged.try_emplace(t.exponent, t.coefficient);
      if (!fresh && t.coefficient > it->second) it->second = t.coefficient;
    }
    for (auto& [e, c] : merged) terms_.push_back({e, c});
  }

  std::size_t ambient_dim() const { return n_; }
  const std::vector<TropicalTerm>& terms() const { return terms_; }

  Scalar term_value(std::size_t i, std::span<const Scalar> x) const {
    return dot(terms_[i].exponent, x) + terms_[i].coefficient;
  }
  Scalar operator()(std::span<const Scalar> x) const {
    Scalar best = term_value(0, x);
    for (std::size_t i = 1; i < terms_.size(); ++i) best = std::max(best, term_value(i, x));
    return best;
  }
  std::vector<std::size_t> active_terms(std::span<const Scalar> x, const std::vector<std::size_t>& among) const {
    Scalar best = term_value(among.front(), x);
    for (auto i : among) best = std::max(best, term_value(i, x));
    std::vector<std::size_t> out;
    for (auto i : among)
      if (term_value(i, x) == best) out.push_back(i);
    return out;
  }

  /// Terms that are strictly maximal somewhere: vertices of the upper hull
  /// of the lifted exponents (m_i, c_i).
  std::vector<std::size_t> essential_terms() const {
    std::vector<Vec> lifted;
    for (const auto& t : terms_) {
      Vec v = t.exponent;
      v.push_back(t.coefficient);
      lifted.push_back(std::move(v));
    }
    Vec down = zero_vec(n_ + 1);
    down[n_] = -1;
    Cell hull = Cell::from_generators(n_ + 1, lifted, {down});
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (std::binary_search(hull.vertices().begin(), hull.vertices().end(), lifted[i], lex_less)) out.push_back(i);
    return out;
  }

  /// Tropical product (ordinary sum of the functions), inessential terms dropped.
  friend TropicalPolynomial operator*(const TropicalPolynomial& f, const TropicalPolynomial& g) {
    if (f.n_ != g.n_) throw AmbientMismatch("tropical product of polynomials on different spaces");
    std::vector<TropicalTerm> t;
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) t.push_back({a.exponent + b.exponent, a.coefficient + b.coefficient});
    return TropicalPolynomial(f.n_, std::move(t)).pruned();
  }

  TropicalPolynomial pruned() const {
    std::vector<TropicalTerm> keep;
    for (auto i : essential_terms()) keep.push_back(terms_[i]);
    return TropicalPolynomial(n_, std::move(keep));
  }

  bool operator==(const TropicalPolynomial& o) const {
    if (n_ != o.n_ || terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].exponent != o.terms_[i].exponent || terms_[i].coefficient != o.terms_[i].coefficient) return false;
    return true;
  }

 private:
  std::size_t n_ = 0;
  std::vector<TropicalTerm> terms_;
};

struct LinearityComplex {
  CellComplex complex;
  /// Active essential term indices (into f.terms()) for every cell.
  std::vector<std::vector<std::size_t>> active;
};

inline LinearityComplex linearity_complex(const TropicalPolynomial& f) {
  const std::size_t n = f.ambient_dim();
  auto ess = f.essential_terms();
  std::vector<Cell> regions;
  for (auto i : ess) {
    std::vector<AffineForm> h;
    for (auto j : ess) {
      if (j == i) continue;
      h.push_back({f.terms()[i].exponent - f.terms()[j].exponent, f.terms()[i].coefficient - f.terms()[j].coefficient});
    }
    regions.push_back(build_cell(h, n));
  }
  LinearityComplex out{trusted_cell_complex(regions, n), {}};
  for (const auto& c : out.complex.cells()) out.active.push_back(f.active_terms(c.relative_interior_point(), ess));
  return out;
}

struct Atom {
  Vec point;
  Scalar mass;
  bool operator==(const Atom&) const = default;
};

/// Finite signed sum of point masses, sorted by point, no zero masses.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  explicit AtomicMeasure(std::size_t n) : n_(n) {}

  std::size_t ambient_dim() const { return n_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool empty() const { return atoms_.empty(); }

  void add(const Vec& point, const Scalar& mass) {
    if (mass == 0) return;
    auto it = std::lower_bound(atoms_.begin(), atoms_.end(), point,
                               [](const Atom& a, const Vec& p) { return lex_less(a.point, p); });
    if (it != atoms_.end() && it->point == point) {
      it->mass += mass;
      if (it->mass == 0) atoms_.erase(it);
      return;
    }
    atoms_.insert(it, Atom{point, mass});
  }
  void add(const AtomicMeasure& o, const Scalar& factor = 1) {
    for (const auto& a : o.atoms_) add(a.point, factor * a.mass);
  }
  Scalar total_mass() const {
    Scalar t = 0;
    for (const auto& a : atoms_) t += a.mass;
    return t;
  }
  /// Σ mass · φ(point)
  Scalar pair(const Polynomial& phi) const {
    Scalar t = 0;
    for (const auto& a : atoms_) t += a.mass * phi.evaluate(a.point);
    return t;
  }
  bool operator==(const AtomicMeasure& o) const { return n_ == o.n_ && atoms_ == o.atoms_; }

 private:
  std::size_t n_ = 0;
  std::vector<Atom> atoms_;
};

/// Atoms at the vertices whose active gradients affinely span Q^n, with mass
/// n! · vol(conv of the active exponents). These vertices are read off the
/// non-vertical facets a·(m, c) + b ≥ 0 of the lifted upper hull: with
/// t = -a_c > 0 the vertex is x = -a_m / t and the tight points are active.
inline AtomicMeasure ma_measure(const TropicalPolynomial& f) {
  const std::size_t n = f.ambient_dim();
  AtomicMeasure mu(n);
  std::vector<Vec> lifted;
  for (const auto& t : f.terms()) {
    Vec v = t.exponent;
    v.push_back(t.coefficient);
    lifted.push_back(std::move(v));
  }
  Vec down = zero_vec(n + 1);
  down[n] = -1;
  Cell hull = Cell::from_generators(n + 1, lifted, {down});
  for (const auto& facet : hull.facets()) {
    Scalar t = -facet.direction[n];
    if (t <= 0) continue;
    Vec x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = -facet.direction[k] / t;
    std::vector<Vec> active;
    for (std::size_t i = 0; i < lifted.size(); ++i)
      if (facet(lifted[i]) == 0) active.push_back(f.terms()[i].exponent);
    Cell dual = Cell::from_generators(n, active);
    if (dual.dim() != n) continue;
    mu.add(x, factorial(static_cast<unsigned>(n)) * cell_volume(dual, VolumeMode::euclidean));
  }
  return mu;
}

/// n! · lattice volume of the Newton polytope: the total mass of ma_measure.
inline Scalar newton_mass(const TropicalPolynomial& f) {
  const std::size_t n = f.ambient_dim();
  std::vector<Vec> exps;
  for (const auto& t : f.terms()) exps.push_back(t.exponent);
  Cell hull = Cell::from_generators(n, exps);
  if (hull.dim() != n) return 0;
  return factorial(static_cast<unsigned>(n)) * cell_volume(hull, VolumeMode::lattice);
}

/// Polarization: (1/n!) Σ_{∅≠S⊆[n]} (-1)^{n-|S|} MA(⊙_{i∈S} f_i).
inline AtomicMeasure mixed_ma(const std::vector<TropicalPolynomial>& fs) {
  if (fs.empty()) throw ArityMismatch("mixed Monge-Ampère needs one polynomial per dimension");
  const std::size_t n = fs.front().ambient_dim();
  if (fs.size() != n) throw ArityMismatch("mixed Monge-Ampère needs exactly n polynomials");
  for (const auto& f : fs)
    if (f.ambient_dim() != n) throw AmbientMismatch("polynomials live in different spaces");
  AtomicMeasure out(n);
  const Scalar norm = 1 / factorial(static_cast<unsigned>(n));
  for (std::size_t s = 1; s < (std::size_t(1) << n); ++s) {
    std::optional<TropicalPolynomial> prod;
    std::size_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(s >> i & 1u)) continue;
      ++size;
      prod = prod ? (*prod * fs[i]) : fs[i].pruned();
    }
    Scalar sign = (n - size) % 2 ? Scalar(-1) : Scalar(1);
    out.add(ma_measure(*prod), sign * norm);
  }
  return out;
}

struct TropicalHypersurface {
  WeightedComplex locus;
  /// Active term indices for each maximal cell of the locus, in maximal_cells() order.
  std::vector<std::vector<std::size_t>> active;
};

/// Codimension-one cells of the linearity complex weighted by the lattice
/// length of the dual Newton edge.
inline TropicalHypersurface corner_locus(const TropicalPolynomial& f) {
  const std::size_t n = f.ambient_dim();
  auto lc = linearity_complex(f);
  std::vector<Cell> cells;
  std::vector<std::vector<std::size_t>> act;
  if (n > 0)
    for (auto i : lc.complex.cells_of_dim(n - 1)) {
      cells.push_back(lc.complex.cell(i));
      act.push_back(lc.active[i]);
    }
  CellComplex cx = trusted_cell_complex(cells, n);
  std::vector<Scalar> weights;
  std::vector<std::vector<std::size_t>> ordered;
  for (auto m : cx.maximal_cells()) {
    auto it = std::find(cells.begin(), cells.end(), cx.cell(m));
    const auto& a = act[static_cast<std::size_t>(it - cells.begin())];
    std::vector<Vec> ends;
    for (auto t : a) ends.push_back(f.terms()[t].exponent);
    weights.push_back(cell_volume(Cell::from_generators(n, ends), VolumeMode::lattice));
    ordered.push_back(a);
  }
  return {WeightedComplex(std::move(cx), std::move(weights), n == 0 ? 0 : n - 1), std::move(ordered)};
}

/// Non-harmonious codimension-one faces of the canonical calibration.
inline std::vector<Discordance> unbalanced_faces(const WeightedComplex& wc) {
  return boundary_data(canonical_calibration(wc));
}

inline bool is_balanced(const TropicalHypersurface& h) { return unbalanced_faces(h.locus).empty(); }

/// n! det Hess of ε log Σ exp((<m_i,x> + c_i)/ε) at x.
inline double lse_density(const TropicalPolynomial& f, double eps, std::span<const double> x) {
  if (!(eps > 0)) throw NonPositiveEpsilon("smoothing parameter must be positive");
  const std::size_t n = f.ambient_dim();
  if (x.size() != n) throw AmbientMismatch("evaluation point has the wrong length");
  const auto& t = f.terms();
  std::vector<double> z(t.size());
  std::vector<Eigen::VectorXd> m(t.size(), Eigen::VectorXd(static_cast<Eigen::Index>(n)));
  double zmax = -INFINITY;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double v = t[i].coefficient.get_d();
    for (std::size_t k = 0; k < n; ++k) {
      m[i][static_cast<Eigen::Index>(k)] = t[i].exponent[k].get_d();
      v += t[i].exponent[k].get_d() * x[k];
    }
    z[i] = v / eps;
    zmax = std::max(zmax, z[i]);
  }
  double total = 0;
  for (auto& v : z) {
    v = std::exp(v - zmax);
    total += v;
  }
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < t.size(); ++i) {
    double w = z[i] / total;
    mean += w * m[i];
    second += w * m[i] * m[i].transpose();
  }
  Eigen::MatrixXd h = (second - mean * mean.transpose()) / eps;
  double fact = 1;
  for (std::size_t k = 2; k <= n; ++k) fact *= static_cast<double>(k);
  return fact * h.determinant();
}

/// Midpoint rule on a grid^n tensor grid over the bounding box of `box`,
/// keeping the nodes that lie in the cell.
inline double lse_ma_quadrature(const TropicalPolynomial& f, const Polynomial& phi, double eps, const Cell& box,
                                std::size_t grid) {
  if (!(eps > 0)) throw NonPositiveEpsilon("smoothing parameter must be positive");
  if (!box.is_bounded()) throw UnboundedCell("quadrature box must be bounded");
  if (grid < 2) throw InvalidArgument("grid must have at least two nodes per axis");
  const std::size_t n = f.ambient_dim();
  if (box.ambient_dim() != n || phi.nvars() != n) throw AmbientMismatch("box, test function and polynomial disagree");
  std::vector<double> lo(n, INFINITY), hi(n, -INFINITY);
  for (const auto& v : box.vertices())
    for (std::size_t k = 0; k < n; ++k) {
      lo[k] = std::min(lo[k], v[k].get_d());
      hi[k] = std::max(hi[k], v[k].get_d());
    }
  std::vector<double> step(n);
  double cell_measure = 1;
  for (std::size_t k = 0; k < n; ++k) {
    step[k] = (hi[k] - lo[k]) / static_cast<double>(grid);
    cell_measure *= step[k];
  }
  std::vector<std::vector<double>> facets;
  for (const auto& h : box.h_rep()) {
    std::vector<double> row;
    for (const auto& a : h.direction) row.push_back(a.get_d());
    row.push_back(h.offset.get_d());
    facets.push_back(std::move(row));
  }
  const double tol = 1e-12;
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> x(n);
  double sum = 0;
  while (true) {
    for (std::size_t k = 0; k < n; ++k) x[k] = lo[k] + (static_cast<double>(idx[k]) + 0.5) * step[k];
    bool inside = true;
    for (const auto& row : facets) {
      double v = row[n];
      for (std::size_t k = 0; k < n; ++k) v += row[k] * x[k];
      if (v < -tol) {
        inside = false;
        break;
      }
    }
    if (inside) sum += phi.evaluate(std::span<const double>(x)) * lse_density(f, eps, x);
    std::size_t k = 0;
    while (k < n && ++idx[k] == grid) idx[k++] = 0;
    if (k == n) break;
  }
  return sum * cell_measure;
}

}  // namespace superform

#pragma once

// Integration of superforms against calibrations and their boundaries.
//
// On a k-cell carrying the k-vector λ (k = n for top integrals, or the
// oriented discordance data at a codim-1 face), a (k', n)-form ω pairs to
// the classical k'-form s · Σ ω_IJ λ_J dx_I with s = (-1)^{n(n-1)/2}, which is
// then integrated over the cell in its span coordinates.

#include <vector>

#include "superform/calibration.hpp"
#include "superform/error.hpp"
#include "superform/polyhedra.hpp"
#include "superform/polynomial.hpp"
#include "superform/superforms.hpp"

namespace superform {

struct IntegralResult {
  Scalar value = 0;
  /// (cell index into the complex, contribution); maximal cells for top
  /// integrals, codim-1 cells for boundary integrals.
  std::vector<std::pair<std::size_t, Scalar>> per_cell;
};

namespace detail {

inline int contraction_sign(std::size_t q) { return parity_sign(q * (q - 1) / 2); }

/// ∫_cell <ω, λ> with the cell oriented by orientation · (its span basis).
inline Scalar pair_and_integrate(const Superform& w, const Multivector& lambda, const Cell& cell, int orientation) {
  if (lambda.empty() || w.is_zero()) return 0;
  if (!cell.is_bounded()) throw UnboundedCell("integration over an unbounded cell");
  const std::size_t k = cell.dim();
  const AffineMap chart = span_parametrization(cell);
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < cell.ambient_dim(); ++i)
    images.push_back(Polynomial::affine(chart.linear[i], chart.translation[i]));
  IndexSet all(k);
  std::iota(all.begin(), all.end(), 0);

  Polynomial density(k);
  for (const auto& [m, c] : w.terms()) {
    auto lj = lambda.find(w.dsecond_indices(m));
    if (lj == lambda.end()) continue;
    Scalar det_i = minor(chart.linear, w.dprime_indices(m), all);
    if (det_i == 0) continue;
    density += c.compose(images, k) * (lj->second * det_i);
  }
  if (density.is_zero()) return 0;
  Scalar total = 0;
  for (const auto& simplex : triangulate(cell)) {
    std::vector<Vec> local;
    for (const auto& v : simplex) local.push_back(cell.point_coordinates(v));
    total += integrate_over_simplex(density, local);
  }
  return total * contraction_sign(w.q()) * orientation;
}

inline void check_top(const Superform& w, std::size_t n, std::size_t r) {
  if (w.ambient_dim() != r) throw AmbientMismatch("form and calibration live in different spaces");
  if (w.p() != n || w.q() != n) throw BidegreeMismatch("top integration needs an (n,n)-form");
}

inline void check_boundary(const Superform& w, std::size_t n, std::size_t r) {
  if (w.ambient_dim() != r) throw AmbientMismatch("form and calibration live in different spaces");
  if (n == 0 || w.p() + 1 != n || w.q() != n) throw BidegreeMismatch("boundary integration needs an (n-1,n)-form");
}

inline void check_carrier(const CellwiseForm& w, const Calibration& cal) {
  if (!(w.carrier().cells() == cal.complex().cells()))
    throw IncompatibleDecompositions("cellwise form and calibration have different carriers");
}

}  // namespace detail

inline IntegralResult integrate_top(const CellwiseForm& w, const Calibration& cal) {
  detail::check_carrier(w, cal);
  IntegralResult out;
  const auto& m = cal.complex().maximal_cells();
  for (std::size_t k = 0; k < m.size(); ++k) {
    detail::check_top(w.piece(k), cal.dim(), cal.ambient_dim());
    Scalar v = detail::pair_and_integrate(w.piece(k), cal.multivector(k), cal.complex().cell(m[k]), 1);
    out.per_cell.emplace_back(m[k], v);
    out.value += v;
  }
  return out;
}

inline IntegralResult integrate_top(const Superform& w, const Calibration& cal) {
  detail::check_top(w, cal.dim(), cal.ambient_dim());
  IntegralResult out;
  const auto& m = cal.complex().maximal_cells();
  for (std::size_t k = 0; k < m.size(); ++k) {
    Scalar v = detail::pair_and_integrate(w, cal.multivector(k), cal.complex().cell(m[k]), 1);
    out.per_cell.emplace_back(m[k], v);
    out.value += v;
  }
  return out;
}

/// Σ over non-harmonious codim-1 faces F of ∫_F <ω, ∂μ_F>.
inline IntegralResult integrate_boundary(const Superform& w, const Calibration& cal) {
  detail::check_boundary(w, cal.dim(), cal.ambient_dim());
  IntegralResult out;
  for (const auto& d : boundary_data(cal)) {
    Scalar v = detail::pair_and_integrate(w, d.multivector, cal.complex().cell(d.face), d.orientation);
    out.per_cell.emplace_back(d.face, v);
    out.value += v;
  }
  return out;
}

/// Cellwise forms pair each adjacent cell's representative with its own
/// outward-oriented vector-volume.
inline IntegralResult integrate_boundary(const CellwiseForm& w, const Calibration& cal) {
  detail::check_carrier(w, cal);
  IntegralResult out;
  for (auto f : codim_one_cells(cal)) {
    Scalar v = 0;
    for (auto k : adjacent_slots(cal, f)) {
      detail::check_boundary(w.piece(k), cal.dim(), cal.ambient_dim());
      v += detail::pair_and_integrate(w.piece(k), oriented_at_face(cal, f, k, 1), cal.complex().cell(f), 1);
    }
    if (v == 0) continue;
    out.per_cell.emplace_back(f, v);
    out.value += v;
  }
  return out;
}

inline Scalar stokes_residual(const Superform& w, const Calibration& cal) {
  detail::check_boundary(w, cal.dim(), cal.ambient_dim());
  return integrate_top(d_prime(w), cal).value - integrate_boundary(w, cal).value;
}

inline Scalar stokes_residual(const CellwiseForm& w, const Calibration& cal) {
  std::vector<Superform> d;
  for (const auto& piece : w.pieces()) d.push_back(d_prime(piece));
  CellwiseForm dw(w.carrier(), std::move(d));
  return integrate_top(dw, cal).value - integrate_boundary(w, cal).value;
}

struct GreenTerms {
  Scalar interior;  ///< ∫<α∧d'd''β − d'd''α∧β, μ>
  Scalar boundary;  ///< ∫<α∧d''β − d''α∧β, ∂μ>
  Scalar residual() const { return interior - boundary; }
};

inline GreenTerms green_terms(const Superform& alpha, const Superform& beta, const Calibration& cal) {
  if (!is_symmetric(alpha) || !is_symmetric(beta)) throw NotSymmetric("Green's formula needs symmetric forms");
  if (alpha.p() + beta.p() + 1 != cal.dim()) throw BidegreeMismatch("Green's formula needs p + q = n - 1");
  Superform top = wedge(alpha, d_prime(d_second(beta))) - wedge(d_prime(d_second(alpha)), beta);
  Superform bdy = wedge(alpha, d_second(beta)) - wedge(d_second(alpha), beta);
  return {integrate_top(top, cal).value, integrate_boundary(bdy, cal).value};
}

inline Scalar green_residual(const Superform& alpha, const Superform& beta, const Calibration& cal) {
  return green_terms(alpha, beta, cal).residual();
}

}  // namespace superform

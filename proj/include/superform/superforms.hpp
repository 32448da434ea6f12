#pragma once

// Superforms of bidegree (p,q) with polynomial coefficients.
//
// A term is d'x_I ∧ d''x_J with I, J increasing. Internally the 2r odd
// generators are numbered d'x_1..d'x_r, d''x_1..d''x_r and a term is the
// bitmask of its generators, always multiplied in increasing bit order.

#include <bit>
#include <numeric>
#include <optional>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "superform/error.hpp"
#include "superform/polyhedra.hpp"
#include "superform/polynomial.hpp"
#include "superform/rational.hpp"

namespace superform {

using TermMask = std::uint32_t;
using IndexSet = std::vector<std::size_t>;  // 0-based, increasing

namespace detail {

inline int parity_sign(std::size_t k) { return (k % 2 == 0) ? 1 : -1; }

/// Sign of the permutation sorting `idx`, or 0 when an index repeats.
inline int sort_sign(IndexSet& idx) {
  int s = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      s = -s;
    }
  return s;
}

/// Sign of (product of A's generators) ∧ (product of B's) reordered increasingly.
inline int merge_sign(TermMask a, TermMask b) {
  int inversions = 0;
  while (b) {
    int bit = std::countr_zero(b);
    b &= b - 1;
    TermMask above = a & ~((TermMask(2) << bit) - 1);
    inversions += std::popcount(above);
  }
  return parity_sign(static_cast<std::size_t>(inversions));
}

inline IndexSet bits_in(TermMask m, std::size_t lo, std::size_t hi) {
  IndexSet out;
  for (std::size_t i = lo; i < hi; ++i)
    if (m >> i & 1u) out.push_back(i - lo);
  return out;
}

}  // namespace detail

class Superform {
 public:
  Superform() = default;
  Superform(std::size_t ambient_dim, std::size_t p, std::size_t q) : r_(ambient_dim), p_(p), q_(q) {
    if (2 * ambient_dim > 32) throw InvalidArgument("ambient dimension too large for superforms");
  }

  /// The (0,0)-form given by a function.
  static Superform function(const Polynomial& f) {
    Superform w(f.nvars(), 0, 0);
    w.add_term({}, {}, f);
    return w;
  }
  static Superform d_prime_coordinate(std::size_t r, std::size_t i) {
    Superform w(r, 1, 0);
    w.add_term({i}, {}, Polynomial(r, Scalar(1)));
    return w;
  }
  static Superform d_second_coordinate(std::size_t r, std::size_t j) {
    Superform w(r, 0, 1);
    w.add_term({}, {j}, Polynomial(r, Scalar(1)));
    return w;
  }

  std::size_t ambient_dim() const { return r_; }
  std::size_t p() const { return p_; }
  std::size_t q() const { return q_; }
  std::pair<std::size_t, std::size_t> bidegree() const { return {p_, q_}; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<TermMask, Polynomial>& terms() const { return terms_; }

  TermMask mask_of(const IndexSet& dprime, const IndexSet& dsecond) const {
    TermMask m = 0;
    for (auto i : dprime) m |= TermMask(1) << i;
    for (auto j : dsecond) m |= TermMask(1) << (r_ + j);
    return m;
  }
  IndexSet dprime_indices(TermMask m) const { return detail::bits_in(m, 0, r_); }
  IndexSet dsecond_indices(TermMask m) const { return detail::bits_in(m, r_, 2 * r_); }

  /// Adds coeff · d'x_I ∧ d''x_J; indices are 0-based in any order.
  void add_term(IndexSet dprime, IndexSet dsecond, const Polynomial& coeff) {
    if (dprime.size() != p_ || dsecond.size() != q_) throw BidegreeMismatch("term does not match the bidegree");
    if (coeff.nvars() != r_) throw AmbientMismatch("coefficient lives in another ambient space");
    for (auto i : dprime)
      if (i >= r_) throw InvalidArgument("d' index out of range");
    for (auto j : dsecond)
      if (j >= r_) throw InvalidArgument("d'' index out of range");
    int s = detail::sort_sign(dprime) * detail::sort_sign(dsecond);
    if (s == 0) return;
    add_mask(mask_of(dprime, dsecond), s > 0 ? coeff : -coeff);
  }
  void add_mask(TermMask m, const Polynomial& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, coeff);
    if (!fresh) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
  Polynomial coefficient(IndexSet dprime, IndexSet dsecond) const {
    int s = detail::sort_sign(dprime) * detail::sort_sign(dsecond);
    if (s == 0) return Polynomial(r_);
    auto it = terms_.find(mask_of(dprime, dsecond));
    if (it == terms_.end()) return Polynomial(r_);
    return s > 0 ? it->second : -it->second;
  }

  Superform& operator+=(const Superform& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_mask(m, c);
    return *this;
  }
  Superform& operator-=(const Superform& o) {
    check_same(o);
    for (const auto& [m, c] : o.terms_) add_mask(m, -c);
    return *this;
  }
  Superform& operator*=(const Scalar& s) {
    if (s == 0) terms_.clear();
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }
  friend Superform operator+(Superform a, const Superform& b) { return a += b; }
  friend Superform operator-(Superform a, const Superform& b) { return a -= b; }
  friend Superform operator-(Superform a) { return a *= Scalar(-1); }
  friend Superform operator*(const Scalar& s, Superform a) { return a *= s; }
  friend Superform operator*(const Polynomial& f, const Superform& a) {
    Superform out(a.r_, a.p_, a.q_);
    for (const auto& [m, c] : a.terms_) out.add_mask(m, f * c);
    return out;
  }
  bool operator==(const Superform& o) const {
    return r_ == o.r_ && p_ == o.p_ && q_ == o.q_ && terms_ == o.terms_;
  }

 private:
  void check_same(const Superform& o) const {
    if (o.r_ != r_) throw AmbientMismatch("superforms live in different ambient spaces");
    if (o.p_ != p_ || o.q_ != q_) throw BidegreeMismatch("cannot add forms of different bidegrees");
  }

  std::size_t r_ = 0, p_ = 0, q_ = 0;
  std::map<TermMask, Polynomial> terms_;
};

inline Superform wedge(const Superform& a, const Superform& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw AmbientMismatch("wedge of forms on different spaces");
  const std::size_t r = a.ambient_dim();
  Superform out(r, a.p() + b.p(), a.q() + b.q());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      Polynomial c = ca * cb;
      if (detail::merge_sign(ma, mb) < 0) c = -c;
      out.add_mask(ma | mb, c);
    }
  }
  return out;
}

namespace detail {

// Left multiplication by one generator after differentiating the coefficient.
inline Superform apply_d(const Superform& w, bool second) {
  const std::size_t r = w.ambient_dim();
  const std::size_t p = w.p() + (second ? 0 : 1);
  const std::size_t q = w.q() + (second ? 1 : 0);
  Superform out(r, p, q);
  for (const auto& [m, c] : w.terms()) {
    for (std::size_t i = 0; i < r; ++i) {
      std::size_t bit = second ? r + i : i;
      TermMask g = TermMask(1) << bit;
      if (m & g) continue;
      Polynomial d = c.derivative(i);
      if (d.is_zero()) continue;
      int below = std::popcount(m & (g - 1));
      out.add_mask(m | g, below % 2 ? -d : d);
    }
  }
  return out;
}

}  // namespace detail

inline Superform d_prime(const Superform& w) { return detail::apply_d(w, false); }
inline Superform d_second(const Superform& w) { return detail::apply_d(w, true); }

/// The algebra involution exchanging d'x_i and d''x_i.
inline Superform involution_J(const Superform& w) {
  const std::size_t r = w.ambient_dim();
  Superform out(r, w.q(), w.p());
  const int s = detail::parity_sign(w.p() * w.q());
  for (const auto& [m, c] : w.terms()) {
    TermMask lo = m & ((TermMask(1) << r) - 1);
    TermMask hi = m >> r;
    out.add_mask(hi | (lo << r), s > 0 ? c : -c);
  }
  return out;
}

/// Type (p,p) with Jω = (-1)^p ω.
inline bool is_symmetric(const Superform& w) {
  if (w.p() != w.q()) return false;
  Superform j = involution_J(w);
  return w.p() % 2 == 0 ? j == w : j == -w;
}

namespace detail {

inline void subsets_of_size(std::size_t n, std::size_t k, std::size_t start, IndexSet& cur,
                            std::vector<IndexSet>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets_of_size(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<IndexSet> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  IndexSet cur;
  subsets_of_size(n, k, 0, cur, out);
  return out;
}

inline Scalar minor(const Matrix& a, const IndexSet& rows, const IndexSet& cols) {
  if (rows.empty()) return 1;
  Matrix m;
  for (auto i : rows) {
    Vec row;
    for (auto j : cols) row.push_back(a[i][j]);
    m.push_back(std::move(row));
  }
  return determinant(m);
}

}  // namespace detail

/// u^*ω for an affine map u : Q^s → Q^r.
inline Superform pullback(const AffineMap& u, const Superform& w) {
  if (u.target_dim() != w.ambient_dim()) throw AmbientMismatch("map target differs from the form's space");
  const std::size_t s = u.source_dim, r = w.ambient_dim();
  Superform out(s, w.p(), w.q());
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < r; ++i) images.push_back(Polynomial::affine(u.linear[i], u.translation[i]));
  auto kp = detail::subsets_of_size(s, w.p());
  auto kq = detail::subsets_of_size(s, w.q());
  std::map<IndexSet, std::vector<Scalar>> minors_p, minors_q;
  auto minors_for = [&](std::map<IndexSet, std::vector<Scalar>>& cache, const IndexSet& rows,
                        const std::vector<IndexSet>& cols) -> const std::vector<Scalar>& {
    auto it = cache.find(rows);
    if (it != cache.end()) return it->second;
    std::vector<Scalar> v;
    for (const auto& c : cols) v.push_back(detail::minor(u.linear, rows, c));
    return cache.emplace(rows, std::move(v)).first->second;
  };
  for (const auto& [m, c] : w.terms()) {
    IndexSet I = w.dprime_indices(m), J = w.dsecond_indices(m);
    const auto& mi = minors_for(minors_p, I, kp);
    const auto& mj = minors_for(minors_q, J, kq);
    Polynomial pulled = c.compose(images, s);
    if (pulled.is_zero()) continue;
    for (std::size_t a = 0; a < kp.size(); ++a) {
      if (mi[a] == 0) continue;
      for (std::size_t b = 0; b < kq.size(); ++b) {
        if (mj[b] == 0) continue;
        out.add_mask(out.mask_of(kp[a], kq[b]), pulled * (mi[a] * mj[b]));
      }
    }
  }
  return out;
}

/// t ↦ base_point + Σ t_k span_basis[k], from span coordinates into the ambient space.
inline AffineMap span_parametrization(const Cell& cell) {
  AffineMap u;
  u.source_dim = cell.dim();
  u.translation = cell.base_point();
  u.linear.assign(cell.ambient_dim(), Vec(cell.dim()));
  for (std::size_t k = 0; k < cell.dim(); ++k)
    for (std::size_t i = 0; i < cell.ambient_dim(); ++i) u.linear[i][k] = cell.span_basis()[k][i];
  return u;
}

/// Canonical representative of ω near `cell`, in the cell's span coordinates.
inline Superform restrict(const Superform& w, const Cell& cell) {
  if (cell.ambient_dim() != w.ambient_dim()) throw AmbientMismatch("cell and form live in different spaces");
  return pullback(span_parametrization(cell), w);
}

/// Coefficients frozen at a point.
inline Superform evaluate_at(const Superform& w, std::span<const Scalar> x) {
  Superform out(w.ambient_dim(), w.p(), w.q());
  for (const auto& [m, c] : w.terms()) out.add_mask(m, Polynomial(w.ambient_dim(), c.evaluate(x)));
  return out;
}

enum class PositivityKind { positive, weakly_positive, strongly_positive };

namespace detail {

/// Exact PSD test: every principal minor is nonnegative.
inline bool is_psd(const Matrix& m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m[i][j] != m[j][i]) return false;
  for (std::size_t k = 1; k <= n; ++k)
    for (const auto& s : subsets_of_size(n, k))
      if (minor(m, s, s) < 0) return false;
  return true;
}

inline IndexSet complement(std::size_t n, std::size_t i) {
  IndexSet out;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i) out.push_back(k);
  return out;
}

}  // namespace detail

/// Positivity of a constant-coefficient form in a bidegree where the weak,
/// plain and strong notions coincide: (0,0), (1,1), (n-1,n-1), (n,n).
inline bool check_positivity(const Superform& w, PositivityKind /*kind*/) {
  const std::size_t n = w.ambient_dim(), p = w.p();
  for (const auto& [m, c] : w.terms())
    if (!c.is_constant()) throw NonConstantCoefficients("positivity is decided for constant coefficients only");
  bool supported = p == w.q() && (p == 0 || p == 1 || p == n || p + 1 == n);
  if (!supported) throw UnsupportedBidegree("positivity is decided only in bidegrees (0,0), (1,1), (n-1,n-1), (n,n)");
  auto coeff = [&](const IndexSet& i, const IndexSet& j) { return w.coefficient(i, j).constant_term(); };
  // d'x_[n] ∧ d''x_[n] = s · (d'x_1∧d''x_1∧…∧d'x_n∧d''x_n)
  const int s = detail::parity_sign(n * (n - 1) / 2);
  if (p == 0) return coeff({}, {}) >= 0;
  if (p == n && n != 1) {
    IndexSet all(n);
    std::iota(all.begin(), all.end(), 0);
    return s * coeff(all, all) >= 0;
  }
  Matrix a(n, Vec(n));
  if (p == 1) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i][j] = coeff({i}, {j});
    return detail::is_psd(a);
  }
  // (n-1,n-1): pair against d'x_i∧d''x_j; the pairing matrix must be PSD
  const int t = s * detail::parity_sign(n - 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      a[i][j] = t * detail::parity_sign(i + j) * coeff(detail::complement(n, i), detail::complement(n, j));
  return detail::is_psd(a);
}

/// A form given cellwise on a complex: one representative per maximal cell,
/// required to restrict identically on every shared face.
class CellwiseForm {
 public:
  CellwiseForm() = default;
  CellwiseForm(CellComplex carrier, std::vector<Superform> pieces)
      : carrier_(std::move(carrier)), pieces_(std::move(pieces)) {
    const auto& maxi = carrier_.maximal_cells();
    if (pieces_.size() != maxi.size()) throw InvalidArgument("one form per maximal cell is required");
    for (std::size_t k = 1; k < pieces_.size(); ++k)
      if (pieces_[k].bidegree() != pieces_[0].bidegree()) throw BidegreeMismatch("cellwise pieces differ in bidegree");
    for (const auto& w : pieces_)
      if (w.ambient_dim() != carrier_.ambient_dim()) throw AmbientMismatch("cellwise piece in the wrong space");
    for (std::size_t f = 0; f < carrier_.size(); ++f) {
      std::optional<Superform> seen;
      for (std::size_t k = 0; k < maxi.size(); ++k) {
        if (!is_face_of(carrier_.cell(f), carrier_.cell(maxi[k]))) continue;
        Superform r = restrict(pieces_[k], carrier_.cell(f));
        if (!seen) {
          seen = std::move(r);
        } else if (!(*seen == r)) {
          throw InvalidArgument("cellwise form disagrees on a shared face");
        }
      }
    }
  }

  /// The same ambient form on every maximal cell.
  static CellwiseForm global(CellComplex carrier, const Superform& w) {
    std::vector<Superform> pieces(carrier.maximal_cells().size(), w);
    return CellwiseForm(std::move(carrier), std::move(pieces));
  }

  const CellComplex& carrier() const { return carrier_; }
  const std::vector<Superform>& pieces() const { return pieces_; }
  /// Representative on complex().maximal_cells()[k].
  const Superform& piece(std::size_t k) const { return pieces_.at(k); }
  std::pair<std::size_t, std::size_t> bidegree() const {
    return pieces_.empty() ? std::pair<std::size_t, std::size_t>{0, 0} : pieces_[0].bidegree();
  }

  /// Restriction to any cell of the carrier.
  Superform restrict_to(std::size_t cell_index) const {
    const auto& maxi = carrier_.maximal_cells();
    for (std::size_t k = 0; k < maxi.size(); ++k)
      if (is_face_of(carrier_.cell(cell_index), carrier_.cell(maxi[k])))
        return restrict(pieces_[k], carrier_.cell(cell_index));
    throw InvalidArgument("cell is not in the carrier");
  }

 private:
  CellComplex carrier_;
  std::vector<Superform> pieces_;
};

/// u^* of a cellwise form on `target`, carried by `source`; every source
/// maximal cell must map into some target maximal cell.
inline CellwiseForm pullback(const AffineMap& u, const CellwiseForm& w, const CellComplex& source) {
  const auto& tmax = w.carrier().maximal_cells();
  std::vector<Superform> pieces;
  for (auto m : source.maximal_cells()) {
    Cell img = image(u, source.cell(m));
    bool found = false;
    for (std::size_t k = 0; k < tmax.size() && !found; ++k) {
      if (!cell_within(img, w.carrier().cell(tmax[k]))) continue;
      pieces.push_back(pullback(u, w.piece(k)));
      found = true;
    }
    if (!found) throw IncompatibleDecompositions("a source cell does not map into a single target cell");
  }
  return CellwiseForm(source, std::move(pieces));
}

}  // namespace superform

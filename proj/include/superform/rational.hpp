#pragma once

// Exact rational scalars, vectors and the small dense linear algebra used
// throughout (ranks, reduced row echelon forms, kernels, determinants,
// integer lattices).

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "superform/error.hpp"

namespace superform {

using Scalar = mpq_class;
using Integer = mpz_class;
using Vec = std::vector<Scalar>;
/// Row-major dense matrix; every row has the same length.
using Matrix = std::vector<Vec>;

inline Scalar make_scalar(long num, long den = 1) {
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.25".
inline Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ParseError("invalid rational literal '" + s + "'"); };
  if (s.empty()) throw bad();
  if (auto dot = s.find('.'); dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw bad();
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") throw bad();
    Integer num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) throw bad();
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac);
    Scalar out(num, den);
    out.canonicalize();
    return out;
  }
  Scalar out;
  std::string body = (s[0] == '+') ? s.substr(1) : s;
  if (body.empty() || out.set_str(body, 10) != 0) throw bad();
  if (out.get_den() == 0) throw bad();
  out.canonicalize();
  return out;
}

/// Canonical "num/den" form; integers keep the "/1".
inline std::string to_string(const Scalar& s) {
  return s.get_num().get_str() + "/" + s.get_den().get_str();
}

inline int sign(const Scalar& s) { return sgn(s); }

inline Vec zero_vec(std::size_t n) { return Vec(n, Scalar(0)); }

inline Vec unit_vec(std::size_t n, std::size_t i) {
  Vec v = zero_vec(n);
  v[i] = 1;
  return v;
}

inline bool is_zero(std::span<const Scalar> v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x == 0; });
}

inline Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec operator*(const Scalar& c, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline Vec mat_vec(const Matrix& m, std::span<const Scalar> v) {
  Vec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

inline Matrix transpose(const Matrix& m, std::size_t cols) {
  Matrix t(cols, Vec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b, std::size_t b_cols) {
  Matrix r(a.size(), zero_vec(b_cols));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b_cols; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

inline Matrix identity(std::size_t n) {
  Matrix m(n, zero_vec(n));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

/// Reduced row echelon form, in place. Returns pivot columns; zero rows are dropped.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Scalar inv = 1 / m[row][c];
    for (std::size_t j = c; j < cols; ++j) m[row][j] *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      Scalar f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  m.resize(row);
  return pivots;
}

inline std::size_t rank(Matrix m, std::size_t cols) { return rref(m, cols).size(); }

inline std::size_t rank_of(const std::vector<Vec>& vectors, std::size_t cols) {
  return rank(Matrix(vectors.begin(), vectors.end()), cols);
}

/// Basis of {x : m x = 0}, one vector per free column.
inline std::vector<Vec> nullspace(Matrix m, std::size_t cols) {
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v = zero_vec(cols);
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Indices of a greedily chosen maximal linearly independent subfamily.
inline std::vector<std::size_t> independent_subset(const std::vector<Vec>& rows, std::size_t cols) {
  std::vector<std::size_t> chosen;
  Matrix echelon;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    Matrix trial = echelon;
    trial.push_back(rows[i]);
    if (rank(trial, cols) > echelon.size()) {
      echelon = trial;
      rref(echelon, cols);
      chosen.push_back(i);
    }
  }
  return chosen;
}

inline Scalar determinant(Matrix m) {
  const std::size_t n = m.size();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    while (sel < n && m[sel][c] == 0) ++sel;
    if (sel == n) return 0;
    if (sel != c) {
      std::swap(m[sel], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Scalar f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

/// Solves the square system m x = rhs; nullopt if m is singular.
inline std::optional<Vec> solve(const Matrix& m, const Vec& rhs) {
  const std::size_t n = m.size();
  Matrix aug(n, Vec(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n] = rhs[i];
  }
  auto pivots = rref(aug, n + 1);
  if (pivots.size() != n || pivots.back() != n - 1) return std::nullopt;
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n];
  return x;
}

inline Integer lcm_of_denominators(std::span<const Scalar> v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  return l;
}

/// Positive rescaling of v to a primitive integer vector (zero stays zero).
inline Vec primitive(const Vec& v) {
  if (is_zero(v)) return v;
  Integer l = lcm_of_denominators(v);
  Integer g = 0;
  std::vector<Integer> ints(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = v[i].get_num() * (l / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints[i].get_mpz_t());
  }
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Scalar(ints[i] / g);
  return out;
}

using IntMatrix = std::vector<std::vector<Integer>>;

/// Z-basis of {y in Z^cols : a y = 0} for an integer matrix a, via unimodular
/// column operations (extended Euclid). Returned vectors are the basis.
inline std::vector<std::vector<Integer>> integer_kernel(IntMatrix a, std::size_t cols) {
  IntMatrix u(cols, std::vector<Integer>(cols, Integer(0)));
  for (std::size_t i = 0; i < cols; ++i) u[i][i] = 1;
  auto combine = [&](std::size_t c, std::size_t j, const Integer& x, const Integer& y,
                     const Integer& p, const Integer& q) {
    // col_c <- x col_c + y col_j ; col_j <- p col_c + q col_j (old values)
    for (auto* mat : {&a, &u}) {
      for (auto& row : *mat) {
        Integer oc = row[c], oj = row[j];
        row[c] = x * oc + y * oj;
        row[j] = p * oc + q * oj;
      }
    }
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size() && c < cols; ++i) {
    for (std::size_t j = c + 1; j < cols; ++j) {
      if (a[i][j] == 0) continue;
      Integer av = a[i][c], bv = a[i][j];
      Integer g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), av.get_mpz_t(), bv.get_mpz_t());
      Integer p = -bv / g, q = av / g;
      combine(c, j, x, y, p, q);
    }
    // after the sweep a[i][c] = gcd of the row tail, zero only if the tail is
    if (a[i][c] != 0) ++c;
  }
  std::vector<std::vector<Integer>> basis;
  for (std::size_t j = c; j < cols; ++j) {
    std::vector<Integer> v(cols);
    for (std::size_t r = 0; r < cols; ++r) v[r] = u[r][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Z-basis of (Q-span of `directions`) ∩ Z^cols. The vectors are primitive.
inline std::vector<Vec> saturated_lattice_basis(const std::vector<Vec>& directions, std::size_t cols) {
  IntMatrix m;
  for (const auto& d : directions) {
    Vec p = primitive(d);
    if (is_zero(p)) continue;
    std::vector<Integer> row(cols);
    for (std::size_t j = 0; j < cols; ++j) row[j] = p[j].get_num();
    m.push_back(std::move(row));
  }
  auto kernel = integer_kernel(m, cols);
  IntMatrix kt(kernel.begin(), kernel.end());
  auto lattice = integer_kernel(kt, cols);
  std::vector<Vec> out;
  for (const auto& v : lattice) {
    Vec q(cols);
    for (std::size_t j = 0; j < cols; ++j) q[j] = Scalar(v[j]);
    out.push_back(std::move(q));
  }
  return out;
}

inline Scalar factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Scalar(f);
}

inline bool lex_less(const Vec& a, const Vec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace superform

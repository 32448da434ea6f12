#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "superform/error.hpp"
#include "superform/rational.hpp"

namespace superform {

using Exponent = std::vector<unsigned>;

class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}
  Polynomial(std::size_t nvars, const Scalar& c) : nvars_(nvars) {
    if (c != 0) terms_[Exponent(nvars, 0)] = c;
  }

  static Polynomial constant(std::size_t nvars, const Scalar& c) { return Polynomial(nvars, c); }
  /// The coordinate function x_i (0-based).
  static Polynomial variable(std::size_t nvars, std::size_t i) {
    Polynomial p(nvars);
    Exponent e(nvars, 0);
    e.at(i) = 1;
    p.terms_[e] = 1;
    return p;
  }
  static Polynomial monomial(const Exponent& e, const Scalar& c) {
    Polynomial p(e.size());
    p.add_term(e, c);
    return p;
  }
  /// <direction, x> + offset
  static Polynomial affine(std::span<const Scalar> direction, const Scalar& offset) {
    Polynomial p(direction.size(), offset);
    for (std::size_t i = 0; i < direction.size(); ++i)
      if (direction[i] != 0) p.add_term(unit_exponent(direction.size(), i), direction[i]);
    return p;
  }

  std::size_t nvars() const { return nvars_; }
  const std::map<Exponent, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Exponent(nvars_, 0));
  }
  Scalar constant_term() const {
    auto it = terms_.find(Exponent(nvars_, 0));
    return it == terms_.end() ? Scalar(0) : it->second;
  }
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (auto k : e) s += k;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Exponent& e, const Scalar& c) {
    if (e.size() != nvars_) throw AmbientMismatch("monomial has the wrong number of variables");
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Polynomial& operator+=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    check(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Polynomial& operator*=(const Scalar& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Scalar(-1); }
  friend Polynomial operator*(Polynomial a, const Scalar& s) { return a *= s; }
  friend Polynomial operator*(const Scalar& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check(b);
    Polynomial out(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(a.nvars_);
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    }
    return out;
  }
  bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

  Polynomial derivative(std::size_t i) const {
    Polynomial out(nvars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponent d = e;
      --d[i];
      out.add_term(d, c * e[i]);
    }
    return out;
  }

  Scalar evaluate(std::span<const Scalar> x) const {
    if (x.size() != nvars_) throw AmbientMismatch("evaluation point has the wrong length");
    Scalar total = 0;
    for (const auto& [e, c] : terms_) {
      Scalar m = c;
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) m *= x[i];
      total += m;
    }
    return total;
  }
  double evaluate(std::span<const double> x) const {
    double total = 0;
    for (const auto& [e, c] : terms_) {
      double m = c.get_d();
      for (std::size_t i = 0; i < nvars_; ++i)
        for (unsigned k = 0; k < e[i]; ++k) m *= x[i];
      total += m;
    }
    return total;
  }

  /// p(images[0], ..., images[nvars-1]); all images share one variable count.
  Polynomial compose(const std::vector<Polynomial>& images, std::size_t target_vars) const {
    if (images.size() != nvars_) throw AmbientMismatch("substitution has the wrong arity");
    std::vector<std::vector<Polynomial>> powers(nvars_);
    Polynomial out(target_vars);
    for (const auto& [e, c] : terms_) {
      Polynomial m(target_vars, c);
      for (std::size_t i = 0; i < nvars_; ++i) {
        if (e[i] == 0) continue;
        auto& pw = powers[i];
        if (pw.empty()) pw.push_back(Polynomial(target_vars, Scalar(1)));
        while (pw.size() <= e[i]) pw.push_back(pw.back() * images[i]);
        m = m * pw[e[i]];
      }
      out += m;
    }
    return out;
  }

 private:
  static Exponent unit_exponent(std::size_t n, std::size_t i) {
    Exponent e(n, 0);
    e[i] = 1;
    return e;
  }
  void check(const Polynomial& o) const {
    if (o.nvars_ != nvars_) throw AmbientMismatch("polynomials live in different variable sets");
  }

  std::size_t nvars_ = 0;
  std::map<Exponent, Scalar> terms_;
};

/// Exact integral of p over the simplex with the given vertices (dim+1 points
/// in Q^p.nvars()), measured with |det| of the edge matrix.
inline Scalar integrate_over_simplex(const Polynomial& p, const std::vector<Vec>& simplex) {
  const std::size_t n = p.nvars();
  if (simplex.size() != n + 1) throw InvalidArgument("simplex must have nvars + 1 vertices");
  // x = v0 + sum_k t_k (v_k - v0), then Dirichlet moments on the standard simplex
  Matrix edges;
  for (std::size_t k = 1; k <= n; ++k) edges.push_back(simplex[k] - simplex[0]);
  Scalar jac = n == 0 ? Scalar(1) : determinant(edges);
  if (jac < 0) jac = -jac;
  if (jac == 0) return 0;
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < n; ++i) {
    Vec dir(n);
    for (std::size_t k = 0; k < n; ++k) dir[k] = edges[k][i];
    images.push_back(Polynomial::affine(dir, simplex[0][i]));
  }
  Polynomial q = p.compose(images, n);
  Scalar total = 0;
  for (const auto& [e, c] : q.terms()) {
    unsigned sum = 0;
    Scalar num = 1;
    for (auto a : e) {
      num *= factorial(a);
      sum += a;
    }
    total += c * num / factorial(static_cast<unsigned>(n) + sum);
  }
  return total * jac;
}

}  // namespace superform

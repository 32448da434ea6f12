#pragma once

// Seeded random generators shared by the unit, property and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "superform/rational.hpp"
#include "superform/superforms.hpp"

namespace superform::test {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(engine_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(engine_); }
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(integer(0, static_cast<long>(n) - 1)); }

  /// Small rational with numerator in [lo, hi] and denominator in [1, max_den].
  Scalar rational(long lo = -5, long hi = 5, long max_den = 3) {
    return make_scalar(integer(lo, hi), integer(1, max_den));
  }
  Scalar nonzero_rational(long lo = -5, long hi = 5, long max_den = 3) {
    Scalar s;
    do s = rational(lo, hi, max_den);
    while (s == 0);
    return s;
  }
  Vec vec(std::size_t n, long lo = -3, long hi = 3, long max_den = 1) {
    Vec v(n);
    for (auto& x : v) x = rational(lo, hi, max_den);
    return v;
  }

  /// Random polynomial in n variables with total degree at most max_degree.
  Polynomial polynomial(std::size_t n, unsigned max_degree = 3, std::size_t max_terms = 4) {
    Polynomial p(n);
    std::size_t terms = 1 + index(max_terms);
    for (std::size_t t = 0; t < terms; ++t) {
      Exponent e(n, 0);
      unsigned budget = static_cast<unsigned>(integer(0, max_degree));
      for (unsigned k = 0; k < budget && n > 0; ++k) ++e[index(n)];
      p.add_term(e, nonzero_rational());
    }
    return p;
  }

  std::vector<std::size_t> subset(std::size_t n, std::size_t k) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::shuffle(all.begin(), all.end(), engine_);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  }

  Superform form(std::size_t r, std::size_t p, std::size_t q, unsigned max_degree = 3, std::size_t max_terms = 3) {
    Superform w(r, p, q);
    std::size_t terms = 1 + index(max_terms);
    for (std::size_t t = 0; t < terms; ++t) w.add_term(subset(r, p), subset(r, q), polynomial(r, max_degree));
    return w;
  }

  /// Symmetric (p,p)-form: ω + (-1)^p Jω.
  Superform symmetric_form(std::size_t r, std::size_t p, unsigned max_degree = 3) {
    Superform w = form(r, p, p, max_degree);
    Superform j = involution_J(w);
    return p % 2 == 0 ? w + j : w - j;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace superform::test

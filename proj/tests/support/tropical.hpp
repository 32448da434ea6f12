#pragma once

#include "superform/monge_ampere.hpp"
#include "support/generators.hpp"

namespace superform::test {

/// Integer exponents in [-2,2]^n (or [0,2]^n) and small rational coefficients.
inline TropicalPolynomial random_tropical(Rng& rng, std::size_t n, std::size_t max_terms, bool nonnegative = false) {
  std::size_t count = 1 + rng.index(max_terms);
  std::vector<TropicalTerm> t;
  for (std::size_t i = 0; i < count; ++i)
    t.push_back({rng.vec(n, nonnegative ? 0 : -2, 2), rng.rational(-3, 3, 2)});
  return TropicalPolynomial(n, std::move(t));
}

}  // namespace superform::test

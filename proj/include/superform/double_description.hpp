#pragma once

// Double description (Motzkin) for polyhedral cones {y : A y >= 0}.
// Lineality is split off first, then the pointed remainder is handled by
// the incremental algorithm with the combinatorial adjacency test.

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <vector>

#include "superform/rational.hpp"

namespace superform::dd {

struct ConeGenerators {
  std::vector<Vec> lineality;  ///< basis of the lineality space
  std::vector<Vec> rays;       ///< extreme rays of the pointed part, primitive integer
};

namespace detail {

struct Ray {
  Vec z;
  boost::dynamic_bitset<> tight;
};

inline Vec normalized(const Vec& v) { return primitive(v); }

}  // namespace detail

/// Generators of {y in Q^dim : row . y >= 0 for every row}.
inline ConeGenerators cone_generators(const std::vector<Vec>& rows, std::size_t dim) {
  ConeGenerators out;
  if (rows.empty()) {
    for (std::size_t i = 0; i < dim; ++i) out.lineality.push_back(unit_vec(dim, i));
    return out;
  }
  out.lineality = nullspace(Matrix(rows.begin(), rows.end()), dim);

  // Parametrize the row space: y = sum_j z_j basis[j]; the cone is pointed there.
  auto indep = independent_subset(rows, dim);
  const std::size_t k = indep.size();
  std::vector<Vec> basis;
  for (auto i : indep) basis.push_back(rows[i]);

  const std::size_t m = rows.size();
  std::vector<Vec> reduced(m, Vec(k));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < k; ++j) reduced[i][j] = dot(rows[i], basis[j]);

  auto initial = independent_subset(reduced, k);
  Matrix square;
  for (auto i : initial) square.push_back(reduced[i]);
  // columns of square^{-1} are the extreme rays of the simplicial start cone
  Matrix inverse;
  for (std::size_t c = 0; c < k; ++c) {
    auto col = solve(square, unit_vec(k, c));
    inverse.push_back(*col);
  }

  std::vector<detail::Ray> rays;
  std::vector<bool> processed(m, false);
  for (auto i : initial) processed[i] = true;
  for (std::size_t c = 0; c < k; ++c) {
    detail::Ray r{detail::normalized(inverse[c]), boost::dynamic_bitset<>(m)};
    for (std::size_t i = 0; i < m; ++i)
      if (processed[i] && dot(reduced[i], r.z) == 0) r.tight.set(i);
    rays.push_back(std::move(r));
  }

  for (std::size_t row = 0; row < m; ++row) {
    if (processed[row]) continue;
    std::vector<std::size_t> pos, neg, zero;
    std::vector<Scalar> val(rays.size());
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(reduced[row], rays[r].z);
      int s = sign(val[r]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(r);
    }
    processed[row] = true;
    if (neg.empty()) {
      for (auto r : zero) rays[r].tight.set(row);
      continue;
    }
    std::vector<detail::Ray> next;
    for (auto r : pos) next.push_back(rays[r]);
    for (auto r : zero) {
      next.push_back(rays[r]);
      next.back().tight.set(row);
    }
    for (auto p : pos) {
      for (auto n : neg) {
        auto common = rays[p].tight & rays[n].tight;
        if (k >= 2 && common.count() + 2 < k) continue;
        bool adjacent = true;
        for (std::size_t o = 0; o < rays.size() && adjacent; ++o) {
          if (o == p || o == n) continue;
          if (common.is_subset_of(rays[o].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec z = val[p] * rays[n].z - val[n] * rays[p].z;
        detail::Ray fresh{detail::normalized(z), common};
        fresh.tight.set(row);
        next.push_back(std::move(fresh));
      }
    }
    rays = std::move(next);
  }

  for (const auto& r : rays) {
    Vec y = zero_vec(dim);
    for (std::size_t j = 0; j < k; ++j) y = y + r.z[j] * basis[j];
    out.rays.push_back(primitive(y));
  }
  return out;
}

}  // namespace superform::dd

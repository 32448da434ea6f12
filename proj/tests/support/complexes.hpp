#pragma once

// Random calibrated complexes for property and acceptance tests.

#include <algorithm>
#include <numeric>
#include <vector>

#include "superform/calibration.hpp"
#include "support/generators.hpp"

namespace superform::test {

/// Simplices of the Kuhn triangulation of the cube with corner `origin`.
inline std::vector<std::vector<Vec>> kuhn_cube(const Vec& origin) {
  const std::size_t n = origin.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<Vec>> out;
  do {
    std::vector<Vec> s = {origin};
    Vec v = origin;
    for (auto i : perm) {
      v[i] += 1;
      s.push_back(v);
    }
    out.push_back(std::move(s));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

/// A random subset (at most max_cells) of the Kuhn triangulation of a small
/// grid, rescaled, shifted and, when embed is set, mapped injectively into
/// Q^{n+1}.
inline std::vector<Cell> random_simplicial_cells(Rng& rng, std::size_t n, std::size_t max_cells, bool embed) {
  std::vector<std::vector<Vec>> all;
  const long g = n == 1 ? 6 : n == 2 ? 3 : 2;
  std::vector<long> idx(n, 0);
  while (true) {
    Vec origin(n);
    for (std::size_t i = 0; i < n; ++i) origin[i] = idx[i];
    for (auto& s : kuhn_cube(origin)) all.push_back(std::move(s));
    std::size_t k = 0;
    while (k < n && ++idx[k] == g) idx[k++] = 0;
    if (k == n) break;
  }
  std::shuffle(all.begin(), all.end(), rng.engine());
  std::size_t count = 1 + rng.index(std::min(max_cells, all.size()));
  all.resize(count);

  const std::size_t r = embed ? n + 1 : n;
  Matrix a;
  do {
    a.clear();
    for (std::size_t i = 0; i < r; ++i) a.push_back(rng.vec(n, -2, 2));
  } while (rank(a, n) < n);
  Vec shift = rng.vec(r, -2, 2, 3);
  std::vector<Cell> cells;
  for (const auto& s : all) {
    std::vector<Vec> pts;
    for (const auto& v : s) pts.push_back(mat_vec(a, v) + shift);
    cells.push_back(Cell::from_generators(r, pts));
  }
  return cells;
}

inline Calibration random_calibration(Rng& rng, std::size_t n, std::size_t max_cells, bool embed) {
  auto cells = random_simplicial_cells(rng, n, max_cells, embed);
  CellComplex cx = cell_complex(cells);
  std::vector<Scalar> a;
  for (std::size_t k = 0; k < cx.maximal_cells().size(); ++k) a.push_back(rng.nonzero_rational(-4, 4, 3));
  return Calibration(std::move(cx), std::move(a), n);
}

inline AffineMap random_affine_map(Rng& rng, std::size_t s, std::size_t r, std::size_t max_rank) {
  // product of an r×k and a k×s matrix caps the rank at k
  std::size_t k = 1 + rng.index(max_rank);
  Matrix left, right;
  for (std::size_t i = 0; i < r; ++i) left.push_back(rng.vec(k, -2, 2));
  for (std::size_t i = 0; i < k; ++i) right.push_back(rng.vec(s, -2, 2));
  AffineMap u;
  u.source_dim = s;
  u.linear = mat_mul(left, right, s);
  u.translation = rng.vec(r, -2, 2, 2);
  return u;
}

}  // namespace superform::test

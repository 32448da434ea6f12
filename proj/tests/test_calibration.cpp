#include <gtest/gtest.h>

#include "superform/calibration.hpp"
#include "superform/integration.hpp"
#include "support/complexes.hpp"

using namespace superform;

namespace {

Cell seg(Vec a, Vec b) { return Cell::from_generators(a.size(), {a, b}); }
Cell ray(Vec from, Vec dir) { return Cell::from_generators(from.size(), {from}, {dir}); }

Calibration canonical(std::vector<Cell> cells, std::vector<Scalar> weights) {
  auto cx = cell_complex(cells);
  // weights are given in input order; match them to maximal_cells()
  std::vector<Scalar> w;
  for (auto m : cx.maximal_cells()) {
    auto it = std::find(cells.begin(), cells.end(), cx.cell(m));
    w.push_back(weights[static_cast<std::size_t>(it - cells.begin())]);
  }
  return canonical_calibration(WeightedComplex(cx, w));
}

Calibration tropical_line() {
  return canonical({ray({0, 0}, {-1, 0}), ray({0, 0}, {0, -1}), ray({0, 0}, {1, 1})}, {1, 1, 1});
}

}  // namespace

TEST(CanonicalCalibration, Examples) {
  auto c1 = canonical({seg({0}, {1})}, {1});
  EXPECT_EQ(c1.multivector(0), (Multivector{{{0}, 1}}));

  auto c2 = canonical({ray({0, 0}, {1, 1})}, {2});
  EXPECT_EQ(c2.multivector(0), (Multivector{{{0}, 2}, {{1}, 2}}));

  auto c3 = canonical({Cell::from_generators(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})}, {3});
  EXPECT_EQ(c3.multivector(0), (Multivector{{{0, 1}, 3}}));

  // the primitive vector of a steep segment, not the segment's own edge
  auto c4 = canonical({seg({0, 0}, {4, 6})}, {1});
  EXPECT_EQ(c4.multivector(0), (Multivector{{{0}, 2}, {{1}, 3}}));
}

TEST(CanonicalCalibration, NotPureIsRejected) {
  std::vector<Cell> cells = {seg({0, 0}, {1, 0}), Cell::from_generators(2, {{5, 5}, {6, 5}, {5, 6}})};
  auto cx = cell_complex(cells);
  EXPECT_THROW(WeightedComplex(cx, {1, 1}), NotPure);
}

TEST(Discordance, Examples) {
  auto line = tropical_line();
  auto origin = line.complex().index_of(Cell::from_generators(2, {{0, 0}}));
  ASSERT_TRUE(origin);
  EXPECT_TRUE(discordance(line, *origin).harmonious());

  auto two = canonical({seg({-1}, {0}), seg({0}, {1})}, {1, 1});
  EXPECT_TRUE(discordance(two, Cell::from_generators(1, {{0}})).harmonious());

  auto one = canonical({seg({0}, {1})}, {1});
  auto d = discordance(one, Cell::from_generators(1, {{1}}));
  EXPECT_EQ(d.multivector, (Multivector{{{0}, 1}}));
  auto d0 = discordance(one, Cell::from_generators(1, {{0}}));
  EXPECT_EQ(d0.multivector, (Multivector{{{0}, -1}}));
}

TEST(Discordance, NotCodimOne) {
  auto sq = canonical({Cell::from_generators(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})}, {1});
  EXPECT_THROW(discordance(sq, Cell::from_generators(2, {{0, 0}})), NotCodimOne);
}

TEST(BoundaryData, Examples) {
  auto sq = canonical({Cell::from_generators(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})}, {1});
  EXPECT_EQ(boundary_data(sq).size(), 4u);
  EXPECT_TRUE(boundary_data(tropical_line()).empty());

  Cell t1 = Cell::from_generators(2, {{0, 0}, {1, 0}, {0, 1}});
  Cell t2 = Cell::from_generators(2, {{1, 0}, {0, 1}, {1, 1}});
  auto cal = canonical({t1, t2}, {1, 2});
  auto shared = cal.complex().index_of(seg({1, 0}, {0, 1}));
  ASSERT_TRUE(shared);
  auto d = discordance(cal, *shared).canonical();
  EXPECT_EQ(d.multivector, (Multivector{{{0, 1}, 1}}));
  EXPECT_EQ(boundary_data(cal).size(), 5u);
}

TEST(Pushforward, GraphProjectsToCanonicalSegmentCalibration) {
  auto P = canonical({seg({-1, 0}, {0, 0}), seg({0, 0}, {1, 1})}, {1, 1});
  std::vector<Cell> q = {seg({-1}, {0}), seg({0}, {1})};
  auto Q = cell_complex(q);
  AffineMap proj{{{1, 0}}, {0}, 2};
  auto pushed = pushforward_calibration(proj, P, Q);
  EXPECT_EQ(pushed, canonical_calibration(WeightedComplex(Q, {1, 1})));
}

TEST(Pushforward, IdentityAndCollapse) {
  test::Rng rng(31);
  auto cal = test::random_calibration(rng, 2, 6, false);
  EXPECT_EQ(pushforward_calibration(AffineMap::identity(2), cal, cal.complex()), cal);

  auto sq = canonical({Cell::from_generators(2, {{0, 0}, {1, 0}, {0, 1}, {1, 1}})}, {1});
  std::vector<Cell> target = {seg({0}, {1})};
  auto T = cell_complex(target);
  AffineMap proj{{{1, 0}}, {0}, 2};
  auto pushed = pushforward_calibration(proj, sq, T);
  EXPECT_EQ(pushed.dim(), 2u);
  EXPECT_EQ(pushed.coefficients(), std::vector<Scalar>{0});
}

TEST(Pushforward, MismatchedTargetIsRejected) {
  auto cal = canonical({seg({0}, {2})}, {1});
  std::vector<Cell> target = {seg({0}, {1}), seg({1}, {2})};
  EXPECT_THROW(pushforward_calibration(AffineMap::identity(1), cal, cell_complex(target)), IncompatibleDecompositions);
}

TEST(CalibrationProperties, RefinementCreatesOnlyHarmoniousFaces) {
  test::Rng rng(32);
  for (int trial = 0; trial < 12; ++trial) {
    std::size_t n = 1 + rng.index(2);
    auto cal = test::random_calibration(rng, n, 6, rng.coin());
    std::vector<AffineForm> cutters;
    for (int i = 0; i < 2; ++i) cutters.push_back({rng.vec(cal.ambient_dim(), -2, 2), rng.rational(-2, 2)});
    auto fine = refine(cal, cutters);
    std::size_t before = boundary_data(cal).size();
    // every face of the refinement that lies inside an old maximal cell's
    // relative interior is harmonious; the non-harmonious support only refines
    Scalar total_before = 0, total_after = 0;
    for (const auto& d : boundary_data(cal)) total_before += cell_volume(cal.complex().cell(d.face), VolumeMode::lattice);
    for (const auto& d : boundary_data(fine)) {
      const Cell& f = fine.complex().cell(d.face);
      bool inside_old_support = false;
      for (const auto& old : boundary_data(cal))
        if (cell_within(f, cal.complex().cell(old.face))) inside_old_support = true;
      EXPECT_TRUE(inside_old_support);
      total_after += cell_volume(f, VolumeMode::lattice);
    }
    EXPECT_EQ(total_before, total_after);
    EXPECT_GE(boundary_data(fine).size(), before);
  }
}

TEST(CalibrationProperties, OrientationFlip) {
  test::Rng rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    auto cal = test::random_calibration(rng, 2, 8, rng.coin());
    for (auto f : codim_one_cells(cal)) {
      auto plus = discordance(cal, f, 1);
      auto minus = discordance(cal, f, -1);
      EXPECT_EQ(minus.multivector, plus.flipped().multivector);
      EXPECT_TRUE(plus.equivalent(minus));
    }
  }
}

TEST(CalibrationProperties, CanonicalIsLinearInWeights) {
  test::Rng rng(34);
  for (int trial = 0; trial < 10; ++trial) {
    auto cells = test::random_simplicial_cells(rng, 2, 6, rng.coin());
    auto cx = cell_complex(cells);
    std::vector<Scalar> w, w2;
    for (std::size_t k = 0; k < cx.maximal_cells().size(); ++k) {
      w.push_back(rng.integer(1, 5));
      w2.push_back(2 * w.back());
    }
    auto a = canonical_calibration(WeightedComplex(cx, w));
    auto b = canonical_calibration(WeightedComplex(cx, w2));
    for (std::size_t k = 0; k < w.size(); ++k) {
      Multivector twice;
      add_to(twice, a.multivector(k), 2);
      EXPECT_EQ(b.multivector(k), twice);
    }
  }
}

TEST(CalibrationProperties, PushforwardIsFunctorial) {
  test::Rng rng(35);
  int checked = 0;
  for (int trial = 0; trial < 30 && checked < 10; ++trial) {
    const std::size_t n = 1;
    auto cal = test::random_calibration(rng, n, 4, true);
    AffineMap u = test::random_affine_map(rng, 2, 2, 2);
    AffineMap v = test::random_affine_map(rng, 2, 1, 1);
    auto direct = prepare_pushforward(v.after(u), cal);
    auto vu = pushforward_calibration(v.after(u), direct.source, direct.target);
    auto first = prepare_pushforward(u, cal);
    auto mid = pushforward_calibration(u, first.source, first.target);
    auto second = prepare_pushforward(v, mid);
    auto composed = pushforward_calibration(v, second.source, second.target);
    for (int k = 0; k < 4; ++k) {
      Superform w(1, 1, 1);
      w.add_term({0}, {0}, rng.polynomial(1, 3));
      EXPECT_EQ(integrate_top(w, vu).value, integrate_top(w, composed).value);
    }
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

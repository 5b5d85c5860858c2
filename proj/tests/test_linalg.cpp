#include <gtest/gtest.h>

#include <algorithm>

#include "dioph/lattice.hpp"
#include "test_support.hpp"

using namespace dioph;
using namespace testing_support;

namespace {

IntMatrix cols(std::vector<std::vector<Integer>> c) { return IntMatrix::from_columns(c); }

bool is_column_hnf(const IntMatrix& h, std::size_t rank) {
  std::size_t prev_pivot = 0;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::size_t p = 0;
    while (p < h.rows() && h(p, j) == 0) ++p;
    if (j >= rank) {
      if (p != h.rows()) return false;
      continue;
    }
    if (p == h.rows() || h(p, j) <= 0) return false;
    if (j > 0 && p <= prev_pivot) return false;
    for (std::size_t k = 0; k < j; ++k)
      if (h(p, k) < 0 || h(p, k) >= h(p, j)) return false;
    prev_pivot = p;
  }
  return true;
}

Lattice random_saturated(std::mt19937_64& g, std::size_t d, std::size_t k) {
  while (true) {
    IntMatrix b = random_int_matrix(g, d, k, 20);
    if (rank(b) == k) return saturate(b);
  }
}

}  // namespace

TEST(Hnf, IdentityIsFixed) {
  HermiteForm f = hnf(IntMatrix::identity(3));
  EXPECT_EQ(f.H, IntMatrix::identity(3));
  EXPECT_EQ(f.U, IntMatrix::identity(3));
}

TEST(Hnf, DiagonalAlreadyReduced) {
  HermiteForm f = hnf(cols({{2, 0}, {0, 2}}));
  EXPECT_EQ(f.H(0, 0), 2);
  EXPECT_EQ(f.H(1, 1), 2);
  EXPECT_EQ(f.H(1, 0), 0);
}

TEST(Hnf, SingleColumnGeneratesSameLattice) {
  IntMatrix m = cols({{4, 6}});
  HermiteForm f = hnf(m);
  EXPECT_EQ(f.H, m);
  Lattice from_h(f.H), from_m(m);
  for (long c = -5; c <= 5; ++c) {
    EXPECT_TRUE(from_h.contains({4 * c, 6 * c}));
    EXPECT_TRUE(from_m.contains({f.H(0, 0) * c, f.H(1, 0) * c}));
  }
  EXPECT_FALSE(from_h.contains({2, 3}));
}

TEST(Hnf, RandomMatricesSatisfyContract) {
  std::mt19937_64 g(11);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = uniform(g, 1, 5), c = uniform(g, 1, 5);
    IntMatrix m = random_int_matrix(g, r, c, 9);
    if (trial % 7 == 0) m = IntMatrix(r, c);
    HermiteForm f = hnf(m);
    EXPECT_EQ(m * f.U, f.H);
    Integer det = determinant(f.U);
    EXPECT_TRUE(det == 1 || det == -1);
    EXPECT_TRUE(is_column_hnf(f.H, f.rank)) << f.H;
  }
}

TEST(Hnf, KernelIsAnnihilated) {
  std::mt19937_64 g(12);
  for (int trial = 0; trial < 100; ++trial) {
    IntMatrix m = random_int_matrix(g, uniform(g, 1, 4), uniform(g, 2, 6), 7);
    IntMatrix k = kernel_basis(m);
    EXPECT_EQ(k.cols() + rank(m), m.cols());
    EXPECT_TRUE((m * k).is_zero());
  }
}

TEST(Saturate, ScaledUnitVector) {
  Lattice l = saturate(cols({{2, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(l.det_squared(), 1);
  EXPECT_TRUE(l.contains({1, 0, 0}));
  EXPECT_TRUE(l.contains({0, 1, 0}));
  EXPECT_FALSE(l.contains({0, 0, 1}));
}

TEST(Saturate, AlreadySaturated) {
  Lattice l = saturate(IntMatrix::identity(2));
  EXPECT_EQ(l.det_squared(), 1);
  EXPECT_EQ(l.rank(), 2u);
}

TEST(Saturate, PlaneMatchesBruteForce) {
  Lattice l = saturate(cols({{2, 2, 0}, {0, 2, 2}}));
  // Normal of the plane spanned by (1,1,0), (0,1,1).
  std::vector<long> normal{1 * 1 - 0 * 1, 0 * 0 - 1 * 1, 1 * 1 - 1 * 0};
  for (std::size_t j = 0; j < l.rank(); ++j) {
    IntVector b = l.basis().column(j);
    EXPECT_EQ(b[0] * normal[0] + b[1] * normal[1] + b[2] * normal[2], 0);
  }
  int in_plane = 0;
  for_each_in_cube(3, 4, [&](const std::vector<long>& v) {
    if (v[0] * normal[0] + v[1] * normal[1] + v[2] * normal[2] != 0) return;
    ++in_plane;
    EXPECT_TRUE(l.contains(to_int_vector(v)));
  });
  EXPECT_GT(in_plane, 10);
  EXPECT_EQ(l.det_squared(), 3);
}

TEST(Saturate, DependentColumnsRejected) {
  try {
    saturate(cols({{1, 2, 3}, {2, 4, 6}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDependentInput);
  }
}

TEST(Saturate, Idempotent) {
  std::mt19937_64 g(13);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t d = uniform(g, 2, 6), k = uniform(g, 1, d);
    Lattice l = random_saturated(g, d, k);
    EXPECT_EQ(saturate(l.basis()).det_squared(), l.det_squared());
  }
}

TEST(OrthogonalLattice, CoordinateAxis) {
  Lattice l(cols({{1, 0, 0}}));
  Lattice o = orthogonal_lattice(l);
  EXPECT_EQ(o.rank(), 2u);
  EXPECT_EQ(o.det_squared(), 1);
  EXPECT_TRUE(o.contains({0, 1, 0}));
  EXPECT_TRUE(o.contains({0, 0, 1}));
}

TEST(OrthogonalLattice, Diagonal) {
  Lattice o = orthogonal_lattice(Lattice(cols({{1, 1}})));
  ASSERT_EQ(o.rank(), 1u);
  EXPECT_EQ(abs(o.basis()(0, 0)), 1);
  EXPECT_EQ(o.basis()(0, 0), -o.basis()(1, 0));
  EXPECT_EQ(o.det_squared(), 2);
}

TEST(OrthogonalLattice, OneTwoThree) {
  Lattice l(cols({{1, 2, 3}}));
  Lattice o = orthogonal_lattice(l);
  EXPECT_EQ(l.det_squared(), 14);
  EXPECT_EQ(o.rank(), 2u);
  EXPECT_EQ(determinant(gram(o.basis())), 14);
}

TEST(OrthogonalLattice, NonSaturatedRejected) {
  try {
    orthogonal_lattice(Lattice(cols({{2, 0, 0}})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNotSaturated);
  }
}

TEST(OrthogonalLattice, CovolumesAgreeOnRandomLattices) {
  std::mt19937_64 g(14);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = uniform(g, 2, 8), k = uniform(g, 1, d - 1);
    Lattice l = random_saturated(g, d, k);
    Lattice o = orthogonal_lattice(l);
    EXPECT_EQ(o.rank(), d - k);
    EXPECT_EQ(o.det_squared(), l.det_squared());
    EXPECT_TRUE((l.basis().transpose() * o.basis()).is_zero());
  }
}

TEST(Grassmann, HandMinors) {
  std::vector<IntVector> v{{1, 2, 0}, {0, 1, 1}};
  GrassmannCoords g = grassmann(v);
  ASSERT_EQ(g.coeffs.size(), 3u);
  EXPECT_EQ(g.subsets[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(g.subsets[2], (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(g.coeffs[0], 1);
  EXPECT_EQ(g.coeffs[1], 1);
  EXPECT_EQ(g.coeffs[2], 2);
  EXPECT_EQ(wedge_norm_squared(v), 6);
}

TEST(Grassmann, DegenerateCases) {
  std::vector<IntVector> unit{{1, 0, 0}, {0, 1, 0}};
  GrassmannCoords g = grassmann(unit);
  EXPECT_EQ(std::count(g.coeffs.begin(), g.coeffs.end(), Rational(0)), 2);
  EXPECT_EQ(g.coeffs[0], 1);
  EXPECT_EQ(wedge_norm_squared(unit), 1);
  std::vector<IntVector> same{{1, 2, 3}, {1, 2, 3}};
  EXPECT_EQ(wedge_norm_squared(same), 0);
  for (const auto& c : grassmann(same).coeffs) EXPECT_EQ(c, 0);
}

TEST(Grassmann, NormIsSumOfSquaredMinors) {
  std::mt19937_64 g(15);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t d = uniform(g, 2, 6), k = uniform(g, 1, d);
    std::vector<RatVector> v(k, RatVector(d));
    for (auto& vec : v)
      for (auto& x : vec) x = Rational(uniform(g, -9, 9), uniform(g, 1, 5));
    Rational sum = 0;
    for (const auto& c : grassmann(v).coeffs) sum += c * c;
    EXPECT_EQ(sum, wedge_norm_squared(v));
  }
}

TEST(Grassmann, ComplementaryMinorsMatch) {
  std::mt19937_64 g(16);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t d = uniform(g, 3, 6), k = uniform(g, 1, d - 1);
    Lattice l = random_saturated(g, d, k);
    Lattice o = orthogonal_lattice(l);
    std::vector<IntVector> lv, ov;
    for (std::size_t j = 0; j < l.rank(); ++j) lv.push_back(l.basis().column(j));
    for (std::size_t j = 0; j < o.rank(); ++j) ov.push_back(o.basis().column(j));
    GrassmannCoords gl = grassmann(lv), go = grassmann(ov);
    for (std::size_t a = 0; a < gl.subsets.size(); ++a) {
      std::vector<std::size_t> comp;
      for (std::size_t i = 0; i < d; ++i)
        if (std::find(gl.subsets[a].begin(), gl.subsets[a].end(), i) ==
            gl.subsets[a].end())
          comp.push_back(i);
      auto it = std::find(go.subsets.begin(), go.subsets.end(), comp);
      ASSERT_NE(it, go.subsets.end());
      EXPECT_EQ(abs(gl.coeffs[a]), abs(go.coeffs[it - go.subsets.begin()]));
    }
  }
}

#include <gtest/gtest.h>

#include <random>

#include "lpbdd/hnf.hpp"

namespace lpbdd {
namespace {

void expect_hermite_shape(const IntMatrix& h) {
  std::size_t prev_pivot = 0;
  for (std::size_t j = 0; j < h.cols(); ++j) {
    std::size_t pivot = 0;
    while (pivot < h.rows() && h(pivot, j) == 0) ++pivot;
    ASSERT_LT(pivot, h.rows());
    if (j > 0) EXPECT_GT(pivot, prev_pivot);
    EXPECT_GT(h(pivot, j), 0);
    for (std::size_t k = 0; k < j; ++k) {
      EXPECT_GE(h(pivot, k), 0);
      EXPECT_LT(h(pivot, k), h(pivot, j));
    }
    prev_pivot = pivot;
  }
}

TEST(Hnf, SmallExample) {
  IntMatrix m = IntMatrix::from_rows({{Int(2), Int(4)}, {Int(3), Int(1)}});
  HermiteForm f = hnf(m);
  EXPECT_EQ(m * f.transform, f.h);
  expect_hermite_shape(f.h);
  EXPECT_EQ(hnf_determinant(f.h), 10);
  EXPECT_EQ(abs_determinant(m), 10);
}

TEST(Hnf, RankDeficientThrows) {
  EXPECT_THROW(hnf(IntMatrix::from_rows({{Int(1), Int(2)}, {Int(2), Int(4)}})), std::invalid_argument);
  EXPECT_EQ(abs_determinant(IntMatrix::from_rows({{Int(1), Int(2)}, {Int(2), Int(4)}})), 0);
}

TEST(HnfProperty, RandomMatrices) {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> entry(-9, 9), dim(1, 5);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = dim(gen), d = n + trial % 2;
    IntMatrix m(d, n);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = entry(gen);
    if (rank(to_rational(m)) != n) continue;
    HermiteForm f = hnf(m);
    EXPECT_EQ(m * f.transform, f.h);
    expect_hermite_shape(f.h);
    Rat det_u = determinant(to_rational(f.transform));
    EXPECT_TRUE(det_u == 1 || det_u == -1);
    if (d == n) EXPECT_EQ(Rat(hnf_determinant(f.h)), abs(determinant(to_rational(m))));
  }
}

}  // namespace
}  // namespace lpbdd

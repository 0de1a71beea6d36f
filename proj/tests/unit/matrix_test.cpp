#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "nnapprox/error.hpp"
#include "nnapprox/matrix.hpp"

using nnapprox::Matrix;

namespace {

using Dense = std::vector<std::vector<double>>;

Dense random_dense(std::size_t r, std::size_t c, std::mt19937_64& rng, double zero_prob = 0.3) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::bernoulli_distribution zero(zero_prob);
  Dense m(r, std::vector<double>(c));
  for (auto& row : m) {
    for (auto& v : row) v = zero(rng) ? 0.0 : u(rng);
  }
  return m;
}

Dense naive_product(const Dense& a, const Dense& b) {
  Dense out(a.size(), std::vector<double>(b.front().size(), 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b.front().size(); ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

}  // namespace

TEST(Matrix, DenseRoundTrip) {
  const Matrix m = Matrix::from_rows({{1, 0, -3}, {0, 0, 0}, {2.5, 4, 0}});
  EXPECT_EQ(m.rows(), 3u);
  EXPECT_EQ(m.cols(), 3u);
  EXPECT_EQ(m.nonzeros(), 4u);
  EXPECT_EQ(m.to_rows(), (Dense{{1, 0, -3}, {0, 0, 0}, {2.5, 4, 0}}));
  EXPECT_DOUBLE_EQ(m(2, 1), 4.0);
  EXPECT_DOUBLE_EQ(m(1, 1), 0.0);
}

TEST(Matrix, TripletsSumDuplicates) {
  const Matrix m = Matrix::from_triplets(2, 2, {{0, 1, 1.5}, {0, 1, 0.5}, {1, 0, -1.0}});
  EXPECT_DOUBLE_EQ(m(0, 1), 2.0);
  EXPECT_DOUBLE_EQ(m(1, 0), -1.0);
}

TEST(Matrix, RejectsNonFiniteEntries) {
  EXPECT_THROW(Matrix::from_rows({{1.0, std::numeric_limits<double>::quiet_NaN()}}),
               nnapprox::NumericError);
  EXPECT_THROW(Matrix::from_rows({{std::numeric_limits<double>::infinity()}}), nnapprox::NumericError);
}

TEST(Matrix, RaggedRowsRejected) {
  EXPECT_THROW(Matrix::from_rows(Dense{{1, 2}, {3}}), nnapprox::DimensionError);
}

TEST(Matrix, ApplyMatchesNaive) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto d = random_dense(1 + rng() % 6, 1 + rng() % 6, rng);
    const Matrix m = Matrix::from_rows(d);
    std::vector<double> x(d.front().size());
    for (auto& v : x) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    const auto y = m.apply(x);
    for (std::size_t i = 0; i < d.size(); ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) s += d[i][j] * x[j];
      EXPECT_NEAR(y[i], s, 1e-14);
    }
    std::vector<double> z(d.size());
    for (auto& v : z) v = std::uniform_real_distribution<double>(-1, 1)(rng);
    const auto zt = m.apply_transposed(z);
    for (std::size_t j = 0; j < x.size(); ++j) {
      double s = 0.0;
      for (std::size_t i = 0; i < d.size(); ++i) s += z[i] * d[i][j];
      EXPECT_NEAR(zt[j], s, 1e-14);
    }
  }
}

TEST(Matrix, ApplyDimensionMismatch) {
  const Matrix m(2, 3);
  EXPECT_THROW(m.apply(std::vector<double>{1, 2}), nnapprox::DimensionError);
}

TEST(Matrix, ProductMatchesNaive) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 50; ++t) {
    const std::size_t a = 1 + rng() % 5, b = 1 + rng() % 5, c = 1 + rng() % 5;
    const auto da = random_dense(a, b, rng);
    const auto db = random_dense(b, c, rng);
    const auto want = naive_product(da, db);
    const auto got = (Matrix::from_rows(da) * Matrix::from_rows(db)).to_rows();
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < c; ++j) EXPECT_NEAR(got[i][j], want[i][j], 1e-13);
  }
  EXPECT_THROW(Matrix(2, 3) * Matrix(2, 3), nnapprox::DimensionError);
}

TEST(Matrix, NormsAndExtremes) {
  const Matrix m = Matrix::from_rows({{1, -2}, {0, 0.5}});
  EXPECT_DOUBLE_EQ(m.l1_norm(), 3.5);
  EXPECT_DOUBLE_EQ(m.max_abs(), 2.0);
  EXPECT_DOUBLE_EQ(m.min_entry(), -2.0);
  EXPECT_DOUBLE_EQ(m.max_entry(), 1.0);
  EXPECT_EQ(m.abs().to_rows(), (Dense{{1, 2}, {0, 0.5}}));
  EXPECT_EQ(m.scaled(2.0).to_rows(), (Dense{{2, -4}, {0, 1}}));
  // implicit zeros take part in min/max
  const Matrix pos = Matrix::from_rows({{1, 0}, {0, 3}});
  EXPECT_DOUBLE_EQ(pos.min_entry(), 0.0);
  const Matrix zero(2, 2);
  EXPECT_DOUBLE_EQ(zero.max_entry(), 0.0);
}

TEST(Matrix, IdentityAndBlockDiagonal) {
  EXPECT_EQ(Matrix::identity(2).to_rows(), (Dense{{1, 0}, {0, 1}}));
  const Matrix a = Matrix::from_rows({{1, 2}});
  const Matrix b = Matrix::from_rows({{3}, {4}});
  const std::vector<Matrix> blocks{a, b};
  EXPECT_EQ(Matrix::block_diagonal(blocks).to_rows(), (Dense{{1, 2, 0}, {0, 0, 3}, {0, 0, 4}}));
}

TEST(Matrix, Equality) {
  EXPECT_EQ(Matrix::from_rows({{1, 0}}), Matrix::from_triplets(1, 2, {{0, 0, 1.0}}));
  EXPECT_FALSE(Matrix::from_rows({{1, 0}}) == Matrix::from_rows({{1}, {0}}));
}

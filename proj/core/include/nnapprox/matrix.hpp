#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nnapprox {

/// Real matrix acting on column vectors by left multiplication.
///
/// Storage is compressed by rows: only nonzero entries are kept, so the
/// block-diagonal layers of the constructive networks stay linear in the
/// number of channels. Logically it is an ordinary dense rows x cols matrix;
/// `to_dense()` and `operator()` expose it that way and every entry is finite.
class Matrix {
 public:
  struct Entry {
    std::size_t col;
    double value;
  };

  struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
  };

  Matrix() = default;

  /// Zero matrix.
  Matrix(std::size_t rows, std::size_t cols);

  static Matrix from_dense(std::size_t rows, std::size_t cols,
                           std::span<const double> row_major);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
  static Matrix from_rows(const std::vector<std::vector<double>>& rows);
  /// Duplicate (row, col) pairs are summed.
  static Matrix from_triplets(std::size_t rows, std::size_t cols,
                              std::vector<Triplet> triplets);
  static Matrix identity(std::size_t n);
  static Matrix block_diagonal(std::span<const Matrix> blocks);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double operator()(std::size_t row, std::size_t col) const;

  /// Nonzero entries of one row, ordered by column.
  std::span<const Entry> row(std::size_t r) const;

  std::vector<double> to_dense() const;
  std::vector<std::vector<double>> to_rows() const;

  /// y = M x
  std::vector<double> apply(std::span<const double> x) const;
  void apply_into(std::span<const double> x, std::span<double> y) const;
  /// y = x^T M, i.e. the transpose applied to x.
  std::vector<double> apply_transposed(std::span<const double> x) const;

  /// Entry-wise absolute value |M|.
  Matrix abs() const;
  Matrix scaled(double factor) const;

  double l1_norm() const noexcept;
  double max_abs() const noexcept;
  double min_entry() const noexcept;
  double max_entry() const noexcept;

  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);
  friend bool operator==(const Matrix& lhs, const Matrix& rhs);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::size_t> row_start_{0};
  std::vector<Entry> entries_;
};

}  // namespace nnapprox

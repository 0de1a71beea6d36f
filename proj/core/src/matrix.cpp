#include "nnapprox/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nnapprox/error.hpp"

namespace nnapprox {

namespace {

void require_finite(double v) {
  if (!std::isfinite(v)) {
    throw NumericError("matrix entries must be finite");
  }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), row_start_(rows + 1, 0) {}

Matrix Matrix::from_dense(std::size_t rows, std::size_t cols,
                          std::span<const double> row_major) {
  if (row_major.size() != rows * cols) {
    throw DimensionError("dense data has " + std::to_string(row_major.size()) +
                         " entries, expected " + std::to_string(rows * cols));
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = row_major[r * cols + c];
      require_finite(v);
      if (v != 0.0) m.entries_.push_back({c, v});
    }
    m.row_start_[r + 1] = m.entries_.size();
  }
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  std::vector<std::vector<double>> copy;
  copy.reserve(rows.size());
  for (const auto& r : rows) copy.emplace_back(r);
  return from_rows(copy);
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) {
    throw DimensionError("matrix must have at least one row and one column");
  }
  const std::size_t cols = rows.front().size();
  std::vector<double> dense;
  dense.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) throw DimensionError("ragged matrix rows");
    dense.insert(dense.end(), r.begin(), r.end());
  }
  return from_dense(rows.size(), cols, dense);
}

Matrix Matrix::from_triplets(std::size_t rows, std::size_t cols,
                             std::vector<Triplet> triplets) {
  std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  Matrix m(rows, cols);
  std::size_t i = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    while (i < triplets.size() && triplets[i].row == r) {
      const std::size_t c = triplets[i].col;
      if (c >= cols) throw DimensionError("triplet column out of range");
      double v = 0.0;
      while (i < triplets.size() && triplets[i].row == r && triplets[i].col == c) {
        v += triplets[i].value;
        ++i;
      }
      require_finite(v);
      if (v != 0.0) m.entries_.push_back({c, v});
    }
    m.row_start_[r + 1] = m.entries_.size();
  }
  if (i != triplets.size()) throw DimensionError("triplet row out of range");
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  m.entries_.reserve(n);
  for (std::size_t r = 0; r < n; ++r) {
    m.entries_.push_back({r, 1.0});
    m.row_start_[r + 1] = r + 1;
  }
  return m;
}

Matrix Matrix::block_diagonal(std::span<const Matrix> blocks) {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t nnz = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
    nnz += b.nonzeros();
  }
  Matrix m(rows, cols);
  m.entries_.reserve(nnz);
  std::size_t row_offset = 0;
  std::size_t col_offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      for (const auto& e : b.row(r)) m.entries_.push_back({e.col + col_offset, e.value});
      m.row_start_[row_offset + r + 1] = m.entries_.size();
    }
    row_offset += b.rows();
    col_offset += b.cols();
  }
  return m;
}

double Matrix::operator()(std::size_t row, std::size_t col) const {
  const auto entries = this->row(row);
  const auto it = std::lower_bound(entries.begin(), entries.end(), col,
                                   [](const Entry& e, std::size_t c) { return e.col < c; });
  return (it != entries.end() && it->col == col) ? it->value : 0.0;
}

std::span<const Matrix::Entry> Matrix::row(std::size_t r) const {
  return {entries_.data() + row_start_[r], row_start_[r + 1] - row_start_[r]};
}

std::vector<double> Matrix::to_dense() const {
  std::vector<double> out(rows_ * cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : row(r)) out[r * cols_ + e.col] = e.value;
  }
  return out;
}

std::vector<std::vector<double>> Matrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_, 0.0));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : row(r)) out[r][e.col] = e.value;
  }
  return out;
}

std::vector<double> Matrix::apply(std::span<const double> x) const {
  std::vector<double> y(rows_);
  apply_into(x, y);
  return y;
}

void Matrix::apply_into(std::span<const double> x, std::span<double> y) const {
  if (x.size() != cols_ || y.size() != rows_) {
    throw DimensionError("matrix is " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                         " but got input of length " + std::to_string(x.size()));
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    double acc = 0.0;
    for (const auto& e : row(r)) acc += e.value * x[e.col];
    y[r] = acc;
  }
}

std::vector<double> Matrix::apply_transposed(std::span<const double> x) const {
  if (x.size() != rows_) throw DimensionError("transposed apply: length mismatch");
  std::vector<double> y(cols_, 0.0);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (const auto& e : row(r)) y[e.col] += e.value * x[r];
  }
  return y;
}

Matrix Matrix::abs() const {
  Matrix m = *this;
  for (auto& e : m.entries_) e.value = std::fabs(e.value);
  return m;
}

Matrix Matrix::scaled(double factor) const {
  require_finite(factor);
  if (factor == 0.0) return Matrix(rows_, cols_);
  Matrix m = *this;
  for (auto& e : m.entries_) {
    e.value *= factor;
    require_finite(e.value);
  }
  return m;
}

double Matrix::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& e : entries_) s += std::fabs(e.value);
  return s;
}

double Matrix::max_abs() const noexcept {
  double s = 0.0;
  for (const auto& e : entries_) s = std::max(s, std::fabs(e.value));
  return s;
}

double Matrix::min_entry() const noexcept {
  // implicit zeros count when the matrix is not full
  double s = (entries_.empty() || entries_.size() < rows_ * cols_) ? 0.0 : entries_.front().value;
  for (const auto& e : entries_) s = std::min(s, e.value);
  return s;
}

double Matrix::max_entry() const noexcept {
  double s = (entries_.empty() || entries_.size() < rows_ * cols_) ? 0.0 : entries_.front().value;
  for (const auto& e : entries_) s = std::max(s, e.value);
  return s;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols_ != rhs.rows_) {
    throw DimensionError("product of " + std::to_string(lhs.rows_) + "x" +
                         std::to_string(lhs.cols_) + " and " + std::to_string(rhs.rows_) +
                         "x" + std::to_string(rhs.cols_));
  }
  Matrix out(lhs.rows_, rhs.cols_);
  std::vector<double> acc(rhs.cols_, 0.0);
  std::vector<char> touched(rhs.cols_, 0);
  std::vector<std::size_t> cols;
  for (std::size_t r = 0; r < lhs.rows_; ++r) {
    cols.clear();
    for (const auto& a : lhs.row(r)) {
      for (const auto& b : rhs.row(a.col)) {
        if (!touched[b.col]) {
          touched[b.col] = 1;
          cols.push_back(b.col);
        }
        acc[b.col] += a.value * b.value;
      }
    }
    std::sort(cols.begin(), cols.end());
    for (const std::size_t c : cols) {
      if (acc[c] != 0.0) out.entries_.push_back({c, acc[c]});
      acc[c] = 0.0;
      touched[c] = 0;
    }
    out.row_start_[r + 1] = out.entries_.size();
  }
  return out;
}

bool operator==(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows_ != rhs.rows_ || lhs.cols_ != rhs.cols_) return false;
  if (lhs.row_start_ != rhs.row_start_) return false;
  for (std::size_t i = 0; i < lhs.entries_.size(); ++i) {
    if (lhs.entries_[i].col != rhs.entries_[i].col ||
        lhs.entries_[i].value != rhs.entries_[i].value) {
      return false;
    }
  }
  return true;
}

}  // namespace nnapprox

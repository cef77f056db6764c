#pragma once

#include "micrep/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace micrep {

/// Dense row-major rational matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  /// Every row must have `cols` entries; `cols` is needed when `rows` is empty.
  Matrix(const std::vector<RationalVector>& rows, std::size_t cols);
  explicit Matrix(const std::vector<RationalVector>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  RationalVector row_vector(std::size_t r) const {
    auto s = row(r);
    return {s.begin(), s.end()};
  }
  void append_row(std::span<const Rational> values);

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Rank by exact Gaussian elimination.
std::size_t rank(std::vector<RationalVector> rows);

}  // namespace micrep

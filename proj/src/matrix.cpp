#include "micrep/matrix.hpp"

#include "micrep/error.hpp"

#include <utility>

namespace micrep {

Matrix::Matrix(const std::vector<RationalVector>& rows, std::size_t cols)
    : rows_(rows.size()), cols_(cols) {
  data_.reserve(rows_ * cols_);
  for (const RationalVector& r : rows) {
    if (r.size() != cols_) throw DimensionMismatch("ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix::Matrix(const std::vector<RationalVector>& rows)
    : Matrix(rows, rows.empty() ? 0 : rows.front().size()) {}

void Matrix::append_row(std::span<const Rational> values) {
  if (values.size() != cols_) throw DimensionMismatch("row length does not match matrix");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

std::size_t rank(std::vector<RationalVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational factor = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < cols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace micrep

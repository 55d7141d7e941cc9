#include <utility>

#include "k0s/exactmath.hpp"

namespace k0s::exactmath {

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, Field field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, Scalar(0, field)) {}

FieldMatrix FieldMatrix::identity(std::size_t n, Field field) {
  FieldMatrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1, field);
  return m;
}

FieldMatrix FieldMatrix::from_rows(const std::vector<std::vector<long>>& rows, Field field) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  FieldMatrix m(r, c, field);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Scalar(rows[i][j], field);
  }
  return m;
}

FieldMatrix FieldMatrix::column(std::size_t c) const {
  FieldMatrix out(rows_, 1, field_);
  for (std::size_t i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, c);
  return out;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix out(cols_, rows_, field_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  }
  return out;
}

bool FieldMatrix::is_zero() const {
  for (const auto& s : data_) {
    if (!s.is_zero()) return false;
  }
  return true;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("matrix product: inner dimensions differ");
  FieldMatrix out(a.rows_, b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b(k, j).is_zero()) out(i, j) += x * b(k, j);
      }
    }
  }
  return out;
}

FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum: shapes differ");
  FieldMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
  return out;
}

FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix difference: shapes differ");
  FieldMatrix out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

FieldMatrix FieldMatrix::hstack(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows_ != b.rows_) throw DimensionError("hstack: row counts differ");
  FieldMatrix out(a.rows_, a.cols_ + b.cols_, a.field_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

Echelon row_reduce(FieldMatrix m) {
  Echelon e;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col).is_zero()) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = col; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    }
    const Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Scalar factor = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= factor * m(row, j);
      }
    }
    e.pivot_columns.push_back(col);
    ++row;
  }
  e.reduced = std::move(m);
  return e;
}

RankKernel rank_kernel(const FieldMatrix& m) {
  const Echelon e = row_reduce(m);
  const std::size_t n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto c : e.pivot_columns) is_pivot[c] = true;

  RankKernel out;
  out.rank = e.pivot_columns.size();
  out.kernel = FieldMatrix(n, n - out.rank, m.field());
  std::size_t k = 0;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    out.kernel(free, k) = Scalar(1, m.field());
    for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
      out.kernel(e.pivot_columns[r], k) = -e.reduced(r, free);
    }
    ++k;
  }
  return out;
}

std::optional<FieldMatrix> solve(const FieldMatrix& m, const FieldMatrix& b) {
  if (m.rows() != b.rows()) throw DimensionError("solve: row counts differ");
  const Echelon e = row_reduce(FieldMatrix::hstack(m, b));
  const std::size_t n = m.cols();
  FieldMatrix x(n, b.cols(), m.field());
  for (std::size_t r = 0; r < e.pivot_columns.size(); ++r) {
    const std::size_t pc = e.pivot_columns[r];
    if (pc >= n) return std::nullopt;  // pivot in the augmented block: inconsistent
    for (std::size_t j = 0; j < b.cols(); ++j) x(pc, j) = e.reduced(r, n + j);
  }
  return x;
}

}  // namespace k0s::exactmath

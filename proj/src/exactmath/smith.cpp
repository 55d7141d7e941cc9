#include <utility>

#include "k0s/exactmath.hpp"

namespace k0s::exactmath {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, mpz_class(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.front().size();
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c) throw DimensionError("ragged matrix literal");
    for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionError("integer matrix product: inner dimensions differ");
  IntMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
    }
  }
  return out;
}

mpz_class IntMatrix::determinant() const {
  if (rows_ != cols_) throw DimensionError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  // Bareiss fraction-free elimination.
  IntMatrix m = *this;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
    }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

namespace {

struct Reducer {
  IntMatrix a, u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
    for (std::size_t c = 0; c < u.cols(); ++c) std::swap(u(i, c), u(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
    for (std::size_t r = 0; r < v.rows(); ++r) std::swap(v(r, i), v(r, j));
  }
  // row_dst += q * row_src
  void add_row(std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(dst, c) += q * a(src, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(dst, c) += q * u(src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const mpz_class& q) {
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, dst) += q * a(r, src);
    for (std::size_t r = 0; r < v.rows(); ++r) v(r, dst) += q * v(r, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) = -a(i, c);
    for (std::size_t c = 0; c < u.cols(); ++c) u(i, c) = -u(i, c);
  }
};

}  // namespace

// Pivot on the nonzero entry of least absolute value, clear its row and
// column by Euclidean steps, then repair divisibility against the remaining
// block before moving on.
SmithForm smith_normal_form(const IntMatrix& input) {
  const std::size_t m = input.rows();
  const std::size_t n = input.cols();
  Reducer r{input, IntMatrix::identity(m), IntMatrix::identity(n)};
  SmithForm out;

  for (std::size_t t = 0; t < m && t < n; ++t) {
    // least |entry| in the trailing block
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m; ++i) {
      for (std::size_t j = t; j < n; ++j) {
        if (r.a(i, j) == 0) continue;
        if (pi == m || abs(r.a(i, j)) < abs(r.a(pi, pj))) {
          pi = i;
          pj = j;
        }
      }
    }
    if (pi == m) break;
    r.swap_rows(t, pi);
    r.swap_cols(t, pj);

    for (;;) {
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (r.a(i, t) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), r.a(i, t).get_mpz_t(), r.a(t, t).get_mpz_t());
        r.add_row(i, t, -q);
        if (r.a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (r.a(t, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), r.a(t, j).get_mpz_t(), r.a(t, t).get_mpz_t());
        r.add_col(j, t, -q);
        if (r.a(t, j) != 0) clean = false;
      }
      if (!clean) {
        // a remainder smaller than the pivot survived; move it onto the diagonal
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < m; ++i) {
          if (r.a(i, t) != 0 && abs(r.a(i, t)) < abs(r.a(bi, bj))) {
            bi = i;
            bj = t;
          }
        }
        for (std::size_t j = t + 1; j < n; ++j) {
          if (r.a(t, j) != 0 && abs(r.a(t, j)) < abs(r.a(bi, bj))) {
            bi = t;
            bj = j;
          }
        }
        r.swap_rows(t, bi);
        r.swap_cols(t, bj);
        continue;
      }
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(r.a(i, j).get_mpz_t(), r.a(t, t).get_mpz_t())) {
            r.add_row(t, i, 1);
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
    if (r.a(t, t) < 0) r.negate_row(t);
    out.diagonal.push_back(r.a(t, t));
  }
  out.left = std::move(r.u);
  out.right = std::move(r.v);
  return out;
}

}  // namespace k0s::exactmath

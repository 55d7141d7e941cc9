// Exact scalars and dense matrices over Q or F_p, plus integer Smith normal form.
#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace k0s::exactmath {

class ArithmeticError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The ground field: Q when modulus == 0, otherwise F_p with p == modulus.
struct Field {
  std::uint32_t modulus = 0;

  static Field rationals() { return {}; }
  /// Throws ArithmeticError unless p is prime.
  static Field prime(std::uint32_t p);

  bool is_rational() const { return modulus == 0; }
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;
};

bool is_prime(std::uint32_t n);

/// An element of a Field. Rationals are kept in lowest terms with positive
/// denominator (mpq canonical form); F_p residues live in [0, p-1].
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value, Field field = {});
  Scalar(const mpq_class& value, Field field = {});

  /// Parses "n" or "n/d". Over F_p the denominator must be invertible.
  static Scalar parse(std::string_view text, Field field = {});

  /// "num/den", denominator omitted when 1. F_p residues print as integers.
  std::string str() const;

  Field field() const { return field_; }
  const mpq_class& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_one() const { return value_ == 1; }

  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

 private:
  void check_same_field(const Scalar& o) const;
  void reduce();

  mpq_class value_ = 0;
  Field field_{};
};

/// Dense row-major matrix over a Field. 0 x n and n x 0 shapes are allowed.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, Field field = {});

  static FieldMatrix identity(std::size_t n, Field field = {});
  static FieldMatrix from_rows(const std::vector<std::vector<long>>& rows, Field field = {});

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Field field() const { return field_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  FieldMatrix column(std::size_t c) const;
  FieldMatrix transpose() const;
  bool is_zero() const;

  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator+(const FieldMatrix& a, const FieldMatrix& b);
  friend FieldMatrix operator-(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) = default;

  /// Side-by-side concatenation; row counts must agree.
  static FieldMatrix hstack(const FieldMatrix& a, const FieldMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_{};
  std::vector<Scalar> data_;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
  FieldMatrix reduced;
  std::vector<std::size_t> pivot_columns;
};

Echelon row_reduce(FieldMatrix m);

struct RankKernel {
  std::size_t rank = 0;
  FieldMatrix kernel;  // cols() x (cols() - rank); columns form a basis of ker m
};

RankKernel rank_kernel(const FieldMatrix& m);

/// Some x with m * x == b, or nullopt. Throws DimensionError on row mismatch.
std::optional<FieldMatrix> solve(const FieldMatrix& m, const FieldMatrix& b);

// --- integer matrices -------------------------------------------------------

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const mpz_class& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  mpz_class& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) = default;

  mpz_class determinant() const;  // square only; fraction-free elimination

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpz_class> data_;
};

/// left * a * right == D where D carries `diagonal` on its leading diagonal and
/// zeros elsewhere; diagonal entries are positive and each divides the next.
struct SmithForm {
  std::vector<mpz_class> diagonal;
  IntMatrix left;
  IntMatrix right;
};

SmithForm smith_normal_form(const IntMatrix& a);

}  // namespace k0s::exactmath

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "k0s/exactmath.hpp"

using namespace k0s::exactmath;

namespace {

// Invariant factors from determinantal divisors: s_k = d_k / d_{k-1}, where d_k
// is the gcd of all k x k minors. Exponential, only for tiny matrices.
mpz_class minor(const IntMatrix& a, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = a(rows[r], cols[c]);
  }
  return m.determinant();
}

void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
  std::vector<bool> pick(n, false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
  do {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i) {
      if (pick[i]) s.push_back(i);
    }
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

std::vector<mpz_class> oracle_invariants(const IntMatrix& a) {
  std::vector<mpz_class> out;
  mpz_class prev = 1;
  for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(a.rows(), k, rs);
    subsets(a.cols(), k, cs);
    mpz_class g = 0;
    for (const auto& r : rs) {
      for (const auto& c : cs) {
        const mpz_class d = minor(a, r, c);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      }
    }
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long span) {
  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<long>(rng() % (2 * span + 1)) - span;
  }
  return m;
}

void expect_smith_identity(const IntMatrix& a, const SmithForm& s) {
  const IntMatrix d = s.left * a * s.right;
  for (std::size_t r = 0; r < d.rows(); ++r) {
    for (std::size_t c = 0; c < d.cols(); ++c) {
      const mpz_class want = r == c && r < s.diagonal.size() ? s.diagonal[r] : mpz_class(0);
      EXPECT_EQ(d(r, c), want) << "entry " << r << "," << c;
    }
  }
  EXPECT_EQ(abs(s.left.determinant()), 1);
  EXPECT_EQ(abs(s.right.determinant()), 1);
}

}  // namespace

TEST(Smith, DiagTwoThree) {
  const IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
  const SmithForm s = smith_normal_form(a);
  ASSERT_EQ(s.diagonal.size(), 2u);
  EXPECT_EQ(s.diagonal[0], 1);
  EXPECT_EQ(s.diagonal[1], 6);
  EXPECT_EQ(s.diagonal, oracle_invariants(a));
  expect_smith_identity(a, s);
}

TEST(Smith, ZeroAndEmptyShapes) {
  EXPECT_TRUE(smith_normal_form(IntMatrix(3, 2)).diagonal.empty());
  EXPECT_TRUE(smith_normal_form(IntMatrix(0, 4)).diagonal.empty());
  const SmithForm s = smith_normal_form(IntMatrix::from_rows({{0, 0, 4}}));
  EXPECT_EQ(s.diagonal, std::vector<mpz_class>{4});
}

TEST(Smith, NegativeEntriesGivePositiveFactors) {
  const IntMatrix a = IntMatrix::from_rows({{-4, 0}, {0, -6}});
  const SmithForm s = smith_normal_form(a);
  EXPECT_EQ(s.diagonal, (std::vector<mpz_class>{2, 12}));
  expect_smith_identity(a, s);
}

TEST(Smith, RandomMatricesMatchDeterminantalDivisors) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t rows = 1 + rng() % 4, cols = 1 + rng() % 4;
    const IntMatrix a = random_int_matrix(rng, rows, cols, 6);
    const SmithForm s = smith_normal_form(a);
    EXPECT_EQ(s.diagonal, oracle_invariants(a)) << "trial " << trial;
    for (std::size_t k = 0; k < s.diagonal.size(); ++k) {
      EXPECT_GT(s.diagonal[k], 0);
      if (k + 1 < s.diagonal.size()) {
        EXPECT_TRUE(s.diagonal[k + 1] % s.diagonal[k] == 0) << "divisibility chain";
      }
    }
    expect_smith_identity(a, s);
  }
}

TEST(Smith, InvariantUnderRowAndColumnPermutations) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t rows = 2 + rng() % 4, cols = 2 + rng() % 4;
    const IntMatrix a = random_int_matrix(rng, rows, cols, 9);
    std::vector<std::size_t> rp(rows), cp(cols);
    std::iota(rp.begin(), rp.end(), 0);
    std::iota(cp.begin(), cp.end(), 0);
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    IntMatrix b(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) b(r, c) = a(rp[r], cp[c]);
    }
    EXPECT_EQ(smith_normal_form(a).diagonal, smith_normal_form(b).diagonal);
  }
}

TEST(Smith, LargeEntriesStayExact) {
  IntMatrix a = IntMatrix::from_rows({{1, 0}, {0, 1}});
  a(0, 0) = mpz_class("123456789012345678901234567890");
  a(1, 1) = mpz_class("987654321098765432109876543210");
  const SmithForm s = smith_normal_form(a);
  mpz_class g, l;
  mpz_gcd(g.get_mpz_t(), a(0, 0).get_mpz_t(), a(1, 1).get_mpz_t());
  mpz_lcm(l.get_mpz_t(), a(0, 0).get_mpz_t(), a(1, 1).get_mpz_t());
  EXPECT_EQ(s.diagonal, (std::vector<mpz_class>{g, l}));
}

TEST(Rational, RoundTripIsLossless) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    const long num = static_cast<long>(rng() % 2001) - 1000;
    const long den = 1 + static_cast<long>(rng() % 999);
    mpq_class q(num, den);
    q.canonicalize();
    const Scalar y(q);
    const Scalar back = Scalar::parse(y.str());
    EXPECT_EQ(back, y);
    EXPECT_EQ(back.str(), y.str());
  }
  EXPECT_EQ(Scalar::parse("6/4").str(), "3/2");
  EXPECT_EQ(Scalar::parse("-10/5").str(), "-2");
  EXPECT_EQ(Scalar::parse("0/7").str(), "0");
  const Scalar huge = Scalar::parse("-170141183460469231731687303715884105727/3");
  EXPECT_EQ(Scalar::parse(huge.str()), huge);
}

TEST(Rational, RejectsMalformedText) {
  EXPECT_ANY_THROW(Scalar::parse("1/0"));
  EXPECT_ANY_THROW(Scalar::parse("abc"));
  EXPECT_ANY_THROW(Scalar::parse(""));
}

TEST(PrimeField, Arithmetic) {
  const Field f7 = Field::prime(7);
  EXPECT_EQ(Scalar::parse("1/2", f7).str(), "4");
  EXPECT_EQ((Scalar(3, f7) * Scalar(5, f7)).str(), "1");
  EXPECT_EQ(Scalar(-1, f7).str(), "6");
  EXPECT_EQ(Scalar(3, f7).inverse(), Scalar(5, f7));
  EXPECT_ANY_THROW(Scalar::parse("1/7", f7));
  EXPECT_ANY_THROW(Field::prime(9));
  EXPECT_ANY_THROW(Scalar(1, f7) + Scalar(1));
}

TEST(Linear, KernelAndSolve) {
  std::mt19937_64 rng(3);
  for (const Field field : {Field::rationals(), Field::prime(5)}) {
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t rows = 1 + rng() % 5, cols = 1 + rng() % 5;
      FieldMatrix m(rows, cols, field);
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = Scalar(static_cast<long>(rng() % 5) - 2, field);
      }
      const RankKernel rk = rank_kernel(m);
      EXPECT_EQ(rk.rank + rk.kernel.cols(), cols);
      EXPECT_TRUE((m * rk.kernel).is_zero());
      EXPECT_EQ(rank_kernel(rk.kernel).rank, rk.kernel.cols()) << "kernel columns independent";

      FieldMatrix x(cols, 1, field);
      for (std::size_t r = 0; r < cols; ++r) x(r, 0) = Scalar(static_cast<long>(rng() % 7) - 3, field);
      const FieldMatrix b = m * x;
      const auto sol = solve(m, b);
      ASSERT_TRUE(sol.has_value());
      EXPECT_EQ(m * *sol, b);
    }
  }
  const FieldMatrix m = FieldMatrix::from_rows({{1, 1}, {2, 2}});
  EXPECT_FALSE(solve(m, FieldMatrix::from_rows({{1}, {3}})).has_value());
}

#include <gtest/gtest.h>

#include "k0s/homotopy.hpp"
#include "k0s/random.hpp"
#include "support.hpp"

using namespace k0s;
using namespace k0s::homotopy;
using k0s::testing::a3;

namespace {

void expect_minimal_form_valid(const ProjComplex& x) {
  const MinimalForm mf = minimal_reduce(x);
  EXPECT_TRUE(is_minimal(mf.complex));
  EXPECT_EQ(compose(mf.to_min, mf.from_min), ChainMap::identity(mf.complex));
  const ChainMap defect = ChainMap::identity(x) - compose(mf.from_min, mf.to_min);
  EXPECT_TRUE(is_null_homotopy(defect, mf.homotopy));
  EXPECT_EQ(minimal_reduce(mf.complex).complex, mf.complex);
}

}  // namespace

TEST(Complex, RejectsNonzeroSquare) {
  auto alg = a3();
  const auto p1 = k0s::testing::v(alg, "1"), p2 = k0s::testing::v(alg, "2");
  HomMatrix id2 = HomMatrix::identity(*alg, {p2});
  EXPECT_THROW(ProjComplex(alg, {{0, {p2}}, {1, {p2}}, {2, {p2}}}, {{0, id2}, {1, id2}}), HomotopyError);
  (void)p1;
}

TEST(Complex, ShiftBookkeeping) {
  auto alg = a3();
  const auto x = k0s::testing::s1(alg);
  EXPECT_EQ(shift(x, 0), x);
  EXPECT_EQ(shift(shift(x, 1), -1), x);
  const auto st = ProjComplex::stalk(alg, 0, 0);
  EXPECT_EQ(shift(st, -1), ProjComplex::stalk(alg, 0, 1));
  EXPECT_EQ(shift(x, 1).differential(-3), -x.differential(-2));
}

TEST(HomSpace, StalkEndomorphisms) {
  auto alg = a3();
  for (std::size_t v = 0; v < 3; ++v) {
    const auto p = ProjComplex::stalk(alg, v, 0);
    EXPECT_EQ(hom_dimension(p, p), 1u);
  }
  const auto p1 = ProjComplex::stalk(alg, 0, 0);
  const auto p2 = ProjComplex::stalk(alg, 1, 0);
  const auto p3 = ProjComplex::stalk(alg, 2, 0);
  EXPECT_EQ(hom_dimension(p2, p1), 1u);  // alpha
  EXPECT_EQ(hom_dimension(p1, p2), 0u);
  EXPECT_EQ(hom_dimension(p3, p1), 0u);  // beta alpha = 0
}

TEST(HomSpace, ExampleComplexes) {
  auto alg = a3();
  const auto s1 = k0s::testing::s1(alg);
  const auto s3 = k0s::testing::s3(alg);
  const auto x = k0s::testing::x_example(alg);
  EXPECT_EQ(hom_dimension(s1, s1), 1u);
  EXPECT_EQ(hom_dimension(s1, shift(s1, 1)), 0u);
  EXPECT_EQ(hom_dimension(s1, shift(s3, 1)), 0u);
  EXPECT_EQ(hom_dimension(s3, shift(s1, 1)), 0u);
  EXPECT_EQ(hom_dimension(s1, shift(s3, 2)), 1u);  // Ext^2(S1, S3)
  EXPECT_EQ(hom_dimension(x, s1), 0u);
  EXPECT_EQ(hom_dimension(x, s3), 0u);
  EXPECT_EQ(hom_dimension(x, shift(s1, -1)), 1u);
  EXPECT_EQ(hom_dimension(s3, x), 1u);
  EXPECT_EQ(hom_dimension(x, shift(x, 5)), 0u);
}

TEST(Cone, TriangleWitnesses) {
  auto alg = a3();
  const auto s3 = k0s::testing::s3(alg);
  const auto x = k0s::testing::x_example(alg);
  const HomSpace hs = hom_space(s3, x);
  ASSERT_EQ(hs.dimension(), 1u);
  const Cone c = cone(hs.basis[0]);
  EXPECT_NO_THROW(c.triangle.verify());
  const auto mc = minimal_complex(c.complex);
  EXPECT_EQ(mc.graded_labels(), minimal_complex(shift(k0s::testing::s1(alg), -1)).graded_labels());
  EXPECT_EQ(iso_test(c.complex, shift(k0s::testing::s1(alg), -1)), IsoVerdict::iso);

  Triangle t = c.triangle;
  for (int k = 0; k < 3; ++k) {
    t = rotate(t);
    EXPECT_NO_THROW(t.verify());
  }
  EXPECT_EQ(t.a, -shift(c.triangle.a, 1));
  EXPECT_EQ(t.b, -shift(c.triangle.b, 1));
  EXPECT_EQ(t.c, -shift(c.triangle.c, 1));
  Triangle back = rotate_back(c.triangle);
  EXPECT_NO_THROW(back.verify());
  EXPECT_EQ(rotate(back).a, c.triangle.a);
}

TEST(Cone, IdentityIsContractible) {
  auto alg = a3();
  for (const auto& x : {k0s::testing::s1(alg), k0s::testing::x_example(alg), ProjComplex::stalk(alg, 0, 3)}) {
    const Cone c = cone(ChainMap::identity(x));
    EXPECT_NO_THROW(c.triangle.verify());
    EXPECT_TRUE(is_zero_object(c.complex));
    expect_minimal_form_valid(c.complex);
  }
}

TEST(Cone, ZeroMapSplits) {
  auto alg = a3();
  const auto x = k0s::testing::x_example(alg);
  const auto y = k0s::testing::s1(alg);
  const Cone c = cone(ChainMap::zero(x, y));
  EXPECT_EQ(c.complex, direct_sum(alg, {shift(x, 1), y}));
  EXPECT_EQ(iso_test(c.complex, direct_sum(alg, {y, shift(x, 1)})), IsoVerdict::iso);
}

TEST(Minimal, StripsContractibleSummand) {
  auto alg = a3();
  const auto p2 = ProjComplex::stalk(alg, 1, 0);
  const auto contractible = cone(ChainMap::identity(ProjComplex::stalk(alg, 0, 0))).complex;
  const auto sum = direct_sum(alg, {p2, contractible});
  EXPECT_EQ(minimal_complex(sum), p2);
  expect_minimal_form_valid(sum);
  const auto x = k0s::testing::x_example(alg);
  EXPECT_TRUE(is_minimal(x));
  EXPECT_EQ(minimal_complex(x), x);
}

TEST(Iso, Verdicts) {
  auto alg = a3();
  const auto x = k0s::testing::x_example(alg);
  EXPECT_EQ(iso_test(x, x), IsoVerdict::iso);
  EXPECT_EQ(iso_test(x, shift(x, 1)), IsoVerdict::not_iso);
  EXPECT_EQ(iso_test(ProjComplex(alg), ProjComplex(alg)), IsoVerdict::iso);
}

TEST(Property, MinimalReductionOnRandomComplexes) {
  auto alg = a3();
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ProjComplex x = random_complex(alg, rng);
    expect_minimal_form_valid(x);
  }
}

TEST(Property, HomDimensionIsHomotopyInvariant) {
  auto alg = a3();
  Rng rng(29);
  std::vector<ProjComplex> probes = {k0s::testing::s1(alg), k0s::testing::s3(alg), k0s::testing::x_example(alg),
                                     ProjComplex::stalk(alg, 0, 0), ProjComplex::stalk(alg, 1, 1)};
  for (int trial = 0; trial < 100; ++trial) {
    const ProjComplex x = random_complex(alg, rng);
    const ProjComplex y = random_complex(alg, rng);
    const ProjComplex mx = minimal_complex(x);
    EXPECT_EQ(hom_dimension(x, y), hom_dimension(mx, minimal_complex(y)));
    if (trial % 20 == 0) {
      for (const auto& p : probes) {
        EXPECT_EQ(hom_dimension(x, p), hom_dimension(mx, p));
        EXPECT_EQ(hom_dimension(p, x), hom_dimension(p, mx));
      }
    }
  }
}

TEST(Property, ConeTrianglesAndRotations) {
  auto alg = a3();
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const ProjComplex x = random_complex(alg, rng);
    const ProjComplex y = random_complex(alg, rng);
    const ChainMap f = random_chain_map(x, y, rng);
    const Cone c = cone(f);
    ASSERT_NO_THROW(c.triangle.verify());
    const Triangle r = rotate(c.triangle);
    ASSERT_NO_THROW(r.verify());
    ASSERT_NO_THROW(rotate_back(c.triangle).verify());
    ASSERT_NO_THROW(rotate_back(rotate_back(c.triangle)).verify());
    EXPECT_EQ(rotate_back(r).b, c.triangle.b);
  }
}

TEST(Property, NullHomotopiesAreFound) {
  auto alg = a3();
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const ProjComplex x = random_complex(alg, rng);
    const ProjComplex y = random_complex(alg, rng);
    const HomSpace hs = hom_space(x, y);
    for (const auto& f : chain_map_basis(x, y)) {
      const auto h = find_null_homotopy(f);
      if (h) {
        EXPECT_TRUE(is_null_homotopy(f, *h));
      }
    }
    for (const auto& b : hs.basis) EXPECT_FALSE(find_null_homotopy(b).has_value());
  }
}

TEST(Cohomology, SuppliedResolutionsAreExact) {
  auto alg = a3();
  // S1 and S3 concentrated in degree 0
  const auto h1 = cohomology_dimensions(k0s::testing::s1(alg));
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_EQ(h1.at(0), (std::vector<std::size_t>{1, 0, 0}));
  const auto h3 = cohomology_dimensions(k0s::testing::s3(alg));
  ASSERT_EQ(h3.size(), 1u);
  EXPECT_EQ(h3.at(0), (std::vector<std::size_t>{0, 0, 1}));
  // H^0(X) = S3 and H^1(X) = S1
  const auto hx = cohomology_dimensions(k0s::testing::x_example(alg));
  ASSERT_EQ(hx.size(), 2u);
  EXPECT_EQ(hx.at(0), (std::vector<std::size_t>{0, 0, 1}));
  EXPECT_EQ(hx.at(1), (std::vector<std::size_t>{1, 0, 0}));
  EXPECT_TRUE(cohomology_dimensions(cone(ChainMap::identity(k0s::testing::s1(alg))).complex).empty());
}

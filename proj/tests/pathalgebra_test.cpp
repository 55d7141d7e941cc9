#include <gtest/gtest.h>

#include <random>

#include "k0s/pathalgebra.hpp"
#include "support.hpp"

using namespace k0s;
namespace fx = k0s::testing;
using pathalg::Algebra;
using pathalg::AlgebraError;
using pathalg::AlgebraElement;
using pathalg::Presentation;

namespace {

// Every composable arrow word up to max_len avoiding each relation as a
// contiguous subword, counted per (source, target). Independent of the
// loader's prefix-extension search.
std::map<std::pair<std::string, std::string>, std::size_t> brute_force_paths(const Presentation& p,
                                                                             std::size_t max_len) {
  std::map<std::pair<std::string, std::string>, std::size_t> out;
  for (const auto& v : p.vertices) ++out[{v, v}];
  std::vector<std::vector<std::size_t>> frontier;
  for (std::size_t a = 0; a < p.arrows.size(); ++a) frontier.push_back({a});
  auto contains = [&](const std::vector<std::size_t>& w) {
    for (const auto& rel : p.relations) {
      for (std::size_t start = 0; start + rel.size() <= w.size(); ++start) {
        bool hit = true;
        for (std::size_t k = 0; k < rel.size(); ++k) hit = hit && p.arrows[w[start + k]].name == rel[k];
        if (hit) return true;
      }
    }
    return false;
  };
  for (std::size_t len = 1; len <= max_len && !frontier.empty(); ++len) {
    std::vector<std::vector<std::size_t>> next;
    for (const auto& w : frontier) {
      if (contains(w)) continue;
      // composition order: w.back() runs first
      ++out[{p.arrows[w.back()].from, p.arrows[w.front()].to}];
      for (std::size_t a = 0; a < p.arrows.size(); ++a) {
        if (p.arrows[a].from != p.arrows[w.front()].to) continue;
        std::vector<std::size_t> longer{a};
        longer.insert(longer.end(), w.begin(), w.end());
        next.push_back(std::move(longer));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

AlgebraElement random_element(const Algebra& alg, std::size_t from, std::size_t to, std::mt19937_64& rng) {
  AlgebraElement e = alg.zero(from, to);
  for (auto& c : e.coefficients) c = exactmath::Scalar(static_cast<long>(rng() % 5) - 2, alg.field());
  return e;
}

Presentation cyclic(std::size_t n, bool with_relations) {
  Presentation p;
  for (std::size_t i = 0; i < n; ++i) p.vertices.push_back(std::to_string(i));
  for (std::size_t i = 0; i < n; ++i) {
    p.arrows.push_back({"a" + std::to_string(i), std::to_string(i), std::to_string((i + 1) % n)});
  }
  if (with_relations) {
    for (std::size_t i = 0; i < n; ++i) p.relations.push_back({"a" + std::to_string((i + 1) % n), "a" + std::to_string(i)});
  }
  return p;
}

}  // namespace

TEST(PathAlgebra, A3HasFivePaths) {
  const auto alg = fx::a3();
  EXPECT_EQ(alg->path_count(), 5u);
  EXPECT_FALSE(alg->find_path({"beta", "alpha"}).has_value());
  ASSERT_TRUE(alg->find_path({"alpha"}).has_value());
  EXPECT_EQ(alg->path_name(*alg->find_path({"alpha"})), "alpha");
}

TEST(PathAlgebra, PathCountsMatchBruteForce) {
  std::vector<Presentation> cases;
  cases.push_back(fx::a3()->presentation());
  Presentation free_a3 = cases.front();
  free_a3.relations.clear();
  cases.push_back(free_a3);
  cases.push_back(cyclic(3, true));
  cases.push_back(cyclic(4, true));
  Presentation kronecker_like{{"1", "2", "3"}, {{"a", "1", "2"}, {"b", "1", "2"}, {"c", "2", "3"}}, {{"c", "a"}}};
  cases.push_back(kronecker_like);
  for (const auto& p : cases) {
    const auto alg = Algebra::load(p);
    const auto oracle = brute_force_paths(p, 12);
    std::size_t total = 0;
    for (std::size_t i = 0; i < alg->vertex_count(); ++i) {
      for (std::size_t j = 0; j < alg->vertex_count(); ++j) {
        const auto it = oracle.find({alg->vertex_label(i), alg->vertex_label(j)});
        const std::size_t want = it == oracle.end() ? 0 : it->second;
        EXPECT_EQ(alg->slot(i, j).size(), want) << i << " -> " << j;
        // Hom(P_j, P_i) is spanned by the paths i -> j
        EXPECT_EQ(alg->hom_dimension(j, i), want);
        total += want;
      }
    }
    EXPECT_EQ(alg->path_count(), total);
  }
}

TEST(PathAlgebra, MultiplicationIsAssociativeAndUnital) {
  std::mt19937_64 rng(7);
  for (const auto& field : {exactmath::Field::rationals(), exactmath::Field::prime(3)}) {
    for (const auto& p : {fx::a3()->presentation(), cyclic(3, true), cyclic(2, false)}) {
      if (p.relations.empty() && p.arrows.size() == 2) {
        // the free 2-cycle is infinite dimensional
        EXPECT_THROW(Algebra::load(p, {field, 200}), AlgebraError);
        continue;
      }
      const auto alg = Algebra::load(p, {field});
      const std::size_t n = alg->vertex_count();
      for (int trial = 0; trial < 60; ++trial) {
        const std::size_t i = rng() % n, j = rng() % n, k = rng() % n, l = rng() % n;
        const AlgebraElement a = random_element(*alg, k, l, rng);
        const AlgebraElement b = random_element(*alg, j, k, rng);
        const AlgebraElement c = random_element(*alg, i, j, rng);
        EXPECT_EQ(alg->compose(alg->compose(a, b), c), alg->compose(a, alg->compose(b, c)));
        EXPECT_EQ(alg->compose(alg->identity(l), a), a);
        EXPECT_EQ(alg->compose(a, alg->identity(k)), a);
        // distributivity
        const AlgebraElement b2 = random_element(*alg, j, k, rng);
        EXPECT_EQ(alg->compose(a, b + b2), alg->compose(a, b) + alg->compose(a, b2));
      }
    }
  }
}

TEST(PathAlgebra, ComposeMapsIsOppositeMultiplication) {
  const auto alg = fx::a3();
  const auto alpha = fx::path(alg, {"alpha"});
  const auto beta = fx::path(alg, {"beta"});
  // alpha : P2 -> P1 after beta : P3 -> P2 is right multiplication by beta * alpha = 0
  EXPECT_TRUE(alg->compose_maps(alpha, beta).is_zero());
  EXPECT_THROW(alg->compose(alpha, alpha), AlgebraError);
}

TEST(PathAlgebra, LocalInverseOnTruncatedLoop) {
  Presentation p{{"1"}, {{"x", "1", "1"}}, {{"x", "x", "x"}}};
  const auto alg = Algebra::load(p);
  ASSERT_EQ(alg->path_count(), 3u);  // e, x, x^2
  AlgebraElement a = alg->identity(0) * exactmath::Scalar(2);
  a += fx::path(alg, {"x"}, 3);
  const AlgebraElement inv = alg->local_inverse(a);
  EXPECT_EQ(alg->compose(a, inv), alg->identity(0));
  EXPECT_EQ(alg->compose(inv, a), alg->identity(0));
  EXPECT_THROW(alg->local_inverse(fx::path(alg, {"x"})), AlgebraError);
}

TEST(PathAlgebra, RejectsBadPresentations) {
  EXPECT_THROW(Algebra::load(Presentation{}), AlgebraError);
  EXPECT_THROW(Algebra::load(Presentation{{"1", "1"}, {}, {}}), AlgebraError);
  EXPECT_THROW(Algebra::load(Presentation{{"1"}, {{"a", "1", "2"}}, {}}), AlgebraError);
  EXPECT_THROW(Algebra::load(Presentation{{"1", "2"}, {{"a", "1", "2"}, {"a", "2", "1"}}, {}}), AlgebraError);
  EXPECT_THROW(Algebra::load(Presentation{{"1", "2"}, {{"a", "1", "2"}}, {{"a"}}}), AlgebraError);
  EXPECT_THROW(Algebra::load(Presentation{{"1", "2"}, {{"a", "1", "2"}}, {{"a", "a"}}}), AlgebraError);
  EXPECT_THROW(Algebra::load(Presentation{{"1", "2"}, {{"a", "1", "2"}}, {{"a", "zz"}}}), AlgebraError);
  // a loop with no relation is not admissible
  try {
    Algebra::load(Presentation{{"1"}, {{"x", "1", "1"}}, {}}, {{}, 50});
    FAIL() << "expected a non-admissible error";
  } catch (const AlgebraError& e) {
    EXPECT_NE(std::string(e.what()).find("non-admissible"), std::string::npos);
  }
}

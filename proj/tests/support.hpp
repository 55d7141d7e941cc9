#pragma once

#include <memory>
#include <string>
#include <vector>

#include "k0s/homotopy.hpp"
#include "k0s/pathalgebra.hpp"

namespace k0s::testing {

using homotopy::AlgebraPtr;
using homotopy::HomMatrix;
using homotopy::ProjComplex;

// 1 -alpha-> 2 -beta-> 3 with beta alpha = 0
inline AlgebraPtr a3(exactmath::Field field = {}) {
  pathalg::Presentation p;
  p.vertices = {"1", "2", "3"};
  p.arrows = {{"alpha", "1", "2"}, {"beta", "2", "3"}};
  p.relations = {{"beta", "alpha"}};
  return pathalg::Algebra::load(p, {field, 10'000});
}

inline pathalg::AlgebraElement path(const AlgebraPtr& alg, const std::vector<std::string>& word, long coeff = 1) {
  return alg->unit(*alg->find_path(word), exactmath::Scalar(coeff, alg->field()));
}

inline std::size_t v(const AlgebraPtr& alg, const std::string& label) { return alg->vertex_index(label); }

inline HomMatrix single(const AlgebraPtr& alg, std::size_t from, std::size_t to, const pathalg::AlgebraElement& e) {
  HomMatrix m = HomMatrix::zero(*alg, {from}, {to});
  m.at(0, 0) = e;
  return m;
}

// P3 -beta-> P2 -alpha-> P1 in degrees -2, -1, 0
inline ProjComplex s1(const AlgebraPtr& alg) {
  const auto p1 = v(alg, "1"), p2 = v(alg, "2"), p3 = v(alg, "3");
  return ProjComplex(alg, {{-2, {p3}}, {-1, {p2}}, {0, {p1}}},
                     {{-2, single(alg, p3, p2, path(alg, {"beta"}))}, {-1, single(alg, p2, p1, path(alg, {"alpha"}))}});
}

inline ProjComplex s3(const AlgebraPtr& alg) { return ProjComplex::stalk(alg, v(alg, "3"), 0); }

// P2 -alpha-> P1 in degrees 0, 1
inline ProjComplex x_example(const AlgebraPtr& alg) {
  const auto p1 = v(alg, "1"), p2 = v(alg, "2");
  return ProjComplex(alg, {{0, {p2}}, {1, {p1}}}, {{0, single(alg, p2, p1, path(alg, {"alpha"}))}});
}

}  // namespace k0s::testing

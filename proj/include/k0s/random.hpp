// Seeded generators for complexes and chain maps.
#pragma once

#include <cstddef>
#include <vector>

#include "k0s/homotopy.hpp"
#include "k0s/rng.hpp"

namespace k0s::homotopy {

struct ComplexShape {
  int min_degree = -2;
  int max_degree = 2;
  int max_width = 3;
  std::size_t max_summands = 2;  // per degree
};

/// Random bounded complex; d^n is a random element of {d : d o d^{n-1} = 0}.
ProjComplex random_complex(const AlgebraPtr& alg, Rng& rng, const ComplexShape& shape = {});

/// sum_k c_k basis[k] with c_k in {-2..2}; zero map when the basis is empty.
ChainMap random_combination(const ProjComplex& x, const ProjComplex& y, const std::vector<ChainMap>& basis, Rng& rng);

/// Random chain map x -> y (not reduced modulo homotopy).
ChainMap random_chain_map(const ProjComplex& x, const ProjComplex& y, Rng& rng);

}  // namespace k0s::homotopy

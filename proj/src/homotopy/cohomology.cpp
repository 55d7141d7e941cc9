#include "k0s/homotopy.hpp"

namespace k0s::homotopy {

namespace {

// Basis of e_w X^n: (summand, path) with the path starting at the summand's vertex and ending at w.
std::vector<std::pair<std::size_t, std::size_t>> graded_piece(const Algebra& alg, const std::vector<std::size_t>& term,
                                                              std::size_t w) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t s = 0; s < term.size(); ++s) {
    for (auto p : alg.slot(term[s], w)) out.emplace_back(s, p);
  }
  return out;
}

FieldMatrix piece_matrix(const Algebra& alg, const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt,
                         const HomMatrix& d, std::size_t w) {
  const auto cols = graded_piece(alg, src, w);
  const auto rows = graded_piece(alg, tgt, w);
  FieldMatrix m(rows.size(), cols.size(), alg.field());
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> row_of;
  for (std::size_t r = 0; r < rows.size(); ++r) row_of.emplace(rows[r], r);
  const Scalar one(1, alg.field());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    const auto [s, p] = cols[c];
    const AlgebraElement x = alg.unit(p, one);
    for (std::size_t t = 0; t < tgt.size(); ++t) {
      const AlgebraElement& a = d.at(t, s);
      if (a.is_zero()) continue;
      const AlgebraElement y = alg.compose(x, a);  // x . a : a first
      const auto slot = alg.slot(y.source, y.target);
      for (std::size_t k = 0; k < slot.size(); ++k) {
        if (!y.coefficients[k].is_zero()) m(row_of.at({t, slot[k]}), c) += y.coefficients[k];
      }
    }
  }
  return m;
}

}  // namespace

std::map<int, std::vector<std::size_t>> cohomology_dimensions(const ProjComplex& x) {
  std::map<int, std::vector<std::size_t>> out;
  if (x.empty()) return out;
  const Algebra& alg = x.algebra();
  for (int n = x.min_degree(); n <= x.max_degree(); ++n) {
    std::vector<std::size_t> dims(alg.vertex_count(), 0);
    bool nonzero = false;
    for (std::size_t w = 0; w < alg.vertex_count(); ++w) {
      const std::size_t size = graded_piece(alg, x.term(n), w).size();
      const std::size_t out_rank = rank_kernel(piece_matrix(alg, x.term(n), x.term(n + 1), x.differential(n), w)).rank;
      const std::size_t in_rank =
          rank_kernel(piece_matrix(alg, x.term(n - 1), x.term(n), x.differential(n - 1), w)).rank;
      dims[w] = size - out_rank - in_rank;
      nonzero = nonzero || dims[w] != 0;
    }
    if (nonzero) out.emplace(n, std::move(dims));
  }
  return out;
}

}  // namespace k0s::homotopy

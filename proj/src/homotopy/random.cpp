#include "k0s/random.hpp"

#include <algorithm>

namespace k0s::homotopy {

namespace {

// Coordinates of all maps (+) P_src -> (+) P_tgt, one per basis path.
struct EntryCoords {
  struct Coord {
    std::size_t t, s, path;
  };
  std::vector<Coord> coords;
};

EntryCoords coords_of(const Algebra& alg, const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt) {
  EntryCoords out;
  for (std::size_t t = 0; t < tgt.size(); ++t) {
    for (std::size_t s = 0; s < src.size(); ++s) {
      for (auto p : alg.slot(tgt[t], src[s])) out.coords.push_back({t, s, p});
    }
  }
  return out;
}

HomMatrix assemble(const Algebra& alg, const std::vector<std::size_t>& src, const std::vector<std::size_t>& tgt,
                   const EntryCoords& ec, const std::vector<Scalar>& values) {
  HomMatrix m = HomMatrix::zero(alg, src, tgt);
  for (std::size_t k = 0; k < ec.coords.size(); ++k) {
    if (values[k].is_zero()) continue;
    m.at(ec.coords[k].t, ec.coords[k].s) += alg.unit(ec.coords[k].path, values[k]);
  }
  return m;
}

}  // namespace

ProjComplex random_complex(const AlgebraPtr& alg, Rng& rng, const ComplexShape& shape) {
  const Field field = alg->field();
  const int span = shape.max_degree - shape.min_degree + 1;
  const int width = 1 + static_cast<int>(rng.below(static_cast<std::size_t>(std::min(shape.max_width, span))));
  const int lo = shape.min_degree + static_cast<int>(rng.below(static_cast<std::size_t>(span - width + 1)));

  std::map<int, std::vector<std::size_t>> terms;
  for (int n = lo; n < lo + width; ++n) {
    const std::size_t count = 1 + rng.below(shape.max_summands);
    auto& t = terms[n];
    for (std::size_t k = 0; k < count; ++k) t.push_back(rng.below(alg->vertex_count()));
  }

  std::map<int, HomMatrix> diffs;
  for (int n = lo; n + 1 < lo + width; ++n) {
    const auto& src = terms[n];
    const auto& tgt = terms[n + 1];
    const EntryCoords ec = coords_of(*alg, src, tgt);
    if (ec.coords.empty()) continue;
    std::vector<Scalar> values;
    const auto prev = diffs.find(n - 1);
    if (prev == diffs.end()) {
      for (std::size_t k = 0; k < ec.coords.size(); ++k) values.emplace_back(rng.small_coeff(), field);
    } else {
      // kernel of D -> D o d^{n-1}
      const auto& pred = terms[n - 1];
      const EntryCoords image = coords_of(*alg, pred, tgt);
      FieldMatrix lin(image.coords.size(), ec.coords.size(), field);
      std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> row_of;
      for (std::size_t r = 0; r < image.coords.size(); ++r) {
        row_of.emplace(std::make_tuple(image.coords[r].t, image.coords[r].s, image.coords[r].path), r);
      }
      const Scalar one(1, field);
      for (std::size_t k = 0; k < ec.coords.size(); ++k) {
        const auto& c = ec.coords[k];
        const AlgebraElement u = alg->unit(c.path, one);
        for (std::size_t r = 0; r < pred.size(); ++r) {
          const AlgebraElement& d = prev->second.at(c.s, r);
          if (d.is_zero()) continue;
          const AlgebraElement e = alg->compose_maps(u, d);
          const auto slot = alg->slot(e.source, e.target);
          for (std::size_t q = 0; q < e.coefficients.size(); ++q) {
            if (e.coefficients[q].is_zero()) continue;
            lin(row_of.at(std::make_tuple(c.t, r, slot[q])), k) += e.coefficients[q];
          }
        }
      }
      const auto rk = rank_kernel(lin);
      values.assign(ec.coords.size(), Scalar(0, field));
      for (std::size_t b = 0; b < rk.kernel.cols(); ++b) {
        const Scalar c(rng.small_coeff(), field);
        if (c.is_zero()) continue;
        for (std::size_t k = 0; k < ec.coords.size(); ++k) values[k] += rk.kernel(k, b) * c;
      }
    }
    HomMatrix d = assemble(*alg, src, tgt, ec, values);
    if (!d.is_zero()) diffs.emplace(n, std::move(d));
  }
  return ProjComplex(alg, std::move(terms), std::move(diffs));
}

ChainMap random_combination(const ProjComplex& x, const ProjComplex& y, const std::vector<ChainMap>& basis, Rng& rng) {
  ChainMap f = ChainMap::zero(x, y);
  const Field field = x.algebra().field();
  for (const auto& b : basis) {
    const long c = rng.small_coeff();
    if (c != 0) f += b * Scalar(c, field);
  }
  return f;
}

ChainMap random_chain_map(const ProjComplex& x, const ProjComplex& y, Rng& rng) {
  return random_combination(x, y, chain_map_basis(x, y), rng);
}

}  // namespace k0s::homotopy

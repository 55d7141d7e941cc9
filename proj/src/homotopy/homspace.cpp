#include "k0s/homotopy.hpp"

namespace k0s::homotopy {

GradedLayout::GradedLayout(const ProjComplex& x, const ProjComplex& y, int degree) : x_(&x), y_(&y), degree_(degree) {
  const Algebra& alg = x.algebra();
  for (const auto& [n, xt] : x.terms()) {
    const auto& yt = y.term(n + degree);
    for (std::size_t t = 0; t < yt.size(); ++t) {
      for (std::size_t s = 0; s < xt.size(); ++s) {
        const std::size_t size = alg.slot(yt[t], xt[s]).size();
        if (size == 0) continue;
        index_.emplace(std::make_tuple(n, t, s), blocks_.size());
        blocks_.push_back(Block{n, t, s, size_, size});
        size_ += size;
      }
    }
  }
}

std::size_t GradedLayout::offset(int n, std::size_t t, std::size_t s) const {
  const auto it = index_.find(std::make_tuple(n, t, s));
  if (it == index_.end()) return size_;
  return blocks_[it->second].offset;
}

std::vector<Scalar> GradedLayout::flatten(const GradedMap& m) const {
  const Field field = x_->algebra().field();
  std::vector<Scalar> out(size_, Scalar(0, field));
  for (const auto& b : blocks_) {
    const auto it = m.components.find(b.n);
    if (it == m.components.end()) continue;
    const auto& coeffs = it->second.at(b.t, b.s).coefficients;
    for (std::size_t k = 0; k < b.size; ++k) out[b.offset + k] = coeffs[k];
  }
  return out;
}

GradedMap GradedLayout::unflatten(const FieldMatrix& v, std::size_t column) const {
  const Algebra& alg = x_->algebra();
  GradedMap out{degree_, {}};
  for (const auto& b : blocks_) {
    bool nonzero = false;
    for (std::size_t k = 0; k < b.size; ++k) nonzero = nonzero || !v(b.offset + k, column).is_zero();
    if (!nonzero) continue;
    auto it = out.components.find(b.n);
    if (it == out.components.end()) {
      it = out.components.emplace(b.n, HomMatrix::zero(alg, x_->term(b.n), y_->term(b.n + degree_))).first;
    }
    auto& coeffs = it->second.at(b.t, b.s).coefficients;
    for (std::size_t k = 0; k < b.size; ++k) coeffs[k] = v(b.offset + k, column);
  }
  return out;
}

FieldMatrix hom_complex_differential(const ProjComplex& x, const ProjComplex& y, int p) {
  const Algebra& alg = x.algebra();
  const Field field = alg.field();
  const GradedLayout from(x, y, p);
  const GradedLayout to(x, y, p + 1);
  FieldMatrix m(to.size(), from.size(), field);
  const Scalar one(1, field);
  const Scalar sign(p % 2 == 0 ? -1 : 1, field);

  auto accumulate = [&](std::size_t col, int n, std::size_t t, std::size_t s, const AlgebraElement& e) {
    if (e.is_zero()) return;
    const std::size_t off = to.offset(n, t, s);
    for (std::size_t k = 0; k < e.coefficients.size(); ++k) {
      if (!e.coefficients[k].is_zero()) m(off + k, col) += e.coefficients[k];
    }
  };

  for (const auto& b : from.blocks()) {
    const HomMatrix dy = y.differential(b.n + p);
    const HomMatrix dx = x.differential(b.n - 1);
    const auto& yt = y.term(b.n + p);
    const auto& xt = x.term(b.n);
    const auto paths = alg.slot(yt[b.t], xt[b.s]);
    for (std::size_t k = 0; k < b.size; ++k) {
      const AlgebraElement u = alg.unit(paths[k], one);
      const std::size_t col = b.offset + k;
      for (std::size_t r = 0; r < dy.rows(); ++r) {
        const AlgebraElement& d = dy.at(r, b.t);
        if (!d.is_zero()) accumulate(col, b.n, r, b.s, alg.compose_maps(d, u));
      }
      for (std::size_t c = 0; c < dx.cols(); ++c) {
        const AlgebraElement& d = dx.at(b.s, c);
        if (!d.is_zero()) accumulate(col, b.n - 1, b.t, c, alg.compose_maps(u, d) * sign);
      }
    }
  }
  return m;
}

std::vector<ChainMap> chain_map_basis(const ProjComplex& x, const ProjComplex& y) {
  const GradedLayout layout(x, y, 0);
  const auto rk = rank_kernel(hom_complex_differential(x, y, 0));
  std::vector<ChainMap> out;
  for (std::size_t c = 0; c < rk.kernel.cols(); ++c) {
    out.emplace_back(x, y, layout.unflatten(rk.kernel, c).components);
  }
  return out;
}

HomSpace hom_space(const ProjComplex& x, const ProjComplex& y) {
  const GradedLayout layout(x, y, 0);
  const auto cycles = rank_kernel(hom_complex_differential(x, y, 0)).kernel;
  const FieldMatrix bounds = hom_complex_differential(x, y, -1);
  HomSpace out;
  out.cycles_dimension = cycles.cols();
  const exactmath::Echelon e = row_reduce(FieldMatrix::hstack(bounds, cycles));
  for (auto p : e.pivot_columns) {
    if (p < bounds.cols()) {
      ++out.boundaries_dimension;
      continue;
    }
    out.basis.emplace_back(x, y, layout.unflatten(cycles, p - bounds.cols()).components);
  }
  return out;
}

std::size_t hom_dimension(const ProjComplex& x, const ProjComplex& y) {
  const auto cycles = rank_kernel(hom_complex_differential(x, y, 0));
  const auto bounds = rank_kernel(hom_complex_differential(x, y, -1));
  return cycles.kernel.cols() - bounds.rank;
}

std::optional<Homotopy> find_null_homotopy(const ChainMap& f) {
  const ProjComplex& x = f.source();
  const ProjComplex& y = f.target();
  const GradedLayout target(x, y, 0);
  const GradedLayout layout(x, y, -1);
  const auto flat = target.flatten(f.as_graded());
  FieldMatrix rhs(flat.size(), 1, x.algebra().field());
  for (std::size_t i = 0; i < flat.size(); ++i) rhs(i, 0) = flat[i];
  const auto sol = solve(hom_complex_differential(x, y, -1), rhs);
  if (!sol) return std::nullopt;
  return layout.unflatten(*sol);
}

}  // namespace k0s::homotopy

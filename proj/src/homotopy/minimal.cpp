#include <optional>

#include "k0s/homotopy.hpp"
#include "k0s/rng.hpp"

namespace k0s::homotopy {

namespace {

struct Pivot {
  int n;
  std::size_t t, s;
};

std::optional<Pivot> find_pivot(const ProjComplex& c) {
  const Algebra& alg = c.algebra();
  for (const auto& [n, d] : c.differentials()) {
    const auto& src = c.term(n);
    const auto& tgt = c.term(n + 1);
    for (std::size_t t = 0; t < tgt.size(); ++t) {
      for (std::size_t s = 0; s < src.size(); ++s) {
        if (src[s] != tgt[t]) continue;
        if (!alg.identity_coefficient(d.at(t, s)).is_zero()) return Pivot{n, t, s};
      }
    }
  }
  return std::nullopt;
}

std::vector<std::size_t> all_but(std::size_t count, std::size_t skip) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (i != skip) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> indices(std::size_t count) { return all_but(count, count); }

struct Step {
  ProjComplex reduced;
  std::optional<ChainMap> f;  // C -> C'
  std::optional<ChainMap> g;  // C' -> C
  Homotopy h;                 // C -> C, degree -1
};

Step eliminate(const ProjComplex& c, const Pivot& p, bool with_maps) {
  const Algebra& alg = c.algebra();
  const int n = p.n;
  const auto& cn = c.term(n);
  const auto& cn1 = c.term(n + 1);
  const HomMatrix d = c.differential(n);
  const AlgebraElement phi_inv = alg.local_inverse(d.at(p.t, p.s));
  const auto keep_s = all_but(cn.size(), p.s);
  const auto keep_t = all_but(cn1.size(), p.t);

  std::map<int, std::vector<std::size_t>> terms = c.terms();
  std::vector<std::size_t> new_n, new_n1;
  for (auto i : keep_s) new_n.push_back(cn[i]);
  for (auto i : keep_t) new_n1.push_back(cn1[i]);
  terms[n] = new_n;
  terms[n + 1] = new_n1;

  // column s of d (rows != t) after phi^{-1}, and phi^{-1} after row t of d (cols != s)
  std::vector<AlgebraElement> left, right;
  for (auto r : keep_t) left.push_back(alg.compose_maps(d.at(r, p.s), phi_inv));
  for (auto q : keep_s) right.push_back(alg.compose_maps(phi_inv, d.at(p.t, q)));

  std::map<int, HomMatrix> diffs = c.differentials();
  diffs.erase(n);
  diffs.erase(n - 1);
  diffs.erase(n + 1);
  HomMatrix dn = submatrix(d, keep_t, keep_s);
  for (std::size_t i = 0; i < keep_t.size(); ++i) {
    if (left[i].is_zero()) continue;
    for (std::size_t j = 0; j < keep_s.size(); ++j) {
      dn.at(i, j) -= alg.compose_maps(left[i], d.at(p.t, keep_s[j]));
    }
  }
  diffs.emplace(n, std::move(dn));
  if (!c.term(n - 1).empty()) {
    diffs.emplace(n - 1, submatrix(c.differential(n - 1), keep_s, indices(c.term(n - 1).size())));
  }
  if (!c.term(n + 2).empty()) {
    diffs.emplace(n + 1, submatrix(c.differential(n + 1), indices(c.term(n + 2).size()), keep_t));
  }
  Step out{ProjComplex(c.algebra_ptr(), std::move(terms), std::move(diffs)), std::nullopt, std::nullopt,
           Homotopy{-1, {}}};
  if (!with_maps) return out;

  std::map<int, HomMatrix> fc, gc;
  for (const auto& [k, t] : c.terms()) {
    if (k == n || k == n + 1) continue;
    fc.emplace(k, HomMatrix::identity(alg, t));
    gc.emplace(k, HomMatrix::identity(alg, t));
  }
  const HomMatrix id_n = HomMatrix::identity(alg, cn);
  const HomMatrix id_n1 = HomMatrix::identity(alg, cn1);
  fc.emplace(n, submatrix(id_n, keep_s, indices(cn.size())));
  HomMatrix f1 = submatrix(id_n1, keep_t, indices(cn1.size()));
  for (std::size_t i = 0; i < keep_t.size(); ++i) f1.at(i, p.t) = -left[i];
  fc.emplace(n + 1, std::move(f1));
  HomMatrix g0 = submatrix(id_n, indices(cn.size()), keep_s);
  for (std::size_t j = 0; j < keep_s.size(); ++j) g0.at(p.s, j) = -right[j];
  gc.emplace(n, std::move(g0));
  gc.emplace(n + 1, submatrix(id_n1, indices(cn1.size()), keep_t));

  HomMatrix h = HomMatrix::zero(alg, cn1, cn);
  h.at(p.s, p.t) = phi_inv;
  out.h.components.emplace(n + 1, std::move(h));
  out.f.emplace(c, out.reduced, std::move(fc));
  out.g.emplace(out.reduced, c, std::move(gc));
  return out;
}

}  // namespace

bool is_minimal(const ProjComplex& x) { return !find_pivot(x).has_value(); }

MinimalForm minimal_reduce(const ProjComplex& x) {
  ProjComplex cur = x;
  ChainMap to = ChainMap::identity(x);
  ChainMap from = ChainMap::identity(x);
  Homotopy h{-1, {}};
  while (const auto p = find_pivot(cur)) {
    Step st = eliminate(cur, *p, true);
    h = add(h, sandwich(x.algebra(), from, st.h, to));
    to = compose(*st.f, to);
    from = compose(from, *st.g);
    cur = std::move(st.reduced);
  }
  return MinimalForm{std::move(cur), std::move(to), std::move(from), std::move(h)};
}

ProjComplex minimal_complex(const ProjComplex& x) {
  ProjComplex cur = x;
  while (const auto p = find_pivot(cur)) cur = eliminate(cur, *p, false).reduced;
  return cur;
}

bool is_zero_object(const ProjComplex& x) { return minimal_complex(x).empty(); }

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::iso:
      return "iso";
    case IsoVerdict::not_iso:
      return "not_iso";
    case IsoVerdict::unknown:
      break;
  }
  return "unknown";
}

namespace {

// A chain map between minimal complexes is an isomorphism iff every component
// is invertible modulo the radical, i.e. per vertex block of identity coefficients.
bool is_componentwise_iso(const ChainMap& f) {
  const Algebra& alg = f.source().algebra();
  for (const auto& [n, st] : f.source().terms()) {
    const auto& tt = f.target().term(n);
    if (tt.size() != st.size()) return false;
    const HomMatrix m = f.component(n);
    for (std::size_t v = 0; v < alg.vertex_count(); ++v) {
      std::vector<std::size_t> rows, cols;
      for (std::size_t i = 0; i < tt.size(); ++i) {
        if (tt[i] == v) rows.push_back(i);
      }
      for (std::size_t j = 0; j < st.size(); ++j) {
        if (st[j] == v) cols.push_back(j);
      }
      if (rows.size() != cols.size()) return false;
      if (rows.empty()) continue;
      FieldMatrix block(rows.size(), cols.size(), alg.field());
      for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) block(i, j) = alg.identity_coefficient(m.at(rows[i], cols[j]));
      }
      if (rank_kernel(block).rank != rows.size()) return false;
    }
  }
  return true;
}

}  // namespace

IsoVerdict iso_test(const ProjComplex& x, const ProjComplex& y, IsoOptions options) {
  const ProjComplex mx = minimal_complex(x);
  const ProjComplex my = minimal_complex(y);
  if (mx.graded_labels() != my.graded_labels()) return IsoVerdict::not_iso;
  if (mx.empty()) return IsoVerdict::iso;
  const HomSpace hs = hom_space(mx, my);
  if (hs.dimension() == 0) return IsoVerdict::not_iso;
  const Field field = x.algebra().field();
  Rng rng(options.seed);
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    ChainMap f = ChainMap::zero(mx, my);
    for (const auto& b : hs.basis) {
      // first trial uses the plain sum of the basis
      const long c = trial == 0 ? 1 : rng.small_coeff();
      if (c != 0) f += b * Scalar(c, field);
    }
    if (is_componentwise_iso(f)) return IsoVerdict::iso;
  }
  // isomorphic objects have isomorphic Hom spaces
  const std::size_t end_x = hom_dimension(mx, mx);
  if (hs.dimension() != end_x || hom_dimension(my, my) != end_x || hom_dimension(my, mx) != end_x) {
    return IsoVerdict::not_iso;
  }
  return IsoVerdict::unknown;
}

}  // namespace k0s::homotopy

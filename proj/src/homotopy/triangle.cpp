#include <set>

#include "k0s/homotopy.hpp"

namespace k0s::homotopy {

namespace {

std::vector<std::size_t> concat(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
  std::vector<std::size_t> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void put(HomMatrix& dst, std::size_t row0, std::size_t col0, const HomMatrix& src) {
  for (std::size_t t = 0; t < src.rows(); ++t) {
    for (std::size_t s = 0; s < src.cols(); ++s) dst.at(row0 + t, col0 + s) = src.at(t, s);
  }
}

}  // namespace

Cone cone(const ChainMap& f) {
  const ProjComplex& x = f.source();
  const ProjComplex& y = f.target();
  const Algebra& alg = x.algebra();
  const AlgebraPtr& ptr = x.algebra_ptr();

  std::set<int> degrees;
  for (const auto& [n, t] : x.terms()) degrees.insert(n - 1);
  for (const auto& [n, t] : y.terms()) degrees.insert(n);

  std::map<int, std::vector<std::size_t>> terms;
  for (int n : degrees) terms.emplace(n, concat(x.term(n + 1), y.term(n)));

  std::map<int, HomMatrix> diffs;
  for (int n : degrees) {
    if (!degrees.count(n + 1)) continue;
    HomMatrix d = HomMatrix::zero(alg, terms[n], terms[n + 1]);
    const std::size_t xn1 = x.term(n + 1).size();
    const std::size_t xn2 = x.term(n + 2).size();
    put(d, 0, 0, -x.differential(n + 1));
    put(d, xn2, 0, f.component(n + 1));
    put(d, xn2, xn1, y.differential(n));
    diffs.emplace(n, std::move(d));
  }
  ProjComplex z(ptr, terms, diffs);
  const ProjComplex sx = shift(x, 1);

  std::map<int, HomMatrix> bc, cc;
  Homotopy h_ba{-1, {}}, h_ac{-1, {}};
  for (int n : degrees) {
    const auto& xt = x.term(n + 1);
    const auto& yt = y.term(n);
    if (!yt.empty()) {
      HomMatrix b = HomMatrix::zero(alg, yt, z.term(n));
      put(b, xt.size(), 0, HomMatrix::identity(alg, yt));
      bc.emplace(n, std::move(b));
      HomMatrix h = HomMatrix::zero(alg, z.term(n), yt);
      put(h, 0, xt.size(), HomMatrix::identity(alg, yt));
      h_ac.components.emplace(n, std::move(h));
    }
    if (!xt.empty()) {
      HomMatrix c = HomMatrix::zero(alg, z.term(n), xt);
      put(c, 0, 0, HomMatrix::identity(alg, xt));
      cc.emplace(n, std::move(c));
      // X^{n+1} -> cone^n
      HomMatrix h = HomMatrix::zero(alg, xt, z.term(n));
      put(h, 0, 0, HomMatrix::identity(alg, xt));
      h_ba.components.emplace(n + 1, std::move(h));
    }
  }
  ChainMap b(y, z, std::move(bc));
  ChainMap c(z, sx, std::move(cc));
  Triangle tri{f, std::move(b), std::move(c), std::move(h_ba), zero_homotopy(), std::move(h_ac)};
  return Cone{std::move(z), std::move(tri)};
}

void Triangle::verify() const {
  if (!(a.target() == b.source())) throw HomotopyError("triangle: target of a is not the source of b");
  if (!(b.target() == c.source())) throw HomotopyError("triangle: target of b is not the source of c");
  if (!(c.target() == shift(a.source(), 1))) throw HomotopyError("triangle: c does not land in Sigma X");
  if (!is_null_homotopy(compose(b, a), h_ba)) throw HomotopyError("triangle: b o a witness fails");
  if (!is_null_homotopy(compose(c, b), h_cb)) throw HomotopyError("triangle: c o b witness fails");
  if (!is_null_homotopy(compose(shift(a, 1), c), h_ac)) throw HomotopyError("triangle: Sigma a o c witness fails");
}

Triangle rotate(const Triangle& t) {
  const Scalar minus(-1, t.a.source().algebra().field());
  return Triangle{t.b,
                  t.c,
                  shift(t.a, 1) * minus,
                  t.h_cb,
                  scale(t.h_ac, minus),
                  scale(shift_homotopy(t.h_ba, 1), minus)};
}

Triangle rotate_back(const Triangle& t) {
  const Scalar minus(-1, t.a.source().algebra().field());
  return Triangle{shift(t.c, -1) * minus,
                  t.a,
                  t.b,
                  scale(shift_homotopy(t.h_ac, -1), minus),
                  t.h_ba,
                  scale(t.h_cb, minus)};
}

}  // namespace k0s::homotopy

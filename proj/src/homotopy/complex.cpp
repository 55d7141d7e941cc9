#include <algorithm>
#include <atomic>
#include <set>
#include <sstream>

#include "k0s/homotopy.hpp"

namespace k0s::homotopy {

namespace {

const std::vector<std::size_t>& empty_term() {
  static const std::vector<std::size_t> empty;
  return empty;
}

std::set<int> degree_span(const ProjComplex& x, const ProjComplex& y, int pad) {
  std::set<int> out;
  for (const auto* c : {&x, &y}) {
    if (c->empty()) continue;
    for (int n = c->min_degree() - pad; n <= c->max_degree() + pad; ++n) out.insert(n);
  }
  return out;
}

std::atomic<std::uint64_t> complexes_built{0};
std::atomic<std::uint64_t> square_checks{0};

}  // namespace

ConstructionStats construction_stats() { return {complexes_built.load(), square_checks.load()}; }

ProjComplex::ProjComplex(AlgebraPtr alg) : alg_(std::move(alg)) {
  if (!alg_) throw HomotopyError("complex without an algebra");
}

ProjComplex::ProjComplex(AlgebraPtr alg, std::map<int, std::vector<std::size_t>> terms,
                         std::map<int, HomMatrix> differentials)
    : alg_(std::move(alg)) {
  if (!alg_) throw HomotopyError("complex without an algebra");
  for (auto& [n, t] : terms) {
    for (auto v : t) {
      if (v >= alg_->vertex_count()) throw HomotopyError("complex term references an unknown vertex");
    }
    if (!t.empty()) terms_.emplace(n, std::move(t));
  }
  for (auto& [n, d] : differentials) {
    if (d.source() != term(n) || d.target() != term(n + 1)) {
      if (d.is_zero() && (term(n).empty() || term(n + 1).empty())) continue;
      throw HomotopyError("differential d^" + std::to_string(n) + " does not match the terms");
    }
    if (!d.is_zero()) diff_.emplace(n, std::move(d));
  }
  complexes_built.fetch_add(1, std::memory_order_relaxed);
  for (const auto& [n, d] : diff_) {
    const auto next = diff_.find(n + 1);
    if (next == diff_.end()) continue;
    if (!compose(*alg_, next->second, d).is_zero()) {
      throw HomotopyError("d^" + std::to_string(n + 1) + " o d^" + std::to_string(n) + " != 0");
    }
  }
  square_checks.fetch_add(1, std::memory_order_relaxed);
}

ProjComplex ProjComplex::stalk(AlgebraPtr alg, std::size_t vertex, int degree) {
  return stalks(std::move(alg), {vertex}, degree);
}

ProjComplex ProjComplex::stalks(AlgebraPtr alg, const std::vector<std::size_t>& vertices, int degree) {
  return ProjComplex(std::move(alg), {{degree, vertices}}, {});
}

const std::vector<std::size_t>& ProjComplex::term(int n) const {
  const auto it = terms_.find(n);
  return it == terms_.end() ? empty_term() : it->second;
}

HomMatrix ProjComplex::differential(int n) const {
  const auto it = diff_.find(n);
  if (it != diff_.end()) return it->second;
  return HomMatrix::zero(*alg_, term(n), term(n + 1));
}

int ProjComplex::min_degree() const {
  if (terms_.empty()) throw HomotopyError("min_degree of the zero complex");
  return terms_.begin()->first;
}

int ProjComplex::max_degree() const {
  if (terms_.empty()) throw HomotopyError("max_degree of the zero complex");
  return terms_.rbegin()->first;
}

int ProjComplex::width() const { return terms_.empty() ? 0 : max_degree() - min_degree() + 1; }

std::size_t ProjComplex::summand_count() const {
  std::size_t n = 0;
  for (const auto& [deg, t] : terms_) n += t.size();
  return n;
}

std::vector<GradedLabel> ProjComplex::graded_labels() const {
  std::vector<GradedLabel> out;
  for (const auto& [deg, t] : terms_) {
    for (auto v : t) out.emplace_back(deg, v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const ProjComplex& a, const ProjComplex& b) {
  return a.alg_ == b.alg_ && a.terms_ == b.terms_ && a.diff_ == b.diff_;
}

// --- chain maps ---------------------------------------------------------------

ChainMap::ChainMap(Unchecked, ProjComplex source, ProjComplex target, std::map<int, HomMatrix> components)
    : source_(std::move(source)), target_(std::move(target)) {
  for (auto& [n, m] : components) {
    if (!m.is_zero()) comps_.emplace(n, std::move(m));
  }
}

ChainMap::ChainMap(ProjComplex source, ProjComplex target, std::map<int, HomMatrix> components)
    : ChainMap(Unchecked{}, std::move(source), std::move(target), {}) {
  if (source_.algebra_ptr() != target_.algebra_ptr()) throw HomotopyError("chain map between different algebras");
  for (auto& [n, m] : components) {
    if (m.source() != source_.term(n) || m.target() != target_.term(n)) {
      if (m.is_zero() && (source_.term(n).empty() || target_.term(n).empty())) continue;
      throw HomotopyError("chain map component f^" + std::to_string(n) + " has the wrong shape");
    }
    if (!m.is_zero()) comps_.emplace(n, std::move(m));
  }
  const Algebra& alg = source_.algebra();
  for (int n : degree_span(source_, target_, 1)) {
    const HomMatrix lhs = compose(alg, target_.differential(n), component(n));
    const HomMatrix rhs = compose(alg, component(n + 1), source_.differential(n));
    if (!(lhs == rhs)) throw HomotopyError("not a chain map: d f != f d in degree " + std::to_string(n));
  }
}

ChainMap ChainMap::zero(const ProjComplex& x, const ProjComplex& y) { return ChainMap(Unchecked{}, x, y, {}); }

ChainMap ChainMap::identity(const ProjComplex& x) {
  std::map<int, HomMatrix> comps;
  for (const auto& [n, t] : x.terms()) comps.emplace(n, HomMatrix::identity(x.algebra(), t));
  return ChainMap(Unchecked{}, x, x, std::move(comps));
}

HomMatrix ChainMap::component(int n) const {
  const auto it = comps_.find(n);
  if (it != comps_.end()) return it->second;
  return HomMatrix::zero(source_.algebra(), source_.term(n), target_.term(n));
}

bool ChainMap::is_zero() const { return comps_.empty(); }

ChainMap& ChainMap::operator+=(const ChainMap& o) {
  if (!(o.source_ == source_) || !(o.target_ == target_)) throw HomotopyError("adding chain maps with different ends");
  std::map<int, HomMatrix> out;
  for (int n : degree_span(source_, target_, 0)) {
    HomMatrix m = component(n) + o.component(n);
    if (!m.is_zero()) out.emplace(n, std::move(m));
  }
  comps_ = std::move(out);
  return *this;
}

ChainMap& ChainMap::operator-=(const ChainMap& o) { return *this += -o; }

ChainMap& ChainMap::operator*=(const Scalar& s) {
  std::map<int, HomMatrix> out;
  for (auto& [n, m] : comps_) {
    HomMatrix r = m * s;
    if (!r.is_zero()) out.emplace(n, std::move(r));
  }
  comps_ = std::move(out);
  return *this;
}

ChainMap ChainMap::operator-() const {
  ChainMap r = *this;
  for (auto& [n, m] : r.comps_) m = -m;
  return r;
}

bool operator==(const ChainMap& a, const ChainMap& b) {
  return a.source_ == b.source_ && a.target_ == b.target_ && a.comps_ == b.comps_;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (!(g.source() == f.target())) throw HomotopyError("composing chain maps with mismatched middle complex");
  const Algebra& alg = f.source().algebra();
  std::map<int, HomMatrix> comps;
  for (const auto& [n, fm] : f.components()) {
    const auto it = g.components().find(n);
    if (it == g.components().end()) continue;
    comps.emplace(n, compose(alg, it->second, fm));
  }
  return ChainMap(ChainMap::Unchecked{}, f.source(), g.target(), std::move(comps));
}

// --- shifts ---------------------------------------------------------------------

ProjComplex shift(const ProjComplex& x, int k) {
  if (k == 0) return x;
  std::map<int, std::vector<std::size_t>> terms;
  for (const auto& [n, t] : x.terms()) terms.emplace(n - k, t);
  std::map<int, HomMatrix> diffs;
  const Scalar sign(k % 2 == 0 ? 1 : -1, x.algebra().field());
  for (const auto& [n, d] : x.differentials()) diffs.emplace(n - k, d * sign);
  return ProjComplex(x.algebra_ptr(), std::move(terms), std::move(diffs));
}

ChainMap shift(const ChainMap& f, int k) {
  if (k == 0) return f;
  std::map<int, HomMatrix> comps;
  for (const auto& [n, m] : f.components()) comps.emplace(n - k, m);
  return ChainMap(ChainMap::Unchecked{}, shift(f.source(), k), shift(f.target(), k), std::move(comps));
}

Homotopy shift_homotopy(const Homotopy& h, int k) {
  Homotopy out{h.degree, {}};
  for (const auto& [n, m] : h.components) {
    out.components.emplace(n - k, k % 2 == 0 ? m : -m);
  }
  return out;
}

Homotopy zero_homotopy() { return Homotopy{-1, {}}; }

Homotopy scale(const Homotopy& h, const Scalar& s) {
  Homotopy out{h.degree, {}};
  for (const auto& [n, m] : h.components) out.components.emplace(n, m * s);
  return out;
}

Homotopy add(const Homotopy& a, const Homotopy& b) {
  if (a.degree != b.degree) throw HomotopyError("adding graded maps of different degrees");
  Homotopy out = a;
  for (const auto& [n, m] : b.components) {
    auto it = out.components.find(n);
    if (it == out.components.end()) {
      out.components.emplace(n, m);
    } else {
      it->second += m;
    }
  }
  return out;
}

GradedMap sandwich(const Algebra& alg, const ChainMap& g, const GradedMap& h, const ChainMap& f) {
  GradedMap out{h.degree, {}};
  for (const auto& [n, hm] : h.components) {
    const auto fi = f.components().find(n);
    const auto gi = g.components().find(n + h.degree);
    if (fi == f.components().end() || gi == g.components().end()) continue;
    HomMatrix m = compose(alg, gi->second, compose(alg, hm, fi->second));
    if (!m.is_zero()) out.components.emplace(n, std::move(m));
  }
  return out;
}

GradedMap homotopy_boundary(const ProjComplex& x, const ProjComplex& y, const Homotopy& h) {
  const Algebra& alg = x.algebra();
  GradedMap out{h.degree + 1, {}};
  std::set<int> degrees;
  for (const auto& [n, m] : h.components) {
    degrees.insert(n);
    degrees.insert(n - 1);
  }
  for (int n : degrees) {
    HomMatrix acc = HomMatrix::zero(alg, x.term(n), y.term(n + h.degree + 1));
    if (const auto it = h.components.find(n); it != h.components.end()) {
      acc += compose(alg, y.differential(n + h.degree), it->second);
    }
    if (const auto it = h.components.find(n + 1); it != h.components.end()) {
      HomMatrix term = compose(alg, it->second, x.differential(n));
      // D(h) = d h - (-1)^p h d with p = degree of h
      if (h.degree % 2 == 0) {
        acc -= term;
      } else {
        acc += term;
      }
    }
    if (!acc.is_zero()) out.components.emplace(n, std::move(acc));
  }
  return out;
}

bool is_null_homotopy(const ChainMap& f, const Homotopy& h) {
  if (h.degree != -1) return false;
  for (const auto& [n, m] : h.components) {
    if (m.source() != f.source().term(n) || m.target() != f.target().term(n - 1)) return false;
  }
  const GradedMap b = homotopy_boundary(f.source(), f.target(), h);
  std::map<int, HomMatrix> nonzero;
  for (const auto& [n, m] : b.components) {
    if (!m.is_zero()) nonzero.emplace(n, m);
  }
  return nonzero == f.components();
}

// --- sums ------------------------------------------------------------------------

ProjComplex direct_sum(const AlgebraPtr& alg, const std::vector<ProjComplex>& xs) {
  std::map<int, std::vector<std::size_t>> terms;
  for (const auto& x : xs) {
    if (x.algebra_ptr() != alg) throw HomotopyError("direct sum of complexes over different algebras");
    for (const auto& [n, t] : x.terms()) {
      auto& dst = terms[n];
      dst.insert(dst.end(), t.begin(), t.end());
    }
  }
  std::map<int, HomMatrix> diffs;
  for (const auto& [n, t] : terms) {
    if (!terms.count(n + 1)) continue;
    HomMatrix acc;
    bool first = true;
    for (const auto& x : xs) {
      const HomMatrix d = x.differential(n);
      acc = first ? d : block_diagonal(*alg, acc, d);
      first = false;
    }
    diffs.emplace(n, std::move(acc));
  }
  return ProjComplex(alg, std::move(terms), std::move(diffs));
}

namespace {

// Offsets of each summand's block inside the degree-n term of a direct sum.
std::vector<std::size_t> block_offsets(const std::vector<ProjComplex>& xs, int n) {
  std::vector<std::size_t> off;
  std::size_t acc = 0;
  for (const auto& x : xs) {
    off.push_back(acc);
    acc += x.term(n).size();
  }
  return off;
}

}  // namespace

ChainMap stack_targets(const ProjComplex& x, const std::vector<ChainMap>& maps) {
  std::vector<ProjComplex> targets;
  for (const auto& m : maps) {
    if (!(m.source() == x)) throw HomotopyError("stack_targets: map with a different source");
    targets.push_back(m.target());
  }
  const Algebra& alg = x.algebra();
  const ProjComplex sum = direct_sum(x.algebra_ptr(), targets);
  std::map<int, HomMatrix> comps;
  for (const auto& [n, t] : x.terms()) {
    if (sum.term(n).empty()) continue;
    HomMatrix out = HomMatrix::zero(alg, t, sum.term(n));
    const auto off = block_offsets(targets, n);
    for (std::size_t k = 0; k < maps.size(); ++k) {
      const HomMatrix c = maps[k].component(n);
      for (std::size_t r = 0; r < c.rows(); ++r) {
        for (std::size_t s = 0; s < c.cols(); ++s) out.at(off[k] + r, s) = c.at(r, s);
      }
    }
    comps.emplace(n, std::move(out));
  }
  return ChainMap(x, sum, std::move(comps));
}

ChainMap sum_inclusion(const std::vector<ProjComplex>& xs, std::size_t index) {
  const ProjComplex& part = xs.at(index);
  const Algebra& alg = part.algebra();
  const ProjComplex sum = direct_sum(part.algebra_ptr(), xs);
  std::map<int, HomMatrix> comps;
  for (const auto& [n, t] : part.terms()) {
    HomMatrix m = HomMatrix::zero(alg, t, sum.term(n));
    const std::size_t off = block_offsets(xs, n)[index];
    for (std::size_t i = 0; i < t.size(); ++i) m.at(off + i, i) = alg.identity(t[i]);
    comps.emplace(n, std::move(m));
  }
  return ChainMap(part, sum, std::move(comps));
}

ChainMap sum_projection(const std::vector<ProjComplex>& xs, std::size_t index) {
  const ProjComplex& part = xs.at(index);
  const Algebra& alg = part.algebra();
  const ProjComplex sum = direct_sum(part.algebra_ptr(), xs);
  std::map<int, HomMatrix> comps;
  for (const auto& [n, t] : part.terms()) {
    HomMatrix m = HomMatrix::zero(alg, sum.term(n), t);
    const std::size_t off = block_offsets(xs, n)[index];
    for (std::size_t i = 0; i < t.size(); ++i) m.at(i, off + i) = alg.identity(t[i]);
    comps.emplace(n, std::move(m));
  }
  return ChainMap(sum, part, std::move(comps));
}

std::string describe(const ProjComplex& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, t] : x.terms()) {
    if (!first) os << " -> ";
    first = false;
    os << "[";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) os << "+";
      os << "P" << x.algebra().vertex_label(t[i]);
    }
    os << "]@" << n;
  }
  return os.str();
}

}  // namespace k0s::homotopy

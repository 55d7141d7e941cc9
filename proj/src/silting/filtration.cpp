#include <algorithm>

#include "internal.hpp"
#include "k0s/silting.hpp"

namespace k0s::silting {

using homotopy::HomMatrix;
using homotopy::MinimalForm;

namespace {

bool minimal_form_holds(const ProjComplex& x, const MinimalForm& mf) {
  if (!homotopy::is_minimal(mf.complex)) return false;
  if (!(mf.to_min.source() == x) || !(mf.from_min.target() == x)) return false;
  if (!(homotopy::compose(mf.to_min, mf.from_min) == ChainMap::identity(mf.complex))) return false;
  return homotopy::is_null_homotopy(ChainMap::identity(x) - homotopy::compose(mf.from_min, mf.to_min), mf.homotopy);
}

// Support measured from degree 0, so objects sitting far to the right still get enough stages.
std::size_t support_width(const ProjComplex& x) {
  if (x.empty()) return 0;
  return static_cast<std::size_t>(std::max(x.max_degree(), 0) - std::min(x.min_degree(), 0) + 1);
}

[[noreturn]] void not_in_F(std::size_t max_len, const std::string& why) {
  throw FiltrationError("not in F within max_len (" + std::to_string(max_len) + "): " + why);
}

// Random invertible change of basis with entries in {-2..2}.
std::vector<ChainMap> mix_basis(const std::vector<ChainMap>& basis, Rng& rng) {
  const std::size_t b = basis.size();
  if (b < 2) return basis;
  const exactmath::Field field = basis.front().source().algebra().field();
  for (int attempt = 0; attempt < 16; ++attempt) {
    exactmath::FieldMatrix a(b, b, field);
    for (std::size_t r = 0; r < b; ++r) {
      for (std::size_t c = 0; c < b; ++c) a(r, c) = exactmath::Scalar(rng.small_coeff(), field);
    }
    if (exactmath::rank_kernel(a).rank != b) continue;
    std::vector<ChainMap> out;
    for (std::size_t r = 0; r < b; ++r) {
      ChainMap f = ChainMap::zero(basis[0].source(), basis[0].target());
      for (std::size_t c = 0; c < b; ++c) {
        if (!a(r, c).is_zero()) f += basis[c] * a(r, c);
      }
      out.push_back(std::move(f));
    }
    return out;
  }
  return basis;
}

FiltrationStage truncation_stage(const ProjComplex& cur, const SiltingCollection& m, int i) {
  const auto alg = cur.algebra_ptr();
  const auto& low = cur.term(i);
  const ProjComplex a = ProjComplex::stalks(alg, low, i);
  std::map<int, std::vector<std::size_t>> terms;
  std::map<int, HomMatrix> diffs;
  for (const auto& [n, t] : cur.terms()) {
    if (n > i) terms.emplace(n, t);
  }
  for (const auto& [n, d] : cur.differentials()) {
    if (n > i) diffs.emplace(n, d);
  }
  const ProjComplex q(alg, std::move(terms), std::move(diffs));
  const ProjComplex sa = homotopy::shift(a, -1);
  std::map<int, HomMatrix> comps;
  if (!low.empty() && !cur.term(i + 1).empty()) comps.emplace(i + 1, cur.differential(i));
  const homotopy::Cone c = homotopy::cone(ChainMap(sa, q, std::move(comps)));
  if (!(c.complex == cur)) throw std::logic_error("brutal truncation cone does not reproduce the complex");
  FiltrationStage st{homotopy::rotate(c.triangle), {}, homotopy::minimal_reduce(q)};
  for (auto v : low) st.factor.push_back(m.stalk_summand(v));
  return st;
}

FiltrationStage cocone_stage(const ProjComplex& cur, const std::vector<ChainMap>& maps, std::vector<std::size_t> factor) {
  const homotopy::Cone c = homotopy::cone(homotopy::stack_targets(cur, maps));
  Triangle t = homotopy::rotate_back(c.triangle);
  MinimalForm next = homotopy::minimal_reduce(t.first());
  return FiltrationStage{std::move(t), std::move(factor), std::move(next)};
}

FiltrationStage approximation_stage(const ProjComplex& cur, const SiltingCollection& m, int i,
                                    std::optional<std::size_t> pad, Rng* mix) {
  std::vector<ChainMap> maps;
  std::vector<std::size_t> factor;
  for (std::size_t j = 0; j < m.size(); ++j) {
    const ProjComplex target = homotopy::shift(m.summand(j), -i);
    std::vector<ChainMap> basis = homotopy::hom_space(cur, target).basis;
    if (mix) basis = mix_basis(basis, *mix);
    for (auto& f : basis) {
      maps.push_back(std::move(f));
      factor.push_back(j);
    }
  }
  if (pad) {
    maps.push_back(ChainMap::zero(cur, homotopy::shift(m.summand(*pad), -i)));
    factor.push_back(*pad);
  }
  return cocone_stage(cur, maps, std::move(factor));
}

// Hom_K(x, y) as cycles modulo boundaries, for span membership tests.
class QuotientSpan {
 public:
  QuotientSpan(const ProjComplex& x, const ProjComplex& y)
      : x_(x), y_(y), layout_(x_, y_, 0), span_(homotopy::hom_complex_differential(x_, y_, -1)) {
    rank_ = exactmath::row_reduce(span_).pivot_columns.size();
  }

  bool contains(const ChainMap& f) const { return rank_of(with(f)) == rank_; }

  void add(const ChainMap& f) {
    exactmath::FieldMatrix next = with(f);
    const std::size_t r = rank_of(next);
    if (r == rank_) return;
    span_ = std::move(next);
    rank_ = r;
  }

 private:
  exactmath::FieldMatrix with(const ChainMap& f) const {
    const auto flat = layout_.flatten(f.as_graded());
    exactmath::FieldMatrix col(flat.size(), 1, x_.algebra().field());
    for (std::size_t r = 0; r < flat.size(); ++r) col(r, 0) = flat[r];
    return exactmath::FieldMatrix::hstack(span_, col);
  }
  static std::size_t rank_of(const exactmath::FieldMatrix& m) { return exactmath::row_reduce(m).pivot_columns.size(); }

  ProjComplex x_, y_;
  homotopy::GradedLayout layout_;
  exactmath::FieldMatrix span_;
  std::size_t rank_ = 0;
};

// Hom(T_k, T_j) bases, and the radical part: everything for k != j, the
// non-invertible endomorphisms for k == j.
struct SummandMaps {
  std::vector<std::vector<std::vector<ChainMap>>> hom, rad;
};

SummandMaps summand_maps(const SiltingCollection& m) {
  SummandMaps out;
  out.hom.resize(m.size());
  out.rad.resize(m.size());
  for (std::size_t k = 0; k < m.size(); ++k) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      std::vector<ChainMap> basis = homotopy::hom_space(m.summand(k), m.summand(j)).basis;
      std::vector<ChainMap> rad;
      if (k != j) {
        rad = basis;
      } else {
        // minimal complex: f is invertible iff its top coefficient at the first summand is
        const ProjComplex& t = m.summand(j);
        const int n0 = t.min_degree();
        const ChainMap id = ChainMap::identity(t);
        for (const auto& b : basis) {
          const auto c = b.components().find(n0);
          const exactmath::Scalar lambda = c == b.components().end()
                                               ? exactmath::Scalar(0, t.algebra().field())
                                               : t.algebra().identity_coefficient(c->second.at(0, 0));
          ChainMap r = b - id * lambda;
          if (!r.is_zero()) rad.push_back(std::move(r));
        }
      }
      out.hom[k].push_back(std::move(basis));
      out.rad[k].push_back(std::move(rad));
    }
  }
  return out;
}

// Maps into Sigma^{-i} T_j that are not reached by radical maps out of the
// other Hom spaces. Nullopt when they fail to generate every Hom space
// (possible only when the summands are not pairwise non-isomorphic indecomposables).
std::optional<std::pair<std::vector<ChainMap>, std::vector<std::size_t>>> minimal_maps(const ProjComplex& cur,
                                                                                     const SiltingCollection& m,
                                                                                     const SummandMaps& sm, int i) {
  std::vector<ProjComplex> targets;
  std::vector<std::vector<ChainMap>> hom;
  for (std::size_t j = 0; j < m.size(); ++j) {
    targets.push_back(homotopy::shift(m.summand(j), -i));
    hom.push_back(homotopy::hom_space(cur, targets.back()).basis);
  }
  std::vector<ChainMap> maps;
  std::vector<std::size_t> factor;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (hom[j].empty()) continue;
    QuotientSpan q(cur, targets[j]);
    for (std::size_t k = 0; k < m.size(); ++k) {
      for (const auto& g : sm.rad[k][j]) {
        const ChainMap sg = homotopy::shift(g, -i);
        for (const auto& f : hom[k]) q.add(homotopy::compose(sg, f));
      }
    }
    for (const auto& h : hom[j]) {
      if (q.contains(h)) continue;
      q.add(h);
      maps.push_back(h);
      factor.push_back(j);
    }
  }
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (hom[j].empty()) continue;
    QuotientSpan q(cur, targets[j]);
    for (std::size_t c = 0; c < maps.size(); ++c) {
      for (const auto& g : sm.hom[factor[c]][j]) q.add(homotopy::compose(homotopy::shift(g, -i), maps[c]));
    }
    for (const auto& h : hom[j]) {
      if (!q.contains(h)) return std::nullopt;
    }
  }
  return std::make_pair(std::move(maps), std::move(factor));
}

FiltrationStage zero_stage(const homotopy::AlgebraPtr& alg) {
  const ProjComplex zero(alg);
  const homotopy::Cone c = homotopy::cone(ChainMap::zero(zero, zero));
  return FiltrationStage{homotopy::rotate_back(c.triangle), {}, homotopy::minimal_reduce(zero)};
}

}  // namespace

Filtration extract_filtration(const ProjComplex& x, const SiltingCollection& m, const ExtractOptions& options) {
  Filtration out{x, homotopy::minimal_reduce(x), {}};
  const std::size_t max_len = options.max_len.value_or(2 * support_width(out.start.complex) + 2);
  const bool d_ok = m.verified_d_rigid && m.declared_d() && max_len <= static_cast<std::size_t>(*m.declared_d());
  if (!m.verified_presilting && !d_ok) throw PreconditionError("precondition: collection unverified");
  if (options.strategy == Strategy::truncation && !m.is_stalk_projectives()) {
    throw PreconditionError("brutal truncation needs the stalk-projective collection");
  }
  std::optional<Rng> mix;
  if (options.mix_seed) mix.emplace(*options.mix_seed);
  std::optional<SummandMaps> sm;

  ProjComplex cur = out.start.complex;
  for (std::size_t i = 0; !cur.empty(); ++i) {
    if (i == max_len) not_in_F(max_len, "X_" + std::to_string(i) + " = " + homotopy::describe(cur) + " is nonzero");
    const int deg = static_cast<int>(i);
    const std::optional<std::size_t> pad = i == 0 ? options.pad_stage0 : std::nullopt;
    const bool perturbed = pad || mix;
    const bool truncate = options.strategy == Strategy::truncation ||
                          (options.strategy == Strategy::automatic && m.is_stalk_projectives() && !perturbed);
    const bool minimal = options.strategy == Strategy::minimal || (options.strategy == Strategy::automatic && !perturbed);
    std::optional<std::pair<std::vector<ChainMap>, std::vector<std::size_t>>> chosen;
    if (!truncate && minimal) {
      if (!sm) sm = summand_maps(m);
      chosen = minimal_maps(cur, m, *sm, deg);
    }
    if (chosen) {
      out.stages.push_back(cocone_stage(cur, chosen->first, std::move(chosen->second)));
    } else if (truncate) {
      if (cur.min_degree() < deg) {
        not_in_F(max_len, "X_" + std::to_string(i) + " has a term in degree " + std::to_string(cur.min_degree()));
      }
      out.stages.push_back(truncation_stage(cur, m, deg));
    } else {
      out.stages.push_back(approximation_stage(cur, m, deg, pad, mix ? &*mix : nullptr));
    }
    cur = out.stages.back().next.complex;
  }
  for (std::size_t k = 0; k < options.trailing_zero_stages; ++k) out.stages.push_back(zero_stage(x.algebra_ptr()));
  return out;
}

std::optional<std::string> check_filtration(const Filtration& f, const SiltingCollection& m) {
  if (!minimal_form_holds(f.object, f.start)) return "reduction of X_0 fails its identities";
  const ProjComplex* prev = &f.start.complex;
  for (std::size_t i = 0; i < f.stages.size(); ++i) {
    const auto& st = f.stages[i];
    const std::string at = "stage " + std::to_string(i) + ": ";
    try {
      st.triangle.verify();
    } catch (const homotopy::HomotopyError& e) {
      return at + e.what();
    }
    if (!(st.triangle.second() == *prev)) return at + "middle object is not X_" + std::to_string(i);
    if (!(st.triangle.third() == homotopy::shift(m.sum(st.factor), -static_cast<int>(i)))) {
      return at + "third object is not Sigma^{-i} M_i";
    }
    if (!minimal_form_holds(st.triangle.first(), st.next)) return at + "reduction of X_{i+1} fails its identities";
    prev = &st.next.complex;
  }
  if (!prev->empty()) return "last object is nonzero";
  return std::nullopt;
}

std::optional<std::string> check_orthogonality(const Filtration& f, const SiltingCollection& m) {
  const ProjComplex& x = f.start.complex;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (homotopy::hom_dimension(x, homotopy::shift(m.summand(j), 1)) != 0) {
      return "Hom(X, Sigma " + m.name(j) + ") != 0";
    }
    if (!f.stages.empty() && homotopy::hom_dimension(f.stages[0].next.complex, m.summand(j)) != 0) {
      return "Hom(X_1, " + m.name(j) + ") != 0";
    }
  }
  return std::nullopt;
}

K0SpElement gamma(const Filtration& f, const SiltingCollection& m) {
  K0SpElement g;
  for (std::size_t i = 0; i < f.stages.size(); ++i) {
    const long sign = i % 2 == 0 ? 1 : -1;
    for (auto j : f.stages[i].factor) g.add(m.name(j), sign);
  }
  return g;
}

bool EquivalenceReport::all_equal() const {
  if (!defects.empty()) return false;
  return std::all_of(filtrations.begin(), filtrations.end(),
                     [&](const GammaComparison& c) { return c.gamma == filtrations.front().gamma; });
}

EquivalenceReport verify_filtration_equivalence(const ProjComplex& x, const SiltingCollection& m, std::size_t trials,
                                                std::uint64_t seed) {
  EquivalenceReport r;
  Rng rng(seed);
  auto run = [&](const std::string& name, const ExtractOptions& opts) {
    const Filtration f = extract_filtration(x, m, opts);
    if (const auto defect = check_filtration(f, m)) r.defects.push_back(name + ": " + *defect);
    r.filtrations.push_back(GammaComparison{name, gamma(f, m)});
  };
  ExtractOptions universal;
  universal.strategy = Strategy::approximation;
  run("universal", universal);
  ExtractOptions minimal;
  minimal.strategy = Strategy::minimal;
  run("minimal", minimal);
  if (m.is_stalk_projectives()) {
    ExtractOptions trunc;
    trunc.strategy = Strategy::truncation;
    run("truncation", trunc);
  }
  for (std::size_t t = 0; t < trials; ++t) {
    ExtractOptions opts = universal;
    const std::size_t k = rng.below(m.size());
    const std::uint64_t mix_seed = rng.next();
    const std::size_t zeros = 1 + rng.below(2);
    std::string name;
    switch (t % 3) {
      case 0:
        opts.pad_stage0 = k;
        name = "padded with " + m.name(k);
        break;
      case 1:
        opts.mix_seed = mix_seed;
        opts.pad_stage0 = t >= 3 ? std::optional<std::size_t>(k) : std::nullopt;
        name = opts.pad_stage0 ? "mixed basis, padded with " + m.name(k) : "mixed basis";
        break;
      default:
        opts.trailing_zero_stages = zeros;
        opts.max_len.reset();
        name = "extended by " + std::to_string(zeros) + " zero stage" + (zeros > 1 ? "s" : "");
        if (t >= 3) {
          opts.pad_stage0 = k;
          name += ", padded with " + m.name(k);
        }
        break;
    }
    run(name, opts);
  }
  return r;
}

bool HorseshoeReport::all_additive() const {
  return std::all_of(cases.begin(), cases.end(), [](const HorseshoeCase& c) { return c.additive; });
}

HorseshoeCase detail::horseshoe_case(std::string name, const ChainMap& w, const K0SpElement& gx, const K0SpElement& gz,
                             const SiltingCollection& m) {
  HorseshoeCase c{std::move(name), gx, {}, gz, false, std::nullopt};
  try {
    c.split = homotopy::find_null_homotopy(w).has_value();
    const homotopy::Cone cw = homotopy::cone(w);
    // Z -> Sigma X -> cone(w) -> Sigma Z, rotated back twice: X -> Y -> Z -> Sigma X
    const Triangle t = homotopy::rotate_back(homotopy::rotate_back(cw.triangle));
    t.verify();
    const Filtration fy = extract_filtration(t.second(), m);
    if (const auto defect = check_filtration(fy, m)) throw FiltrationError(*defect);
    c.gamma_y = gamma(fy, m);
    c.additive = c.gamma_y == gx + gz;
  } catch (const std::exception& e) {
    c.error = e.what();
  }
  return c;
}

HorseshoeReport verify_horseshoe(const ProjComplex& x, const ProjComplex& z, const SiltingCollection& m,
                                 std::size_t samples, std::uint64_t seed) {
  HorseshoeReport r;
  const K0SpElement gx = gamma(extract_filtration(x, m), m);
  const K0SpElement gz = gamma(extract_filtration(z, m), m);
  const ProjComplex sx = homotopy::shift(x, 1);
  const auto basis = homotopy::hom_space(z, sx).basis;
  r.cases.push_back(detail::horseshoe_case("zero", ChainMap::zero(z, sx), gx, gz, m));
  for (std::size_t k = 0; k < basis.size(); ++k) r.cases.push_back(detail::horseshoe_case("basis " + std::to_string(k), basis[k], gx, gz, m));
  Rng rng(seed);
  if (!basis.empty()) {
    for (std::size_t k = 0; k < samples; ++k) {
      r.cases.push_back(
          detail::horseshoe_case("random " + std::to_string(k), homotopy::random_combination(z, sx, basis, rng), gx, gz, m));
    }
  }
  return r;
}

ProjComplex random_object_in_F(const SiltingCollection& m, Rng& rng, int max_depth) {
  const auto alg = m.algebra_ptr();
  if (m.is_stalk_projectives()) {
    homotopy::ComplexShape shape;
    shape.min_degree = 0;
    shape.max_degree = 2;
    return homotopy::random_complex(alg, rng, shape);
  }
  if (max_depth <= 0 || rng.chance(1, 3)) {
    return homotopy::shift(m.summand(rng.below(m.size())), -static_cast<int>(rng.below(2)));
  }
  const ProjComplex x = random_object_in_F(m, rng, max_depth - 1);
  const ProjComplex z = random_object_in_F(m, rng, max_depth - 1);
  const ProjComplex sx = homotopy::shift(x, 1);
  const ChainMap w = homotopy::random_combination(z, sx, homotopy::hom_space(z, sx).basis, rng);
  return homotopy::minimal_complex(homotopy::shift(homotopy::cone(w).complex, -1));
}

}  // namespace k0s::silting

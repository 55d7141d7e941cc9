#include <algorithm>
#include <optional>
#include <stdexcept>

#include "k0s/grothendieck.hpp"

namespace k0s::grothendieck {

using homotopy::ChainMap;
using homotopy::HomMatrix;
using homotopy::IsoVerdict;

std::vector<SampledMap> sample_maps(const homotopy::AlgebraPtr& alg, const SamplerConfig& config) {
  Rng base(config.seed);
  std::vector<SampledMap> out;
  out.reserve(config.samples);
  for (std::size_t i = 0; i < config.samples; ++i) {
    Rng rng = base.fork();
    ProjComplex x = homotopy::random_complex(alg, rng, config.shape);
    homotopy::ComplexShape near = config.shape;
    near.min_degree = x.min_degree() - 1;
    near.max_degree = x.max_degree() + 1;
    ProjComplex y = homotopy::random_complex(alg, rng, near);
    ChainMap f = config.zero_maps_only ? ChainMap::zero(x, y) : homotopy::random_chain_map(x, y, rng);
    out.push_back(SampledMap{std::move(x), std::move(y), std::move(f)});
  }
  return out;
}

namespace {

using Row = std::map<std::size_t, long>;

class Buckets {
 public:
  Buckets(const SamplerConfig& config, SampledPresentation& out) : config_(config), out_(out) {}

  std::optional<std::size_t> classify(const ProjComplex& x) {
    ProjComplex m = homotopy::minimal_complex(x);
    if (m.empty()) return std::nullopt;
    auto& candidates = by_labels_[m.graded_labels()];
    bool unknown = false;
    for (auto id : candidates) {
      const auto verdict = homotopy::iso_test(m, out_.representatives[id], {config_.iso_trials, 0x5eed + id});
      if (verdict == IsoVerdict::iso) return id;
      unknown = unknown || verdict == IsoVerdict::unknown;
    }
    const std::size_t id = out_.representatives.size();
    std::string name = homotopy::describe(m);
    if (!candidates.empty()) name += " #" + std::to_string(candidates.size() + 1);
    if (unknown) {
      ++out_.unknown_verdicts;
      out_.log.push_back("iso test inconclusive for " + name + "; opened a separate generator");
    }
    candidates.push_back(id);
    out_.representatives.push_back(m);
    out_.presentation.generators.push_back(name);
    peel(m, id);
    return id;
  }

  /// Row [z] - [sx] - [y] of a triangle x -> y -> z -> sx.
  void relate(const ProjComplex& z, const ProjComplex& sx, const ProjComplex& y, bool sampled,
              std::optional<std::size_t> z_id = std::nullopt) {
    Row row;
    if (!z_id) z_id = classify(z);
    if (z_id) row[*z_id] += 1;
    if (const auto id = classify(sx)) row[*id] -= 1;
    if (const auto id = classify(y)) row[*id] -= 1;
    std::erase_if(row, [](const auto& kv) { return kv.second == 0; });
    rows_.push_back(std::move(row));
    if (sampled) {
      ++out_.sampled_relations;
    } else {
      ++out_.peel_relations;
    }
  }

  void triangle(const ChainMap& f, bool sampled, std::optional<std::size_t> cone_id = std::nullopt) {
    const homotopy::Cone c = homotopy::cone(f);
    if (cone_id && !(c.complex == out_.representatives[*cone_id])) {
      throw std::logic_error("peel cone differs from its generator");
    }
    relate(c.complex, homotopy::shift(f.source(), 1), f.target(), sampled, cone_id);
  }

  const std::vector<Row>& rows() const { return rows_; }

 private:
  // Express a fresh generator through smaller objects by genuine cone triangles.
  // The cones below reproduce c term for term and are booked on c's generator.
  void peel(const ProjComplex& c, std::size_t id) {
    const auto alg = c.algebra_ptr();
    const int m = c.min_degree();
    const auto& low = c.term(m);
    if (c.width() == 1) {
      if (low.size() == 1) {
        if (m == 0) return;
        const ProjComplex x = m > 0 ? c : homotopy::shift(c, -1);
        triangle(ChainMap::identity(x), false);
        return;
      }
      const ProjComplex a = ProjComplex::stalk(alg, low.front(), m);
      const ProjComplex b = ProjComplex::stalks(alg, std::vector<std::size_t>(low.begin() + 1, low.end()), m);
      triangle(ChainMap::zero(homotopy::shift(a, -1), b), false, id);
      return;
    }
    const ProjComplex a = ProjComplex::stalks(alg, low, m);
    std::map<int, std::vector<std::size_t>> terms;
    std::map<int, HomMatrix> diffs;
    for (const auto& [n, t] : c.terms()) {
      if (n > m) terms.emplace(n, t);
    }
    for (const auto& [n, d] : c.differentials()) {
      if (n > m) diffs.emplace(n, d);
    }
    const ProjComplex q(alg, std::move(terms), std::move(diffs));
    const ChainMap g(homotopy::shift(a, -1), q, {{m + 1, c.differential(m)}});
    triangle(g, false, id);
  }

  const SamplerConfig& config_;
  SampledPresentation& out_;
  std::map<std::vector<homotopy::GradedLabel>, std::vector<std::size_t>> by_labels_;
  std::vector<Row> rows_;
};

}  // namespace

SampledPresentation sampled_k0_presentation(const homotopy::AlgebraPtr& alg, const SamplerConfig& config) {
  SampledPresentation out;
  Buckets buckets(config, out);
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) buckets.classify(ProjComplex::stalk(alg, v, 0));
  for (const auto& s : sample_maps(alg, config)) buckets.triangle(s.f, true);
  const auto& rows = buckets.rows();
  IntMatrix rel(rows.size(), out.representatives.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (const auto& [c, v] : rows[r]) rel(r, c) = v;
  }
  out.presentation.relations = std::move(rel);
  return out;
}

}  // namespace k0s::grothendieck

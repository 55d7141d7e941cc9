#include <algorithm>

#include "k0s/silting.hpp"

namespace k0s::silting {

SiltingCollection::SiltingCollection(AlgebraPtr alg, std::vector<std::pair<std::string, ProjComplex>> summands,
                                     std::optional<int> d)
    : alg_(std::move(alg)), d_(d) {
  if (d_ && *d_ < 2) throw PreconditionError("rigidity parameter d must be at least 2");
  if (summands.empty()) throw PreconditionError("silting collection has no summands");
  for (auto& [name, c] : summands) {
    if (c.algebra_ptr() != alg_) throw PreconditionError("summand '" + name + "' lives over a different algebra");
    if (std::find(names_.begin(), names_.end(), name) != names_.end()) {
      throw PreconditionError("duplicate summand name '" + name + "'");
    }
    ProjComplex m = homotopy::minimal_complex(c);
    if (m.empty()) throw PreconditionError("summand '" + name + "' is zero in the homotopy category");
    names_.push_back(name);
    summands_.push_back(std::move(m));
  }
  std::vector<std::size_t> by_vertex(alg_->vertex_count(), summands_.size());
  bool stalks = summands_.size() == alg_->vertex_count();
  for (std::size_t j = 0; stalks && j < summands_.size(); ++j) {
    const auto& c = summands_[j];
    if (c.width() != 1 || c.min_degree() != 0 || c.term(0).size() != 1 || by_vertex[c.term(0)[0]] != summands_.size()) {
      stalks = false;
    } else {
      by_vertex[c.term(0)[0]] = j;
    }
  }
  if (stalks) stalk_vertex_ = std::move(by_vertex);
}

SiltingCollection SiltingCollection::stalk_projectives(AlgebraPtr alg) {
  std::vector<std::pair<std::string, ProjComplex>> summands;
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
    summands.emplace_back("P" + alg->vertex_label(v), ProjComplex::stalk(alg, v, 0));
  }
  SiltingCollection m(alg, std::move(summands));
  verify_declared_rigidity(m);
  return m;
}

std::size_t SiltingCollection::index(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw PreconditionError("unknown summand '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

ProjComplex SiltingCollection::sum(const std::vector<std::size_t>& factor) const {
  std::vector<ProjComplex> parts;
  for (auto j : factor) parts.push_back(summands_.at(j));
  return homotopy::direct_sum(alg_, parts);
}

std::size_t SiltingCollection::stalk_summand(std::size_t vertex) const { return stalk_vertex_.value().at(vertex); }

int SiltingCollection::k_max() const {
  int best = 1;
  for (const auto& a : summands_) {
    for (const auto& b : summands_) best = std::max(best, b.max_degree() - a.min_degree());
  }
  return best;
}

bool HomVanishingReport::all_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](const HomEntry& e) { return e.dimension == 0; });
}

std::optional<int> HomVanishingReport::first_failure() const {
  std::optional<int> k;
  for (const auto& e : entries) {
    if (e.dimension != 0 && (!k || e.k < *k)) k = e.k;
  }
  return k;
}

HomVanishingReport verify_hom_vanishing(SiltingCollection& m, int k_lo, int k_hi) {
  HomVanishingReport r;
  r.k_lo = k_lo;
  r.k_hi = k_hi;
  for (int k = k_lo; k <= k_hi; ++k) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        const std::size_t dim = homotopy::hom_dimension(m.summand(i), homotopy::shift(m.summand(j), k));
        r.entries.push_back(HomEntry{i, j, k, dim});
      }
    }
  }
  if (r.all_zero() && k_lo <= 1) {
    if (k_hi >= m.k_max()) m.verified_presilting = true;
    if (m.declared_d() && k_hi >= *m.declared_d() - 1) m.verified_d_rigid = true;
    if (m.verified_presilting) m.verified_d_rigid = true;
  }
  return r;
}

HomVanishingReport verify_declared_rigidity(SiltingCollection& m) {
  return verify_hom_vanishing(m, 1, m.declared_d() ? *m.declared_d() - 1 : m.k_max());
}

}  // namespace k0s::silting

#include <algorithm>
#include <functional>
#include <sstream>

#include "k0s/silting.hpp"

namespace k0s::silting {

std::string to_string(Membership v) {
  switch (v) {
    case Membership::member:
      return "member";
    case Membership::non_member:
      return "non-member";
    case Membership::unknown:
      break;
  }
  return "unknown";
}

namespace {

using LabelCount = std::map<homotopy::GradedLabel, long>;  // (degree, vertex) -> count

long count(const LabelCount& c, int n, std::size_t v) {
  const auto it = c.find({n, v});
  return it == c.end() ? 0 : it->second;
}

// Can the layered candidate labels cancel in pairs (v@n, v@n+1) down to x?
// Two layers: a pair joins a layer-0 label at n with a layer-1 label at n+1.
// More layers: any two labels of adjacent degree may cancel.
bool cancels_to(const std::vector<LabelCount>& layers, const LabelCount& x, std::size_t vertices) {
  int lo = 0, hi = 0;
  bool any = false;
  auto widen = [&](const LabelCount& c) {
    for (const auto& [k, n] : c) {
      if (n == 0) continue;
      lo = any ? std::min(lo, k.first) : k.first;
      hi = any ? std::max(hi, k.first) : k.first;
      any = true;
    }
  };
  for (const auto& l : layers) widen(l);
  widen(x);
  if (!any) return true;
  const bool two_layer = layers.size() <= 2;
  for (std::size_t v = 0; v < vertices; ++v) {
    long carry = 0;  // pairs (v@n-1, v@n)
    for (int n = lo; n <= hi + 1; ++n) {
      const long l0 = layers.empty() ? 0 : count(layers[0], n, v);
      long l1 = 0;
      for (std::size_t i = 1; i < layers.size(); ++i) l1 += count(layers[i], n, v);
      const long p = l0 + l1 - carry - count(x, n, v);
      if (p < 0) return false;
      if (two_layer) {
        if (carry > l1 || p > l0) return false;
        if (p > 0 && layers.size() < 2) return false;
      }
      carry = p;
    }
    if (carry != 0) return false;
  }
  return true;
}

}  // namespace

MembershipResult membership_in_Fm(const ProjComplex& x, const SiltingCollection& m, std::size_t m_bar,
                                  std::size_t bound) {
  if (!m.verified_presilting && !m.verified_d_rigid) throw PreconditionError("precondition: collection unverified");
  if (!m.verified_presilting && m_bar > static_cast<std::size_t>(*m.declared_d())) {
    throw PreconditionError("precondition: m_bar exceeds d");
  }
  MembershipResult r;
  ExtractOptions opts;
  opts.max_len = m_bar;
  try {
    r.witness = extract_filtration(x, m, opts);
    r.verdict = Membership::member;
    r.detail = "filtration of length " + std::to_string(r.witness->length());
    return r;
  } catch (const FiltrationError& e) {
    r.detail = e.what();
  }

  const ProjComplex mx = homotopy::minimal_complex(x);
  LabelCount target;
  for (const auto& l : mx.graded_labels()) ++target[l];
  // shifted summand labels, one entry per (layer, summand)
  std::vector<std::vector<homotopy::GradedLabel>> pieces;
  for (std::size_t i = 0; i < m_bar; ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      pieces.push_back(homotopy::shift(m.summand(j), -static_cast<int>(i)).graded_labels());
    }
  }
  const std::size_t vertices = m.algebra_ptr()->vertex_count();
  std::vector<std::size_t> mult(pieces.size(), 0);
  std::optional<std::string> compatible;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t pos, std::size_t left) {
    if (compatible) return;
    if (pos == pieces.size()) {
      ++r.candidates_checked;
      std::vector<LabelCount> layers(m_bar);
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        for (const auto& l : pieces[k]) layers[k / m.size()][l] += static_cast<long>(mult[k]);
      }
      if (cancels_to(layers, target, vertices)) {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < pieces.size(); ++k) {
          if (mult[k] == 0) continue;
          os << (first ? "" : " + ") << mult[k] << " Sigma^-" << k / m.size() << " " << m.name(k % m.size());
          first = false;
        }
        compatible = first ? std::string("0") : os.str();
      }
      return;
    }
    for (std::size_t c = 0; c <= left; ++c) {
      mult[pos] = c;
      walk(pos + 1, left - c);
    }
    mult[pos] = 0;
  };
  walk(0, bound);
  if (compatible) {
    r.verdict = Membership::unknown;
    r.detail += "; labels compatible with " + *compatible;
  } else {
    r.verdict = Membership::non_member;
    r.detail = "no sum of at most " + std::to_string(bound) + " summands Sigma^-i T_j (i < " + std::to_string(m_bar) +
               ") cancels down to the graded labels of " + homotopy::describe(mx) + " (" +
               std::to_string(r.candidates_checked) + " candidates)";
  }
  return r;
}

namespace {

struct Extension {
  std::size_t j1, j2;
  std::string map;
  ProjComplex e;
};

std::vector<Extension> extensions(const SiltingCollection& m, int d, std::size_t samples, std::uint64_t seed) {
  std::vector<Extension> out;
  Rng rng(seed);
  for (std::size_t j1 = 0; j1 < m.size(); ++j1) {
    for (std::size_t j2 = 0; j2 < m.size(); ++j2) {
      const ProjComplex src = homotopy::shift(m.summand(j2), -(d - 1));
      const ProjComplex tgt = homotopy::shift(m.summand(j1), 1);
      const auto basis = homotopy::hom_space(src, tgt).basis;
      std::vector<std::pair<std::string, ChainMap>> maps;
      maps.emplace_back("zero", ChainMap::zero(src, tgt));
      for (std::size_t k = 0; k < basis.size(); ++k) maps.emplace_back("basis " + std::to_string(k), basis[k]);
      if (!basis.empty()) {
        for (std::size_t k = 0; k < samples; ++k) {
          maps.emplace_back("random " + std::to_string(k), homotopy::random_combination(src, tgt, basis, rng));
        }
      }
      for (const auto& [name, w] : maps) {
        const homotopy::Cone c = homotopy::cone(w);
        c.triangle.verify();
        out.push_back(Extension{j1, j2, name, homotopy::minimal_complex(homotopy::shift(c.complex, -1))});
      }
    }
  }
  return out;
}

}  // namespace

ClosureReport verify_fd_extension_closure(const SiltingCollection& m, int d, std::size_t samples, std::uint64_t seed) {
  if (d < 2) throw PreconditionError("d must be at least 2");
  ClosureReport r;
  r.d = d;
  for (auto& ext : extensions(m, d, samples, seed)) {
    MembershipResult mr = membership_in_Fm(ext.e, m, static_cast<std::size_t>(d));
    switch (mr.verdict) {
      case Membership::member:
        ++r.members;
        break;
      case Membership::non_member:
        ++r.non_members;
        break;
      case Membership::unknown:
        ++r.unknowns;
        break;
    }
    r.cases.push_back(ExtensionCase{ext.j1, ext.j2, ext.map, std::move(ext.e), std::move(mr)});
  }
  return r;
}

bool NSubgroupReport::all_zero() const {
  return std::all_of(generators.begin(), generators.end(), [](const K0SpElement& g) { return g.is_zero(); });
}

NSubgroupReport compute_N_subgroup(const SiltingCollection& m, int d, std::size_t samples, std::uint64_t seed) {
  const ClosureReport closure = verify_fd_extension_closure(m, d, samples, seed);
  if (!closure.closed()) throw PreconditionError("precondition: F_d is not certified extension-closed");
  NSubgroupReport r;
  r.d = d;
  ExtractOptions opts;
  opts.max_len = static_cast<std::size_t>(d);
  for (const auto& c : closure.cases) {
    const Filtration f = extract_filtration(c.extension, m, opts);
    K0SpElement g = gamma(f, m);
    g.add(m.name(c.j1), -1);
    g.add(m.name(c.j2), d % 2 == 0 ? 1 : -1);  // -(-1)^{d-1}
    r.generators.push_back(std::move(g));
  }
  r.quotient = grothendieck::quotient_group(m.names(), r.generators);
  return r;
}

}  // namespace k0s::silting

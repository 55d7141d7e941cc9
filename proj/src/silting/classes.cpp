#include <algorithm>

#include "k0s/parallel.hpp"
#include "k0s/silting.hpp"

namespace k0s::silting {

ClassValue class_at_shift(const ProjComplex& x, const SiltingCollection& m, int n) {
  const Filtration f = extract_filtration(homotopy::shift(x, -n), m);
  ClassValue c{n, gamma(f, m), {}};
  c.value = n % 2 == 0 ? c.gamma_shifted : -c.gamma_shifted;
  return c;
}

ClassValue class_in_k0sp(const ProjComplex& x, const SiltingCollection& m, int bound) {
  if (!m.verified_presilting) throw PreconditionError("precondition: collection not verified presilting");
  for (int n = 0; n <= bound; ++n) {
    try {
      return class_at_shift(x, m, n);
    } catch (const FiltrationError&) {
    }
  }
  throw FiltrationError("silting certificate violated for x = " + homotopy::describe(homotopy::minimal_complex(x)));
}

bool CertificateReport::certified() const {
  return std::all_of(entries.begin(), entries.end(), [](const CertificateEntry& e) { return e.shift.has_value(); });
}

CertificateReport silting_certificate(const SiltingCollection& m, int bound) {
  if (!m.verified_presilting && !m.verified_d_rigid) throw PreconditionError("precondition: collection unverified");
  ExtractOptions opts;
  if (!m.verified_presilting) opts.max_len = static_cast<std::size_t>(*m.declared_d());
  CertificateReport r;
  const auto alg = m.algebra_ptr();
  for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
    CertificateEntry e{v, std::nullopt};
    for (int n = 0; n <= bound && !e.shift; ++n) {
      try {
        extract_filtration(homotopy::shift(ProjComplex::stalk(alg, v, 0), -n), m, opts);
        e.shift = n;
      } catch (const FiltrationError&) {
      }
    }
    r.entries.push_back(e);
  }
  return r;
}

TheoremAReport verify_theorem_a(const SiltingCollection& m, const TheoremAConfig& config) {
  if (!m.verified_presilting) throw PreconditionError("precondition: collection not verified presilting");
  if (!silting_certificate(m).certified()) throw PreconditionError("precondition: silting certificate failed");
  TheoremAReport r;
  const auto alg = m.algebra_ptr();

  r.split_group = grothendieck::quotient_group(m.names(), {});
  r.rank_ok = r.split_group.rank == m.size() && r.split_group.is_free();

  const auto sampled = grothendieck::sampled_k0_presentation(alg, config.sampler);
  r.sampled_group = grothendieck::group_invariants(sampled.presentation);
  r.sampled_generators = sampled.presentation.generators.size();
  r.sampled_ok = r.sampled_group.rank == m.size() && r.sampled_group.is_free();

  const auto maps = grothendieck::sample_maps(alg, config.sampler);
  r.additivity.resize(maps.size());
  parallel_for(maps.size(), config.jobs, [&](std::size_t i) {
    AdditivityCase& c = r.additivity[i];
    c.index = i;
    try {
      const auto& s = maps[i];
      c.cone_class = class_in_k0sp(homotopy::cone(s.f).complex, m).value;
      c.shift_class = class_in_k0sp(homotopy::shift(s.x, 1), m).value;
      c.target_class = class_in_k0sp(s.y, m).value;
      c.additive = c.cone_class == c.shift_class + c.target_class;
    } catch (const std::exception& e) {
      c.error = e.what();
    }
  });
  r.additive_ok = std::all_of(r.additivity.begin(), r.additivity.end(), [](const auto& c) { return c.additive; });

  r.surjective_ok = true;
  for (std::size_t j = 0; j < m.size(); ++j) {
    K0SpElement c = class_in_k0sp(m.summand(j), m).value;
    r.surjective_ok = r.surjective_ok && c == K0SpElement::basis(m.name(j));
    r.summand_classes.emplace_back(m.name(j), std::move(c));
  }
  return r;
}

}  // namespace k0s::silting

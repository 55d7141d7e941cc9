#include <algorithm>
#include <sstream>

#include "k0s/silting.hpp"

namespace k0s::silting {

bool ExampleReport::passed() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const ExampleCheck& c) { return c.pass; });
}

namespace {

// Single simple module concentrated in degree 0: its vertex.
std::optional<std::size_t> simple_in_degree_zero(const ProjComplex& x) {
  const auto h = homotopy::cohomology_dimensions(x);
  if (h.size() != 1 || h.begin()->first != 0) return std::nullopt;
  const auto& dims = h.begin()->second;
  std::optional<std::size_t> vertex;
  for (std::size_t w = 0; w < dims.size(); ++w) {
    if (dims[w] == 0) continue;
    if (dims[w] != 1 || vertex) return std::nullopt;
    vertex = w;
  }
  return vertex;
}

}  // namespace

ExampleReport verify_a3_example(SiltingCollection m, const std::optional<ProjComplex>& x, std::uint64_t seed) {
  if (m.size() != 2 || m.declared_d() != 2) {
    throw PreconditionError("precondition: the example needs two summands declared 2-rigid");
  }
  ExampleReport r;
  auto check = [&](std::string name, bool pass, std::string detail) {
    r.checks.push_back(ExampleCheck{std::move(name), pass, std::move(detail)});
    return pass;
  };
  const auto& alg = *m.algebra_ptr();

  for (std::size_t j = 0; j < 2; ++j) {
    const auto v = simple_in_degree_zero(m.summand(j));
    check(m.name(j) + " resolves a simple module", v.has_value(),
          v ? "cohomology is S" + alg.vertex_label(*v) + " in degree 0" : "cohomology is not a simple in degree 0");
  }

  const HomVanishingReport rigid = verify_hom_vanishing(m, 1, 1);
  check("2-rigid", rigid.all_zero() && m.verified_d_rigid, "all dim Hom(T_i, Sigma T_j) = 0");

  const HomVanishingReport pre = verify_hom_vanishing(m, 1, m.k_max());
  const auto fail_at = pre.first_failure();
  check("presilting fails at i = 2", fail_at == 2,
        fail_at ? "first nonzero Hom(T_i, Sigma^i T_j) at i = " + std::to_string(*fail_at) : "all Hom vanish");

  // the nonzero class in Hom(T_a, Sigma^2 T_b)
  std::optional<HomEntry> ext;
  for (const auto& e : pre.entries) {
    if (e.k == 2 && e.dimension != 0 && !ext) ext = e;
  }
  if (!ext) {
    check("extension class exists", false, "Hom(T_a, Sigma^2 T_b) = 0 for all a, b");
    return r;
  }
  const std::size_t a = ext->i, b = ext->j;
  const std::string ta = m.name(a), tb = m.name(b);
  const ProjComplex src = homotopy::shift(m.summand(a), -1);
  const ProjComplex tgt = homotopy::shift(m.summand(b), 1);
  const ChainMap w = homotopy::hom_space(src, tgt).basis.front();
  const homotopy::Cone cw = homotopy::cone(w);
  const Triangle ext_tri = homotopy::rotate_back(homotopy::rotate_back(cw.triangle));
  bool ok = true;
  try {
    cw.triangle.verify();
    ext_tri.verify();
  } catch (const homotopy::HomotopyError& e) {
    ok = false;
  }
  const ProjComplex e = homotopy::minimal_complex(ext_tri.second());
  check("extension triangle " + tb + " -> E -> Sigma^-1 " + ta + " -> Sigma " + tb, ok, "E = " + homotopy::describe(e));

  ProjComplex obj = e;
  if (x) {
    const auto verdict = homotopy::iso_test(*x, e, {32, seed});
    check("supplied X is isomorphic to E", verdict == homotopy::IsoVerdict::iso,
          "iso_test verdict: " + homotopy::to_string(verdict));
    obj = homotopy::minimal_complex(*x);
  }

  const MembershipResult mem = membership_in_Fm(obj, m, 2);
  check("X is not in F_2", mem.verdict == Membership::non_member, to_string(mem.verdict) + ": " + mem.detail);

  {
    const auto basis = homotopy::hom_space(m.summand(b), obj).basis;
    bool tri_ok = basis.size() == 1;
    std::string detail = "dim Hom(" + tb + ", X) = " + std::to_string(basis.size());
    if (tri_ok) {
      const homotopy::Cone c = homotopy::cone(basis.front());
      try {
        c.triangle.verify();
        homotopy::rotate(c.triangle).verify();
      } catch (const homotopy::HomotopyError& err) {
        tri_ok = false;
        detail += std::string("; ") + err.what();
      }
      const ProjComplex third = homotopy::shift(m.summand(a), -1);
      const bool labels = homotopy::minimal_complex(c.complex).graded_labels() == third.graded_labels();
      const auto verdict = homotopy::iso_test(c.complex, third, {32, seed});
      tri_ok = tri_ok && labels && verdict == homotopy::IsoVerdict::iso;
      detail += "; cone = " + homotopy::describe(homotopy::minimal_complex(c.complex)) + ", iso to Sigma^-1 " + ta +
                ": " + homotopy::to_string(verdict);
    }
    check("triangle " + tb + " -> X -> Sigma^-1 " + ta + " -> Sigma " + tb, tri_ok, detail);
  }

  const ClosureReport closure = verify_fd_extension_closure(m, 2, 2, seed);
  check("F_2 is not closed under extensions", !closure.closed() && closure.non_members > 0,
        std::to_string(closure.members) + " member, " + std::to_string(closure.non_members) + " non-member, " +
            std::to_string(closure.unknowns) + " unknown");

  const ProjComplex split = homotopy::direct_sum(m.algebra_ptr(), {m.summand(b), homotopy::shift(m.summand(a), -1)});
  const MembershipResult split_mem = membership_in_Fm(split, m, 2);
  check(tb + " + Sigma^-1 " + ta + " is in F_2",
        split_mem.verdict == Membership::member && split_mem.witness && split_mem.witness->length() == 2 &&
            !check_filtration(*split_mem.witness, m),
        split_mem.detail);
  return r;
}

}  // namespace k0s::silting

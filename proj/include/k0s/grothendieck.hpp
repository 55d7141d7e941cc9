// Split Grothendieck groups, finitely presented abelian groups, and sampled
// triangle presentations of K_0(K^b(proj Lambda)).
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "k0s/exactmath.hpp"
#include "k0s/homotopy.hpp"
#include "k0s/random.hpp"

namespace k0s::grothendieck {

using exactmath::IntMatrix;
using homotopy::ProjComplex;

class GroupError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finitely supported integer vector over summand labels.
class K0SpElement {
 public:
  K0SpElement() = default;
  static K0SpElement basis(const std::string& label, long coeff = 1);

  long operator[](const std::string& label) const;
  const std::map<std::string, long>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  K0SpElement& add(const std::string& label, long coeff);
  K0SpElement& operator+=(const K0SpElement& o);
  K0SpElement& operator-=(const K0SpElement& o);
  K0SpElement operator-() const;
  friend K0SpElement operator+(K0SpElement a, const K0SpElement& b) { return a += b; }
  friend K0SpElement operator-(K0SpElement a, const K0SpElement& b) { return a -= b; }
  friend K0SpElement operator*(long c, const K0SpElement& a);
  friend bool operator==(const K0SpElement&, const K0SpElement&) = default;

  /// "P2: +1, P1: -1" in the given label order (labels absent from the order go last).
  std::string str(const std::vector<std::string>& order = {}) const;

 private:
  std::map<std::string, long> coeffs_;  // zero coefficients never stored
};

struct AbelianGroupPresentation {
  std::vector<std::string> generators;
  IntMatrix relations;  // one row per relation, generators.size() columns
};

struct GroupInvariants {
  std::size_t rank = 0;
  std::vector<mpz_class> torsion;  // invariant factors > 1, each dividing the next

  bool is_free() const { return torsion.empty(); }
  std::string str() const;
  friend bool operator==(const GroupInvariants&, const GroupInvariants&) = default;
};

GroupInvariants group_invariants(const AbelianGroupPresentation& p);

/// Invariants of Z^labels / <generators>. Throws GroupError on an unknown label.
GroupInvariants quotient_group(const std::vector<std::string>& labels, const std::vector<K0SpElement>& generators);

// --- sampling -----------------------------------------------------------------

struct SamplerConfig {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
  homotopy::ComplexShape shape{};
  bool zero_maps_only = false;
  std::size_t iso_trials = 32;
};

/// One sampled morphism f : X -> Y; its triangle is X -> Y -> cone(f) -> Sigma X.
struct SampledMap {
  ProjComplex x;
  ProjComplex y;
  homotopy::ChainMap f;
};

/// The i-th map depends only on (seed, i), so smaller sample counts give prefixes.
std::vector<SampledMap> sample_maps(const homotopy::AlgebraPtr& alg, const SamplerConfig& config);

struct SampledPresentation {
  AbelianGroupPresentation presentation;
  std::vector<ProjComplex> representatives;  // minimal complex per generator
  std::size_t sampled_relations = 0;
  std::size_t peel_relations = 0;
  std::size_t unknown_verdicts = 0;  // iso tests that opened a fresh bucket
  std::vector<std::string> log;
};

/// Generators are the buckets of minimal complexes met while sampling; relations
/// are [cone f] - [Sigma X] - [Y] for every sampled f, together with the cone
/// relations used to peel each new generator down to stalks of P_v in degree 0.
SampledPresentation sampled_k0_presentation(const homotopy::AlgebraPtr& alg, const SamplerConfig& config);

}  // namespace k0s::grothendieck

// Silting and d-rigid collections in K^b(proj Lambda): Hom vanishing,
// Sigma^{<=0}(M)-filtrations, the gamma invariant, classes in K_0^sp(M),
// F_m membership and the cluster subgroup N.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "k0s/grothendieck.hpp"
#include "k0s/homotopy.hpp"
#include "k0s/rng.hpp"

namespace k0s::silting {

using grothendieck::GroupInvariants;
using grothendieck::K0SpElement;
using homotopy::AlgebraPtr;
using homotopy::ChainMap;
using homotopy::ProjComplex;
using homotopy::Triangle;

/// Input that does not satisfy an operation's precondition.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Extraction did not reach zero within the allowed number of stages.
class FiltrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SiltingCollection {
 public:
  /// Each summand is replaced by its minimal complex; zero summands and
  /// duplicate names are rejected. d == nullopt declares "presilting".
  SiltingCollection(AlgebraPtr alg, std::vector<std::pair<std::string, ProjComplex>> summands,
                    std::optional<int> d = std::nullopt);

  /// {P_v in degree 0}, labelled "P" + vertex label.
  static SiltingCollection stalk_projectives(AlgebraPtr alg);

  const AlgebraPtr& algebra_ptr() const { return alg_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t j) const { return names_.at(j); }
  const ProjComplex& summand(std::size_t j) const { return summands_.at(j); }
  std::size_t index(const std::string& name) const;

  std::optional<int> declared_d() const { return d_; }
  bool declared_presilting() const { return !d_.has_value(); }
  /// Sum of the summands indexed by `factor`, in that order.
  ProjComplex sum(const std::vector<std::size_t>& factor) const;

  /// Every summand is a single P_v in degree 0 and every vertex occurs once.
  bool is_stalk_projectives() const { return stalk_vertex_.has_value(); }
  /// Summand index of P_v; only for the stalk collection.
  std::size_t stalk_summand(std::size_t vertex) const;

  /// Largest k that can carry Hom(T_i, Sigma^k T_j) != 0: max over pairs of
  /// (top degree of T_i) - (bottom degree of T_j), at least 1.
  int k_max() const;

  bool verified_presilting = false;
  bool verified_d_rigid = false;

 private:
  AlgebraPtr alg_;
  std::vector<std::string> names_;
  std::vector<ProjComplex> summands_;
  std::optional<int> d_;
  std::optional<std::vector<std::size_t>> stalk_vertex_;  // vertex -> summand index
};

// --- Hom vanishing ---------------------------------------------------------------

struct HomEntry {
  std::size_t i = 0, j = 0;
  int k = 0;
  std::size_t dimension = 0;
};

struct HomVanishingReport {
  int k_lo = 1, k_hi = 1;
  std::vector<HomEntry> entries;  // every (i, j, k) in range
  bool all_zero() const;
  /// Smallest k with a nonzero entry.
  std::optional<int> first_failure() const;
};

/// dim Hom(T_i, Sigma^k T_j) for all pairs and k_lo <= k <= k_hi. Sets
/// verified_presilting when the range covers [1, k_max] and everything
/// vanishes, and verified_d_rigid when it covers [1, d-1].
HomVanishingReport verify_hom_vanishing(SiltingCollection& m, int k_lo, int k_hi);
/// verify_hom_vanishing over [1, k_max] (presilting) or [1, d-1] (d-rigid).
HomVanishingReport verify_declared_rigidity(SiltingCollection& m);

// --- filtrations -----------------------------------------------------------------

/// Stage i: X_{i+1} -> X_i -> Sigma^{-i} M_i -> Sigma X_{i+1}.
struct FiltrationStage {
  Triangle triangle;
  std::vector<std::size_t> factor;   // summand indices forming M_i
  homotopy::MinimalForm next;        // reduction of triangle.first(); next.complex is X_{i+1}
};

struct Filtration {
  ProjComplex object;
  homotopy::MinimalForm start;  // start.complex is the X_0 the stages work on
  std::vector<FiltrationStage> stages;
  std::size_t length() const { return stages.size(); }
};

/// approximation: universal left approximations (every Hom basis map).
/// minimal: drops maps reached through radical maps between summands, falling
/// back to the universal choice when the rest does not generate.
/// automatic: truncation for the unperturbed stalk collection, minimal
/// otherwise, universal when padding or mixing is requested.
enum class Strategy { automatic, approximation, minimal, truncation };

struct ExtractOptions {
  std::optional<std::size_t> max_len;      // default 2 * (support of minimal x, including degree 0) + 2
  Strategy strategy = Strategy::automatic;
  std::optional<std::size_t> pad_stage0;   // add T_k to M_0 through the map (f, 0)
  std::optional<std::uint64_t> mix_seed;   // random invertible change of each Hom basis
  std::size_t trailing_zero_stages = 0;
};

/// Iterated left approximation (or brutal truncation for the stalk
/// collection). Throws PreconditionError for an unverified collection and
/// FiltrationError("not in F within max_len") when extraction does not finish.
Filtration extract_filtration(const ProjComplex& x, const SiltingCollection& m, const ExtractOptions& options = {});

/// Checks every stage: triangle witnesses, third term equal to Sigma^{-i} M_i,
/// chaining of consecutive stages, reduction identities, and X_n == 0.
/// Returns a description of the first defect, or nullopt.
std::optional<std::string> check_filtration(const Filtration& f, const SiltingCollection& m);

/// Hom(X, Sigma T_j) == 0 and Hom(X_1, T_j) == 0 for every j; returns the
/// first violation, or nullopt.
std::optional<std::string> check_orthogonality(const Filtration& f, const SiltingCollection& m);

K0SpElement gamma(const Filtration& f, const SiltingCollection& m);

struct GammaComparison {
  std::string construction;
  K0SpElement gamma;
};

struct EquivalenceReport {
  std::vector<GammaComparison> filtrations;
  std::vector<std::string> defects;
  bool all_equal() const;
};

/// Builds the universal filtration and perturbations of it (padding stage 0
/// with each T_k, random basis changes, trailing zero stages, and brutal
/// truncation when available) and compares their gamma values.
EquivalenceReport verify_filtration_equivalence(const ProjComplex& x, const SiltingCollection& m, std::size_t trials,
                                                std::uint64_t seed);

struct HorseshoeCase {
  std::string description;
  K0SpElement gamma_x, gamma_y, gamma_z;
  bool additive = false;
  std::optional<std::string> error;
  bool split = false;  // w is null-homotopic
};

struct HorseshoeReport {
  std::vector<HorseshoeCase> cases;
  bool all_additive() const;
};

/// For w in a basis of Hom(z, Sigma x) plus `samples` random combinations
/// (and w = 0), Y = Sigma^{-1} cone(w) sits in X -> Y -> Z -> Sigma X; checks
/// gamma(Y) == gamma(X) + gamma(Z).
HorseshoeReport verify_horseshoe(const ProjComplex& x, const ProjComplex& z, const SiltingCollection& m,
                                 std::size_t samples, std::uint64_t seed);

/// Random object of F: a complex supported in degrees >= 0 for the stalk
/// collection, otherwise an iterated extension of shifts Sigma^{-i} T_j.
ProjComplex random_object_in_F(const SiltingCollection& m, Rng& rng, int max_depth = 2);

// --- classes and certificates --------------------------------------------------------

struct ClassValue {
  int shift = 0;           // n with Sigma^{-n} x in F
  K0SpElement gamma_shifted;
  K0SpElement value;       // (-1)^n gamma_shifted
};

/// (-1)^n gamma(Sigma^{-n} x) for a given n; throws FiltrationError when
/// Sigma^{-n} x has no filtration within the bound.
ClassValue class_at_shift(const ProjComplex& x, const SiltingCollection& m, int n);
/// Least n in [0, bound] that works. Throws FiltrationError("silting
/// certificate violated for x") when none does.
ClassValue class_in_k0sp(const ProjComplex& x, const SiltingCollection& m, int bound = 16);

struct CertificateEntry {
  std::size_t vertex = 0;
  std::optional<int> shift;
};

struct CertificateReport {
  std::vector<CertificateEntry> entries;
  bool certified() const;
};

CertificateReport silting_certificate(const SiltingCollection& m, int bound = 10);

// --- F_m membership ------------------------------------------------------------------

enum class Membership { member, non_member, unknown };
std::string to_string(Membership v);

struct MembershipResult {
  Membership verdict = Membership::unknown;
  std::optional<Filtration> witness;
  std::size_t candidates_checked = 0;
  std::string detail;
};

/// member when a filtration of length <= m_bar exists; non_member when no
/// formal sum of at most `bound` shifted summands Sigma^{-i} T_j (i < m_bar)
/// has graded labels that cancel down to those of minimal x.
MembershipResult membership_in_Fm(const ProjComplex& x, const SiltingCollection& m, std::size_t m_bar,
                                  std::size_t bound = 4);

struct ExtensionCase {
  std::size_t j1 = 0, j2 = 0;
  std::string map;  // "zero", "basis k" or "random k"
  ProjComplex extension;
  MembershipResult membership;
};

struct ClosureReport {
  int d = 2;
  std::vector<ExtensionCase> cases;
  std::size_t members = 0, non_members = 0, unknowns = 0;
  bool closed() const { return non_members == 0 && unknowns == 0; }
};

/// E = Sigma^{-1} cone(w) for w : Sigma^{-(d-1)} T_j2 -> Sigma T_j1 (w = 0, a
/// basis, and `samples` random combinations); tallies membership in F_d.
ClosureReport verify_fd_extension_closure(const SiltingCollection& m, int d, std::size_t samples, std::uint64_t seed);

struct NSubgroupReport {
  int d = 2;
  std::vector<K0SpElement> generators;
  GroupInvariants quotient;
  bool all_zero() const;
};

NSubgroupReport compute_N_subgroup(const SiltingCollection& m, int d, std::size_t samples, std::uint64_t seed);

// --- Theorem A -------------------------------------------------------------------------

struct TheoremAConfig {
  grothendieck::SamplerConfig sampler{};
  std::size_t jobs = 1;
};

struct AdditivityCase {
  std::size_t index = 0;
  K0SpElement cone_class, shift_class, target_class;
  bool additive = false;
  std::optional<std::string> error;
};

struct TheoremAReport {
  GroupInvariants split_group;           // (i)
  GroupInvariants sampled_group;         // (ii)
  std::size_t sampled_generators = 0;
  std::vector<AdditivityCase> additivity;  // (iii)
  std::vector<std::pair<std::string, K0SpElement>> summand_classes;  // (iv)
  bool rank_ok = false, sampled_ok = false, additive_ok = false, surjective_ok = false;
  bool passed() const { return rank_ok && sampled_ok && additive_ok && surjective_ok; }
};

TheoremAReport verify_theorem_a(const SiltingCollection& m, const TheoremAConfig& config);

// --- seeded batches ----------------------------------------------------------------
// Case i draws from its own stream, derived from `seed` in index order, so a
// batch of n cases is a prefix of any larger batch and `jobs` never changes
// the result.

struct JordanHolderCase {
  std::size_t index = 0;
  std::string object;
  EquivalenceReport report;
  std::optional<std::string> error;
  bool passed() const { return !error && report.all_equal(); }
};

struct JordanHolderReport {
  std::vector<JordanHolderCase> cases;
  bool passed() const;
};

/// verify_filtration_equivalence on `count` random objects of F.
JordanHolderReport sample_jordan_holder(const SiltingCollection& m, std::size_t count, std::size_t trials,
                                        std::uint64_t seed, std::size_t jobs = 1);

/// `count` extensions X -> Y -> Z -> Sigma X of random objects of F, each
/// with a random w in Hom(Z, Sigma X); pairs with Hom(Z, Sigma X) != 0 are
/// redrawn for a few attempts before accepting a split extension.
HorseshoeReport sample_horseshoe(const SiltingCollection& m, std::size_t count, std::uint64_t seed,
                                 std::size_t jobs = 1);

struct SignLawCase {
  std::size_t index = 0;
  std::string object;
  ClassValue x, desuspended, next_shift;  // class(x), class(Sigma^{-1} x), class of x at shift n + 1
  bool sign_ok = false, shift_ok = false;
  std::optional<std::string> error;
  bool passed() const { return !error && sign_ok && shift_ok; }
};

struct SignLawReport {
  std::vector<SignLawCase> cases;
  bool passed() const;
};

/// class(Sigma^{-1} x) == -class(x) and independence of the normalising
/// shift, on `count` random complexes.
SignLawReport sample_sign_law(const SiltingCollection& m, std::size_t count, std::uint64_t seed,
                              std::size_t jobs = 1);

// --- the worked A3 example ---------------------------------------------------------

struct ExampleCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ExampleReport {
  std::vector<ExampleCheck> checks;
  bool passed() const;
};

/// For a two-summand collection declared 2-rigid: verifies 2-rigidity, that
/// presilting fails (and where), builds E from the nonzero extension class in
/// Hom(T_a, Sigma^2 T_b), certifies E outside F_2 by the label obstruction,
/// rebuilds the triangle T_b -> E -> Sigma^{-1} T_a -> Sigma T_b from a map
/// T_b -> E, checks that F_2 is not extension-closed and that
/// T_b (+) Sigma^{-1} T_a lies in F_2. When `x` is given it must be
/// isomorphic to E.
ExampleReport verify_a3_example(SiltingCollection m, const std::optional<ProjComplex>& x, std::uint64_t seed);

}  // namespace k0s::silting

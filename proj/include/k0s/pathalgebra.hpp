// Finite-dimensional algebras k Q / I with monomial relations.
//
// Conventions (used by every downstream module):
//   * Paths compose right to left, like maps: the word ["beta", "alpha"] is
//     the path beta * alpha, which runs alpha first. A path from vertex i to
//     vertex j starts at i and ends at j.
//   * Modules are LEFT modules and P_i = Lambda e_i. A morphism P_i -> P_j is
//     right multiplication by an element of e_i Lambda e_j, i.e. by a linear
//     combination of paths from j to i. Hence
//         dim Hom(P_i, P_j) = #{nonzero paths j -> i},
//     and for f : P_i -> P_j, g : P_j -> P_k the composite g o f is right
//     multiplication by (path of f) * (path of g).
//   For A3 = (1 -alpha-> 2 -beta-> 3, beta alpha = 0) this makes alpha a map
//   P_2 -> P_1, matching the two-term complex P_2 -> P_1 given by multiplying
//   alpha from the right.
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "k0s/exactmath.hpp"

namespace k0s::pathalg {

using exactmath::Field;
using exactmath::Scalar;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ArrowSpec {
  std::string name;
  std::string from;
  std::string to;
};

/// Raw, unchecked input as read from an algebra file.
struct Presentation {
  std::vector<std::string> vertices;
  std::vector<ArrowSpec> arrows;
  std::vector<std::vector<std::string>> relations;  // arrow names, composition order
};

struct Arrow {
  std::string name;
  std::size_t from = 0;
  std::size_t to = 0;
};

struct Path {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<std::size_t> word;  // arrow indices in composition order
  std::size_t length() const { return word.size(); }
};

/// Linear combination of nonzero paths sharing a source and a target.
/// coefficients[k] belongs to the k-th path of the basis slot (source, target).
struct AlgebraElement {
  std::size_t source = 0;
  std::size_t target = 0;
  std::vector<Scalar> coefficients;

  bool is_zero() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Scalar& s);
  AlgebraElement operator-() const;
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, const Scalar& s) { return a *= s; }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;
};

struct LoadOptions {
  Field field{};
  std::size_t path_bound = 10'000;
};

class Algebra {
 public:
  /// Validates the presentation and enumerates its nonzero paths.
  /// Throws AlgebraError for dangling references, short or non-composable
  /// relations, and when the enumeration exceeds options.path_bound.
  static std::shared_ptr<const Algebra> load(const Presentation& p, LoadOptions options = {});

  Field field() const { return field_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const std::string& vertex_label(std::size_t v) const { return vertices_.at(v); }
  std::size_t vertex_index(const std::string& label) const;
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const Presentation& presentation() const { return presentation_; }

  std::size_t path_count() const { return paths_.size(); }
  const Path& path(std::size_t id) const { return paths_.at(id); }
  std::string path_name(std::size_t id) const;
  /// Path id for an arrow-name word (composition order); empty word needs `at`.
  std::optional<std::size_t> find_path(const std::vector<std::string>& word,
                                       std::optional<std::size_t> at = std::nullopt) const;

  /// Ordered nonzero paths from i to j (the trivial path e_i first when i == j).
  std::span<const std::size_t> slot(std::size_t i, std::size_t j) const;
  /// Position of a path inside its slot.
  std::size_t slot_position(std::size_t path_id) const { return slot_pos_.at(path_id); }
  std::size_t trivial_path(std::size_t v) const { return trivial_.at(v); }

  /// dim Hom(P_from, P_to) = number of nonzero paths to -> from.
  std::size_t hom_dimension(std::size_t from, std::size_t to) const { return slot(to, from).size(); }

  /// Product of two paths (a after b), nullopt when zero or not composable.
  std::optional<std::size_t> path_product(std::size_t a, std::size_t b) const;

  AlgebraElement zero(std::size_t source, std::size_t target) const;
  AlgebraElement unit(std::size_t path_id, const Scalar& coeff) const;
  AlgebraElement identity(std::size_t v) const { return unit(trivial_path(v), Scalar(1, field_)); }

  /// a * b: b runs first. Throws AlgebraError when target(b) != source(a).
  AlgebraElement compose(const AlgebraElement& a, const AlgebraElement& b) const;

  /// Composite g o f of module maps (see the header comment): f * g.
  AlgebraElement compose_maps(const AlgebraElement& g, const AlgebraElement& f) const {
    return compose(f, g);
  }

  /// Coefficient of the trivial path; only meaningful when source == target.
  Scalar identity_coefficient(const AlgebraElement& a) const;

  /// Inverse of c e_v + r with c != 0 and r radical, in End(P_v).
  AlgebraElement local_inverse(const AlgebraElement& a) const;

  std::string format(const AlgebraElement& a) const;

 private:
  Algebra() = default;

  Field field_{};
  Presentation presentation_;
  std::vector<std::string> vertices_;
  std::map<std::string, std::size_t> vertex_index_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<std::size_t>> relations_;
  std::vector<Path> paths_;
  std::map<std::vector<std::size_t>, std::size_t> word_index_;  // nontrivial words only
  std::vector<std::size_t> trivial_;
  std::vector<std::vector<std::size_t>> slots_;  // index i * n + j
  std::vector<std::size_t> slot_pos_;
  std::vector<std::int32_t> product_table_;  // dense when small, else empty
};

}  // namespace k0s::pathalg

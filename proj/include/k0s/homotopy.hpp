// The bounded homotopy category K^b(proj Lambda).
//
// Grading is cohomological: d^n : X^n -> X^{n+1}. The suspension is
// (Sigma^k X)^n = X^{n+k} with differential (-1)^k d, and chain maps shift
// without a sign. The mapping cone of f : X -> Y is
//     cone(f)^n = X^{n+1} (+) Y^n,   d = [[-d_X, 0], [f, d_Y]],
// and a null homotopy h of a chain map phi satisfies phi = d h + h d.
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "k0s/exactmath.hpp"
#include "k0s/pathalgebra.hpp"

namespace k0s::homotopy {

using exactmath::Field;
using exactmath::FieldMatrix;
using exactmath::Scalar;
using pathalg::Algebra;
using pathalg::AlgebraElement;
using AlgebraPtr = std::shared_ptr<const Algebra>;

class HomotopyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Block of module maps (+)_s P_{source[s]} -> (+)_t P_{target[t]}.
/// Entry (t, s) is a map P_{source[s]} -> P_{target[t]}, stored as an element
/// of the path slot (target[t], source[s]).
class HomMatrix {
 public:
  HomMatrix() = default;
  static HomMatrix zero(const Algebra& alg, std::vector<std::size_t> source, std::vector<std::size_t> target);
  static HomMatrix identity(const Algebra& alg, const std::vector<std::size_t>& summands);
  /// Row-major entries; endpoints of each entry must match the summands.
  static HomMatrix from_entries(std::vector<std::size_t> source, std::vector<std::size_t> target,
                                std::vector<AlgebraElement> entries);

  const std::vector<std::size_t>& source() const { return source_; }
  const std::vector<std::size_t>& target() const { return target_; }
  std::size_t rows() const { return target_.size(); }
  std::size_t cols() const { return source_.size(); }

  const AlgebraElement& at(std::size_t t, std::size_t s) const { return entries_[t * source_.size() + s]; }
  AlgebraElement& at(std::size_t t, std::size_t s) { return entries_[t * source_.size() + s]; }

  bool is_zero() const;

  HomMatrix& operator+=(const HomMatrix& o);
  HomMatrix& operator-=(const HomMatrix& o);
  HomMatrix& operator*=(const Scalar& s);
  HomMatrix operator-() const;
  friend HomMatrix operator+(HomMatrix a, const HomMatrix& b) { return a += b; }
  friend HomMatrix operator-(HomMatrix a, const HomMatrix& b) { return a -= b; }
  friend HomMatrix operator*(HomMatrix a, const Scalar& s) { return a *= s; }
  friend bool operator==(const HomMatrix&, const HomMatrix&) = default;

 private:
  std::vector<std::size_t> source_;
  std::vector<std::size_t> target_;
  std::vector<AlgebraElement> entries_;
};

/// g o f
HomMatrix compose(const Algebra& alg, const HomMatrix& g, const HomMatrix& f);
HomMatrix block_diagonal(const Algebra& alg, const HomMatrix& a, const HomMatrix& b);
/// Rows/columns kept in the given order.
HomMatrix submatrix(const HomMatrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols);

/// Graded label: (degree, vertex) of one summand P_vertex.
using GradedLabel = std::pair<int, std::size_t>;

class ProjComplex {
 public:
  explicit ProjComplex(AlgebraPtr alg);
  /// Validates shapes and d o d == 0. Empty terms are dropped; differentials
  /// between absent terms must be absent.
  ProjComplex(AlgebraPtr alg, std::map<int, std::vector<std::size_t>> terms,
              std::map<int, HomMatrix> differentials);

  static ProjComplex stalk(AlgebraPtr alg, std::size_t vertex, int degree);
  static ProjComplex stalks(AlgebraPtr alg, const std::vector<std::size_t>& vertices, int degree);

  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const Algebra& algebra() const { return *alg_; }

  const std::map<int, std::vector<std::size_t>>& terms() const { return terms_; }
  const std::vector<std::size_t>& term(int n) const;
  /// d^n : X^n -> X^{n+1}; a zero matrix of the right shape when absent.
  HomMatrix differential(int n) const;
  const std::map<int, HomMatrix>& differentials() const { return diff_; }

  bool empty() const { return terms_.empty(); }
  int min_degree() const;
  int max_degree() const;
  /// max - min + 1, or 0 for the empty complex.
  int width() const;
  std::size_t summand_count() const;
  /// Sorted multiset of (degree, vertex).
  std::vector<GradedLabel> graded_labels() const;

  friend bool operator==(const ProjComplex& a, const ProjComplex& b);

 private:
  AlgebraPtr alg_;
  std::map<int, std::vector<std::size_t>> terms_;
  std::map<int, HomMatrix> diff_;
};

/// Components phi^n : X^n -> Y^{n+degree}; absent components are zero.
struct GradedMap {
  int degree = 0;
  std::map<int, HomMatrix> components;
};

using Homotopy = GradedMap;  // degree -1

class ChainMap {
 public:
  /// Validates shapes and d_Y f == f d_X in every degree.
  ChainMap(ProjComplex source, ProjComplex target, std::map<int, HomMatrix> components);

  static ChainMap zero(const ProjComplex& x, const ProjComplex& y);
  static ChainMap identity(const ProjComplex& x);

  const ProjComplex& source() const { return source_; }
  const ProjComplex& target() const { return target_; }
  const std::map<int, HomMatrix>& components() const { return comps_; }
  HomMatrix component(int n) const;
  bool is_zero() const;
  GradedMap as_graded() const { return GradedMap{0, comps_}; }

  ChainMap& operator+=(const ChainMap& o);
  ChainMap& operator-=(const ChainMap& o);
  ChainMap& operator*=(const Scalar& s);
  ChainMap operator-() const;
  friend ChainMap operator+(ChainMap a, const ChainMap& b) { return a += b; }
  friend ChainMap operator-(ChainMap a, const ChainMap& b) { return a -= b; }
  friend ChainMap operator*(ChainMap a, const Scalar& s) { return a *= s; }
  friend bool operator==(const ChainMap& a, const ChainMap& b);

 private:
  struct Unchecked {};
  ChainMap(Unchecked, ProjComplex source, ProjComplex target, std::map<int, HomMatrix> components);
  friend ChainMap compose(const ChainMap& g, const ChainMap& f);
  friend ChainMap shift(const ChainMap& f, int k);

  ProjComplex source_;
  ProjComplex target_;
  std::map<int, HomMatrix> comps_;
};

/// g o f
ChainMap compose(const ChainMap& g, const ChainMap& f);

ProjComplex shift(const ProjComplex& x, int k);
ChainMap shift(const ChainMap& f, int k);
/// Sigma^k of a null homotopy, so that shift(f, k) == d h' + h' d.
Homotopy shift_homotopy(const Homotopy& h, int k);

Homotopy zero_homotopy();
Homotopy scale(const Homotopy& h, const Scalar& s);
Homotopy add(const Homotopy& a, const Homotopy& b);
/// g o h o f for chain maps f, g and a graded map h (any degree).
GradedMap sandwich(const Algebra& alg, const ChainMap& g, const GradedMap& h, const ChainMap& f);

/// d_Y h + h d_X as a map X -> Y.
GradedMap homotopy_boundary(const ProjComplex& x, const ProjComplex& y, const Homotopy& h);
/// True when f == d h + h d exactly.
bool is_null_homotopy(const ChainMap& f, const Homotopy& h);
std::optional<Homotopy> find_null_homotopy(const ChainMap& f);

// --- sums ------------------------------------------------------------------

ProjComplex direct_sum(const AlgebraPtr& alg, const std::vector<ProjComplex>& xs);
/// The map x -> (+)_k target(maps[k]) with components maps[k].
ChainMap stack_targets(const ProjComplex& x, const std::vector<ChainMap>& maps);
/// Canonical inclusion of summand `index` into direct_sum(xs).
ChainMap sum_inclusion(const std::vector<ProjComplex>& xs, std::size_t index);
ChainMap sum_projection(const std::vector<ProjComplex>& xs, std::size_t index);

// --- triangles ---------------------------------------------------------------

/// X -a-> Y -b-> Z -c-> Sigma X, with null homotopies for b o a, c o b and
/// Sigma(a) o c.
struct Triangle {
  ChainMap a;
  ChainMap b;
  ChainMap c;
  Homotopy h_ba;
  Homotopy h_cb;
  Homotopy h_ac;

  const ProjComplex& first() const { return a.source(); }
  const ProjComplex& second() const { return b.source(); }
  const ProjComplex& third() const { return c.source(); }

  /// Checks shapes, Z -> Sigma X, and every witness. Throws HomotopyError.
  void verify() const;
};

struct Cone {
  ProjComplex complex;
  Triangle triangle;  // X -f-> Y -> cone(f) -> Sigma X
};

Cone cone(const ChainMap& f);
/// (a, b, c) -> (b, c, -Sigma a)
Triangle rotate(const Triangle& t);
/// (a, b, c) -> (-Sigma^{-1} c, a, b)
Triangle rotate_back(const Triangle& t);

// --- hom spaces ----------------------------------------------------------------

/// Flattening of degree-p graded maps X -> Y into coordinate vectors.
class GradedLayout {
 public:
  GradedLayout(const ProjComplex& x, const ProjComplex& y, int degree);

  struct Block {
    int n;  // source degree
    std::size_t t, s;
    std::size_t offset;
    std::size_t size;
  };

  std::size_t size() const { return size_; }
  int degree() const { return degree_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t offset(int n, std::size_t t, std::size_t s) const;

  std::vector<Scalar> flatten(const GradedMap& m) const;
  GradedMap unflatten(const FieldMatrix& column_vector, std::size_t column = 0) const;

 private:
  const ProjComplex* x_;
  const ProjComplex* y_;
  int degree_;
  std::size_t size_ = 0;
  std::vector<Block> blocks_;
  std::map<std::tuple<int, std::size_t, std::size_t>, std::size_t> index_;
};

/// Matrix of phi -> d_Y phi - (-1)^p phi d_X from degree-p maps to degree-(p+1) maps.
FieldMatrix hom_complex_differential(const ProjComplex& x, const ProjComplex& y, int degree);

/// All chain maps X -> Y (a basis of the cycle space).
std::vector<ChainMap> chain_map_basis(const ProjComplex& x, const ProjComplex& y);

struct HomSpace {
  std::vector<ChainMap> basis;  // representatives of a basis of Hom_K(X, Y)
  std::size_t cycles_dimension = 0;
  std::size_t boundaries_dimension = 0;
  std::size_t dimension() const { return basis.size(); }
};

HomSpace hom_space(const ProjComplex& x, const ProjComplex& y);
std::size_t hom_dimension(const ProjComplex& x, const ProjComplex& y);

// --- minimal forms ---------------------------------------------------------------

/// X' minimal with to_min : X -> X', from_min : X' -> X,
/// to_min o from_min == id exactly and id - from_min o to_min == d h + h d.
struct MinimalForm {
  ProjComplex complex;
  ChainMap to_min;
  ChainMap from_min;
  Homotopy homotopy;
};

bool is_minimal(const ProjComplex& x);
MinimalForm minimal_reduce(const ProjComplex& x);
/// Minimal complex only, without the equivalence data.
ProjComplex minimal_complex(const ProjComplex& x);
bool is_zero_object(const ProjComplex& x);

enum class IsoVerdict { iso, not_iso, unknown };
std::string to_string(IsoVerdict v);

struct IsoOptions {
  std::size_t trials = 32;
  std::uint64_t seed = 0x5eed;
};

IsoVerdict iso_test(const ProjComplex& x, const ProjComplex& y, IsoOptions options = {});

std::string describe(const ProjComplex& x);

/// Process-wide counts of complexes built from terms and differentials, and
/// of those whose d o d == 0 check completed.
struct ConstructionStats {
  std::uint64_t complexes = 0;
  std::uint64_t square_checks = 0;
};
ConstructionStats construction_stats();

/// Dimension vectors of H^n(X) as a complex of left modules: entry w of
/// degree n is dim e_w H^n. Degrees with zero cohomology are omitted.
std::map<int, std::vector<std::size_t>> cohomology_dimensions(const ProjComplex& x);

}  // namespace k0s::homotopy

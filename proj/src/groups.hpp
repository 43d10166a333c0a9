/** @file groups.hpp
 *  @brief Finite groups given by exact matrices, closed by breadth-first search.
 *
 *  Three element kinds are supported: linear 2x2 matrices (GL2), projective 3x3
 *  matrices (PGL3) and elements of (PGL2 x PGL2) : Z/2 acting on P1 x P1, where the
 *  swap bit sends (x, y) to (h1 y, h2 x).
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "cyclotomic.hpp"
#include "group_spec.hpp"

namespace ifp::groups {

using cyclo::CycloNum;
using cyclo::Field;
using cyclo::Matrix;

enum class Kind { Linear2, Proj3, Wreath };
const char* kind_name(Kind k);

constexpr std::size_t kDefaultOrderCap = 10000;
constexpr unsigned kDefaultConductorCap = 240;
constexpr std::size_t kTableLimit = 4096;

/** Projective class of an invertible matrix, remembered through a finite-order lift. */
class ProjMatrix {
 public:
  ProjMatrix() = default;
  explicit ProjMatrix(Matrix linear);

  const Matrix& linear() const { return linear_; }
  const Matrix& canonical() const { return canonical_; }
  std::size_t size() const { return linear_.rows(); }
  bool is_identity() const { return canonical_.is_identity(); }
  ProjMatrix coerce(const Field& f) const;
  /** Image of a point of P^(n-1), projectively normalized. */
  std::vector<CycloNum> apply(const std::vector<CycloNum>& v) const;

  friend ProjMatrix operator*(const ProjMatrix& a, const ProjMatrix& b) { return ProjMatrix(a.linear_ * b.linear_); }
  friend bool operator==(const ProjMatrix& a, const ProjMatrix& b) { return a.canonical_ == b.canonical_; }
  std::size_t hash() const { return canonical_.hash(); }

 private:
  Matrix linear_;
  Matrix canonical_;
};

/** Symmetric square of a 2x2 class, acting on binary quadratics. */
ProjMatrix sym2_rep(const ProjMatrix& m);

struct WreathElement {
  ProjMatrix first;
  ProjMatrix second;
  bool swap = false;
};

class GroupElement {
 public:
  static GroupElement linear2(Matrix m);
  static GroupElement proj3(ProjMatrix m);
  static GroupElement wreath(ProjMatrix first, ProjMatrix second, bool swap);
  static GroupElement identity(Kind k, const Field& f);

  Kind kind() const;
  const Field& field() const;
  const Matrix& as_linear2() const { return std::get<Matrix>(d_); }
  const ProjMatrix& as_proj3() const { return std::get<ProjMatrix>(d_); }
  const WreathElement& as_wreath() const { return std::get<WreathElement>(d_); }
  /** 3x3 linear representative acting on P2; Linear2 elements embed as diag(g, 1). */
  Matrix p2_matrix() const;

  bool is_identity() const;
  GroupElement coerce(const Field& f) const;
  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  friend bool operator==(const GroupElement& a, const GroupElement& b);
  std::size_t hash() const;
  std::string to_string() const;

 private:
  std::variant<Matrix, ProjMatrix, WreathElement> d_;
};

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const { return g.hash(); }
};

class FiniteGroup {
 public:
  Kind kind() const { return kind_; }
  const Field& field() const { return *field_; }
  unsigned conductor() const { return field_->conductor(); }
  std::size_t order() const { return elements_.size(); }
  const GroupElement& element(std::size_t i) const { return elements_[i]; }
  const std::vector<GroupElement>& elements() const { return elements_; }
  /** Indices of the (distinct) generators. */
  const std::vector<std::size_t>& generators() const { return gens_; }

  std::size_t mul(std::size_t a, std::size_t b) const;
  std::size_t inverse(std::size_t a) const { return inv_[a]; }
  unsigned element_order(std::size_t a) const { return ord_[a]; }
  /** Smallest m with lift^m = I (Linear2, Proj3); lcm over factors of untwisted Wreath elements, else 0. */
  unsigned lift_order(std::size_t a) const { return lift_[a]; }
  std::optional<std::size_t> find(const GroupElement& g) const;
  bool has_table() const { return !table_.empty(); }

  /** Element i equals element(parent(i)) * generator(via(i)); parent(0) = 0. */
  std::size_t word_parent(std::size_t i) const { return parent_[i]; }
  std::size_t word_generator(std::size_t i) const { return via_[i]; }
  std::size_t right_mul_generator(std::size_t i, std::size_t gen) const { return rightmul_[i * gens_.size() + gen]; }

  /** Extend generator permutations of a finite G-set to every element (left action). */
  std::vector<std::vector<std::uint32_t>> extend_action(const std::vector<std::vector<std::uint32_t>>& generator_perms) const;

 private:
  friend FiniteGroup close_under_multiplication(std::vector<GroupElement>, std::size_t, unsigned);
  void reindex();

  Kind kind_ = Kind::Linear2;
  const Field* field_ = nullptr;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> gens_;
  std::vector<std::size_t> parent_, via_;
  std::vector<std::uint32_t> rightmul_;
  std::vector<std::uint32_t> table_;
  std::vector<std::size_t> inv_;
  std::vector<unsigned> ord_;
  std::vector<unsigned> lift_;
  std::unordered_map<GroupElement, std::size_t, ElementHash> index_;
};

/** BFS closure. Enlarges the working conductor to contain every lift eigenvalue. */
FiniteGroup close_under_multiplication(std::vector<GroupElement> generators, std::size_t cap = kDefaultOrderCap,
                                       unsigned conductor_cap = kDefaultConductorCap);

FiniteGroup build(const spec::GroupSpec& s, std::size_t cap = kDefaultOrderCap,
                  unsigned conductor_cap = kDefaultConductorCap);

/** Finite-order 2x2 lifts of the generators of a spec read as a subgroup of PGL2. */
std::vector<Matrix> pgl2_generators(const spec::GroupSpec& s);

/** Closure of 2x2 classes, stored as Wreath elements (h, e; 0). */
FiniteGroup pgl2_group(const spec::GroupSpec& s, std::size_t cap = kDefaultOrderCap);

// Queries on subsets given by sorted element indices.
std::vector<std::size_t> generated_subgroup(const FiniteGroup& g, const std::vector<std::size_t>& gens);
std::vector<std::size_t> all_indices(const FiniteGroup& g);
bool is_abelian(const FiniteGroup& g, const std::vector<std::size_t>& members);
bool is_abelian(const FiniteGroup& g);
bool is_cyclic(const FiniteGroup& g, const std::vector<std::size_t>& members);
bool is_cyclic(const FiniteGroup& g);
std::vector<std::size_t> center(const FiniteGroup& g);
std::vector<std::pair<std::size_t, std::size_t>> commuting_pairs(const FiniteGroup& g);
/** Element of maximal order in a cyclic subset. */
std::size_t cyclic_generator(const FiniteGroup& g, const std::vector<std::size_t>& members);

struct FactorIntersections {
  std::size_t order1;  ///< |G cap (PGL2 x 1)|
  std::size_t order2;  ///< |G cap (1 x PGL2)|
  std::size_t untwisted_index;
};
FactorIntersections factor_intersections(const FiniteGroup& g);

}  // namespace ifp::groups

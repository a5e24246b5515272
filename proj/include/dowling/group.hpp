#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dowling {

/// Element of a finite group, 0-based. The identity is always 0.
using ElementId = int;

inline constexpr int kDefaultOrderBound = 64;

/// A subgroup stored as its sorted list of element ids.
///
/// Subgroups compare by (order, elements), which is the canonical order used
/// by enumerate_subgroups and everything downstream.
class Subgroup {
public:
  Subgroup() = default;
  explicit Subgroup(std::vector<ElementId> elements);

  const std::vector<ElementId>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  bool contains(ElementId g) const;
  bool is_subset_of(const Subgroup& other) const;

  bool operator==(const Subgroup& other) const = default;
  std::strong_ordering operator<=>(const Subgroup& other) const;

private:
  std::vector<ElementId> elements_;
};

struct Coset {
  ElementId representative;  // smallest element id of the coset
  std::vector<ElementId> members;
};

class FiniteGroup {
public:
  /// Builds a group from a Cayley table (row i, column j = id of g_i * g_j).
  /// Validates closure, identity at id 0, inverses and associativity.
  static FiniteGroup from_cayley(const std::vector<std::vector<int>>& table,
                                 int order_bound = kDefaultOrderBound);

  /// Z/d1 x ... x Z/dm. Element ids are mixed-radix tuples, first factor most
  /// significant: id(c1,...,cm) = ((c1*d2 + c2)*d3 + c3)...
  static FiniteGroup from_invariant_factors(const std::vector<int>& factors,
                                            int order_bound = kDefaultOrderBound);

  int order() const { return order_; }
  ElementId identity() const { return 0; }
  ElementId mul(ElementId a, ElementId b) const { return mul_[static_cast<std::size_t>(a * order_ + b)]; }
  ElementId inv(ElementId a) const { return inv_[static_cast<std::size_t>(a)]; }
  ElementId conj(ElementId g, ElementId h) const { return mul(mul(g, h), inv(g)); }  // g h g^-1

  bool is_abelian() const { return abelian_; }
  const std::optional<std::vector<int>>& invariant_factors() const { return factors_; }

  /// Mixed-radix tuple of an element; only for groups built from invariant factors.
  std::vector<int> element_tuple(ElementId g) const;
  ElementId element_from_tuple(std::span<const int> tuple) const;
  /// "(1,0)" for invariant-factor groups, "g5" otherwise, "e" for the identity.
  std::string element_name(ElementId g) const;

  Subgroup generated_by(std::span<const ElementId> generators) const;
  Subgroup trivial_subgroup() const { return Subgroup({0}); }
  Subgroup whole() const;
  bool is_subgroup(const std::vector<ElementId>& elements) const;
  /// A small generating set (greedy), used where a generating set suffices.
  std::vector<ElementId> generators_of(const Subgroup& h) const;

private:
  FiniteGroup() = default;
  void finish_construction();

  int order_ = 0;
  std::vector<int> mul_;
  std::vector<int> inv_;
  std::optional<std::vector<int>> factors_;
  bool abelian_ = false;
};

/// All subgroups, sorted by (order, elements).
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group, int order_bound = kDefaultOrderBound);

/// g H g^-1.
Subgroup conjugate_subgroup(const FiniteGroup& group, const Subgroup& h, ElementId g);

/// Left cosets gK sorted by representative; the coset of the identity comes first.
std::vector<Coset> left_cosets(const FiniteGroup& group, const Subgroup& k);

/// Canonical (smallest) representative of the left coset gK.
ElementId coset_representative(const FiniteGroup& group, const Subgroup& k, ElementId g);

/// true iff some conjugate g P g^-1 is contained in Q.
bool conjugate_contained(const FiniteGroup& group, const Subgroup& p, const Subgroup& q);

struct ConjClass {
  Subgroup representative;       // smallest member in canonical order
  std::vector<Subgroup> members;  // sorted
};

/// Conjugacy classes of a family of subgroups (closed under conjugation),
/// ordered by [P] <= [Q] iff some conjugate of P lies in Q.
class ConjClassPoset {
public:
  ConjClassPoset(const FiniteGroup& group, const std::vector<Subgroup>& subgroups);

  const std::vector<ConjClass>& classes() const { return classes_; }
  /// Index of the class containing h; throws InputError if h is not in the family.
  std::size_t class_of(const Subgroup& h) const;
  bool leq(std::size_t a, std::size_t b) const { return order_[a * classes_.size() + b]; }

private:
  std::vector<ConjClass> classes_;
  std::vector<char> order_;
};

ConjClassPoset subgroup_conj_classes(const FiniteGroup& group, int order_bound = kDefaultOrderBound);

}  // namespace dowling

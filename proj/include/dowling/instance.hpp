#pragma once

#include "dowling/group.hpp"
#include "dowling/linalg.hpp"
#include "dowling/representation.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dowling {

struct Bounds {
  int group_order = kDefaultOrderBound;
  std::size_t lattice = 1'000'000;
  std::size_t nested = 10'000'000;
  std::size_t forests = 10'000'000;
};

/// The closed subgroups (fixed points of phi) and phi itself on every subgroup.
struct ClosedSubgroupSet {
  std::vector<Subgroup> members;  // canonical order: {e} first, G last
  std::map<Subgroup, Subgroup> closure_map;

  /// Position of a closed subgroup in `members`; throws InputError if not closed.
  std::size_t index_of(const Subgroup& h) const;
  bool is_closed(const Subgroup& h) const;
};

/// phi(H): the largest subgroup with the same fixed space as H, i.e. the
/// pointwise stabilizer of Fix(H).
Subgroup closure_phi(const FiniteGroup& group, const Representation& rep, const Subgroup& h);

ClosedSubgroupSet closed_subgroups(const FiniteGroup& group, const Representation& rep,
                                   int order_bound = kDefaultOrderBound);

/// The triple (n, G, V) plus everything derived from it that the arrangement,
/// forest and series engines share. Immutable after construction.
class ProblemInstance {
public:
  ProblemInstance(int n, FiniteGroup group, Representation rep, Bounds bounds = {},
                  std::map<Subgroup, std::string> names = {});

  int n() const { return n_; }
  const FiniteGroup& group() const { return group_; }
  const Representation& rep() const { return rep_; }
  const Bounds& bounds() const { return bounds_; }
  const std::map<Subgroup, std::string>& names() const { return names_; }

  std::size_t dim_v() const { return rep_.dim(); }
  /// Rational coordinates of V^n.
  std::size_t ambient_dim() const { return static_cast<std::size_t>(n_) * rep_.realized_dim(); }
  std::size_t complex_dim(const Subspace& s) const { return rep_.complex_dim(s); }

  const std::vector<Subgroup>& all_subgroups() const { return subgroups_; }
  const ClosedSubgroupSet& closed() const { return closed_; }
  std::size_t closed_count() const { return closed_.members.size(); }
  const Subgroup& closed_subgroup(std::size_t k) const { return closed_.members[k]; }
  const Subspace& closed_fix(std::size_t k) const { return closed_fix_[k]; }
  std::size_t trivial_index() const { return 0; }
  std::size_t whole_index() const { return closed_.members.size() - 1; }
  /// Canonical left coset representatives of closed subgroup k, identity first.
  const std::vector<ElementId>& coset_reps(std::size_t k) const { return coset_reps_[k]; }
  ElementId coset_rep(std::size_t k, ElementId g) const {
    return coset_rep_table_[k][static_cast<std::size_t>(g)];
  }

  /// Conjugacy classes of closed subgroups and their order.
  const ConjClassPoset& closed_classes() const { return classes_; }
  std::size_t class_index(std::size_t k) const { return class_of_[k]; }
  /// [P] <= [Q] for closed subgroup indices.
  bool class_leq(std::size_t p, std::size_t q) const { return classes_.leq(class_of_[p], class_of_[q]); }
  /// true iff a^-1 P a is contained in Q (closed subgroup indices).
  bool conjugate_into(std::size_t p, ElementId a, std::size_t q) const;

  std::string subgroup_name(const Subgroup& h) const;
  std::string closed_name(std::size_t k) const { return subgroup_name(closed_.members[k]); }

  ProblemInstance with_n(int n) const;

private:
  int n_;
  FiniteGroup group_;
  Representation rep_;
  Bounds bounds_;
  std::map<Subgroup, std::string> names_;
  std::vector<Subgroup> subgroups_;
  ClosedSubgroupSet closed_;
  std::vector<Subspace> closed_fix_;
  std::vector<std::vector<ElementId>> coset_reps_;
  std::vector<std::vector<ElementId>> coset_rep_table_;
  ConjClassPoset classes_;
  std::vector<std::size_t> class_of_;
};

}  // namespace dowling

#pragma once

#include "dowling/arrangement.hpp"
#include "dowling/instance.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace dowling {

struct ForestVertex {
  int parent = -1;        // -1 for roots (and fallen leaves)
  int leaf = 0;           // leaf label 1..n, or 0 for internal vertices
  std::size_t label = 0;  // closed subgroup index, internal vertices only
  ElementId edge = 0;     // coset representative (of the parent's subgroup) on the edge to the parent

  bool is_leaf() const { return leaf != 0; }
  auto operator<=>(const ForestVertex&) const = default;
};

/// Oriented rooted forest with leaves numbered 1..n, internal vertices
/// labelled by closed subgroups and edges labelled by cosets of the parent's
/// label. Canonical form: trees by smallest leaf, children by smallest
/// descendant leaf, vertices in preorder.
class LabelledForest {
public:
  LabelledForest() = default;
  LabelledForest(int n, std::vector<ForestVertex> vertices);

  int n() const { return n_; }
  const std::vector<ForestVertex>& vertices() const { return vertices_; }
  std::vector<int> children(int v) const;
  std::vector<int> roots() const;
  std::vector<int> fallen_leaves() const;  // leaf labels
  /// Leaf labels below v, sorted.
  std::vector<int> leaves_below(int v) const;
  int min_leaf(int v) const;

  /// Throws MalformedForest on cycles, duplicate/missing leaf labels, childless
  /// internal vertices or leaves with children.
  void check_structure() const;
  LabelledForest canonical() const;

  bool operator==(const LabelledForest& other) const = default;
  auto operator<=>(const LabelledForest& other) const = default;

private:
  int n_ = 0;
  std::vector<ForestVertex> vertices_;
};

enum class RuleSet { General, Abelian };

struct ForestCheck {
  bool valid = true;
  int rule = 0;  // first violated rule, 0 when valid (and for "no internal vertex")
  std::string message;
};

/// Rules (1)-(5) (General) or with the abelian forms of (2) and (4).
ForestCheck validate_forest(const ProblemInstance& inst, const LabelledForest& f, RuleSet rules = RuleSet::General);

/// One block per internal vertex: leaves below it, coset of leaf i = product of
/// edge cosets on the path down (lowest edge leftmost).
std::vector<Block> forest_to_blocks(const ProblemInstance& inst, const LabelledForest& f);
NestedSet forest_to_nested(const BuildingSet& bs, const LabelledForest& f);

/// Inverse of forest_to_nested. Throws NotRealizable if the result does not map back to s.
LabelledForest nested_to_forest(const BuildingSet& bs, const NestedSet& s);

/// All forests via nested sets and nested_to_forest, canonical order.
std::vector<LabelledForest> enumerate_forests(const BuildingSet& bs);
/// All forests by direct recursive generation from the labelling rules, canonical order.
std::vector<LabelledForest> generate_forests(const ProblemInstance& inst);

struct Subforest {
  std::size_t label = 0;
  int trees = 0;            // H-trees: H-vertices whose parent is not labelled H
  int vertices = 0;
  int labelled_leaves = 0;  // original leaves hanging from H-vertices
  int glued_leaves = 0;     // children that are vertices with a different label
};

struct ForestDecomposition {
  int components = 0;  // trees of the forest, fallen leaves included
  int fallen = 0;
  std::map<std::size_t, Subforest> by_label;
  bool has_whole_group = false;  // some vertex labelled G
};

ForestDecomposition decompose_forest(const ProblemInstance& inst, const LabelledForest& f);

/// Bracket notation, e.g. "G(e:<(1,0)>(e:1,(0,1):3)) | 2".
std::string forest_to_string(const ProblemInstance& inst, const LabelledForest& f);

}  // namespace dowling

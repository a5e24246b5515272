#pragma once

#include "dowling/instance.hpp"
#include "dowling/linalg.hpp"

#include <compare>
#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

namespace dowling {

/// H(i, j, g) = { v : v_j = rho(g) v_i } (i < j), or { v : v_i = rho(g) v_i } (i == j, g != e).
struct ArrangementSubspace {
  int i;
  int j;
  ElementId g;
  Subspace space;
};

std::vector<ArrangementSubspace> raw_arrangement(const ProblemInstance& inst);

/// Intersection lattice of the arrangement, ordered by reverse inclusion.
/// Element 0 is the ambient space V^n (the bottom).
class IntersectionLattice {
public:
  const std::vector<Subspace>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  /// Elements covering i (strictly smaller subspaces, maximal among those).
  const std::vector<std::size_t>& covers(std::size_t i) const { return covers_[i]; }
  /// Index of a subspace; throws InputError when absent.
  std::size_t index_of(const Subspace& s) const;
  /// i <= j in the lattice, i.e. elements[i] contains elements[j].
  bool leq(std::size_t i, std::size_t j) const { return contains(elements_[i], elements_[j]); }

private:
  friend IntersectionLattice intersection_lattice(const ProblemInstance& inst);
  std::vector<Subspace> elements_;
  std::vector<std::vector<std::size_t>> covers_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> index_;
};

/// Closure of raw_arrangement under intersection plus V^n. Throws
/// SizeBoundExceeded past inst.bounds().lattice elements.
IntersectionLattice intersection_lattice(const ProblemInstance& inst);

/// H^K(i_1^{g_1 K}, ..., i_k^{g_k K}) in normal form: g_1 = e, every g_r a
/// canonical (smallest) coset representative of K. Indices are 1-based.
struct Block {
  std::size_t k = 0;  // index into inst.closed().members
  std::vector<int> indices;
  std::vector<ElementId> cosets;

  auto operator<=>(const Block&) const = default;
};

/// Brings H^K(i_1^{g_1 K}, ...) with arbitrary K-coset representatives to normal
/// form by conjugating K with g_1 (H^K(i_1^{gK},...) = H^{K^g}(i_1^{eK^g}, i_r^{g_r g^-1 K^g}, ...)).
Block normalize_block(const ProblemInstance& inst, const Subgroup& k, std::vector<int> indices,
                      std::vector<ElementId> cosets);

Subspace block_subspace(const ProblemInstance& inst, const Block& b);

/// All building-set blocks, sorted; block_subspace is injective on the result.
std::vector<Block> building_blocks(const ProblemInstance& inst);

/// subspace(b1) contains subspace(b2), decided group-theoretically by the three
/// index/fixed-space/coset conditions.
bool block_leq(const ProblemInstance& inst, const Block& b1, const Block& b2);

/// Comparable, or disjoint indices and not both labelled G.
bool blocks_compatible(const ProblemInstance& inst, const Block& b1, const Block& b2);

std::string block_name(const ProblemInstance& inst, const Block& b);

/// Blocks of an instance with cached subspaces and pairwise relations.
class BuildingSet {
public:
  explicit BuildingSet(const ProblemInstance& inst);

  const ProblemInstance& instance() const { return *inst_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  const Subspace& subspace(std::size_t i) const { return spaces_[i]; }
  std::size_t index_of(const Block& b) const;
  /// Index of the block with this subspace, or npos.
  std::size_t find_subspace(const Subspace& s) const;
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * blocks_.size() + b]; }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }
  bool compatible(std::size_t a, std::size_t b) const { return compatible_[a * blocks_.size() + b]; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  const ProblemInstance* inst_;
  std::vector<Block> blocks_;
  std::vector<Subspace> spaces_;
  std::unordered_map<Subspace, std::size_t, SubspaceHash> by_space_;
  std::vector<char> leq_;
  std::vector<char> compatible_;
};

/// A nested set as sorted block indices into a BuildingSet.
using NestedSet = std::vector<std::size_t>;

/// Full definition: every antichain of size >= 2 has codim of its intersection
/// equal to the sum of codims, and that intersection is not a block subspace.
bool is_nested(const BuildingSet& bs, const NestedSet& s);
/// Pairwise compatibility only.
bool is_pairwise_compatible(const BuildingSet& bs, const NestedSet& s);

enum class NestedSearch {
  Compatible,  // prune with the pairwise block relations, then verify antichains
  Subspaces,   // antichain verification by linear algebra only
};

/// All nonempty nested sets, lexicographic in block index. Throws
/// SizeBoundExceeded past inst.bounds().nested.
std::vector<NestedSet> enumerate_nested_sets(const BuildingSet& bs, NestedSearch search = NestedSearch::Compatible);

}  // namespace dowling

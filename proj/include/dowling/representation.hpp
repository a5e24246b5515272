#pragma once

#include "dowling/group.hpp"
#include "dowling/linalg.hpp"

#include <utility>
#include <vector>

namespace dowling {

/// A faithful representation rho: G -> GL(V) without trivial summand, held as
/// exact rational matrices for every group element.
///
/// Matrix input is used verbatim. Character input (abelian groups given by
/// invariant factors) is diagonal over C; a character of order m is realized
/// over Q on Q(zeta_m) by the companion matrix of the m-th cyclotomic
/// polynomial, so it occupies phi(m) rational coordinates. Complex dimensions
/// are recovered with complex_dim().
class Representation {
public:
  /// Generator images; extended to all of G by multiplicativity and verified
  /// to be a faithful homomorphism with Fix(G) = 0.
  static Representation from_matrices(const FiniteGroup& group,
                                      const std::vector<std::pair<ElementId, RMatrix>>& generators);
  /// One tuple (c1..cm) per coordinate of V: generator i of Z/d_i acts on that
  /// coordinate by zeta_{d_i}^{c_i}.
  static Representation from_characters(const FiniteGroup& group, const std::vector<std::vector<int>>& characters);

  bool is_character() const { return !characters_.empty(); }
  /// dim_C V.
  std::size_t dim() const { return complex_dim_; }
  /// Number of rational coordinates used for V.
  std::size_t realized_dim() const { return coord_character_.size(); }
  const RMatrix& matrix(ElementId g) const { return matrices_[static_cast<std::size_t>(g)]; }
  const std::vector<std::vector<int>>& characters() const { return characters_; }

  /// Fixed subspace of H inside V (realized coordinates).
  /// Characters: coordinate-wise integer test. Matrices: kernels of rho(h)-I over generators.
  Subspace fix(const FiniteGroup& group, const Subgroup& h) const;
  /// Same subspace, always through kernels of rho(h)-I over all h in H.
  Subspace fix_by_kernels(const Subgroup& h) const;

  /// dim_C of a subspace of V^k (any k) built from rho; columns are read modulo realized_dim().
  std::size_t complex_dim(const Subspace& s) const;

  /// true iff character `coord` is trivial on g (characters only).
  bool character_trivial(std::size_t character, const FiniteGroup& group, ElementId g) const;

private:
  void validate(const FiniteGroup& group) const;

  std::vector<RMatrix> matrices_;
  std::vector<std::vector<int>> characters_;
  std::vector<std::size_t> coord_character_;  // realized coordinate -> character index (identity for matrices)
  std::vector<std::size_t> character_weight_;  // phi(order) per character (1 for matrices)
  std::size_t complex_dim_ = 0;
};

/// Coefficients (constant term first) of the m-th cyclotomic polynomial.
std::vector<long> cyclotomic_polynomial(int m);

/// fix_subspace(G, rep, H).
inline Subspace fix_subspace(const FiniteGroup& group, const Representation& rep, const Subgroup& h) {
  return rep.fix(group, h);
}

}  // namespace dowling

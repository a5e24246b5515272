#pragma once

#include "dowling/arrangement.hpp"
#include "dowling/forest.hpp"
#include "dowling/instance.hpp"
#include "dowling/series.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace dowling {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string detail;
};

/// Nested sets found by linear algebra alone (no block-order shortcuts).
mpz_class count_by_lattice(const ProblemInstance& inst);
/// Forests generated directly from the labelling rules.
mpz_class count_by_forests(const ProblemInstance& inst);
/// n! [t^n] G(1, t); abelian only.
mpz_class count_by_egf(const ProblemInstance& inst);

/// phi extensive, idempotent, monotone, Fix-preserving; conjugates of closed subgroups closed.
CheckResult check_closure_operator(const ProblemInstance& inst);
/// block_leq against subspace containment on every ordered pair of blocks.
CheckResult check_block_order(const BuildingSet& bs);
/// Irreducible lattice elements: no splitting X = Y1 cap Y2 (transversal,
/// Y1, Y2 in the lattice) that every element above X respects.
std::vector<bool> irreducible_elements(const IntersectionLattice& lattice);
/// Every lattice element is the transversal intersection of the minimal
/// blocks containing it, and every irreducible element is a block.
CheckResult check_building_property(const BuildingSet& bs, const IntersectionLattice& lattice);
/// Compatible-pruned and subspace-only nested-set searches give the same sets.
CheckResult check_nested_search(const BuildingSet& bs);
/// Both compositions of forest_to_nested / nested_to_forest are identities,
/// and the two forest enumerations agree.
CheckResult check_round_trips(const BuildingSet& bs);
/// General and abelian forms of rules (2) and (4) accept the same forests
/// (abelian instances), checked on valid forests and single-edge mutations.
CheckResult check_rule_variants(const ProblemInstance& inst);

/// Degree-n parts of gamma_tilde and gamma_bar rebuilt from forest statistics.
MultiSeries gamma_tilde_from_forests(const ProblemInstance& inst, const std::vector<LabelledForest>& forests);
MultiSeries gamma_bar_from_forests(const ProblemInstance& inst, const std::vector<LabelledForest>& forests);
CheckResult check_series_statistics(const ProblemInstance& inst);
/// gamma_tilde over every admissible processing order (at most `limit` orders).
CheckResult check_order_independence(const ProblemInstance& inst, std::size_t limit = 720);

CheckResult check_counts(const ProblemInstance& inst);

/// Everything above that applies to the instance.
std::vector<CheckResult> run_selftest(const ProblemInstance& inst);

}  // namespace dowling

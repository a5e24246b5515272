#include "dowling/checks.hpp"

#include "dowling/egf.hpp"
#include "dowling/errors.hpp"

#include <algorithm>
#include <set>

namespace dowling {

namespace {

CheckResult failed(std::string name, std::string detail) { return CheckResult{std::move(name), false, std::move(detail)}; }

}  // namespace

mpz_class count_by_lattice(const ProblemInstance& inst) {
  BuildingSet bs(inst);
  return mpz_class(enumerate_nested_sets(bs, NestedSearch::Subspaces).size());
}

mpz_class count_by_forests(const ProblemInstance& inst) { return mpz_class(generate_forests(inst).size()); }

mpz_class count_by_egf(const ProblemInstance& inst) { return egf_nested_count(inst); }

CheckResult check_closure_operator(const ProblemInstance& inst) {
  const std::string name = "closure operator";
  const auto& grp = inst.group();
  const auto& subs = inst.all_subgroups();
  const auto& cs = inst.closed();
  if (!cs.is_closed(grp.trivial_subgroup())) return failed(name, "{e} is not closed");
  if (!cs.is_closed(grp.whole())) return failed(name, "G is not closed");
  for (const auto& h : subs) {
    const Subgroup ph = closure_phi(grp, inst.rep(), h);
    if (ph != cs.closure_map.at(h)) return failed(name, "stored closure differs for " + inst.subgroup_name(h));
    if (!h.is_subset_of(ph)) return failed(name, "not extensive at " + inst.subgroup_name(h));
    if (closure_phi(grp, inst.rep(), ph) != ph) return failed(name, "not idempotent at " + inst.subgroup_name(h));
    if (!(inst.rep().fix(grp, ph) == inst.rep().fix(grp, h))) {
      return failed(name, "Fix changes under closure at " + inst.subgroup_name(h));
    }
    if (!(inst.rep().fix_by_kernels(h) == inst.rep().fix(grp, h))) {
      return failed(name, "fixed-space computations disagree at " + inst.subgroup_name(h));
    }
  }
  for (const auto& h : subs)
    for (const auto& k : subs)
      if (h.is_subset_of(k) && !cs.closure_map.at(h).is_subset_of(cs.closure_map.at(k))) {
        return failed(name, "not monotone at " + inst.subgroup_name(h) + " <= " + inst.subgroup_name(k));
      }
  for (const auto& h : cs.members)
    for (ElementId g = 0; g < grp.order(); ++g)
      if (!cs.is_closed(conjugate_subgroup(grp, h, g))) {
        return failed(name, "a conjugate of " + inst.subgroup_name(h) + " is not closed");
      }
  return {name, true, std::to_string(subs.size()) + " subgroups, " + std::to_string(cs.members.size()) + " closed"};
}

CheckResult check_block_order(const BuildingSet& bs) {
  const std::string name = "block order vs containment";
  const auto& inst = bs.instance();
  for (std::size_t a = 0; a < bs.size(); ++a)
    for (std::size_t b = 0; b < bs.size(); ++b) {
      const bool theory = block_leq(inst, bs.blocks()[a], bs.blocks()[b]);
      const bool linalg = contains(bs.subspace(a), bs.subspace(b));
      if (theory != linalg) {
        return failed(name, block_name(inst, bs.blocks()[a]) + " vs " + block_name(inst, bs.blocks()[b]) +
                                ": group test " + (theory ? "true" : "false") + ", subspaces " +
                                (linalg ? "true" : "false"));
      }
      if (theory && !inst.class_leq(bs.blocks()[a].k, bs.blocks()[b].k)) {
        return failed(name, "comparable blocks with incomparable subgroup classes");
      }
    }
  return {name, true, std::to_string(bs.size() * bs.size()) + " pairs"};
}

std::vector<bool> irreducible_elements(const IntersectionLattice& lattice) {
  const auto& el = lattice.elements();
  const std::size_t m = lattice.size();
  std::vector<bool> out(m, true);
  out[0] = false;
  for (std::size_t x = 1; x < m; ++x) {
    std::vector<std::size_t> above;  // lattice elements strictly containing x
    for (std::size_t y = 0; y < m; ++y)
      if (y != x && contains(el[y], el[x])) above.push_back(y);
    auto in_lattice = [&](const Subspace& s) {
      try {
        (void)lattice.index_of(s);
        return true;
      } catch (const InputError&) {
        return false;
      }
    };
    auto splits = [&](const Subspace& w, const Subspace& y1, const Subspace& y2) {
      const Subspace a = sum(w, y1);
      const Subspace b = sum(w, y2);
      return in_lattice(a) && in_lattice(b) && intersect(a, b) == w && a.codim() + b.codim() == w.codim();
    };
    for (std::size_t i = 0; i < above.size() && out[x]; ++i) {
      if (above[i] == 0) continue;
      for (std::size_t j = i + 1; j < above.size() && out[x]; ++j) {
        if (above[j] == 0) continue;
        const Subspace& y1 = el[above[i]];
        const Subspace& y2 = el[above[j]];
        if (!(intersect(y1, y2) == el[x]) || y1.codim() + y2.codim() != el[x].codim()) continue;
        bool all = splits(el[x], y1, y2);
        for (std::size_t w : above)
          if (all && !splits(el[w], y1, y2)) all = false;
        if (all) out[x] = false;
      }
    }
  }
  return out;
}

CheckResult check_building_property(const BuildingSet& bs, const IntersectionLattice& lattice) {
  const std::string name = "building set";
  const auto& inst = bs.instance();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    try {
      (void)lattice.index_of(bs.subspace(b));
    } catch (const InputError&) {
      return failed(name, block_name(inst, bs.blocks()[b]) + " is not in the intersection lattice");
    }
  }
  // minimal block subspaces containing x (strictly, unless x is a block itself)
  auto minimal_above = [&](const Subspace& x, bool strict) {
    std::vector<std::size_t> above;
    for (std::size_t b = 0; b < bs.size(); ++b)
      if (contains(bs.subspace(b), x) && !(strict && bs.subspace(b) == x)) above.push_back(b);
    std::vector<std::size_t> out;
    for (std::size_t b : above) {
      bool minimal = true;
      for (std::size_t c : above)
        if (c != b && contains(bs.subspace(b), bs.subspace(c))) minimal = false;
      if (minimal) out.push_back(b);
    }
    return out;
  };
  const std::size_t amb = inst.ambient_dim();
  for (std::size_t i = 1; i < lattice.size(); ++i) {
    const Subspace& x = lattice.elements()[i];
    const auto mins = minimal_above(x, false);
    if (mins.empty()) return failed(name, "lattice element " + std::to_string(i) + " lies in no block");
    Subspace inter = Subspace::full(amb);
    std::size_t codims = 0;
    for (std::size_t b : mins) {
      inter = intersect(inter, bs.subspace(b));
      codims += bs.subspace(b).codim();
    }
    if (!(inter == x) || inter.codim() != codims) {
      return failed(name, "lattice element " + std::to_string(i) + " is not a transversal intersection of blocks");
    }
  }
  const auto irreducible = irreducible_elements(lattice);
  std::size_t reducible_blocks = 0;
  for (std::size_t b = 0; b < bs.size(); ++b)
    if (!irreducible[lattice.index_of(bs.subspace(b))]) ++reducible_blocks;
  for (std::size_t i = 1; i < lattice.size(); ++i)
    if (irreducible[i] && bs.find_subspace(lattice.elements()[i]) == BuildingSet::npos) {
      return failed(name, "irreducible lattice element " + std::to_string(i) + " is not a block");
    }
  return {name, true, std::to_string(lattice.size()) + " lattice elements, " + std::to_string(bs.size()) + " blocks, " +
                          std::to_string(reducible_blocks) + " of them reducible"};
}

CheckResult check_nested_search(const BuildingSet& bs) {
  const std::string name = "nested-set searches";
  const auto fast = enumerate_nested_sets(bs, NestedSearch::Compatible);
  const auto full = enumerate_nested_sets(bs, NestedSearch::Subspaces);
  if (fast != full) {
    return failed(name, "pruned search found " + std::to_string(fast.size()) + ", subspace search " +
                            std::to_string(full.size()));
  }
  for (const auto& s : full)
    if (!is_pairwise_compatible(bs, s) || !is_nested(bs, s)) return failed(name, "enumerated set fails a predicate");
  return {name, true, std::to_string(full.size()) + " nested sets"};
}

CheckResult check_round_trips(const BuildingSet& bs) {
  const std::string name = "bijection round trips";
  const auto& inst = bs.instance();
  const auto sets = enumerate_nested_sets(bs);
  std::vector<LabelledForest> via_nested;
  for (const auto& s : sets) {
    LabelledForest f;
    try {
      f = nested_to_forest(bs, s);
    } catch (const NotRealizable& e) {
      return failed(name, e.what());
    }
    if (!validate_forest(inst, f).valid) return failed(name, "forest of a nested set breaks a rule: " + validate_forest(inst, f).message);
    if (forest_to_nested(bs, f) != s) return failed(name, "nested -> forest -> nested changed the set");
    via_nested.push_back(f);
  }
  std::sort(via_nested.begin(), via_nested.end());
  const auto direct = generate_forests(inst);
  for (const auto& f : direct) {
    if (f.canonical() != f) return failed(name, "generated forest not canonical");
    const NestedSet s = forest_to_nested(bs, f);
    if (!is_nested(bs, s)) return failed(name, "forest maps to a non-nested set: " + forest_to_string(inst, f));
    if (nested_to_forest(bs, s) != f) return failed(name, "forest -> nested -> forest changed " + forest_to_string(inst, f));
  }
  if (direct != via_nested) {
    return failed(name, std::to_string(direct.size()) + " generated forests vs " + std::to_string(via_nested.size()) +
                            " from nested sets");
  }
  return {name, true, std::to_string(direct.size()) + " forests"};
}

CheckResult check_rule_variants(const ProblemInstance& inst) {
  const std::string name = "abelian rule variants";
  if (!inst.group().is_abelian()) return {name, true, "skipped (nonabelian)"};
  std::size_t checked = 0;
  auto compare = [&](const LabelledForest& f) -> bool {
    ++checked;
    return validate_forest(inst, f, RuleSet::General).valid == validate_forest(inst, f, RuleSet::Abelian).valid;
  };
  for (const auto& f : generate_forests(inst)) {
    if (!compare(f)) return failed(name, "rule sets disagree on " + forest_to_string(inst, f));
    auto vs = f.vertices();
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (vs[v].is_leaf()) continue;
      for (std::size_t k = 0; k < inst.closed_count(); ++k) {
        auto mutated = vs;
        mutated[v].label = k;
        for (auto& w : mutated)
          if (w.parent == static_cast<int>(v)) w.edge = inst.coset_rep(k, w.edge);
        if (!compare(LabelledForest(inst.n(), mutated))) return failed(name, "rule sets disagree on a relabelled forest");
      }
    }
  }
  return {name, true, std::to_string(checked) + " forests compared"};
}

namespace {

MultiSeries stats_series(const ProblemInstance& inst, const std::vector<LabelledForest>& forests, bool allow_fallen) {
  const auto vars = forest_variables(inst);
  const int n = inst.n();
  MultiSeries out(vars, n);
  const Rational weight = Rational(1) / Rational(factorial(n));
  for (const auto& f : forests) {
    const auto d = decompose_forest(inst, f);
    if (d.has_whole_group) continue;
    if (!allow_fallen && d.fallen > 0) continue;
    MultiSeries::Exponents e(vars.size(), 0);
    e[0] = d.components;
    e[1] = d.fallen;
    for (const auto& [k, sf] : d.by_label) e[2 + k] += sf.labelled_leaves;
    out.add_term(e, weight);
  }
  return out;
}

}  // namespace

MultiSeries gamma_tilde_from_forests(const ProblemInstance& inst, const std::vector<LabelledForest>& forests) {
  return stats_series(inst, forests, false);
}

MultiSeries gamma_bar_from_forests(const ProblemInstance& inst, const std::vector<LabelledForest>& forests) {
  return stats_series(inst, forests, true);
}

CheckResult check_series_statistics(const ProblemInstance& inst) {
  const std::string name = "series vs forest statistics";
  if (!inst.group().is_abelian()) return {name, true, "skipped (nonabelian)"};
  const int n = inst.n();
  const auto forests = generate_forests(inst);
  const MultiSeries gt = gamma_tilde(inst, n);
  const MultiSeries gb = gamma_bar(inst, gt);
  if (gt.graded_part(n) != gamma_tilde_from_forests(inst, forests)) {
    return failed(name, "gamma_tilde degree-" + std::to_string(n) + " part differs from forest statistics");
  }
  if (gb.graded_part(n) != gamma_bar_from_forests(inst, forests)) {
    return failed(name, "gamma_bar degree-" + std::to_string(n) + " part differs from forest statistics");
  }
  return {name, true, std::to_string(gt.graded_part(n).terms().size()) + " + " +
                          std::to_string(gb.graded_part(n).terms().size()) + " coefficients"};
}

CheckResult check_order_independence(const ProblemInstance& inst, std::size_t limit) {
  const std::string name = "processing order independence";
  if (!inst.group().is_abelian()) return {name, true, "skipped (nonabelian)"};
  const int n = inst.n();
  const MultiSeries reference = gamma_tilde(inst, n);
  auto order = proper_closed(inst);
  std::size_t tried = 0;
  do {
    bool admissible = true;
    for (std::size_t i = 0; i < order.size() && admissible; ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j)
        if (order[i] != order[j] && inst.closed_subgroup(order[i]).is_subset_of(inst.closed_subgroup(order[j]))) {
          admissible = false;
          break;
        }
    if (!admissible) continue;
    if (gamma_tilde(inst, n, order) != reference) return failed(name, "some admissible order changes gamma_tilde");
    ++tried;
  } while (tried < limit && std::next_permutation(order.begin(), order.end()));
  return {name, true, std::to_string(tried) + " orders"};
}

CheckResult check_counts(const ProblemInstance& inst) {
  const std::string name = "count agreement";
  const mpz_class lattice = count_by_lattice(inst);
  const mpz_class forests = count_by_forests(inst);
  std::string detail = "lattice " + lattice.get_str() + ", forest " + forests.get_str();
  bool ok = lattice == forests;
  if (inst.group().is_abelian()) {
    const mpz_class egf = count_by_egf(inst);
    detail += ", egf " + egf.get_str();
    ok = ok && egf == lattice;
  }
  return {name, ok, detail};
}

std::vector<CheckResult> run_selftest(const ProblemInstance& inst) {
  std::vector<CheckResult> out;
  auto guarded = [&](const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const BoundExceeded&) {
      throw;
    } catch (const std::exception& e) {
      out.push_back(failed(name, std::string("threw: ") + e.what()));
    }
  };
  guarded("closure operator", [&] { return check_closure_operator(inst); });
  const BuildingSet bs(inst);
  guarded("block order vs containment", [&] { return check_block_order(bs); });
  guarded("building set", [&] { return check_building_property(bs, intersection_lattice(inst)); });
  guarded("nested-set searches", [&] { return check_nested_search(bs); });
  guarded("bijection round trips", [&] { return check_round_trips(bs); });
  guarded("abelian rule variants", [&] { return check_rule_variants(inst); });
  guarded("count agreement", [&] { return check_counts(inst); });
  guarded("series vs forest statistics", [&] { return check_series_statistics(inst); });
  guarded("processing order independence", [&] { return check_order_independence(inst); });
  return out;
}

}  // namespace dowling

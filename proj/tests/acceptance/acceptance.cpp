// Acceptance suite: one PASS/FAIL line per criterion.

#include "dowling/arrangement.hpp"
#include "dowling/checks.hpp"
#include "dowling/egf.hpp"
#include "dowling/forest.hpp"
#include "dowling/io.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>

using namespace dowling;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

// Collects the first few failures of a criterion.
class Ledger {
public:
  void fail(const std::string& msg) {
    ok_ = false;
    if (messages_++ < 5) os_ << (messages_ > 1 ? "; " : "") << msg;
  }
  void note(const std::string& msg) { notes_ << (notes_.tellp() > 0 ? ", " : "") << msg; }
  Outcome outcome() const { return {ok_, ok_ ? notes_.str() : os_.str()}; }

private:
  bool ok_ = true;
  int messages_ = 0;
  std::ostringstream os_;
  std::ostringstream notes_;
};

std::string to_str(std::size_t v) { return std::to_string(v); }

Outcome klein_example() {
  Ledger l;
  const auto inst = fixtures::klein_matrices(2);
  const auto& g = inst.group();
  auto sub = [&](int a, int b) {
    const std::vector<ElementId> gen{g.element_from_tuple(std::vector<int>{a, b})};
    return g.generated_by(gen);
  };
  const std::vector<Subgroup> expected{g.trivial_subgroup(), sub(1, 0), sub(0, 1), g.whole()};
  std::set<Subgroup> got(inst.closed().members.begin(), inst.closed().members.end());
  if (got != std::set<Subgroup>(expected.begin(), expected.end())) l.fail("closed subgroups differ");
  const auto report = closed_subgroups_json(inst);
  if (report["closed"].size() != 4) l.fail("report lists " + to_str(report["closed"].size()) + " closed subgroups");
  const auto& nc = report["non_closed"];
  const std::string diag_name = inst.subgroup_name(sub(1, 1));
  if (nc.size() != 1 || nc[0]["name"] != diag_name || nc[0]["closure"] != "G") l.fail("<(1,1)> not reported with image G");
  if (inst.closed().closure_map.at(sub(1, 1)) != g.whole()) l.fail("phi(<(1,1)>) != G");
  l.note("closed {e}, <(1,0)>, <(0,1)>, G; <(1,1)> -> G");
  return l.outcome();
}

Outcome three_way_counts() {
  Ledger l;
  for (const auto& [name, inst] : fixtures::grid()) {
    const BuildingSet bs(inst);
    const auto nested = enumerate_nested_sets(bs, NestedSearch::Subspaces).size();
    const auto forests = generate_forests(inst).size();
    const mpz_class egf = egf_nested_count(inst);
    if (mpz_class(to_str(nested)) != egf || nested != forests) {
      l.fail(name + ": nested " + to_str(nested) + ", forests " + to_str(forests) + ", egf " + egf.get_str());
    } else {
      l.note(name + " " + to_str(nested));
    }
  }
  return l.outcome();
}

Outcome block_order() {
  Ledger l;
  auto instances = fixtures::grid();
  instances.emplace_back("S3 n=2", fixtures::s3(2));
  std::size_t pairs = 0;
  for (const auto& [name, inst] : instances) {
    const auto blocks = building_blocks(inst);
    std::vector<Subspace> spaces;
    for (const auto& b : blocks) spaces.push_back(block_subspace(inst, b));
    for (std::size_t a = 0; a < blocks.size(); ++a)
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        ++pairs;
        if (block_leq(inst, blocks[a], blocks[b]) != contains(spaces[a], spaces[b]))
          l.fail(name + ": " + block_name(inst, blocks[a]) + " vs " + block_name(inst, blocks[b]));
      }
  }
  l.note(to_str(pairs) + " ordered pairs");
  return l.outcome();
}

// Weighted set partitions into k blocks of size >= 2, enumerated one by one.
mpz_class partitions_by_enumeration(int n, int k, int r) {
  std::vector<int> items;
  for (int i = 0; i < n; ++i) items.push_back(i);
  mpz_class total = 0;
  std::vector<std::vector<int>> cur;
  oracles::set_partitions(items, 0, cur, [&](const std::vector<std::vector<int>>& blocks) {
    if (static_cast<int>(blocks.size()) != k) return;
    mpz_class w = 1;
    for (const auto& b : blocks) {
      if (b.size() < 2) return;
      for (std::size_t i = 1; i < b.size(); ++i) w *= r;
    }
    total += w;
  });
  return total;
}

Outcome lambda_fidelity() {
  Ledger l;
  for (int r = 1; r <= 4; ++r) {
    const auto lb = lambda_bar(r, 6);
    for (int ell = 1; ell <= 6; ++ell) {
      const mpq_class coeff = lb.coeff({ell}) * mpq_class(factorial(ell));
      mpz_class parts = 0;
      for (int k = 1; k <= ell; ++k) {
        const mpz_class brute = partitions_by_enumeration(ell + k - 1, k, r);
        if (brute != partition_oracle(ell + k - 1, k, r)) l.fail("partition oracle r=" + std::to_string(r));
        parts += brute;
      }
      const mpz_class trees(std::to_string(oracles::labelled_tree_count(ell, r)));
      if (coeff != mpq_class(parts) || coeff != mpq_class(trees)) {
        l.fail("r=" + std::to_string(r) + " l=" + std::to_string(ell) + ": series " + coeff.get_str() + ", partitions " +
               parts.get_str() + ", trees " + trees.get_str());
      }
    }
  }
  l.note("r=1..4, l=1..6");
  return l.outcome();
}

Outcome round_trips() {
  Ledger l;
  std::size_t objects = 0;
  for (const auto& [name, inst] : fixtures::grid()) {
    const BuildingSet bs(inst);
    for (const auto& s : enumerate_nested_sets(bs)) {
      ++objects;
      if (forest_to_nested(bs, nested_to_forest(bs, s)) != s) l.fail(name + ": nested set does not round trip");
    }
    for (const auto& f : generate_forests(inst)) {
      ++objects;
      if (nested_to_forest(bs, forest_to_nested(bs, f)) != f)
        l.fail(name + ": forest " + forest_to_string(inst, f) + " does not round trip");
    }
  }
  l.note(to_str(objects) + " objects");
  return l.outcome();
}

Outcome dowling_specialization() {
  Ledger l;
  for (int r = 2; r <= 3; ++r)
    for (int n = 1; n <= 3; ++n) {
      const std::string name = "Z/" + std::to_string(r) + " n=" + std::to_string(n);
      const auto inst = fixtures::cyclic(r, n);
      const auto lattice = intersection_lattice(inst);
      const auto raw = raw_arrangement(inst);
      std::vector<oracles::Hyperplane> raw_key;
      for (const auto& h : raw) {
        if (h.i == h.j) {
          raw_key.emplace_back(h.i - 1, h.i - 1, 0);
        } else {
          raw_key.emplace_back(h.i - 1, h.j - 1, h.g);
        }
      }
      using Key = std::set<oracles::Hyperplane>;
      std::map<Key, std::size_t> from_lattice;
      for (std::size_t x = 0; x < lattice.size(); ++x) {
        Key key;
        for (std::size_t h = 0; h < raw.size(); ++h)
          if (contains(raw[h].space, lattice.elements()[x])) key.insert(raw_key[h]);
        if (!from_lattice.emplace(key, x).second) l.fail(name + ": two lattice elements on the same hyperplanes");
      }
      const auto flats = oracles::dowling_flats(r, n);
      const auto hyperplanes = oracles::dowling_hyperplanes(r, n);
      std::vector<std::size_t> image(flats.size());
      for (std::size_t f = 0; f < flats.size(); ++f) {
        Key key;
        for (const auto& h : hyperplanes)
          if (oracles::flat_on_hyperplane(flats[f], h, r)) key.insert(h);
        auto it = from_lattice.find(key);
        if (it == from_lattice.end()) {
          l.fail(name + ": a combinatorial flat has no lattice counterpart");
          continue;
        }
        image[f] = it->second;
      }
      if (flats.size() != lattice.size()) {
        l.fail(name + ": " + to_str(flats.size()) + " flats vs " + to_str(lattice.size()) + " lattice elements");
        continue;
      }
      for (std::size_t a = 0; a < flats.size(); ++a)
        for (std::size_t b = 0; b < flats.size(); ++b)
          if (oracles::dowling_leq(flats[a], flats[b], r) != lattice.leq(image[a], image[b]))
            l.fail(name + ": order differs");
      l.note(name + " " + to_str(flats.size()));
    }
  return l.outcome();
}

// phi(H) recomputed as the pointwise stabilizer of Fix(H).
Subgroup stabilizer_of_fix(const ProblemInstance& inst, const Subgroup& h) {
  const Subspace fix = inst.rep().fix_by_kernels(h);
  std::vector<ElementId> out;
  const std::size_t d = inst.rep().realized_dim();
  for (ElementId g = 0; g < inst.group().order(); ++g) {
    const RMatrix& m = inst.rep().matrix(g);
    bool fixes = true;
    for (std::size_t b = 0; b < fix.dim() && fixes; ++b)
      for (std::size_t i = 0; i < d && fixes; ++i) {
        Rational s = 0;
        for (std::size_t j = 0; j < d; ++j) s += m(i, j) * fix.basis()(b, j);
        if (s != fix.basis()(b, i)) fixes = false;
      }
    if (fixes) out.push_back(g);
  }
  return Subgroup(out);
}

Outcome closure_properties() {
  Ledger l;
  std::vector<std::pair<std::string, ProblemInstance>> instances{
      {"Z/2", fixtures::cyclic(2, 1)},        {"Z/3", fixtures::cyclic(3, 1)},
      {"Z/4", fixtures::cyclic(4, 1)},        {"Z/2xZ/2", fixtures::klein_matrices(1)},
      {"Z/2xZ/2 characters", fixtures::klein(1)}, {"S3", fixtures::s3(1)},
      {"Z/2^3", fixtures::cube(1)},
      {"Z/4 two characters", load_instance(fixtures::instance_path("z4_two_characters.json")).with_n(1)}};
  std::size_t subgroups = 0;
  for (const auto& [name, inst] : instances) {
    const auto& g = inst.group();
    std::map<Subgroup, Subgroup> phi;
    for (const auto& h : inst.all_subgroups()) {
      phi[h] = stabilizer_of_fix(inst, h);
      if (phi[h] != closure_phi(g, inst.rep(), h)) l.fail(name + ": phi differs from the stabilizer of Fix");
    }
    for (const auto& [h, ph] : phi) {
      ++subgroups;
      if (!h.is_subset_of(ph)) l.fail(name + ": not extensive");
      if (phi.at(ph) != ph) l.fail(name + ": not idempotent");
      for (const auto& [k, pk] : phi)
        if (h.is_subset_of(k) && !ph.is_subset_of(pk)) l.fail(name + ": not monotone");
      if (ph == h)
        for (ElementId x = 0; x < g.order(); ++x)
          if (!inst.closed().is_closed(conjugate_subgroup(g, h, x))) l.fail(name + ": conjugate of a closed subgroup not closed");
    }
    const auto lib = check_closure_operator(inst);
    if (!lib.passed) l.fail(name + ": " + lib.detail);
  }
  l.note(to_str(subgroups) + " subgroups in " + to_str(instances.size()) + " instances");
  return l.outcome();
}

Outcome structural_series() {
  Ledger l;
  for (const auto& [name, inst] : fixtures::grid()) {
    const int n = inst.n();
    const auto vars = forest_variables(inst);
    const auto gt = gamma_tilde(inst, n);
    const auto gb = gamma_bar(inst, n);
    // order independence
    auto order = proper_closed(inst);
    std::size_t orders = 0;
    do {
      bool admissible = true;
      for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = i + 1; j < order.size(); ++j)
          if (inst.closed_subgroup(order[i]).is_subset_of(inst.closed_subgroup(order[j]))) admissible = false;
      if (!admissible) continue;
      ++orders;
      if (gamma_tilde(inst, n, order) != gt) l.fail(name + ": processing order changes gamma_tilde");
    } while (std::next_permutation(order.begin(), order.end()));
    // forest statistics at degree n: components j, fallen h, leaves a_H hanging from H-vertices
    std::map<MultiSeries::Exponents, mpz_class> tilde_counts, bar_counts;
    for (const auto& f : generate_forests(inst)) {
      MultiSeries::Exponents e(vars.size(), 0);
      bool whole = false;
      int fallen = static_cast<int>(f.fallen_leaves().size());
      e[0] = static_cast<int>(f.roots().size());
      e[1] = fallen;
      for (const auto& v : f.vertices())
        if (!v.is_leaf() && v.label == inst.whole_index()) whole = true;
      if (whole) continue;
      for (const auto& v : f.vertices())
        if (v.is_leaf() && v.parent >= 0) e[2 + f.vertices()[static_cast<std::size_t>(v.parent)].label] += 1;
      bar_counts[e] += 1;
      if (fallen == 0) tilde_counts[e] += 1;
    }
    auto compare = [&](const MultiSeries& series, const std::map<MultiSeries::Exponents, mpz_class>& counts,
                       const std::string& which) {
      const auto part = series.graded_part(n);
      for (const auto& [e, c] : part.terms()) {
        auto it = counts.find(e);
        const mpq_class expected = it == counts.end() ? mpq_class(0) : mpq_class(it->second) / mpq_class(factorial(n));
        if (c != expected) l.fail(name + ": " + which + " coefficient differs");
      }
      for (const auto& [e, c] : counts)
        if (part.coeff(e) * mpq_class(factorial(n)) != mpq_class(c)) l.fail(name + ": " + which + " misses a statistic");
    };
    compare(gt, tilde_counts, "gamma_tilde");
    compare(gb, bar_counts, "gamma_bar");
    l.note(name + " " + to_str(orders) + " orders");
  }
  return l.outcome();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed subgroups of the Z/2xZ/2 example", klein_example},
      {"three-way nested-set counts on the grid", three_way_counts},
      {"block order equals subspace containment", block_order},
      {"tree series against partitions and explicit trees", lambda_fidelity},
      {"forest and nested-set round trips", round_trips},
      {"cyclic instances give the Dowling lattice", dowling_specialization},
      {"closure operator and conjugates of closed subgroups", closure_properties},
      {"gamma series order independence and forest statistics", structural_series},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = criteria[i].second();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %zu %s (%.2f s): %s\n", out.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                out.detail.c_str());
    std::fflush(stdout);
    if (!out.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

#include "dowling/arrangement.hpp"
#include "dowling/checks.hpp"
#include "dowling/errors.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <functional>
#include <set>

using namespace dowling;

namespace {

// { v : v_{i_r} = rho(g_r) w for a common w in Fix(K) }, arbitrary coset representatives.
Subspace block_by_definition(const ProblemInstance& inst, const Subgroup& k, const std::vector<int>& idx,
                             const std::vector<ElementId>& g) {
  const std::size_t d = inst.rep().realized_dim();
  const std::size_t amb = inst.ambient_dim();
  RMatrix gens(0, amb);
  const Subspace fix = inst.rep().fix(inst.group(), k);
  for (std::size_t b = 0; b < fix.dim(); ++b) {
    std::vector<Rational> v(amb, 0);
    for (std::size_t r = 0; r < idx.size(); ++r) {
      const RMatrix& m = inst.rep().matrix(g[r]);
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) v[(idx[r] - 1) * d + a] += m(a, c) * fix.basis()(b, c);
    }
    gens.append_row(v);
  }
  for (int i = 1; i <= inst.n(); ++i) {
    if (std::find(idx.begin(), idx.end(), i) != idx.end()) continue;
    for (std::size_t a = 0; a < d; ++a) {
      std::vector<Rational> v(amb, 0);
      v[(i - 1) * d + a] = 1;
      gens.append_row(v);
    }
  }
  return Subspace::span(amb, gens);
}

Block blk(std::size_t k, std::vector<int> idx, std::vector<ElementId> cosets) { return Block{k, std::move(idx), std::move(cosets)}; }

}  // namespace

TEST_CASE("raw arrangement of the sign representation") {
  const auto one = fixtures::cyclic(2, 1);
  const auto a1 = raw_arrangement(one);
  REQUIRE(a1.size() == 1);
  CHECK(a1[0].space == Subspace::zero(1));

  const auto two = fixtures::cyclic(2, 2);
  std::set<Subspace> distinct;
  for (const auto& h : raw_arrangement(two)) {
    CHECK(h.space.codim() == 1);
    distinct.insert(h.space);
  }
  CHECK(distinct.size() == 4);
}

TEST_CASE("codimension of H(i,i,g)") {
  for (const auto& inst : {fixtures::klein_matrices(2), fixtures::s3(2), fixtures::cyclic(4, 2)}) {
    for (const auto& h : raw_arrangement(inst)) {
      if (h.i != h.j) {
        CHECK(inst.complex_dim(h.space) == inst.n() * inst.dim_v() - inst.dim_v());
        continue;
      }
      const std::vector<ElementId> gen{h.g};
      const auto cyc = inst.group().generated_by(gen);
      const std::size_t fix_dim = inst.rep().complex_dim(inst.rep().fix(inst.group(), cyc));
      CHECK(inst.n() * inst.dim_v() - inst.complex_dim(h.space) == inst.dim_v() - fix_dim);
    }
  }
}

TEST_CASE("intersection lattice sizes") {
  CHECK(intersection_lattice(fixtures::cyclic(2, 1)).size() == 2);
  CHECK(intersection_lattice(fixtures::cyclic(2, 2)).size() == oracles::dowling_flats(2, 2).size());
  CHECK(intersection_lattice(fixtures::cyclic(2, 2)).size() == 6);
  CHECK(intersection_lattice(fixtures::cyclic(2, 3)).size() == oracles::dowling_flats(2, 3).size());
  const auto lat = intersection_lattice(fixtures::cyclic(3, 2));
  CHECK(lat.elements()[0] == Subspace::full(lat.elements()[0].ambient_dim()));
  for (std::size_t i = 0; i < lat.size(); ++i)
    for (std::size_t j : lat.covers(i)) {
      CHECK(lat.leq(i, j));
      CHECK(i != j);
    }
}

TEST_CASE("lattice size cap") {
  nlohmann::json doc = {{"n", 3}, {"group", {{"abelian", {3}}}}, {"representation", {{"characters", {{1}}}}},
                        {"bounds", {{"lattice", 10}}}};
  CHECK_THROWS_AS(intersection_lattice(parse_instance(doc)), SizeBoundExceeded);
}

TEST_CASE("blocks for n = 1 and the sign representation at n = 2") {
  const auto k1 = fixtures::klein(1);
  const auto b1 = building_blocks(k1);
  REQUIRE(b1.size() == 3);
  for (const auto& b : b1) CHECK(b.k != k1.trivial_index());

  const auto two = fixtures::cyclic(2, 2);
  const auto blocks = building_blocks(two);
  const std::vector<Block> expected{blk(0, {1, 2}, {0, 0}), blk(0, {1, 2}, {0, 1}), blk(1, {1}, {0}),
                                    blk(1, {1, 2}, {0, 0}), blk(1, {2}, {0})};
  CHECK(blocks == expected);
}

TEST_CASE("block subspaces") {
  const auto two = fixtures::cyclic(2, 2);
  CHECK(block_subspace(two, blk(0, {1, 2}, {0, 0})) == kernel([] {
          RMatrix m(1, 2);
          m(0, 0) = 1;
          m(0, 1) = -1;
          return m;
        }()));
  for (int n = 1; n <= 3; ++n) {
    const auto inst = fixtures::klein_matrices(n);
    for (const auto& b : building_blocks(inst)) {
      const auto dim = inst.complex_dim(block_subspace(inst, b));
      const auto fix_dim = inst.rep().complex_dim(inst.closed_fix(b.k));
      CHECK(dim == (n - b.indices.size()) * inst.dim_v() + fix_dim);
      if (b.k == inst.whole_index()) CHECK(dim == (n - b.indices.size()) * inst.dim_v());
    }
  }
}

TEST_CASE("normal form matches the definition for arbitrary representatives") {
  const auto inst = fixtures::s3(3);
  const auto& g = inst.group();
  for (std::size_t k = 1; k < inst.closed_count(); ++k) {
    const auto& K = inst.closed_subgroup(k);
    for (ElementId g1 = 0; g1 < g.order(); ++g1)
      for (ElementId g2 = 0; g2 < g.order(); ++g2) {
        const std::vector<int> idx{1, 3};
        const std::vector<ElementId> reps{g1, g2};
        const Block nb = normalize_block(inst, K, idx, reps);
        CHECK(nb.cosets.front() == 0);
        CHECK(block_subspace(inst, nb) == block_by_definition(inst, K, idx, reps));
        // the conjugated label with first coset e names the same subspace
        const Subgroup kg = conjugate_subgroup(g, K, g1);
        const std::vector<ElementId> shifted{0, g.mul(g2, g.inv(g1))};
        CHECK(block_by_definition(inst, kg, idx, shifted) == block_by_definition(inst, K, idx, reps));
      }
  }
}

TEST_CASE("building_blocks is injective on subspaces") {
  for (const auto& inst : {fixtures::s3(2), fixtures::klein_matrices(3), fixtures::cyclic(4, 3)}) {
    std::set<Subspace> seen;
    const auto blocks = building_blocks(inst);
    for (const auto& b : blocks) CHECK(seen.insert(block_subspace(inst, b)).second);
  }
}

TEST_CASE("block order") {
  const auto two = fixtures::cyclic(2, 2);
  CHECK(block_leq(two, blk(0, {1, 2}, {0, 0}), blk(1, {1, 2}, {0, 0})));
  CHECK_FALSE(block_leq(two, blk(1, {1, 2}, {0, 0}), blk(0, {1, 2}, {0, 0})));
  CHECK_FALSE(block_leq(two, blk(0, {1, 2}, {0, 1}), blk(0, {1, 2}, {0, 0})));

  for (const auto& inst : {fixtures::s3(2), fixtures::klein_matrices(2), fixtures::cyclic(3, 3)}) {
    const BuildingSet bs(inst);
    for (std::size_t a = 0; a < bs.size(); ++a) {
      CHECK(bs.leq(a, a));
      for (std::size_t b = 0; b < bs.size(); ++b) {
        const bool sub = contains(bs.subspace(a), bs.subspace(b));
        CHECK(bs.leq(a, b) == sub);
        if (sub) CHECK(inst.class_leq(bs.blocks()[a].k, bs.blocks()[b].k));
      }
    }
    CHECK(check_block_order(bs).passed);
  }
}

TEST_CASE("compatibility") {
  const auto k = fixtures::klein(2);
  const auto g = k.whole_index();
  CHECK_FALSE(blocks_compatible(k, blk(g, {1}, {0}), blk(g, {2}, {0})));
  CHECK(blocks_compatible(k, blk(g, {1}, {0}), blk(1, {2}, {0})));
  CHECK(blocks_compatible(k, blk(g, {1}, {0}), blk(g, {1, 2}, {0, 0})));
  CHECK_FALSE(blocks_compatible(k, blk(1, {1, 2}, {0, 0}), blk(2, {2}, {0})));
}

TEST_CASE("nested sets of the sign representation") {
  const auto one = fixtures::cyclic(2, 1);
  CHECK(enumerate_nested_sets(BuildingSet(one)).size() == 1);

  const auto two = fixtures::cyclic(2, 2);
  const BuildingSet bs(two);
  CHECK(is_nested(bs, {}));
  for (std::size_t i = 0; i < bs.size(); ++i) CHECK(is_nested(bs, {i}));
  const auto g1 = bs.index_of(blk(1, {1}, {0}));
  const auto g2 = bs.index_of(blk(1, {2}, {0}));
  CHECK_FALSE(is_nested(bs, {std::min(g1, g2), std::max(g1, g2)}));

  const auto found = enumerate_nested_sets(bs);
  CHECK(found.size() == 9);
  std::vector<Subspace> spaces;
  for (std::size_t i = 0; i < bs.size(); ++i) spaces.push_back(bs.subspace(i));
  CHECK(found == oracles::brute_force_nested(spaces));
}

TEST_CASE("brute force nested sets at n = 2") {
  for (const auto& inst : {fixtures::cyclic(3, 2), fixtures::cyclic(4, 2), fixtures::klein_matrices(2)}) {
    const BuildingSet bs(inst);
    if (bs.size() > 20) continue;
    std::vector<Subspace> spaces;
    for (std::size_t i = 0; i < bs.size(); ++i) spaces.push_back(bs.subspace(i));
    CHECK(enumerate_nested_sets(bs) == oracles::brute_force_nested(spaces));
    CHECK(enumerate_nested_sets(bs, NestedSearch::Subspaces) == enumerate_nested_sets(bs));
  }
}

TEST_CASE("nested sets are closed under subsets") {
  const auto inst = fixtures::klein_matrices(2);
  const BuildingSet bs(inst);
  const auto all = enumerate_nested_sets(bs);
  const std::set<NestedSet> lookup(all.begin(), all.end());
  for (const auto& s : all) {
    for (std::size_t drop = 0; drop < s.size() && s.size() > 1; ++drop) {
      NestedSet t = s;
      t.erase(t.begin() + static_cast<std::ptrdiff_t>(drop));
      CHECK(lookup.count(t) == 1);
    }
  }
}

TEST_CASE("pairwise compatibility decides nestedness on the small grid") {
  for (int n = 1; n <= 3; ++n) {
    for (const auto& inst : {fixtures::cyclic(2, n), fixtures::cyclic(3, n), fixtures::cyclic(4, n), fixtures::klein_matrices(n)}) {
      const BuildingSet bs(inst);
      std::size_t cliques = 0;
      NestedSet cur;
      std::function<void(std::size_t)> grow = [&](std::size_t from) {
        if (!cur.empty()) {
          ++cliques;
          CHECK(is_nested(bs, cur) == is_pairwise_compatible(bs, cur));
        }
        for (std::size_t b = from; b < bs.size(); ++b) {
          bool ok = true;
          for (std::size_t a : cur) ok = ok && bs.compatible(a, b);
          if (!ok) continue;
          cur.push_back(b);
          grow(b + 1);
          cur.pop_back();
        }
      };
      grow(0);
      CHECK(cliques == enumerate_nested_sets(bs).size());
    }
  }
}

TEST_CASE("building set properties") {
  for (const auto& inst : {fixtures::cyclic(2, 3), fixtures::cyclic(3, 2), fixtures::klein_matrices(2), fixtures::s3(2)}) {
    const BuildingSet bs(inst);
    const auto lattice = intersection_lattice(inst);
    const auto res = check_building_property(bs, lattice);
    CHECK_MESSAGE(res.passed, res.detail);
    for (std::size_t i = 0; i < bs.size(); ++i) CHECK_NOTHROW(lattice.index_of(bs.subspace(i)));
  }
}

TEST_CASE("block names") {
  const auto k = fixtures::klein(2);
  CHECK(block_name(k, blk(k.whole_index(), {1, 2}, {0, 0})) == "H^G(1^e,2^e)");
}

#include "dowling/checks.hpp"
#include "dowling/errors.hpp"
#include "dowling/forest.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <set>

using namespace dowling;

namespace {

// Leaves 1..8 on Z/2^3 acting on C^3 through the three coordinate characters.
// p = (1,0,0), q = (0,1,0), u = (0,0,1); ids are 4x + 2y + z.
struct ExampleForest {
  ProblemInstance inst = fixtures::cube(8);
  std::size_t g2 = inst.closed().index_of(Subgroup({0, 4}));           // <p>
  std::size_t g1 = inst.closed().index_of(Subgroup({0, 2, 4, 6}));     // <p,q>
  std::size_t g1p = inst.closed().index_of(Subgroup({0, 1, 4, 5}));    // <p,u>
  std::size_t whole = inst.whole_index();
  // edge labels as coset representatives
  ElementId a = 1, b = 1, c = 2, d = 3;

  std::vector<ForestVertex> vertices() const {
    return {
        {-1, 0, whole, 0},  // 0
        {0, 0, g1, 0},      // 1
        {1, 0, g1, a},      // 2
        {2, 4, 0, 0},       // 3
        {2, 7, 0, b},       // 4
        {1, 0, g2, 0},      // 5
        {5, 3, 0, c},       // 6
        {5, 0, g2, 0},      // 7
        {7, 6, 0, d},       // 8
        {7, 2, 0, 0},       // 9
        {-1, 0, g1p, 0},    // 10
        {10, 0, g2, 0},     // 11
        {11, 5, 0, 0},      // 12
        {-1, 1, 0, 0},      // 13
        {-1, 8, 0, 0},      // 14
    };
  }
  LabelledForest forest() const { return LabelledForest(8, vertices()).canonical(); }
};

ElementId mul(const ProblemInstance& inst, ElementId x, ElementId y) { return inst.group().mul(x, y); }

}  // namespace

TEST_CASE("the example forest is valid") {
  const ExampleForest fig;
  const auto f = fig.forest();
  CHECK_NOTHROW(f.check_structure());
  const auto res = validate_forest(fig.inst, f);
  CHECK_MESSAGE(res.valid, res.message);
  CHECK(validate_forest(fig.inst, f, RuleSet::Abelian).valid);
  CHECK(f.fallen_leaves() == std::vector<int>{1, 8});
  CHECK(f.canonical() == f);
}

TEST_CASE("the example forest gives the seven listed subspaces") {
  const ExampleForest fig;
  const auto& inst = fig.inst;
  auto sub = [&](std::size_t k) { return inst.closed_subgroup(k); };
  const ElementId e = 0;
  std::vector<Block> expected{
      normalize_block(inst, sub(fig.whole), {2, 3, 4, 6, 7}, {e, e, e, e, e}),
      normalize_block(inst, sub(fig.g1), {2, 3, 4, 6, 7}, {e, fig.c, fig.a, fig.d, mul(inst, fig.b, fig.a)}),
      normalize_block(inst, sub(fig.g1), {4, 7}, {e, fig.b}),
      normalize_block(inst, sub(fig.g2), {2, 3, 6}, {e, fig.c, fig.d}),
      normalize_block(inst, sub(fig.g2), {2, 6}, {e, fig.d}),
      normalize_block(inst, sub(fig.g1p), {5}, {e}),
      normalize_block(inst, sub(fig.g2), {5}, {e}),
  };
  auto got = forest_to_blocks(inst, fig.forest());
  std::sort(got.begin(), got.end());
  std::sort(expected.begin(), expected.end());
  CHECK(got == expected);

  // every incomparable subfamily meets transversally
  std::vector<Subspace> spaces;
  for (const auto& blk : got) spaces.push_back(block_subspace(inst, blk));
  for (std::uint32_t mask = 1; mask < (1u << spaces.size()); ++mask) {
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < spaces.size(); ++i)
      if (mask & (1u << i)) chosen.push_back(i);
    bool antichain = chosen.size() >= 2;
    for (std::size_t x : chosen)
      for (std::size_t y : chosen)
        if (x != y && contains(spaces[x], spaces[y])) antichain = false;
    if (!antichain) continue;
    Subspace inter = spaces[chosen[0]];
    std::size_t codims = 0;
    for (std::size_t x : chosen) {
      inter = intersect(inter, spaces[x]);
      codims += spaces[x].codim();
    }
    CHECK(inter.codim() == codims);
  }
}

TEST_CASE("the example forest decomposes by label") {
  const ExampleForest fig;
  const auto d = decompose_forest(fig.inst, fig.forest());
  CHECK(d.components == 4);
  CHECK(d.fallen == 2);
  CHECK(d.has_whole_group);
  REQUIRE(d.by_label.size() == 4);
  CHECK(d.by_label.at(fig.whole).trees == 1);
  CHECK(d.by_label.at(fig.g1).trees == 1);
  CHECK(d.by_label.at(fig.g1).labelled_leaves == 2);
  CHECK(d.by_label.at(fig.g1).vertices == 2);
  CHECK(d.by_label.at(fig.g1p).trees == 1);
  CHECK(d.by_label.at(fig.g1p).labelled_leaves == 0);
  CHECK(d.by_label.at(fig.g2).trees == 2);
  CHECK(d.by_label.at(fig.g2).labelled_leaves == 4);
  CHECK(d.by_label.at(fig.g2).vertices == 3);
}

TEST_CASE("rule violations are reported") {
  const ExampleForest fig;
  SUBCASE("unary {e} vertex over a leaf") {
    auto v = fig.vertices();
    v.push_back({-1, 0, 0, 0});
    v[13].parent = static_cast<int>(v.size()) - 1;
    const auto res = validate_forest(fig.inst, LabelledForest(8, v).canonical());
    CHECK_FALSE(res.valid);
    CHECK(res.rule == 2);
  }
  SUBCASE("two trees containing G") {
    auto v = fig.vertices();
    v.push_back({-1, 0, fig.whole, 0});
    v[14].parent = static_cast<int>(v.size()) - 1;
    const auto res = validate_forest(fig.inst, LabelledForest(8, v).canonical());
    CHECK_FALSE(res.valid);
    CHECK(res.rule == 3);
  }
  SUBCASE("label increases downwards") {
    auto v = fig.vertices();
    v[11].label = fig.g1;  // G1 below G1'
    const auto res = validate_forest(fig.inst, LabelledForest(8, v).canonical());
    CHECK_FALSE(res.valid);
    CHECK(res.rule == 1);
  }
  SUBCASE("smallest leaf edge not the identity coset") {
    auto v = fig.vertices();
    v[9].edge = 1;
    const auto res = validate_forest(fig.inst, LabelledForest(8, v).canonical());
    CHECK_FALSE(res.valid);
    CHECK(res.rule == 5);
  }
  SUBCASE("no internal vertex") {
    std::vector<ForestVertex> v;
    for (int i = 1; i <= 3; ++i) v.push_back({-1, i, 0, 0});
    const auto res = validate_forest(fixtures::cyclic(2, 3), LabelledForest(3, v));
    CHECK_FALSE(res.valid);
  }
}

TEST_CASE("rule (4) in a nonabelian group") {
  const auto s3 = fixtures::s3(3);
  const std::size_t c2 = s3.closed().index_of(Subgroup({0, 1}));
  const std::size_t c2b = s3.closed().index_of(Subgroup({0, 2}));
  // root <g1> over leaf 1 and a <g2> vertex over leaves 2, 3, joined by the edge a
  int admitted = 0;
  for (ElementId a : s3.coset_reps(c2)) {
    std::vector<ForestVertex> v{{-1, 0, c2, 0}, {0, 1, 0, 0}, {0, 0, c2b, a}, {2, 2, 0, 0}, {2, 3, 0, 0}};
    const auto res = validate_forest(s3, LabelledForest(3, v).canonical());
    if (s3.conjugate_into(c2b, a, c2)) {
      ++admitted;
      CHECK(res.valid);
    } else {
      CHECK_FALSE(res.valid);
      CHECK(res.rule == 4);
    }
  }
  CHECK(admitted == 1);
}

TEST_CASE("malformed forests") {
  CHECK_THROWS_AS(LabelledForest(2, {{1, 1, 0, 0}, {0, 0, 1, 0}}).check_structure(), MalformedForest);
  CHECK_THROWS_AS(LabelledForest(2, {{-1, 0, 1, 0}, {0, 1, 0, 0}, {0, 1, 0, 0}}).check_structure(), MalformedForest);
  CHECK_THROWS_AS(LabelledForest(2, {{-1, 0, 1, 0}, {-1, 0, 1, 0}, {0, 1, 0, 0}, {-1, 2, 0, 0}}).check_structure(),
                  MalformedForest);
}

TEST_CASE("one-vertex trees") {
  const auto k = fixtures::klein(2);
  const std::size_t h1 = 1;
  const ElementId g = k.coset_reps(h1).back();
  const LabelledForest f(2, {{-1, 0, h1, 0}, {0, 1, 0, 0}, {0, 2, 0, g}});
  const auto blocks = forest_to_blocks(k, f.canonical());
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0] == Block{h1, {1, 2}, {0, g}});

  const auto k3 = fixtures::klein(3);
  const BuildingSet bs(k3);
  const NestedSet single{bs.index_of(Block{h1, {1}, {0}})};
  const auto tree = nested_to_forest(bs, single);
  CHECK(tree.roots().size() == 3);
  CHECK(tree.fallen_leaves() == std::vector<int>{2, 3});
  CHECK(forest_to_nested(bs, tree) == single);
  const auto d = decompose_forest(k3, tree);
  CHECK(d.components == 3);
  CHECK(d.by_label.size() == 1);
  CHECK(d.by_label.at(h1).trees == 1);
  CHECK(d.by_label.at(h1).labelled_leaves == 1);
}

TEST_CASE("forest counts equal nested-set counts") {
  CHECK(generate_forests(fixtures::cyclic(2, 1)).size() == 1);
  for (int n = 1; n <= 3; ++n) {
    for (const auto& inst : {fixtures::cyclic(2, n), fixtures::cyclic(3, n), fixtures::klein_matrices(n)}) {
      const BuildingSet bs(inst);
      const auto nested = enumerate_nested_sets(bs);
      const auto generated = generate_forests(inst);
      CHECK(generated.size() == nested.size());
      CHECK(enumerate_forests(bs) == generated);
      for (const auto& f : generated) {
        CHECK(validate_forest(inst, f).valid);
        CHECK(f.canonical() == f);
      }
    }
  }
}

TEST_CASE("the nonabelian instance") {
  const auto s3 = fixtures::s3(2);
  const BuildingSet bs(s3);
  CHECK(generate_forests(s3).size() == enumerate_nested_sets(bs).size());
  const auto res = check_round_trips(bs);
  CHECK_MESSAGE(res.passed, res.detail);
}

TEST_CASE("round trips and rule variants") {
  for (const auto& inst : {fixtures::cyclic(4, 2), fixtures::klein_matrices(2), fixtures::cyclic(2, 3)}) {
    const BuildingSet bs(inst);
    for (const auto& s : enumerate_nested_sets(bs)) CHECK(forest_to_nested(bs, nested_to_forest(bs, s)) == s);
    const auto variants = check_rule_variants(inst);
    CHECK_MESSAGE(variants.passed, variants.detail);
  }
}

TEST_CASE("whole-group blocks in a nested set form a chain") {
  for (const auto& inst : {fixtures::klein_matrices(3), fixtures::cyclic(3, 3)}) {
    const BuildingSet bs(inst);
    for (const auto& s : enumerate_nested_sets(bs)) {
      for (std::size_t a : s)
        for (std::size_t b : s)
          if (bs.blocks()[a].k == inst.whole_index() && bs.blocks()[b].k == inst.whole_index())
            CHECK(bs.comparable(a, b));
      int g_trees = 0;
      const auto f = nested_to_forest(bs, s);
      for (int r : f.roots()) {
        bool has_g = false;
        for (std::size_t v = 0; v < f.vertices().size(); ++v) {
          int x = static_cast<int>(v);
          while (f.vertices()[static_cast<std::size_t>(x)].parent >= 0) x = f.vertices()[static_cast<std::size_t>(x)].parent;
          if (x == r && !f.vertices()[v].is_leaf() && f.vertices()[v].label == inst.whole_index()) has_g = true;
        }
        g_trees += has_g;
      }
      CHECK(g_trees <= 1);
    }
  }
}

TEST_CASE("bracket notation") {
  const auto z2 = fixtures::cyclic(2, 2);
  const auto forests = generate_forests(z2);
  std::set<std::string> names;
  for (const auto& f : forests) names.insert(forest_to_string(z2, f));
  CHECK(names.size() == forests.size());
  CHECK(names.count("G(e:1) | 2") == 1);
}

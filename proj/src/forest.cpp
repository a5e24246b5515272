#include "dowling/forest.hpp"

#include "dowling/errors.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

namespace dowling {

LabelledForest::LabelledForest(int n, std::vector<ForestVertex> vertices) : n_(n), vertices_(std::move(vertices)) {}

std::vector<int> LabelledForest::children(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].parent == v) out.push_back(static_cast<int>(i));
  std::sort(out.begin(), out.end(), [&](int a, int b) { return min_leaf(a) < min_leaf(b); });
  return out;
}

std::vector<int> LabelledForest::roots() const { return children(-1); }

std::vector<int> LabelledForest::fallen_leaves() const {
  std::vector<int> out;
  for (const auto& v : vertices_)
    if (v.parent < 0 && v.is_leaf()) out.push_back(v.leaf);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> LabelledForest::leaves_below(int v) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!vertices_[i].is_leaf()) continue;
    int x = static_cast<int>(i);
    for (std::size_t steps = 0; x >= 0 && steps <= vertices_.size(); ++steps) {
      if (x == v) {
        out.push_back(vertices_[i].leaf);
        break;
      }
      x = vertices_[static_cast<std::size_t>(x)].parent;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int LabelledForest::min_leaf(int v) const {
  const auto l = leaves_below(v);
  return l.empty() ? n_ + 1 : l.front();
}

void LabelledForest::check_structure() const {
  const int m = static_cast<int>(vertices_.size());
  std::vector<int> seen(static_cast<std::size_t>(n_) + 1, 0);
  std::vector<int> child_count(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    const auto& v = vertices_[static_cast<std::size_t>(i)];
    if (v.parent < -1 || v.parent >= m || v.parent == i) throw MalformedForest("vertex " + std::to_string(i) + " has an invalid parent");
    if (v.parent >= 0) {
      if (vertices_[static_cast<std::size_t>(v.parent)].is_leaf()) {
        throw MalformedForest("leaf vertex " + std::to_string(v.parent) + " has a child");
      }
      ++child_count[static_cast<std::size_t>(v.parent)];
    }
    if (v.is_leaf()) {
      if (v.leaf < 1 || v.leaf > n_) throw MalformedForest("leaf label " + std::to_string(v.leaf) + " out of range");
      if (seen[static_cast<std::size_t>(v.leaf)]++) throw MalformedForest("duplicate leaf label " + std::to_string(v.leaf));
    }
    // walk to the root; a cycle never reaches -1
    int x = i;
    for (int steps = 0; x >= 0; ++steps) {
      if (steps > m) throw MalformedForest("parent links contain a cycle");
      x = vertices_[static_cast<std::size_t>(x)].parent;
    }
  }
  for (int l = 1; l <= n_; ++l)
    if (!seen[static_cast<std::size_t>(l)]) throw MalformedForest("leaf label " + std::to_string(l) + " is missing");
  for (int i = 0; i < m; ++i)
    if (!vertices_[static_cast<std::size_t>(i)].is_leaf() && child_count[static_cast<std::size_t>(i)] == 0) {
      throw MalformedForest("internal vertex " + std::to_string(i) + " has no children");
    }
}

LabelledForest LabelledForest::canonical() const {
  check_structure();
  std::vector<ForestVertex> out;
  std::function<void(int, int)> visit = [&](int v, int new_parent) {
    ForestVertex fv = vertices_[static_cast<std::size_t>(v)];
    fv.parent = new_parent;
    if (new_parent < 0) fv.edge = 0;
    const int me = static_cast<int>(out.size());
    out.push_back(fv);
    for (int c : children(v)) visit(c, me);
  };
  for (int r : roots()) visit(r, -1);
  return LabelledForest(n_, std::move(out));
}

namespace {

ForestCheck fail(int rule, std::string msg) { return ForestCheck{false, rule, std::move(msg)}; }

}  // namespace

ForestCheck validate_forest(const ProblemInstance& inst, const LabelledForest& f, RuleSet rules) {
  f.check_structure();
  const auto& vs = f.vertices();
  const std::size_t whole = inst.whole_index();
  bool any_internal = false;
  for (const auto& v : vs) {
    if (v.is_leaf()) continue;
    any_internal = true;
    if (v.label >= inst.closed_count()) throw MalformedForest("vertex label is not a closed subgroup index");
  }
  if (!any_internal) return fail(0, "forest has no internal vertex");

  // (1)
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& w = vs[i];
    if (w.is_leaf() || w.parent < 0) continue;
    const auto& v = vs[static_cast<std::size_t>(w.parent)];
    if (!inst.class_leq(w.label, v.label)) {
      return fail(1, "vertex " + std::to_string(i) + " label not below its parent's label");
    }
  }
  // (2)
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].is_leaf()) continue;
    const auto kids = f.children(static_cast<int>(i));
    if (kids.size() != 1) continue;
    const auto& w = vs[static_cast<std::size_t>(kids[0])];
    if (w.is_leaf()) {
      if (vs[i].label == inst.trivial_index()) return fail(2, "unary {e}-vertex over a leaf");
    } else {
      const bool strictly_below =
          rules == RuleSet::Abelian
              ? (w.label != vs[i].label &&
                 inst.closed_subgroup(w.label).is_subset_of(inst.closed_subgroup(vs[i].label)))
              : (inst.class_leq(w.label, vs[i].label) && inst.class_index(w.label) != inst.class_index(vs[i].label));
      if (!strictly_below) return fail(2, "unary vertex over a vertex whose label is not strictly smaller");
    }
  }
  // (3)
  int g_trees = 0;
  for (int r : f.roots()) {
    bool has_g = false;
    std::function<void(int)> scan = [&](int v) {
      if (!vs[static_cast<std::size_t>(v)].is_leaf() && vs[static_cast<std::size_t>(v)].label == whole) has_g = true;
      for (int c : f.children(v)) scan(c);
    };
    scan(r);
    g_trees += has_g ? 1 : 0;
  }
  if (g_trees > 1) return fail(3, "label G appears in more than one tree");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].is_leaf() || vs[i].label != whole) continue;
    int g_kids = 0;
    for (int c : f.children(static_cast<int>(i)))
      if (!vs[static_cast<std::size_t>(c)].is_leaf() && vs[static_cast<std::size_t>(c)].label == whole) ++g_kids;
    if (g_kids > 1) return fail(3, "G-vertex with more than one G-labelled child");
  }
  // (4)
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& w = vs[i];
    if (w.parent < 0) continue;
    const std::size_t q = vs[static_cast<std::size_t>(w.parent)].label;
    if (w.edge < 0 || w.edge >= inst.group().order() || inst.coset_rep(q, w.edge) != w.edge) {
      return fail(4, "edge label is not a canonical coset representative of the parent's subgroup");
    }
    if (rules == RuleSet::General && !w.is_leaf() && !inst.conjugate_into(w.label, w.edge, q)) {
      return fail(4, "edge coset aQ with a^-1 P a not contained in Q");
    }
  }
  // (5)
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].is_leaf()) continue;
    const auto kids = f.children(static_cast<int>(i));
    if (vs[static_cast<std::size_t>(kids.front())].edge != inst.group().identity()) {
      return fail(5, "edge towards the smallest leaf is not eK");
    }
  }
  return {};
}

std::vector<Block> forest_to_blocks(const ProblemInstance& inst, const LabelledForest& f) {
  const auto& vs = f.vertices();
  const auto& grp = inst.group();
  std::vector<Block> out;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v].is_leaf()) continue;
    std::vector<int> idx;
    std::vector<ElementId> gs;
    std::function<void(int, ElementId)> down = [&](int x, ElementId prod) {
      for (int c : f.children(x)) {
        const ElementId next = grp.mul(vs[static_cast<std::size_t>(c)].edge, prod);
        if (vs[static_cast<std::size_t>(c)].is_leaf()) {
          idx.push_back(vs[static_cast<std::size_t>(c)].leaf);
          gs.push_back(next);
        } else {
          down(c, next);
        }
      }
    };
    down(static_cast<int>(v), grp.identity());
    out.push_back(normalize_block(inst, inst.closed_subgroup(vs[v].label), idx, gs));
  }
  std::sort(out.begin(), out.end());
  return out;
}

NestedSet forest_to_nested(const BuildingSet& bs, const LabelledForest& f) {
  NestedSet s;
  for (const auto& b : forest_to_blocks(bs.instance(), f)) s.push_back(bs.index_of(b));
  std::sort(s.begin(), s.end());
  return s;
}

LabelledForest nested_to_forest(const BuildingSet& bs, const NestedSet& s) {
  const auto& inst = bs.instance();
  const int n = inst.n();
  const std::size_t m = s.size();
  // vertices 0..m-1 are the blocks, then one vertex per leaf
  std::vector<ForestVertex> vs(m + static_cast<std::size_t>(n));
  auto deeper = [&](std::size_t a, std::size_t b) {  // block a strictly contained in block b as subspaces
    return a != b && bs.leq(s[b], s[a]);
  };
  for (std::size_t a = 0; a < m; ++a) {
    vs[a].label = bs.blocks()[s[a]].k;
    int parent = -1;
    for (std::size_t c = 0; c < m; ++c) {
      if (!deeper(c, a)) continue;
      if (parent < 0 || deeper(static_cast<std::size_t>(parent), c)) parent = static_cast<int>(c);
    }
    vs[a].parent = parent;
  }
  auto coset_of = [&](std::size_t a, int leaf) {
    const Block& b = bs.blocks()[s[a]];
    const auto it = std::find(b.indices.begin(), b.indices.end(), leaf);
    return b.cosets[static_cast<std::size_t>(it - b.indices.begin())];
  };
  for (int leaf = 1; leaf <= n; ++leaf) {
    auto& lv = vs[m + static_cast<std::size_t>(leaf - 1)];
    lv.leaf = leaf;
    int parent = -1;
    for (std::size_t a = 0; a < m; ++a) {
      const auto& idx = bs.blocks()[s[a]].indices;
      if (std::find(idx.begin(), idx.end(), leaf) == idx.end()) continue;
      if (parent < 0 || deeper(static_cast<std::size_t>(parent), a)) parent = static_cast<int>(a);
    }
    lv.parent = parent;
    if (parent >= 0) lv.edge = coset_of(static_cast<std::size_t>(parent), leaf);
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (vs[a].parent < 0) continue;
    const int first = bs.blocks()[s[a]].indices.front();
    vs[a].edge = coset_of(static_cast<std::size_t>(vs[a].parent), first);
  }
  LabelledForest f = LabelledForest(n, std::move(vs));
  try {
    f = f.canonical();
  } catch (const MalformedForest& e) {
    throw NotRealizable(std::string("nested set does not form a forest: ") + e.what());
  }
  if (forest_to_nested(bs, f) != s) throw NotRealizable("forest built from nested set does not map back to it");
  return f;
}

std::vector<LabelledForest> enumerate_forests(const BuildingSet& bs) {
  std::vector<LabelledForest> out;
  for (const auto& s : enumerate_nested_sets(bs)) out.push_back(nested_to_forest(bs, s));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct Node {
  int leaf = 0;
  std::size_t label = 0;
  ElementId edge = 0;
  bool has_whole = false;
  std::vector<std::shared_ptr<const Node>> children;
};
using NodePtr = std::shared_ptr<const Node>;

// Set partitions of `mask` with blocks ordered by smallest element.
void set_partitions(unsigned mask, std::vector<unsigned>& cur, const std::function<void(const std::vector<unsigned>&)>& f) {
  if (mask == 0) {
    f(cur);
    return;
  }
  const unsigned low = mask & (~mask + 1);
  const unsigned rest = mask ^ low;
  // iterate all subsets of rest (including empty)
  for (unsigned sub = rest;; sub = (sub - 1) & rest) {
    cur.push_back(low | sub);
    set_partitions(rest ^ sub, cur, f);
    cur.pop_back();
    if (sub == 0) break;
  }
}

class ForestGenerator {
public:
  explicit ForestGenerator(const ProblemInstance& inst) : inst_(inst) {}

  // Internal vertices labelled q whose leaf set is exactly mask.
  const std::vector<NodePtr>& internal(unsigned mask, std::size_t q) {
    const auto key = std::make_pair(mask, q);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<NodePtr> out;
    std::vector<unsigned> parts;
    set_partitions(mask, parts, [&](const std::vector<unsigned>& blocks) {
      const bool unary = blocks.size() == 1;
      // child options per block, with admissible edge labels
      std::vector<std::vector<NodePtr>> options(blocks.size());
      for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
        const unsigned b = blocks[bi];
        std::vector<NodePtr> subtrees;
        if ((b & (b - 1)) == 0 && !(unary && q == inst_.trivial_index())) {
          auto leaf = std::make_shared<Node>();
          leaf->leaf = std::countr_zero(b) + 1;
          subtrees.push_back(leaf);
        }
        for (std::size_t p = 0; p < inst_.closed_count(); ++p) {
          if (!inst_.class_leq(p, q)) continue;
          if (unary && inst_.class_index(p) == inst_.class_index(q)) continue;
          if (b == mask && !unary) continue;
          for (const auto& t : internal(b, p)) subtrees.push_back(t);
        }
        for (const auto& t : subtrees) {
          for (ElementId a : inst_.coset_reps(q)) {
            if (bi == 0 && a != inst_.group().identity()) continue;  // (5)
            if (t->leaf == 0 && !inst_.conjugate_into(t->label, a, q)) continue;  // (4)
            auto e = std::make_shared<Node>(*t);
            e->edge = a;
            options[bi].push_back(e);
          }
        }
        if (options[bi].empty()) return;
      }
      std::vector<std::size_t> pick(blocks.size(), 0);
      while (true) {
        auto v = std::make_shared<Node>();
        v->label = q;
        v->has_whole = q == inst_.whole_index();
        int whole_children = 0;
        for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
          const auto& c = options[bi][pick[bi]];
          v->children.push_back(c);
          v->has_whole = v->has_whole || c->has_whole;
          if (c->leaf == 0 && c->label == inst_.whole_index()) ++whole_children;
        }
        if (!(q == inst_.whole_index() && whole_children > 1)) out.push_back(v);  // (3)
        std::size_t pos = 0;
        while (pos < blocks.size() && ++pick[pos] == options[pos].size()) pick[pos++] = 0;
        if (pos == blocks.size()) break;
      }
    });
    return memo_.emplace(key, std::move(out)).first->second;
  }

  std::vector<LabelledForest> all() {
    const int n = inst_.n();
    const unsigned full = (1u << n) - 1;
    std::vector<LabelledForest> out;
    std::vector<unsigned> parts;
    set_partitions(full, parts, [&](const std::vector<unsigned>& comps) {
      std::vector<std::vector<NodePtr>> options(comps.size());
      for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        if ((comps[ci] & (comps[ci] - 1)) == 0) {
          auto leaf = std::make_shared<Node>();
          leaf->leaf = std::countr_zero(comps[ci]) + 1;
          options[ci].push_back(leaf);
        }
        for (std::size_t q = 0; q < inst_.closed_count(); ++q)
          for (const auto& t : internal(comps[ci], q)) options[ci].push_back(t);
      }
      std::vector<std::size_t> pick(comps.size(), 0);
      while (true) {
        int whole_trees = 0;
        bool any_internal = false;
        for (std::size_t ci = 0; ci < comps.size(); ++ci) {
          const auto& t = options[ci][pick[ci]];
          whole_trees += t->has_whole ? 1 : 0;
          any_internal = any_internal || t->leaf == 0;
        }
        if (whole_trees <= 1 && any_internal) {
          if (out.size() >= inst_.bounds().forests) {
            throw SizeBoundExceeded("more than " + std::to_string(inst_.bounds().forests) + " forests");
          }
          out.push_back(flatten(comps, options, pick));
        }
        std::size_t pos = 0;
        while (pos < comps.size() && ++pick[pos] == options[pos].size()) pick[pos++] = 0;
        if (pos == comps.size()) break;
      }
    });
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  LabelledForest flatten(const std::vector<unsigned>& comps, const std::vector<std::vector<NodePtr>>& options,
                         const std::vector<std::size_t>& pick) const {
    std::vector<ForestVertex> vs;
    std::function<void(const Node&, int)> emit = [&](const Node& x, int parent) {
      ForestVertex v;
      v.parent = parent;
      v.leaf = x.leaf;
      v.label = x.leaf ? 0 : x.label;
      v.edge = parent < 0 ? 0 : x.edge;
      const int me = static_cast<int>(vs.size());
      vs.push_back(v);
      for (const auto& c : x.children) emit(*c, me);
    };
    for (std::size_t ci = 0; ci < comps.size(); ++ci) emit(*options[ci][pick[ci]], -1);
    return LabelledForest(inst_.n(), std::move(vs)).canonical();
  }

  const ProblemInstance& inst_;
  std::map<std::pair<unsigned, std::size_t>, std::vector<NodePtr>> memo_;
};

}  // namespace

std::vector<LabelledForest> generate_forests(const ProblemInstance& inst) {
  if (inst.n() > 16) throw SizeBoundExceeded("direct forest generation supports n <= 16");
  return ForestGenerator(inst).all();
}

ForestDecomposition decompose_forest(const ProblemInstance& inst, const LabelledForest& f) {
  const auto& vs = f.vertices();
  ForestDecomposition d;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& v = vs[i];
    if (v.parent < 0) {
      ++d.components;
      if (v.is_leaf()) ++d.fallen;
    }
    if (v.is_leaf()) {
      if (v.parent >= 0) ++d.by_label[vs[static_cast<std::size_t>(v.parent)].label].labelled_leaves;
      continue;
    }
    auto& sf = d.by_label[v.label];
    sf.label = v.label;
    ++sf.vertices;
    if (v.label == inst.whole_index()) d.has_whole_group = true;
    if (v.parent < 0 || vs[static_cast<std::size_t>(v.parent)].label != v.label) ++sf.trees;
    if (v.parent >= 0 && vs[static_cast<std::size_t>(v.parent)].label != v.label) {
      ++d.by_label[vs[static_cast<std::size_t>(v.parent)].label].glued_leaves;
    }
  }
  for (auto& [k, sf] : d.by_label) sf.label = k;
  return d;
}

std::string forest_to_string(const ProblemInstance& inst, const LabelledForest& f) {
  const auto& vs = f.vertices();
  std::ostringstream os;
  std::function<void(int)> put = [&](int v) {
    const auto& x = vs[static_cast<std::size_t>(v)];
    if (x.is_leaf()) {
      os << x.leaf;
      return;
    }
    os << inst.closed_name(x.label) << '(';
    bool first = true;
    for (int c : f.children(v)) {
      os << (first ? "" : ",") << inst.group().element_name(vs[static_cast<std::size_t>(c)].edge) << ':';
      first = false;
      put(c);
    }
    os << ')';
  };
  bool first = true;
  for (int r : f.roots()) {
    os << (first ? "" : " | ");
    first = false;
    put(r);
  }
  return os.str();
}

}  // namespace dowling

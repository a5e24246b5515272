#include "dowling/arrangement.hpp"

#include "dowling/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace dowling {

namespace {

// Rows (v_j - rho(g) v_i) for slots i, j (1-based); i == j gives (rho(g) - I) v_i.
RMatrix slot_relation(const ProblemInstance& inst, int i, int j, ElementId g) {
  const std::size_t d = inst.rep().realized_dim();
  const std::size_t n = inst.ambient_dim();
  const RMatrix& m = inst.rep().matrix(g);
  RMatrix rows(d, n);
  const std::size_t oi = static_cast<std::size_t>(i - 1) * d;
  const std::size_t oj = static_cast<std::size_t>(j - 1) * d;
  for (std::size_t k = 0; k < d; ++k) {
    rows(k, oj + k) += 1;
    for (std::size_t l = 0; l < d; ++l) rows(k, oi + l) -= m(k, l);
  }
  return rows;
}

}  // namespace

std::vector<ArrangementSubspace> raw_arrangement(const ProblemInstance& inst) {
  std::vector<ArrangementSubspace> out;
  const int n = inst.n();
  for (int i = 1; i <= n; ++i) {
    for (ElementId g = 1; g < inst.group().order(); ++g) out.push_back({i, i, g, kernel(slot_relation(inst, i, i, g))});
    for (int j = i + 1; j <= n; ++j)
      for (ElementId g = 0; g < inst.group().order(); ++g)
        out.push_back({i, j, g, kernel(slot_relation(inst, i, j, g))});
  }
  return out;
}

std::size_t IntersectionLattice::index_of(const Subspace& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) throw InputError("subspace is not in the intersection lattice");
  return it->second;
}

IntersectionLattice intersection_lattice(const ProblemInstance& inst) {
  std::vector<Subspace> atoms;
  {
    std::unordered_map<Subspace, char, SubspaceHash> seen;
    for (auto& a : raw_arrangement(inst))
      if (seen.emplace(a.space, 1).second) atoms.push_back(std::move(a.space));
  }
  std::vector<Subspace> elems{Subspace::full(inst.ambient_dim())};
  std::unordered_map<Subspace, std::size_t, SubspaceHash> index{{elems[0], 0}};
  std::vector<std::vector<std::size_t>> covers;
  for (std::size_t cur = 0; cur < elems.size(); ++cur) {
    std::vector<std::size_t> cand;
    for (const auto& a : atoms) {
      if (contains(a, elems[cur])) continue;
      Subspace x = intersect(elems[cur], a);
      auto [it, inserted] = index.emplace(x, elems.size());
      if (inserted) {
        if (elems.size() >= inst.bounds().lattice) {
          throw SizeBoundExceeded("intersection lattice exceeds " + std::to_string(inst.bounds().lattice) +
                                  " elements");
        }
        elems.push_back(std::move(x));
      }
      cand.push_back(it->second);
    }
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    std::vector<std::size_t> maximal;
    for (std::size_t a : cand) {
      bool is_max = true;
      for (std::size_t b : cand)
        if (a != b && elems[b].dim() > elems[a].dim() && contains(elems[b], elems[a])) {
          is_max = false;
          break;
        }
      if (is_max) maximal.push_back(a);
    }
    covers.push_back(std::move(maximal));
  }
  // Canonical order: larger subspaces first, ties by basis.
  std::vector<std::size_t> perm(elems.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    if (elems[a].dim() != elems[b].dim()) return elems[a].dim() > elems[b].dim();
    return elems[a] < elems[b];
  });
  std::vector<std::size_t> where(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) where[perm[i]] = i;
  IntersectionLattice lat;
  lat.elements_.reserve(elems.size());
  lat.covers_.resize(elems.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    lat.elements_.push_back(elems[perm[i]]);
    for (std::size_t c : covers[perm[i]]) lat.covers_[i].push_back(where[c]);
    std::sort(lat.covers_[i].begin(), lat.covers_[i].end());
    lat.index_.emplace(lat.elements_.back(), i);
  }
  return lat;
}

Block normalize_block(const ProblemInstance& inst, const Subgroup& k, std::vector<int> indices,
                      std::vector<ElementId> cosets) {
  if (indices.empty() || indices.size() != cosets.size()) throw InputError("block needs matching indices and cosets");
  std::vector<std::size_t> order(indices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return indices[a] < indices[b]; });
  std::vector<int> idx;
  std::vector<ElementId> gs;
  for (std::size_t o : order) {
    idx.push_back(indices[o]);
    gs.push_back(cosets[o]);
  }
  for (std::size_t r = 1; r < idx.size(); ++r)
    if (idx[r] == idx[r - 1]) throw InputError("block has a repeated index");
  const auto& grp = inst.group();
  const ElementId g = gs[0];
  const ElementId gi = grp.inv(g);
  const Subgroup kg = conjugate_subgroup(grp, k, g);
  const std::size_t ki = inst.closed().index_of(kg);
  Block b{ki, idx, {}};
  for (ElementId x : gs) b.cosets.push_back(inst.coset_rep(ki, grp.mul(x, gi)));
  if (b.indices.size() == 1 && ki == inst.trivial_index()) {
    throw InputError("single-index block with trivial subgroup is the whole space");
  }
  return b;
}

Subspace block_subspace(const ProblemInstance& inst, const Block& b) {
  const std::size_t d = inst.rep().realized_dim();
  const std::size_t amb = inst.ambient_dim();
  const Subspace& fix = inst.closed_fix(b.k);
  RMatrix rows(0, amb);
  for (std::size_t f = 0; f < fix.dim(); ++f) {
    const auto v = fix.basis().row(f);
    std::vector<Rational> w(amb);
    for (std::size_t r = 0; r < b.indices.size(); ++r) {
      const RMatrix& m = inst.rep().matrix(b.cosets[r]);
      const std::size_t off = static_cast<std::size_t>(b.indices[r] - 1) * d;
      for (std::size_t a = 0; a < d; ++a)
        for (std::size_t c = 0; c < d; ++c) w[off + a] += m(a, c) * v[c];
    }
    rows.append_row(w);
  }
  for (int slot = 1; slot <= inst.n(); ++slot) {
    if (std::find(b.indices.begin(), b.indices.end(), slot) != b.indices.end()) continue;
    for (std::size_t a = 0; a < d; ++a) {
      std::vector<Rational> w(amb);
      w[static_cast<std::size_t>(slot - 1) * d + a] = 1;
      rows.append_row(w);
    }
  }
  return Subspace::span(amb, rows);
}

std::vector<Block> building_blocks(const ProblemInstance& inst) {
  const int n = inst.n();
  std::vector<Block> all;
  for (std::size_t k = 0; k < inst.closed_count(); ++k) {
    const auto& reps = inst.coset_reps(k);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> idx;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) idx.push_back(i + 1);
      if (idx.size() == 1 && k == inst.trivial_index()) continue;
      std::size_t combos = 1;
      for (std::size_t r = 1; r < idx.size(); ++r) combos *= reps.size();
      for (std::size_t c = 0; c < combos; ++c) {
        Block b{k, idx, {0}};
        std::size_t code = c;
        for (std::size_t r = 1; r < idx.size(); ++r) {
          b.cosets.push_back(reps[code % reps.size()]);
          code /= reps.size();
        }
        all.push_back(std::move(b));
      }
    }
  }
  std::sort(all.begin(), all.end());
  std::unordered_map<Subspace, char, SubspaceHash> seen;
  std::vector<Block> out;
  for (auto& b : all)
    if (seen.emplace(block_subspace(inst, b), 1).second) out.push_back(std::move(b));
  return out;
}

bool block_leq(const ProblemInstance& inst, const Block& b1, const Block& b2) {
  const auto& grp = inst.group();
  std::vector<std::size_t> pos(b1.indices.size());
  for (std::size_t r = 0; r < b1.indices.size(); ++r) {
    auto it = std::find(b2.indices.begin(), b2.indices.end(), b1.indices[r]);
    if (it == b2.indices.end()) return false;  // (1)
    pos[r] = static_cast<std::size_t>(it - b2.indices.begin());
  }
  const Subgroup& k2 = inst.closed_subgroup(b2.k);
  for (std::size_t r = 0; r < b1.indices.size(); ++r) {
    // (2): Fix(K) contains g_r^-1 h_t Fix(K'), i.e. x^-1 K x in K' for x = g_r^-1 h_t
    const ElementId x = grp.mul(grp.inv(b1.cosets[r]), b2.cosets[pos[r]]);
    if (!inst.conjugate_into(b1.k, x, b2.k)) return false;
  }
  for (std::size_t r = 0; r < b1.indices.size(); ++r)
    for (std::size_t th = 0; th < b1.indices.size(); ++th) {
      // (3): h_gamma^-1 g_theta g_r^-1 h_t in K'
      const ElementId y = grp.mul(grp.mul(grp.inv(b2.cosets[pos[th]]), b1.cosets[th]),
                                  grp.mul(grp.inv(b1.cosets[r]), b2.cosets[pos[r]]));
      if (!k2.contains(y)) return false;
    }
  return true;
}

bool blocks_compatible(const ProblemInstance& inst, const Block& b1, const Block& b2) {
  if (block_leq(inst, b1, b2) || block_leq(inst, b2, b1)) return true;
  for (int i : b1.indices)
    if (std::find(b2.indices.begin(), b2.indices.end(), i) != b2.indices.end()) return false;
  return !(b1.k == inst.whole_index() && b2.k == inst.whole_index());
}

std::string block_name(const ProblemInstance& inst, const Block& b) {
  std::ostringstream os;
  os << "H^" << inst.closed_name(b.k) << '(';
  for (std::size_t r = 0; r < b.indices.size(); ++r)
    os << (r ? "," : "") << b.indices[r] << '^' << inst.group().element_name(b.cosets[r]);
  os << ')';
  return os.str();
}

BuildingSet::BuildingSet(const ProblemInstance& inst) : inst_(&inst), blocks_(building_blocks(inst)) {
  const std::size_t m = blocks_.size();
  spaces_.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    spaces_.push_back(block_subspace(inst, blocks_[i]));
    by_space_.emplace(spaces_.back(), i);
  }
  leq_.assign(m * m, 0);
  compatible_.assign(m * m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) leq_[a * m + b] = block_leq(inst, blocks_[a], blocks_[b]);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      bool ok = leq(a, b) || leq(b, a);
      if (!ok) {
        ok = !(blocks_[a].k == inst.whole_index() && blocks_[b].k == inst.whole_index());
        for (int i : blocks_[a].indices)
          if (std::find(blocks_[b].indices.begin(), blocks_[b].indices.end(), i) != blocks_[b].indices.end()) ok = false;
      }
      compatible_[a * m + b] = ok;
    }
}

std::size_t BuildingSet::index_of(const Block& b) const {
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), b);
  if (it == blocks_.end() || *it != b) throw InputError("not a building block of this instance");
  return static_cast<std::size_t>(it - blocks_.begin());
}

std::size_t BuildingSet::find_subspace(const Subspace& s) const {
  auto it = by_space_.find(s);
  return it == by_space_.end() ? npos : it->second;
}

namespace {

// Checks every antichain that contains `anchor` and otherwise uses members of
// `pool` (linear-algebra containment only). Returns false on the first bad one.
bool antichains_ok(const BuildingSet& bs, std::size_t anchor, const std::vector<std::size_t>& pool) {
  std::vector<std::size_t> chosen{anchor};
  std::function<bool(std::size_t, const Subspace&, std::size_t)> rec = [&](std::size_t from, const Subspace& inter,
                                                                           std::size_t codims) -> bool {
    for (std::size_t p = from; p < pool.size(); ++p) {
      const std::size_t c = pool[p];
      bool incomparable = true;
      for (std::size_t x : chosen)
        if (contains(bs.subspace(x), bs.subspace(c)) || contains(bs.subspace(c), bs.subspace(x))) {
          incomparable = false;
          break;
        }
      if (!incomparable) continue;
      const Subspace next = intersect(inter, bs.subspace(c));
      const std::size_t next_codims = codims + bs.subspace(c).codim();
      if (next.codim() != next_codims) return false;
      if (bs.find_subspace(next) != BuildingSet::npos) return false;
      chosen.push_back(c);
      const bool ok = rec(p + 1, next, next_codims);
      chosen.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return rec(0, bs.subspace(anchor), bs.subspace(anchor).codim());
}

}  // namespace

bool is_nested(const BuildingSet& bs, const NestedSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    const std::vector<std::size_t> rest(s.begin() + static_cast<std::ptrdiff_t>(a) + 1, s.end());
    if (!antichains_ok(bs, s[a], rest)) return false;
  }
  return true;
}

bool is_pairwise_compatible(const BuildingSet& bs, const NestedSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (!bs.compatible(s[a], s[b])) return false;
  return true;
}

std::vector<NestedSet> enumerate_nested_sets(const BuildingSet& bs, NestedSearch search) {
  std::vector<NestedSet> out;
  NestedSet cur;
  const std::size_t cap = bs.instance().bounds().nested;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    for (std::size_t b = from; b < bs.size(); ++b) {
      bool ok = true;
      for (std::size_t x : cur)
        if (search == NestedSearch::Compatible && !bs.compatible(x, b)) {
          ok = false;
          break;
        }
      if (!ok || !antichains_ok(bs, b, cur)) continue;
      cur.push_back(b);
      if (out.size() >= cap) throw SizeBoundExceeded("more than " + std::to_string(cap) + " nested sets");
      out.push_back(cur);
      rec(b + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace dowling

#include "dowling/group.hpp"

#include "dowling/errors.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace dowling {

Subgroup::Subgroup(std::vector<ElementId> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool Subgroup::contains(ElementId g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(), elements_.end());
}

std::strong_ordering Subgroup::operator<=>(const Subgroup& other) const {
  if (auto c = elements_.size() <=> other.elements_.size(); c != 0) return c;
  return elements_ <=> other.elements_;
}

FiniteGroup FiniteGroup::from_cayley(const std::vector<std::vector<int>>& table, int order_bound) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw InputError("cayley table is empty");
  if (n > order_bound) {
    throw OrderBoundExceeded("group order " + std::to_string(n) + " exceeds bound " + std::to_string(order_bound));
  }
  FiniteGroup g;
  g.order_ = n;
  g.mul_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[i].size()) != n) {
      throw InputError("cayley table row " + std::to_string(i) + " has " + std::to_string(table[i].size()) +
                       " entries, expected " + std::to_string(n));
    }
    for (int j = 0; j < n; ++j) {
      const int v = table[i][j];
      if (v < 0 || v >= n) {
        throw InputError("cayley table entry [" + std::to_string(i) + "][" + std::to_string(j) + "] out of range");
      }
      g.mul_[static_cast<std::size_t>(i * n + j)] = v;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (g.mul(0, i) != i || g.mul(i, 0) != i) throw InputError("element 0 is not the identity of the cayley table");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))) {
          throw InputError("cayley table is not associative at (" + std::to_string(a) + "," + std::to_string(b) +
                           "," + std::to_string(c) + ")");
        }
  g.finish_construction();
  return g;
}

FiniteGroup FiniteGroup::from_invariant_factors(const std::vector<int>& factors, int order_bound) {
  long long order = 1;
  for (int d : factors) {
    if (d < 1) throw InputError("invariant factor must be positive");
    order *= d;
    if (order > order_bound) {
      throw OrderBoundExceeded("group order exceeds bound " + std::to_string(order_bound));
    }
  }
  FiniteGroup g;
  g.order_ = static_cast<int>(order);
  g.factors_ = factors;
  g.mul_.resize(static_cast<std::size_t>(order * order));
  for (int a = 0; a < g.order_; ++a) {
    const auto ta = g.element_tuple(a);
    for (int b = 0; b < g.order_; ++b) {
      auto tb = g.element_tuple(b);
      for (std::size_t i = 0; i < factors.size(); ++i) tb[i] = (ta[i] + tb[i]) % factors[i];
      g.mul_[static_cast<std::size_t>(a * g.order_ + b)] = g.element_from_tuple(tb);
    }
  }
  g.finish_construction();
  return g;
}

void FiniteGroup::finish_construction() {
  inv_.assign(static_cast<std::size_t>(order_), -1);
  for (int a = 0; a < order_; ++a) {
    for (int b = 0; b < order_; ++b) {
      if (mul(a, b) == 0 && mul(b, a) == 0) {
        inv_[static_cast<std::size_t>(a)] = b;
        break;
      }
    }
    if (inv_[static_cast<std::size_t>(a)] < 0) throw InputError("element " + std::to_string(a) + " has no inverse");
  }
  abelian_ = true;
  for (int a = 0; a < order_ && abelian_; ++a)
    for (int b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }
}

std::vector<int> FiniteGroup::element_tuple(ElementId g) const {
  if (!factors_) throw InputError("element tuples need an invariant-factor group");
  std::vector<int> t(factors_->size());
  for (std::size_t i = factors_->size(); i-- > 0;) {
    t[i] = g % (*factors_)[i];
    g /= (*factors_)[i];
  }
  return t;
}

ElementId FiniteGroup::element_from_tuple(std::span<const int> tuple) const {
  if (!factors_ || tuple.size() != factors_->size()) throw InputError("element tuple does not match invariant factors");
  int id = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    const int d = (*factors_)[i];
    id = id * d + ((tuple[i] % d) + d) % d;
  }
  return id;
}

std::string FiniteGroup::element_name(ElementId g) const {
  if (g == 0) return "e";
  if (factors_) {
    std::ostringstream os;
    os << '(';
    const auto t = element_tuple(g);
    for (std::size_t i = 0; i < t.size(); ++i) os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
  }
  return "g" + std::to_string(g);
}

Subgroup FiniteGroup::generated_by(std::span<const ElementId> generators) const {
  std::vector<char> seen(static_cast<std::size_t>(order_), 0);
  std::vector<ElementId> out{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (ElementId s : generators) {
      const ElementId x = mul(out[i], s);
      if (!seen[static_cast<std::size_t>(x)]) {
        seen[static_cast<std::size_t>(x)] = 1;
        out.push_back(x);
      }
    }
  }
  return Subgroup(std::move(out));
}

Subgroup FiniteGroup::whole() const {
  std::vector<ElementId> all(static_cast<std::size_t>(order_));
  std::iota(all.begin(), all.end(), 0);
  return Subgroup(std::move(all));
}

bool FiniteGroup::is_subgroup(const std::vector<ElementId>& elements) const {
  const Subgroup h(elements);
  if (!h.contains(0)) return false;
  for (ElementId a : h.elements()) {
    if (a < 0 || a >= order_) return false;
    if (!h.contains(inv(a))) return false;
    for (ElementId b : h.elements())
      if (!h.contains(mul(a, b))) return false;
  }
  return true;
}

std::vector<ElementId> FiniteGroup::generators_of(const Subgroup& h) const {
  std::vector<ElementId> gens;
  Subgroup span = trivial_subgroup();
  for (ElementId x : h.elements()) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = generated_by(gens);
    if (span.order() == h.order()) break;
  }
  return gens;
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& group, int order_bound) {
  if (group.order() > order_bound) {
    throw OrderBoundExceeded("group order " + std::to_string(group.order()) + " exceeds bound " +
                             std::to_string(order_bound));
  }
  // Every subgroup is reached from {e} by adjoining one element at a time.
  std::set<Subgroup> found{group.trivial_subgroup()};
  std::deque<Subgroup> work{group.trivial_subgroup()};
  while (!work.empty()) {
    const Subgroup h = work.front();
    work.pop_front();
    for (ElementId g = 0; g < group.order(); ++g) {
      if (h.contains(g)) continue;
      auto gens = group.generators_of(h);
      gens.push_back(g);
      Subgroup bigger = group.generated_by(gens);
      if (found.insert(bigger).second) work.push_back(std::move(bigger));
    }
  }
  return {found.begin(), found.end()};
}

Subgroup conjugate_subgroup(const FiniteGroup& group, const Subgroup& h, ElementId g) {
  std::vector<ElementId> out;
  out.reserve(h.order());
  for (ElementId x : h.elements()) out.push_back(group.conj(g, x));
  return Subgroup(std::move(out));
}

std::vector<Coset> left_cosets(const FiniteGroup& group, const Subgroup& k) {
  std::vector<char> used(static_cast<std::size_t>(group.order()), 0);
  std::vector<Coset> out;
  for (ElementId g = 0; g < group.order(); ++g) {
    if (used[static_cast<std::size_t>(g)]) continue;
    Coset c{g, {}};
    for (ElementId x : k.elements()) {
      const ElementId y = group.mul(g, x);
      used[static_cast<std::size_t>(y)] = 1;
      c.members.push_back(y);
    }
    std::sort(c.members.begin(), c.members.end());
    out.push_back(std::move(c));
  }
  return out;
}

ElementId coset_representative(const FiniteGroup& group, const Subgroup& k, ElementId g) {
  ElementId best = group.order();
  for (ElementId x : k.elements()) best = std::min(best, group.mul(g, x));
  return best;
}

bool conjugate_contained(const FiniteGroup& group, const Subgroup& p, const Subgroup& q) {
  if (p.order() > q.order() || q.order() % p.order() != 0) return false;
  for (ElementId g = 0; g < group.order(); ++g) {
    bool inside = true;
    for (ElementId x : p.elements()) {
      if (!q.contains(group.conj(g, x))) {
        inside = false;
        break;
      }
    }
    if (inside) return true;
  }
  return false;
}

ConjClassPoset::ConjClassPoset(const FiniteGroup& group, const std::vector<Subgroup>& subgroups) {
  std::vector<Subgroup> sorted = subgroups;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<char> assigned(sorted.size(), 0);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (assigned[i]) continue;
    std::set<Subgroup> orbit;
    for (ElementId g = 0; g < group.order(); ++g) orbit.insert(conjugate_subgroup(group, sorted[i], g));
    ConjClass cls{sorted[i], {orbit.begin(), orbit.end()}};
    for (const auto& m : cls.members) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), m);
      if (it == sorted.end() || *it != m) throw InputError("subgroup family is not closed under conjugation");
      assigned[static_cast<std::size_t>(it - sorted.begin())] = 1;
    }
    classes_.push_back(std::move(cls));
  }
  const std::size_t c = classes_.size();
  order_.assign(c * c, 0);
  for (std::size_t a = 0; a < c; ++a)
    for (std::size_t b = 0; b < c; ++b)
      order_[a * c + b] = conjugate_contained(group, classes_[a].representative, classes_[b].representative);
}

std::size_t ConjClassPoset::class_of(const Subgroup& h) const {
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    const auto& m = classes_[i].members;
    if (std::binary_search(m.begin(), m.end(), h)) return i;
  }
  throw InputError("subgroup is not in the conjugacy-class family");
}

ConjClassPoset subgroup_conj_classes(const FiniteGroup& group, int order_bound) {
  return ConjClassPoset(group, enumerate_subgroups(group, order_bound));
}

}  // namespace dowling

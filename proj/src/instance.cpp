#include "dowling/instance.hpp"

#include "dowling/errors.hpp"

#include <algorithm>
#include <sstream>

namespace dowling {

std::size_t ClosedSubgroupSet::index_of(const Subgroup& h) const {
  auto it = std::lower_bound(members.begin(), members.end(), h);
  if (it == members.end() || *it != h) throw InputError("subgroup is not closed");
  return static_cast<std::size_t>(it - members.begin());
}

bool ClosedSubgroupSet::is_closed(const Subgroup& h) const {
  return std::binary_search(members.begin(), members.end(), h);
}

Subgroup closure_phi(const FiniteGroup& group, const Representation& rep, const Subgroup& h) {
  const Subspace f = rep.fix(group, h);
  std::vector<ElementId> stab;
  for (ElementId g = 0; g < group.order(); ++g) {
    const RMatrix& m = rep.matrix(g);
    bool fixes = true;
    for (std::size_t r = 0; r < f.dim() && fixes; ++r) {
      const auto v = f.basis().row(r);
      for (std::size_t i = 0; i < m.rows() && fixes; ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * v[j];
        if (acc != v[i]) fixes = false;
      }
    }
    if (fixes) stab.push_back(g);
  }
  return Subgroup(std::move(stab));
}

ClosedSubgroupSet closed_subgroups(const FiniteGroup& group, const Representation& rep, int order_bound) {
  ClosedSubgroupSet out;
  for (const auto& h : enumerate_subgroups(group, order_bound)) {
    Subgroup c = closure_phi(group, rep, h);
    if (c == h) out.members.push_back(h);
    out.closure_map.emplace(h, std::move(c));
  }
  std::sort(out.members.begin(), out.members.end());
  return out;
}

ProblemInstance::ProblemInstance(int n, FiniteGroup group, Representation rep, Bounds bounds,
                                 std::map<Subgroup, std::string> names)
    : n_(n),
      group_(std::move(group)),
      rep_(std::move(rep)),
      bounds_(bounds),
      names_(std::move(names)),
      subgroups_(enumerate_subgroups(group_, bounds_.group_order)),
      closed_(closed_subgroups(group_, rep_, bounds_.group_order)),
      classes_(group_, closed_.members) {
  if (n_ < 1) throw InputError("n must be a positive integer");
  for (std::size_t k = 0; k < closed_.members.size(); ++k) {
    const Subgroup& c = closed_.members[k];
    closed_fix_.push_back(rep_.fix(group_, c));
    std::vector<ElementId> reps;
    for (const auto& coset : left_cosets(group_, c)) reps.push_back(coset.representative);
    coset_reps_.push_back(std::move(reps));
    std::vector<ElementId> table(static_cast<std::size_t>(group_.order()));
    for (ElementId g = 0; g < group_.order(); ++g) table[static_cast<std::size_t>(g)] = coset_representative(group_, c, g);
    coset_rep_table_.push_back(std::move(table));
    class_of_.push_back(classes_.class_of(c));
  }
}

bool ProblemInstance::conjugate_into(std::size_t p, ElementId a, std::size_t q) const {
  const Subgroup& pp = closed_.members[p];
  const Subgroup& qq = closed_.members[q];
  const ElementId ai = group_.inv(a);
  for (ElementId x : pp.elements())
    if (!qq.contains(group_.conj(ai, x))) return false;
  return true;
}

std::string ProblemInstance::subgroup_name(const Subgroup& h) const {
  if (auto it = names_.find(h); it != names_.end()) return it->second;
  if (h.order() == 1) return "{e}";
  if (static_cast<int>(h.order()) == group_.order()) return "G";
  std::ostringstream os;
  os << '<';
  const auto gens = group_.generators_of(h);
  for (std::size_t i = 0; i < gens.size(); ++i) os << (i ? "," : "") << group_.element_name(gens[i]);
  os << '>';
  return os.str();
}

ProblemInstance ProblemInstance::with_n(int n) const { return ProblemInstance(n, group_, rep_, bounds_, names_); }

}  // namespace dowling

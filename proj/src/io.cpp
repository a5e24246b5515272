#include "dowling/io.hpp"

#include "dowling/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace dowling {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) { throw InputError(field + ": " + what); }

const json& member(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) bad(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) bad(path + "." + key, "missing");
  return *it;
}

long long as_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) bad(path, "expected an integer");
  return v.get<long long>();
}

std::vector<int> int_list(const json& v, const std::string& path) {
  if (!v.is_array()) bad(path, "expected an array of integers");
  std::vector<int> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(static_cast<int>(as_int(v[i], path + "[" + std::to_string(i) + "]")));
  return out;
}

Rational as_rational(const json& v, const std::string& path) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) bad(path, "expected an integer or a \"p/q\" string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const std::exception& e) {
    bad(path, e.what());
  }
}

ElementId element_ref(const FiniteGroup& g, const json& v, const std::string& path) {
  if (v.is_array()) {
    if (!g.invariant_factors()) bad(path, "element tuples need an abelian group given by invariant factors");
    const auto tuple = int_list(v, path);
    try {
      return g.element_from_tuple(tuple);
    } catch (const std::exception& e) {
      bad(path, e.what());
    }
  }
  const long long id = as_int(v, path);
  if (id < 0 || id >= g.order()) bad(path, "element id out of range");
  return static_cast<ElementId>(id);
}

Bounds parse_bounds(const json& doc) {
  Bounds b;
  const auto it = doc.find("bounds");
  if (it == doc.end()) return b;
  if (!it->is_object()) bad("bounds", "expected an object");
  for (const auto& [key, value] : it->items()) {
    const std::string path = "bounds." + key;
    const long long x = as_int(value, path);
    if (x < 1) bad(path, "must be positive");
    if (key == "group_order") {
      b.group_order = static_cast<int>(x);
    } else if (key == "lattice") {
      b.lattice = static_cast<std::size_t>(x);
    } else if (key == "nested") {
      b.nested = static_cast<std::size_t>(x);
    } else if (key == "forests") {
      b.forests = static_cast<std::size_t>(x);
    } else {
      bad(path, "unknown bound");
    }
  }
  return b;
}

FiniteGroup parse_group(const json& doc, const Bounds& bounds) {
  const json& g = member(doc, "group", "instance");
  if (!g.is_object() || g.size() != 1) bad("group", "expected exactly one of \"abelian\" or \"cayley\"");
  try {
    if (g.contains("abelian")) {
      const auto factors = int_list(g["abelian"], "group.abelian");
      if (factors.empty()) bad("group.abelian", "needs at least one invariant factor");
      return FiniteGroup::from_invariant_factors(factors, bounds.group_order);
    }
    if (g.contains("cayley")) {
      const json& t = g["cayley"];
      if (!t.is_array()) bad("group.cayley", "expected an array of rows");
      std::vector<std::vector<int>> table;
      for (std::size_t i = 0; i < t.size(); ++i) table.push_back(int_list(t[i], "group.cayley[" + std::to_string(i) + "]"));
      return FiniteGroup::from_cayley(table, bounds.group_order);
    }
  } catch (const OrderBoundExceeded&) {
    throw;
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("group", 0) == 0) throw;
    bad("group", msg);
  }
  bad("group", "expected \"abelian\" or \"cayley\"");
}

Representation parse_representation(const json& doc, const FiniteGroup& group) {
  const json& r = member(doc, "representation", "instance");
  if (!r.is_object() || r.size() != 1) bad("representation", "expected exactly one of \"characters\" or \"generators\"");
  try {
    if (r.contains("characters")) {
      if (!group.invariant_factors()) bad("representation.characters", "characters need an abelian group given by invariant factors");
      const json& cs = r["characters"];
      if (!cs.is_array() || cs.empty()) bad("representation.characters", "expected a nonempty array of tuples");
      std::vector<std::vector<int>> chars;
      for (std::size_t i = 0; i < cs.size(); ++i) {
        chars.push_back(int_list(cs[i], "representation.characters[" + std::to_string(i) + "]"));
      }
      return Representation::from_characters(group, chars);
    }
    if (r.contains("generators")) {
      const json& gs = r["generators"];
      if (!gs.is_array() || gs.empty()) bad("representation.generators", "expected a nonempty array");
      std::vector<std::pair<ElementId, RMatrix>> gens;
      for (std::size_t i = 0; i < gs.size(); ++i) {
        const std::string path = "representation.generators[" + std::to_string(i) + "]";
        const ElementId g = element_ref(group, member(gs[i], "element", path), path + ".element");
        const json& m = member(gs[i], "matrix", path);
        if (!m.is_array() || m.empty()) bad(path + ".matrix", "expected a nonempty square array");
        const std::size_t d = m.size();
        RMatrix mat(d, d);
        for (std::size_t a = 0; a < d; ++a) {
          const std::string rp = path + ".matrix[" + std::to_string(a) + "]";
          if (!m[a].is_array() || m[a].size() != d) bad(rp, "expected a row of length " + std::to_string(d));
          for (std::size_t b = 0; b < d; ++b) mat(a, b) = as_rational(m[a][b], rp + "[" + std::to_string(b) + "]");
        }
        gens.emplace_back(g, std::move(mat));
      }
      return Representation::from_matrices(group, gens);
    }
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind("representation", 0) == 0) throw;
    bad("representation", msg);
  }
  bad("representation", "expected \"characters\" or \"generators\"");
}

}  // namespace

ProblemInstance parse_instance(const json& doc) {
  if (!doc.is_object()) bad("instance", "expected a JSON object");
  const long long n = as_int(member(doc, "n", "instance"), "n");
  if (n < 1 || n > 30) bad("n", "must be between 1 and 30");
  const Bounds bounds = parse_bounds(doc);
  FiniteGroup group = parse_group(doc, bounds);
  Representation rep = parse_representation(doc, group);
  std::map<Subgroup, std::string> names;
  if (const auto it = doc.find("names"); it != doc.end()) {
    if (!it->is_object()) bad("names", "expected an object");
    for (const auto& [name, elems] : it->items()) {
      const std::string path = "names." + name;
      if (!elems.is_array()) bad(path, "expected an array of elements");
      std::vector<ElementId> gens;
      for (std::size_t i = 0; i < elems.size(); ++i) gens.push_back(element_ref(group, elems[i], path + "[" + std::to_string(i) + "]"));
      names[group.generated_by(gens)] = name;
    }
  }
  return ProblemInstance(static_cast<int>(n), std::move(group), std::move(rep), bounds, std::move(names));
}

ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open instance file");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError(path + ": invalid JSON: " + e.what());
  }
  return parse_instance(doc);
}

namespace {

json element_list(const ProblemInstance& inst, const Subgroup& h) {
  json out = json::array();
  for (ElementId g : h.elements()) out.push_back(inst.group().element_name(g));
  return out;
}

json basis_json(const Subspace& s) {
  json rows = json::array();
  const auto& b = s.basis();
  for (std::size_t i = 0; i < b.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < b.cols(); ++j) row.push_back(to_string(b(i, j)));
    rows.push_back(row);
  }
  return rows;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

json closed_subgroups_json(const ProblemInstance& inst) {
  json out;
  json closed = json::array();
  for (std::size_t k = 0; k < inst.closed_count(); ++k) {
    closed.push_back({{"index", k},
                      {"name", inst.closed_name(k)},
                      {"elements", element_list(inst, inst.closed_subgroup(k))},
                      {"fixed_dim", inst.complex_dim(inst.closed_fix(k))},
                      {"conjugacy_class", inst.class_index(k)}});
  }
  json non_closed = json::array();
  for (const auto& h : inst.all_subgroups()) {
    if (inst.closed().is_closed(h)) continue;
    const Subgroup& image = inst.closed().closure_map.at(h);
    non_closed.push_back({{"name", inst.subgroup_name(h)},
                          {"elements", element_list(inst, h)},
                          {"closure", inst.subgroup_name(image)}});
  }
  json classes = json::array();
  const auto& cls = inst.closed_classes().classes();
  for (std::size_t c = 0; c < cls.size(); ++c) {
    json members = json::array();
    for (const auto& m : cls[c].members) members.push_back(inst.subgroup_name(m));
    json above = json::array();
    for (std::size_t d = 0; d < cls.size(); ++d)
      if (d != c && inst.closed_classes().leq(c, d)) above.push_back(d);
    classes.push_back({{"index", c}, {"members", members}, {"contained_in", above}});
  }
  out["closed"] = closed;
  out["non_closed"] = non_closed;
  out["conjugacy_classes"] = classes;
  return out;
}

json lattice_json(const ProblemInstance& inst, const IntersectionLattice& lattice) {
  json elems = json::array();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const Subspace& s = lattice.elements()[i];
    json covers = json::array();
    for (std::size_t c : lattice.covers(i)) covers.push_back(c);
    elems.push_back({{"index", i},
                     {"dim", inst.complex_dim(s)},
                     {"basis", basis_json(s)},
                     {"covered_by", covers}});
  }
  return {{"n", inst.n()}, {"size", lattice.size()}, {"elements", elems}};
}

std::string lattice_dot(const ProblemInstance& inst, const IntersectionLattice& lattice) {
  std::ostringstream os;
  os << "digraph lattice {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    os << "  x" << i << " [label=\"" << i << " (dim " << inst.complex_dim(lattice.elements()[i]) << ")\"];\n";
  }
  for (std::size_t i = 0; i < lattice.size(); ++i)
    for (std::size_t c : lattice.covers(i)) os << "  x" << i << " -> x" << c << ";\n";
  os << "}\n";
  return os.str();
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> nested_covers(const std::vector<NestedSet>& sets) {
  std::map<NestedSet, std::size_t> index;
  for (std::size_t i = 0; i < sets.size(); ++i) index.emplace(sets[i], i);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].size() < 2) continue;
    for (std::size_t drop = 0; drop < sets[i].size(); ++drop) {
      NestedSet smaller = sets[i];
      smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(drop));
      if (const auto it = index.find(smaller); it != index.end()) out.emplace_back(it->second, i);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

json nested_json(const BuildingSet& bs, const std::vector<NestedSet>& sets) {
  const auto& inst = bs.instance();
  json blocks = json::array();
  for (std::size_t b = 0; b < bs.size(); ++b) {
    blocks.push_back({{"index", b}, {"name", block_name(inst, bs.blocks()[b])}, {"codim", static_cast<std::size_t>(inst.n()) * inst.dim_v() - inst.complex_dim(bs.subspace(b))}});
  }
  json ns = json::array();
  for (const auto& s : sets) {
    json members = json::array();
    for (std::size_t b : s) members.push_back(b);
    ns.push_back(members);
  }
  json covers = json::array();
  for (const auto& [a, b] : nested_covers(sets)) covers.push_back({a, b});
  return {{"n", inst.n()}, {"blocks", blocks}, {"nested_sets", ns}, {"covers", covers}};
}

std::string nested_dot(const BuildingSet& bs, const std::vector<NestedSet>& sets) {
  const auto& inst = bs.instance();
  std::ostringstream os;
  os << "digraph nested {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::string label;
    for (std::size_t b : sets[i]) label += (label.empty() ? "" : "\\n") + dot_escape(block_name(inst, bs.blocks()[b]));
    os << "  s" << i << " [shape=box,label=\"" << label << "\"];\n";
  }
  for (const auto& [a, b] : nested_covers(sets)) os << "  s" << a << " -> s" << b << ";\n";
  os << "}\n";
  return os.str();
}

json forest_json(const ProblemInstance& inst, const LabelledForest& f) {
  json vs = json::array();
  for (const auto& v : f.vertices()) {
    json x = {{"parent", v.parent}};
    if (v.is_leaf()) {
      x["leaf"] = v.leaf;
    } else {
      x["label"] = inst.closed_name(v.label);
    }
    if (v.parent >= 0) x["edge"] = inst.group().element_name(v.edge);
    vs.push_back(x);
  }
  return {{"n", f.n()}, {"vertices", vs}, {"text", forest_to_string(inst, f)}};
}

std::string forests_dot(const ProblemInstance& inst, const std::vector<LabelledForest>& forests) {
  std::ostringstream os;
  for (std::size_t i = 0; i < forests.size(); ++i) {
    const auto& vs = forests[i].vertices();
    os << "digraph forest" << i << " {\n";
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (vs[v].is_leaf()) {
        os << "  v" << v << " [shape=plaintext,label=\"" << vs[v].leaf << "\"];\n";
      } else {
        os << "  v" << v << " [shape=ellipse,label=\"" << dot_escape(inst.closed_name(vs[v].label)) << "\"];\n";
      }
    }
    for (std::size_t v = 0; v < vs.size(); ++v) {
      if (vs[v].parent < 0) continue;
      os << "  v" << vs[v].parent << " -> v" << v << " [label=\"" << dot_escape(inst.group().element_name(vs[v].edge))
         << "\"];\n";
    }
    os << "}\n";
  }
  return os.str();
}

json series_json(const MultiSeries& a) {
  const auto& vars = a.variables();
  json terms = json::array();
  for (const auto& [e, c] : a.terms()) {
    json term = {{"s", 0}, {"t", 0}, {"tH", json::object()}};
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].name == "s") {
        term["s"] = e[i];
      } else if (vars[i].name == "t") {
        term["t"] = e[i];
      } else if (e[i] != 0) {
        const std::string name = vars[i].name.rfind("t_", 0) == 0 ? vars[i].name.substr(2) : vars[i].name;
        term["tH"][name] = e[i];
      }
    }
    term["coeff"] = to_string(c);
    terms.push_back(term);
  }
  return {{"truncation", a.truncation()}, {"terms", terms}};
}

}  // namespace dowling

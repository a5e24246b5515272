#pragma once

#include "dowling/arrangement.hpp"
#include "dowling/forest.hpp"
#include "dowling/instance.hpp"
#include "dowling/series.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace dowling {

/// Instance file:
///   {"n": 2,
///    "group": {"abelian": [2, 2]} | {"cayley": [[0, 1, ...], ...]},
///    "representation": {"characters": [[1, 0], [0, 1]]}
///                    | {"generators": [{"element": 3 | [1, 0], "matrix": [["-1", "0"], ["0", "1"]]}]},
///    "bounds": {"group_order": 64, "lattice": ..., "nested": ..., "forests": ...},
///    "names": {"H1": [elements generating the subgroup]}}
/// Errors are InputError naming the offending field.
ProblemInstance parse_instance(const nlohmann::json& doc);
ProblemInstance load_instance(const std::string& path);

nlohmann::json closed_subgroups_json(const ProblemInstance& inst);
nlohmann::json lattice_json(const ProblemInstance& inst, const IntersectionLattice& lattice);
std::string lattice_dot(const ProblemInstance& inst, const IntersectionLattice& lattice);
/// Nested sets as lists of block names, plus the inclusion cover relation.
nlohmann::json nested_json(const BuildingSet& bs, const std::vector<NestedSet>& sets);
std::string nested_dot(const BuildingSet& bs, const std::vector<NestedSet>& sets);
nlohmann::json forest_json(const ProblemInstance& inst, const LabelledForest& f);
std::string forests_dot(const ProblemInstance& inst, const std::vector<LabelledForest>& forests);
/// {"truncation": N, "terms": [{"s": j, "t": h, "tH": {...}, "coeff": "p/q"}]}
nlohmann::json series_json(const MultiSeries& a);

}  // namespace dowling

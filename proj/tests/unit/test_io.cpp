#include "dowling/errors.hpp"
#include "dowling/egf.hpp"
#include "dowling/forest.hpp"
#include "dowling/io.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <string>

using namespace dowling;
using nlohmann::json;

namespace {

std::string error_of(const json& doc) {
  try {
    parse_instance(doc);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

json klein_doc() {
  return json::parse(R"({"n": 2, "group": {"abelian": [2, 2]},
                         "representation": {"characters": [[1, 0], [0, 1]]}})");
}

}  // namespace

TEST_CASE("bundled instances load") {
  for (const char* file : {"z2xz2_diagonal.json", "z2xz2_characters.json", "dowling_z2.json", "dowling_z3.json",
                           "dowling_z4.json", "z2_sign_n1.json", "z4_two_characters.json",
                           "s3_deleted_permutation.json"}) {
    CAPTURE(file);
    CHECK_NOTHROW(load_instance(fixtures::instance_path(file)));
  }
  const auto k = load_instance(fixtures::instance_path("z2xz2_diagonal.json"));
  CHECK(k.closed_count() == 4);
  const ElementId x = k.group().element_from_tuple(std::vector<int>{1, 0});
  CHECK(k.subgroup_name(k.group().generated_by(std::vector<ElementId>{x})) == "H1");
  CHECK(k.closed_name(1) == "H2");
}

TEST_CASE("input errors name the field") {
  auto doc = klein_doc();
  doc["n"] = 0;
  CHECK(error_of(doc).find("n") != std::string::npos);

  doc = klein_doc();
  doc.erase("group");
  CHECK(error_of(doc).find("group") != std::string::npos);

  doc = klein_doc();
  doc["representation"]["characters"][0] = json::array({1});
  CHECK(!error_of(doc).empty());

  doc = klein_doc();
  doc["representation"] = json::parse(R"({"generators": [{"element": [1, 0], "matrix": [["-1", "x"], ["0", "1"]]}]})");
  CHECK(error_of(doc).find("representation.generators[0].matrix") != std::string::npos);

  doc = klein_doc();
  doc["representation"]["characters"] = json::parse("[[1, 0]]");
  CHECK(error_of(doc) == "representation not faithful");

  CHECK_THROWS_AS(load_instance(fixtures::instance_path("missing.json")), InputError);
}

TEST_CASE("reports") {
  const auto k = load_instance(fixtures::instance_path("z2xz2_diagonal.json"));
  const auto report = closed_subgroups_json(k);
  CHECK(report["closed"].size() == 4);
  REQUIRE(report["non_closed"].size() == 1);
  CHECK(report["non_closed"][0]["closure"] == "G");

  const auto z2 = fixtures::cyclic(2, 2);
  const BuildingSet bs(z2);
  const auto sets = enumerate_nested_sets(bs);
  const auto nj = nested_json(bs, sets);
  CHECK(nj["nested_sets"].size() == 9);
  const auto dot = forests_dot(z2, generate_forests(z2));
  CHECK(dot.rfind("digraph", 0) == 0);

  const auto sj = series_json(gamma_tilde(k.with_n(2), 2));
  CHECK(sj["truncation"] == 2);
  bool found = false;
  for (const auto& t : sj["terms"])
    if (t["s"] == 1 && t["tH"].size() == 1 && t["tH"].contains("H1") && t["tH"]["H1"] == 1) {
      CHECK(t["coeff"] == "1");
      found = true;
    }
  CHECK(found);
}

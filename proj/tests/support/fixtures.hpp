#pragma once

#include "dowling/instance.hpp"
#include "dowling/io.hpp"

#include <string>
#include <vector>

namespace fixtures {

inline std::string instance_path(const std::string& file) { return std::string(DOWLING_SOURCE_DIR) + "/instances/" + file; }

/// Z/r acting on C by a primitive character.
inline dowling::ProblemInstance cyclic(int r, int n) {
  auto g = dowling::FiniteGroup::from_invariant_factors({r});
  auto rep = dowling::Representation::from_characters(g, {{1}});
  return dowling::ProblemInstance(n, std::move(g), std::move(rep));
}

/// Z/2 x Z/2 with (1,0) -> diag(-1,1), (0,1) -> diag(1,-1), given as matrices.
inline dowling::ProblemInstance klein_matrices(int n) {
  using dowling::RMatrix;
  auto g = dowling::FiniteGroup::from_invariant_factors({2, 2});
  RMatrix a = RMatrix::identity(2);
  RMatrix b = RMatrix::identity(2);
  a(0, 0) = -1;
  b(1, 1) = -1;
  const int x = g.element_from_tuple(std::vector<int>{1, 0});
  const int y = g.element_from_tuple(std::vector<int>{0, 1});
  auto rep = dowling::Representation::from_matrices(g, {{x, a}, {y, b}});
  return dowling::ProblemInstance(n, std::move(g), std::move(rep));
}

/// Same action given by characters.
inline dowling::ProblemInstance klein(int n) {
  auto g = dowling::FiniteGroup::from_invariant_factors({2, 2});
  auto rep = dowling::Representation::from_characters(g, {{1, 0}, {0, 1}});
  return dowling::ProblemInstance(n, std::move(g), std::move(rep));
}

inline dowling::ProblemInstance s3(int n) {
  return dowling::load_instance(instance_path("s3_deleted_permutation.json")).with_n(n);
}

/// Z/2^3 on C^3: (x,y,z) acts by ((-1)^z, (-1)^y, (-1)^x). Every coordinate subgroup is closed.
inline dowling::ProblemInstance cube(int n) {
  auto g = dowling::FiniteGroup::from_invariant_factors({2, 2, 2});
  auto rep = dowling::Representation::from_characters(g, {{0, 0, 1}, {0, 1, 0}, {1, 0, 0}});
  return dowling::ProblemInstance(n, std::move(g), std::move(rep));
}

/// The acceptance grid.
inline std::vector<std::pair<std::string, dowling::ProblemInstance>> grid() {
  std::vector<std::pair<std::string, dowling::ProblemInstance>> out;
  for (int n = 1; n <= 3; ++n) {
    for (int r : {2, 3, 4}) out.emplace_back("Z/" + std::to_string(r) + " n=" + std::to_string(n), cyclic(r, n));
    out.emplace_back("Z/2xZ/2 n=" + std::to_string(n), klein_matrices(n));
  }
  out.emplace_back("Z/2 n=4", cyclic(2, 4));
  return out;
}

}  // namespace fixtures

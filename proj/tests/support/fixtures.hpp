#pragma once

// The F1 case study: 12 recorded problems over five selected heuristics,
// loaded from the CSV fixtures. Expected indicator values were frozen from
// the brute-force oracle before the engine existed (see oracle.hpp):
//   phi = 3/2, phi* = 4/3, delta_D = 4/5, delta_C = sqrt(11/25),
//   lambda = 3/2, lambda* = 9/7, eps_D = 31/16, eps_C = 3/2, eps = 31/24.

#include "core/import.hpp"
#include "core/model.hpp"
#include "core/specificity.hpp"

#include <string>
#include <vector>

namespace testgen {

struct F1Fixture {
  heurbench::DomainProfile profile;
  heurbench::HeuristicCatalog catalog; // five heuristics, all Selected
  std::vector<heurbench::GsiTable> tables;
  heurbench::SpecificityMatrix matrix; // FSI (D1..D5) = 2.0, 1.5, 3.0, 1.0, 2.5
  heurbench::EvaluationDataset dataset;
};

inline std::string fixture_path(const std::string &name) {
  return std::string(HEURBENCH_FIXTURES) + "/" + name;
}

F1Fixture load_f1();

} // namespace testgen

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsbundle/oracle.hpp"

namespace nsbundle {

/// One registered nonsmooth test problem: dimension, reference optimal value,
/// standard starting point, known minimizer where one is available in closed
/// form, and the first-order oracle definition.
struct ProblemInstance {
  std::string name;
  int dimension = 0;
  double fstar = 0.0;
  Vector x0;
  std::optional<Vector> xstar;
  ObjectiveOracle::Fn fn;

  /// Fresh oracle with its own call counter.
  ObjectiveOracle make_oracle() const;
};

/// Names of the 15 registered problems, in registry order.
const std::vector<std::string>& list_problems();

/// Lookup by name (case-insensitive) or 1-based index rendered as a string.
/// Throws std::invalid_argument for unknown names.
const ProblemInstance& get_problem(const std::string& name_or_index);

}  // namespace nsbundle

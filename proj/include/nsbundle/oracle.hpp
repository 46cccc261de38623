#pragma once

#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "nsbundle/bundle.hpp"

namespace nsbundle {

/// One first-order oracle answer: the function value and one subgradient.
struct Evaluation {
  double value = 0.0;
  Vector subgrad;
};

/// Raised when an oracle returns non-finite data.
struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// First-order oracle for a convex function. The wrapped callable must be
/// deterministic and evaluation-pure; this wrapper adds the call counter and
/// tracks the best value seen, which drives the benchmark stopping rule.
/// One oracle instance per run; not shared across threads.
class ObjectiveOracle {
 public:
  using Fn = std::function<Evaluation(const Vector&)>;

  ObjectiveOracle(Eigen::Index dimension, Fn fn);

  /// Evaluates f and one subgradient at x, counting the call.
  /// Throws std::invalid_argument on non-finite or mis-dimensioned input and
  /// OracleError on non-finite output.
  Evaluation operator()(const Vector& x);

  Eigen::Index dimension() const { return dimension_; }
  long calls() const { return calls_; }

  /// Smallest value returned so far (+inf before the first call).
  double best_value() const { return best_value_; }
  /// Point achieving best_value(); empty before the first call.
  const Vector& best_point() const { return best_point_; }

  void reset_counter();

 private:
  Eigen::Index dimension_;
  Fn fn_;
  long calls_ = 0;
  double best_value_ = std::numeric_limits<double>::infinity();
  Vector best_point_;
};

}  // namespace nsbundle

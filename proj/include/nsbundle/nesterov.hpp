#pragma once

#include <vector>

#include "nsbundle/variant.hpp"

namespace nsbundle {

/// The acceleration sequence lambda_0 = 1,
/// lambda_{k+1} = (1 + sqrt(1 + 4 lambda_k^2)) / 2, memoized on demand, plus
/// the extrapolation coefficients derived from it. A `generalized` sequence
/// may be supplied instead; it must satisfy
/// lambda_k^2 - lambda_{k-1}^2 <= lambda_k for all k >= 1.
///
/// Memoization mutates internal state: one instance per run, not shared
/// across threads.
class NesterovSequence {
 public:
  enum class Mode { nesterov, generalized };

  NesterovSequence() = default;

  /// Validates and wraps a user-supplied table (lambda_0 must be 1).
  /// Throws std::invalid_argument when the growth condition fails.
  static NesterovSequence generalized(std::vector<double> lambdas);

  Mode mode() const { return mode_; }

  /// lambda_k. Generalized sequences throw past the end of their table.
  double lambda(int k) const;

  /// alpha_k = (lambda_k - 1) / lambda_{k+1}.
  double alpha(int k) const;

  /// beta_k: 0 for fpba1/ppa/classic_pba, lambda_k / lambda_{k+1} for fpba2.
  double beta(int k, Variant v) const;

 private:
  Mode mode_ = Mode::nesterov;
  mutable std::vector<double> memo_{1.0};
};

}  // namespace nsbundle

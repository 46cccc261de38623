#pragma once

#include <vector>

#include "nsbundle/bundle.hpp"
#include "nsbundle/nesterov.hpp"
#include "nsbundle/oracle.hpp"
#include "nsbundle/trace.hpp"

namespace nsbundle {

/// Error-accumulation bookkeeping for the inexact proximal steps. After k
/// recorded tolerances eps_0..eps_{k-1},
///   vartheta_k = lambda_{k-1}^{-2} sum_{i<k} lambda_i^2 eps_i
/// is maintained by the recursion vartheta_{k+1} = eps_k + (1 - 1/lambda_k)
/// vartheta_k, and theta_k (the equal-error weight sum) by
/// theta_{k+1} = 1 + (1 - 1/lambda_k) theta_k.
class ErrorLedger {
 public:
  ErrorLedger() = default;

  /// Records eps_k for the step just completed (k = steps() before the call).
  void record(double eps_k);

  int steps() const { return static_cast<int>(eps_history_.size()); }
  const std::vector<double>& eps_history() const { return eps_history_; }

  /// vartheta_k with k = steps(); requires at least one recorded step.
  double vartheta() const;
  /// theta_k with k = steps(); requires at least one recorded step.
  double theta() const;

  /// vartheta_k recomputed from the raw history (consistency checks).
  double vartheta_direct() const;

  /// Weight omega_{i,k} = lambda_i^2 / lambda_{k-1}^2 of eps_i in vartheta_k.
  double weight(int i, int k) const;

 private:
  NesterovSequence seq_;
  std::vector<double> eps_history_;
  double vartheta_ = 0.0;
  double theta_ = 0.0;
};

/// Right-hand side of the complexity estimate at step k >= 1:
///   fpba1: 2 mu R^2 / (k+1)^2 + vartheta_k
///   fpba2:   mu R^2 / (k+1)^2 + vartheta_k
/// Throws std::invalid_argument for variants without a bound.
double bound_value(Variant variant, int k, double mu, double R, double vartheta_k);

/// Smallest (real) step count k guaranteeing accuracy eps when eps_0 = eps/2:
/// R sqrt(2 mu / eps) - 1 for fpba2, 2 R sqrt(mu / eps) - 1 for fpba1.
double required_steps(Variant variant, double R, double mu, double eps);

/// Computable over-estimate of the optimality gap at y: f(y) minus the
/// minimum of model + (mu/2)||. - y||^2. Nonnegative up to subproblem
/// tolerance, zero at minimizers with a tight model. Costs one oracle call
/// and one subproblem solve.
double gap_estimate(ObjectiveOracle& oracle, const Bundle& bundle, double mu,
                    const Vector& y);

/// Fills TraceRow::bound with bound_value(variant, k, mu0, R, vartheta_k).
void annotate_bounds(RunTrace& trace, double R);

/// Number of rows violating f(y^k) - fstar <= bound + 1e-9 (1 + bound).
int bound_violations(const RunTrace& trace, double R, double fstar);

}  // namespace nsbundle

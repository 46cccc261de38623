#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "nsbundle/bundle.hpp"

namespace nsbundle {

/// Solution of min_z  model(z) + (mu/2) ||z - center||^2 for a cutting-plane
/// model, together with the dual simplex multipliers over the cuts.
struct QpSolution {
  Vector zstar;           // subproblem minimizer
  double model_value;     // model(zstar)
  double total_value;     // model(zstar) + (mu/2) ||zstar - center||^2
  Vector weights;         // simplex multipliers, model order
  Vector aggregate_grad;  // sum_i weights_i * g_i
  double kkt_residual;    // max(simplex violation, complementarity gap)
  int iterations;         // dual active-set iterations spent
  double value_noise;     // forward-error bound on evaluating the model in
                          // doubles; the floor below which residuals and
                          // value comparisons are meaningless
};

/// Raised when the dual solver hits its iteration cap above tolerance.
/// Carries the best iterate found so far.
struct QpError : std::runtime_error {
  QpError(const std::string& what, QpSolution best_, double residual_)
      : std::runtime_error(what), best(std::move(best_)), residual(residual_) {}
  QpSolution best;
  double residual;
};

/// Solves the proximal cutting-plane subproblem through its simplex dual with
/// a primal active-set method. `warm_weights` (model order, padded with zeros
/// for cuts newer than the weights) seeds the active set. The iteration cap
/// is 100 * model_size.
///
/// Throws std::invalid_argument on structural misuse (empty bundle, mu <= 0,
/// bad dimensions, non-finite cut data) and QpError when the cap is reached
/// with the residual above tolerance.
QpSolution solve_prox_qp(const Bundle& bundle, const Vector& center, double mu,
                         const std::optional<Vector>& warm_weights = std::nullopt);

/// Dual objective (1/(2mu)) ||sum_i w_i g_i||^2 - sum_i w_i (<g_i, center> + b_i)
/// over the unit simplex; its negative equals total_value at the optimum.
/// Throws if `weights` leaves the simplex by more than 1e-10.
double dual_objective(const Bundle& bundle, const Vector& center, double mu,
                      const Vector& weights);

}  // namespace nsbundle

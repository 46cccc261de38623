#pragma once

#include <stdexcept>
#include <string>

#include "nsbundle/bundle.hpp"
#include "nsbundle/oracle.hpp"
#include "nsbundle/prox_qp.hpp"
#include "nsbundle/schedules.hpp"

namespace nsbundle {

struct AppoOptions {
  /// Subgradient norm below which a trial point is declared an exact
  /// minimizer and the whole run may stop.
  double gnorm_tol = 1e-6;
  /// Keep the accepted point's cut in the carried bundle (its evaluation is
  /// already paid for).
  bool bundle_accepted_cut = true;
};

/// Output of one inexact proximal-point computation at center x.
struct ProxResult {
  Vector phat;                  // approximate proximal point
  double fx_at_phat = 0.0;      // f(phat)
  double fx_center = 0.0;       // f(x), from the center cut
  double envelope_upper = 0.0;  // f(phat) + (mu/2)||phat - x||^2, upper
                                // estimate of the envelope value at x
  double model_value_at_phat = 0.0;  // model(phat) + (mu/2)||phat - x||^2,
                                     // lower estimate of the envelope value
  double fmodel_at_phat = 0.0;  // plain cutting-plane model value at phat
  Vector grad_estimate;         // mu * (x - phat)
  double achieved_gap = 0.0;    // f(phat) - model(phat)
  double realized_eps = 0.0;    // tolerance certified by the acceptance rule
  int inner_iters = 0;
  int cuts_added = 0;
  long invariant_checks = 0;    // runtime consistency checks performed
  double value_noise = 0.0;     // model evaluation noise floor (from the
                                // steepest cut held during the call)
  bool exact_hit = false;       // ||g|| <= gnorm_tol found; sandwich not
                                // guaranteed in this case
};

/// Raised when the inner loop exhausts its iteration cap, typically because
/// epsilon is below the oracle's precision. Carries the best trial point.
struct AppoError : std::runtime_error {
  AppoError(const std::string& what, Vector best_point_, double best_gap_,
            int inner_iters_)
      : std::runtime_error(what),
        best_point(std::move(best_point_)),
        best_gap(best_gap_),
        inner_iters(inner_iters_) {}
  Vector best_point;
  double best_gap;
  int inner_iters;
};

/// Inexact first-order oracle for the Moreau-Yosida envelope: alternates
/// subproblem solves and oracle calls, enriching `bundle`, until the model
/// gap at the trial point passes `stop` or a vanishing subgradient is found.
///
/// A cut at the center x is added first unless one is already held. The
/// enriched bundle stays with the caller for warm-starting the next call.
ProxResult approximate_prox(ObjectiveOracle& oracle, const Vector& x, double mu,
                            const InnerStop& stop, Bundle& bundle,
                            int inner_cap = 1000, const AppoOptions& options = {});

/// Absolute-tolerance convenience overload.
ProxResult approximate_prox(ObjectiveOracle& oracle, const Vector& x, double mu,
                            double epsilon, Bundle& bundle, int inner_cap = 1000,
                            const AppoOptions& options = {});

/// Approximate-optimality certificate for the stability center: true iff
/// f(center) - model_value_next <= eta, in which case f(center) is within
/// eta of the envelope value at the center.
bool optimality_probe(double f_center, double model_value_next, double eta);

}  // namespace nsbundle

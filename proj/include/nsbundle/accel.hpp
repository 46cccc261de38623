#pragma once

#include <cstddef>
#include <optional>

#include "nsbundle/appo.hpp"
#include "nsbundle/schedules.hpp"
#include "nsbundle/trace.hpp"

namespace nsbundle {

/// x_next = y_next + alpha (y_next - y_prev) + beta (y_next - x_prev).
/// Throws on dimension mismatch.
Vector extrapolate(const Vector& y_next, const Vector& y_prev,
                   const Vector& x_prev, double alpha, double beta);

/// Stop rules composed as an OR. The value-based rule needs a reference
/// optimum; the probe is off by default.
struct StopRules {
  std::optional<double> fstar;          // enables f_best - fstar <= ftol*(1+|f_best|)
  double ftol = 1e-6;
  std::optional<double> probe_eta;      // enables the optimality probe
  int max_outer = 250;
};

enum class WarmStart { carry, reset };

struct DriverConfig {
  Variant variant = Variant::fpba1;
  MuSchedule mu = MuSchedule::constant(1.0);
  EpsSchedule eps = EpsSchedule::decay(0.1);
  StopRules stop;
  WarmStart warm = WarmStart::carry;
  AppoOptions appo;
  std::size_t bundle_capacity = Bundle::kUnbounded;
  int inner_cap = 1000;
  /// Forces alpha_k = beta_k = 0 regardless of variant (baseline comparisons).
  bool force_zero_momentum = false;
  /// Generalized acceleration sequence instead of the standard recurrence.
  std::optional<NesterovSequence> sequence;
  /// Maximal verbosity: keep the final model's (g, b) pairs in the trace.
  bool record_final_bundle = false;
};

/// Runs the configured outer driver from x0 and returns the step trace.
/// A failed inner loop surfaces as a trace with reason == error and the
/// partial rows kept.
RunTrace run(ObjectiveOracle& oracle, const Vector& x0, const DriverConfig& config);

}  // namespace nsbundle

#pragma once

#include <string>
#include <vector>

#include "nsbundle/nesterov.hpp"

namespace nsbundle {

/// Inner-loop acceptance rule handed to the proximal oracle for one call.
/// Either an absolute gap bound f(z) - model(z) <= epsilon, or the classical
/// descent test f(z) <= f(center) - sigma * [f(center) - model(z)] with a
/// small absolute gap floor as a secondary exit near optimality.
struct InnerStop {
  enum class Kind { absolute, descent };

  static InnerStop absolute(double epsilon);
  static InnerStop descent(double sigma, double floor_coeff = 1e-12);

  bool accept(double f_trial, double model_at_trial, double f_center) const;

  /// The tolerance certified by a passed test: epsilon for the absolute rule,
  /// (1 - sigma) * [f(center) - model(z)] for the descent rule (the gap floor
  /// when only the floor fired). Feeds the error ledger.
  double realized_eps(double f_trial, double model_at_trial, double f_center) const;

  Kind kind = Kind::absolute;
  double epsilon = 0.0;
  double sigma = 0.0;
  double floor_coeff = 0.0;
};

/// Tolerance-sequence policy for the outer loop.
///   constant: eps_k = eps
///   decay:    eps_k = eps0 / lambda_k  (no error accumulation)
///   descent:  the classical bundle descent test with parameter sigma
class EpsSchedule {
 public:
  enum class Kind { constant, decay, descent };

  static EpsSchedule constant(double eps);
  static EpsSchedule decay(double eps0);
  /// Throws std::invalid_argument unless 0 < sigma < 1.
  static EpsSchedule descent(double sigma, double floor_coeff = 1e-12);

  Kind kind() const { return kind_; }
  double e0() const { return e0_; }
  double sigma() const { return sigma_; }

  /// Scheduled tolerance at step k; throws for the descent kind, whose
  /// tolerance is only realized once the step finishes.
  double eps_at(int k, const NesterovSequence& seq) const;

  /// Acceptance rule for step k.
  InnerStop inner_stop(int k, const NesterovSequence& seq) const;

  std::string label() const;

 private:
  Kind kind_ = Kind::decay;
  double e0_ = 0.1;
  double sigma_ = 0.5;
  double floor_coeff_ = 1e-12;
};

/// Proximity-parameter sequence; must be positive and nonincreasing.
class MuSchedule {
 public:
  static MuSchedule constant(double mu0);
  /// mu_k = mu0 * rho^k with 0 < rho <= 1.
  static MuSchedule geometric(double mu0, double rho);
  /// Arbitrary table, validated positive and nonincreasing; the last entry
  /// repeats past the end.
  static MuSchedule table(std::vector<double> values);

  double at(int k) const;
  double mu0() const;
  bool is_constant() const;

 private:
  enum class Kind { constant, geometric, table };
  Kind kind_ = Kind::constant;
  double mu0_ = 1.0;
  double rho_ = 1.0;
  std::vector<double> table_;
};

}  // namespace nsbundle

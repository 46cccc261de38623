#include "nsbundle/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "nsbundle/prox_qp.hpp"

namespace nsbundle {

void ErrorLedger::record(double eps_k) {
  if (!(eps_k >= 0.0) || !std::isfinite(eps_k)) {
    throw std::invalid_argument("ErrorLedger::record: eps must be nonnegative");
  }
  const int k = steps();
  if (k == 0) {
    vartheta_ = eps_k;
    theta_ = 1.0;
  } else {
    const double shrink = 1.0 - 1.0 / seq_.lambda(k);
    vartheta_ = eps_k + shrink * vartheta_;
    theta_ = 1.0 + shrink * theta_;
  }
  eps_history_.push_back(eps_k);
}

double ErrorLedger::vartheta() const {
  if (eps_history_.empty()) {
    throw std::logic_error("ErrorLedger::vartheta: no steps recorded");
  }
  return vartheta_;
}

double ErrorLedger::theta() const {
  if (eps_history_.empty()) {
    throw std::logic_error("ErrorLedger::theta: no steps recorded");
  }
  return theta_;
}

double ErrorLedger::vartheta_direct() const {
  if (eps_history_.empty()) {
    throw std::logic_error("ErrorLedger::vartheta_direct: no steps recorded");
  }
  const int k = steps();
  double sum = 0.0;
  for (int i = 0; i < k; ++i) {
    const double li = seq_.lambda(i);
    sum += li * li * eps_history_[static_cast<std::size_t>(i)];
  }
  const double lk = seq_.lambda(k - 1);
  return sum / (lk * lk);
}

double ErrorLedger::weight(int i, int k) const {
  if (k < 1 || i < 0 || i >= k) {
    throw std::invalid_argument("ErrorLedger::weight: need 0 <= i < k");
  }
  const double li = seq_.lambda(i);
  const double lk = seq_.lambda(k - 1);
  return (li * li) / (lk * lk);
}

double bound_value(Variant variant, int k, double mu, double R, double vartheta_k) {
  if (k < 1) throw std::invalid_argument("bound_value: k must be at least 1");
  if (!(mu > 0.0) || !(R >= 0.0)) {
    throw std::invalid_argument("bound_value: need mu > 0 and R >= 0");
  }
  const double kk = static_cast<double>(k) + 1.0;
  switch (variant) {
    case Variant::fpba1:
      return 2.0 * mu * R * R / (kk * kk) + vartheta_k;
    case Variant::fpba2:
      return mu * R * R / (kk * kk) + vartheta_k;
    default:
      throw std::invalid_argument("bound_value: no bound for this variant");
  }
}

double required_steps(Variant variant, double R, double mu, double eps) {
  if (!(eps > 0.0) || !(mu > 0.0) || !(R >= 0.0)) {
    throw std::invalid_argument("required_steps: need eps > 0, mu > 0, R >= 0");
  }
  switch (variant) {
    case Variant::fpba1:
      return 2.0 * R * std::sqrt(mu / eps) - 1.0;
    case Variant::fpba2:
      return R * std::sqrt(2.0 * mu / eps) - 1.0;
    default:
      throw std::invalid_argument("required_steps: no estimate for this variant");
  }
}

double gap_estimate(ObjectiveOracle& oracle, const Bundle& bundle, double mu,
                    const Vector& y) {
  Evaluation ev = oracle(y);
  QpSolution sol = solve_prox_qp(bundle, y, mu, bundle.warm_weights());
  return ev.value - sol.total_value;
}

void annotate_bounds(RunTrace& trace, double R) {
  for (TraceRow& row : trace.rows) {
    if (row.k >= 1) {
      row.bound = bound_value(trace.variant, row.k, trace.mu0, R, row.vartheta);
    }
  }
}

int bound_violations(const RunTrace& trace, double R, double fstar) {
  int violations = 0;
  for (const TraceRow& row : trace.rows) {
    if (row.k < 1) continue;
    const double bound = bound_value(trace.variant, row.k, trace.mu0, R, row.vartheta);
    if (row.f_y - fstar > bound + 1e-9 * (1.0 + bound)) ++violations;
  }
  return violations;
}

}  // namespace nsbundle

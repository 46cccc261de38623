#include "nsbundle/accel.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

#include "nsbundle/diagnostics.hpp"

namespace nsbundle {

Vector extrapolate(const Vector& y_next, const Vector& y_prev,
                   const Vector& x_prev, double alpha, double beta) {
  if (y_next.size() != y_prev.size() || y_next.size() != x_prev.size()) {
    throw std::invalid_argument("extrapolate: dimension mismatch");
  }
  return y_next + alpha * (y_next - y_prev) + beta * (y_next - x_prev);
}

RunTrace run(ObjectiveOracle& oracle, const Vector& x0, const DriverConfig& config) {
  if (!x0.allFinite()) {
    throw std::invalid_argument("run: non-finite starting point");
  }
  if (x0.size() != oracle.dimension()) {
    throw std::invalid_argument("run: starting point dimension mismatch");
  }
  if (config.stop.max_outer < 1) {
    throw std::invalid_argument("run: max_outer must be at least 1");
  }
  if (!(config.stop.ftol > 0.0)) {
    throw std::invalid_argument("run: ftol must be positive");
  }

  const auto t0 = std::chrono::steady_clock::now();

  RunTrace trace;
  trace.variant = config.variant;
  trace.eps_label = config.eps.label();
  trace.mu0 = config.mu.mu0();

  NesterovSequence seq = config.sequence ? *config.sequence : NesterovSequence{};
  ErrorLedger ledger;
  Bundle bundle(x0.size(), config.bundle_capacity);

  Vector y = x0;
  Vector x = x0;
  const bool momentum =
      has_momentum(config.variant) && !config.force_zero_momentum;

  auto finish = [&](StopReason reason) {
    trace.reason = reason;
    if (!trace.rows.empty()) trace.rows.back().stop = reason;
    trace.fg = oracle.calls();
    trace.f_best = oracle.best_value();
    trace.best_point = oracle.best_point();
    if (config.stop.fstar) trace.f_gap = trace.f_best - *config.stop.fstar;
    if (config.record_final_bundle) {
      for (const Cut& cut : bundle.cuts()) {
        trace.final_cuts.emplace_back(cut.subgrad, cut.const_term);
      }
      if (bundle.aggregate()) {
        trace.final_cuts.emplace_back(bundle.aggregate()->subgrad,
                                      bundle.aggregate()->const_term);
      }
    }
    trace.wall_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    return trace;
  };

  for (int k = 0; k < config.stop.max_outer; ++k) {
    if (config.warm == WarmStart::reset) bundle.clear();

    const InnerStop inner = config.eps.inner_stop(k, seq);
    const double mu_k = config.mu.at(k);

    ProxResult prox;
    try {
      prox = approximate_prox(oracle, x, mu_k, inner, bundle, config.inner_cap,
                              config.appo);
    } catch (const std::runtime_error& err) {
      // Inner-loop failures (iteration cap, subproblem or oracle trouble)
      // surface with the partial trace; consistency bugs keep propagating.
      trace.error = err.what();
      return finish(StopReason::error);
    }

    // Chain of values at an accepted step: the subproblem optimum can never
    // exceed the objective at the prox center.
    if (prox.model_value_at_phat > prox.fx_center +
                                       1e-9 * (1.0 + std::abs(prox.fx_center)) +
                                       prox.value_noise) {
      throw std::logic_error("run: subproblem value exceeded the center value");
    }
    // An accepted descent step cannot increase the objective.
    if (config.eps.kind() == EpsSchedule::Kind::descent && !prox.exact_hit &&
        prox.fx_at_phat >
            prox.fx_center + 1e-12 * (1.0 + std::abs(prox.fx_center))) {
      throw std::logic_error("run: descent step increased the objective");
    }

    ledger.record(prox.realized_eps);
    trace.steps = k + 1;
    trace.checks += prox.invariant_checks;

    TraceRow row;
    row.k = k + 1;
    row.f_y = prox.fx_at_phat;
    row.f_best = oracle.best_value();
    row.eps_k = prox.realized_eps;
    row.fg_cum = oracle.calls();
    row.vartheta = ledger.vartheta();
    trace.rows.push_back(row);

    if (prox.exact_hit) {
      return finish(StopReason::gnorm);
    }
    if (config.stop.fstar) {
      const double fb = oracle.best_value();
      if (fb - *config.stop.fstar <= config.stop.ftol * (1.0 + std::abs(fb))) {
        return finish(StopReason::ftol);
      }
    }
    if (config.stop.probe_eta &&
        optimality_probe(prox.fx_center, prox.fmodel_at_phat,
                         *config.stop.probe_eta)) {
      return finish(StopReason::probe);
    }

    const double alpha = momentum ? seq.alpha(k) : 0.0;
    const double beta = momentum ? seq.beta(k, config.variant) : 0.0;
    Vector x_next = extrapolate(prox.phat, y, x, alpha, beta);
    y = prox.phat;
    x = std::move(x_next);
  }

  return finish(StopReason::max_outer);
}

}  // namespace nsbundle

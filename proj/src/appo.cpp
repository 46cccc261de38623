#include "nsbundle/appo.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace nsbundle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void consistency_failure(const char* what) {
  throw std::logic_error(std::string("approximate_prox: consistency check failed: ") + what);
}

}  // namespace

ProxResult approximate_prox(ObjectiveOracle& oracle, const Vector& x, double mu,
                            const InnerStop& stop, Bundle& bundle, int inner_cap,
                            const AppoOptions& options) {
  if (x.size() != oracle.dimension() || x.size() != bundle.dimension()) {
    throw std::invalid_argument("approximate_prox: dimension mismatch");
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("approximate_prox: non-finite center");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("approximate_prox: mu must be positive");
  }
  if (inner_cap < 1) {
    throw std::invalid_argument("approximate_prox: inner_cap must be positive");
  }

  long checks = 0;
  int cuts_added = 0;

  // Points evaluated during this call, for the epsilon-subgradient audit and
  // the upper envelope bound.
  std::vector<std::pair<Vector, double>> eval_log;

  // The model needs a cut at the center; reuse one if this exact point was
  // already cut, otherwise pay the oracle call.
  double fx_center;
  Vector g_center;
  if (const Cut* held = bundle.cut_at(x)) {
    fx_center = held->fvalue;
    g_center = held->subgrad;
  } else {
    Evaluation ev = oracle(x);
    fx_center = ev.value;
    g_center = ev.subgrad;
    bundle.add_cut(Cut::make(x, fx_center, g_center));
    ++cuts_added;
  }
  eval_log.emplace_back(x, fx_center);

  // Tightest upper bound on the envelope value seen so far; caps every
  // subproblem value below.
  double min_upper = fx_center;
  // Model values cannot be compared more finely than this.
  double noise = 0.0;

  auto make_result = [&](const Vector& phat, double f_phat, double model_phat,
                         double total_phat, double gap, double eps, int iters,
                         bool exact) {
    ProxResult res;
    res.phat = phat;
    res.fx_at_phat = f_phat;
    res.fx_center = fx_center;
    res.envelope_upper = f_phat + 0.5 * mu * (phat - x).squaredNorm();
    res.model_value_at_phat = total_phat;
    res.fmodel_at_phat = model_phat;
    res.grad_estimate = mu * (x - phat);
    res.achieved_gap = gap;
    res.realized_eps = eps;
    res.inner_iters = iters;
    res.cuts_added = cuts_added;
    res.value_noise = noise;
    res.exact_hit = exact;

    if (!exact) {
      // Envelope sandwich: lower estimate <= upper estimate <= lower + eps.
      ++checks;
      if (res.model_value_at_phat >
          res.envelope_upper + 1e-12 * (1.0 + std::abs(res.envelope_upper))) {
        consistency_failure("lower envelope estimate above upper estimate");
      }
      ++checks;
      if (res.envelope_upper > res.model_value_at_phat + eps +
                                   1e-12 * (1.0 + std::abs(res.envelope_upper))) {
        consistency_failure("envelope sandwich wider than the tolerance");
      }
      // grad_estimate is an eps-subgradient at phat for every point this call
      // evaluated.
      for (const auto& [z, fz] : eval_log) {
        ++checks;
        const double rhs = f_phat + res.grad_estimate.dot(z - phat) - eps -
                           1e-9 * (1.0 + std::abs(fz)) - noise;
        if (fz < rhs) consistency_failure("epsilon-subgradient inequality violated");
      }
    }
    res.invariant_checks = checks;
    return res;
  };

  // A vanishing subgradient at the center already solves the problem.
  if (g_center.norm() <= options.gnorm_tol) {
    const double model_center = bundle.evaluate(x);
    return make_result(x, fx_center, model_center, model_center,
                       fx_center - model_center, 0.0, 0, true);
  }

  double prev_total = -kInf;
  double best_gap = kInf;
  Vector best_point = x;

  for (int j = 1; j <= inner_cap; ++j) {
    QpSolution sol = solve_prox_qp(bundle, x, mu, bundle.warm_weights());
    bundle.note_weights(sol.weights);
    noise = std::max(noise, sol.value_noise);

    // Subproblem values are nondecreasing as cuts accumulate and can never
    // exceed any upper envelope bound.
    ++checks;
    if (sol.total_value < prev_total - 1e-9 * (1.0 + std::abs(prev_total)) - noise) {
      consistency_failure("subproblem value decreased after a cut was added");
    }
    ++checks;
    if (sol.total_value > min_upper + 1e-9 * (1.0 + std::abs(min_upper)) + noise) {
      consistency_failure("subproblem value above an evaluated envelope bound");
    }
    prev_total = sol.total_value;

    const Vector& z = sol.zstar;
    Evaluation ev = oracle(z);
    eval_log.emplace_back(z, ev.value);
    min_upper = std::min(min_upper, ev.value + 0.5 * mu * (z - x).squaredNorm());

    const double gap = ev.value - sol.model_value;
    if (gap < -(1e-12 * (1.0 + std::abs(ev.value)) + noise)) {
      throw OracleError("approximate_prox: objective fell below its cutting-plane model");
    }
    if (gap < best_gap) {
      best_gap = gap;
      best_point = z;
    }

    if (stop.accept(ev.value, sol.model_value, fx_center)) {
      const double eps = stop.realized_eps(ev.value, sol.model_value, fx_center);
      if (options.bundle_accepted_cut) {
        bundle.add_cut(Cut::make(z, ev.value, ev.subgrad));
        ++cuts_added;
      }
      return make_result(z, ev.value, sol.model_value, sol.total_value, gap, eps,
                         j, false);
    }

    bundle.add_cut(Cut::make(z, ev.value, ev.subgrad));
    ++cuts_added;

    if (ev.subgrad.norm() <= options.gnorm_tol) {
      return make_result(z, ev.value, sol.model_value, sol.total_value, gap,
                         gap, j, true);
    }
  }

  throw AppoError("approximate_prox: inner iteration cap exceeded", best_point,
                  best_gap, inner_cap);
}

ProxResult approximate_prox(ObjectiveOracle& oracle, const Vector& x, double mu,
                            double epsilon, Bundle& bundle, int inner_cap,
                            const AppoOptions& options) {
  return approximate_prox(oracle, x, mu, InnerStop::absolute(epsilon), bundle,
                          inner_cap, options);
}

bool optimality_probe(double f_center, double model_value_next, double eta) {
  return f_center - model_value_next <= eta;
}

}  // namespace nsbundle

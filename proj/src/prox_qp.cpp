#include "nsbundle/prox_qp.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace nsbundle {

namespace {

// Columns of the model in bundle order (cuts, then aggregate) and the cut
// values at the center: c_i = <g_i, center> + b_i.
struct DualData {
  Eigen::MatrixXd G;   // n x m subgradients
  Vector b;            // m constant terms
  Vector c;            // m cut values at the center
  Eigen::MatrixXd Q;   // m x m Gram matrix G^T G
  double eps_factor;   // rounding unit for n-term accumulations
};

DualData assemble(const Bundle& bundle, const Vector& center) {
  const auto m = static_cast<Eigen::Index>(bundle.model_size());
  const Eigen::Index n = bundle.dimension();
  DualData d;
  d.G.resize(n, m);
  d.b.resize(m);
  Eigen::Index j = 0;
  for (const Cut& cut : bundle.cuts()) {
    d.G.col(j) = cut.subgrad;
    d.b(j) = cut.const_term;
    ++j;
  }
  if (bundle.aggregate()) {
    d.G.col(j) = bundle.aggregate()->subgrad;
    d.b(j) = bundle.aggregate()->const_term;
  }
  if (!d.G.allFinite() || !d.b.allFinite()) {
    throw std::invalid_argument("solve_prox_qp: non-finite cut data");
  }
  d.c = d.G.transpose() * center + d.b;
  d.Q = d.G.transpose() * d.G;
  d.eps_factor = 8.0 * static_cast<double>(n + 4) *
                 std::numeric_limits<double>::epsilon();
  return d;
}

// Minimizer of the dual restricted to {w_i = 0, i not in free; sum w = 1},
// plus a per-entry noise floor below which negative weights are treated as
// zero by the caller.
//
// The sum constraint is eliminated through the best-scaled cut and the
// remaining variables are Jacobi-scaled, so a weight of order 1e-13 on a
// steep cut (exponential pieces produce slopes beyond 1e12) is still solved
// to full relative precision. Dependent subgradients are handled by a tiny
// relative Tikhonov term.
struct FaceSolution {
  Vector lambda;
  Vector noise_floor;
};

FaceSolution solve_face(const DualData& d, double mu,
                        const std::vector<Eigen::Index>& free) {
  const auto f = static_cast<Eigen::Index>(free.size());
  auto A = [&](Eigen::Index r, Eigen::Index s) {
    return d.Q(free[static_cast<std::size_t>(r)], free[static_cast<std::size_t>(s)]) / mu;
  };

  Vector scale(f);
  Eigen::Index pivot = 0;
  for (Eigen::Index r = 0; r < f; ++r) {
    scale(r) = 1.0 / std::sqrt(A(r, r) + 1.0);
    if (scale(r) > scale(pivot)) pivot = r;
  }

  FaceSolution out;
  out.lambda = Vector::Zero(f);
  if (f == 1) {
    out.lambda(0) = 1.0;
    out.noise_floor = Vector::Constant(1, 1e-11 * scale(0));
    return out;
  }

  // lambda = e_pivot + N xi with N_r = e_r - e_pivot for r != pivot.
  Eigen::MatrixXd H(f - 1, f - 1);
  Vector g0(f - 1);
  std::vector<Eigen::Index> rows;
  rows.reserve(static_cast<std::size_t>(f - 1));
  for (Eigen::Index r = 0; r < f; ++r) {
    if (r != pivot) rows.push_back(r);
  }
  for (Eigen::Index a = 0; a < f - 1; ++a) {
    const Eigen::Index r = rows[static_cast<std::size_t>(a)];
    g0(a) = scale(r) * ((A(r, pivot) - d.c(free[static_cast<std::size_t>(r)])) -
                        (A(pivot, pivot) - d.c(free[static_cast<std::size_t>(pivot)])));
    for (Eigen::Index bcol = 0; bcol <= a; ++bcol) {
      const Eigen::Index s = rows[static_cast<std::size_t>(bcol)];
      const double h = A(r, s) - A(r, pivot) - A(pivot, s) + A(pivot, pivot);
      H(a, bcol) = scale(r) * h * scale(s);
      H(bcol, a) = H(a, bcol);
    }
  }
  const double ridge = 1e-13 * (1.0 + H.diagonal().cwiseAbs().maxCoeff());
  H.diagonal().array() += ridge;

  Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
  Vector eta = ldlt.solve(-g0);
  if (ldlt.info() != Eigen::Success || !eta.allFinite()) {
    eta = Eigen::FullPivLU<Eigen::MatrixXd>(H).solve(-g0);
    if (!eta.allFinite()) eta = Vector::Zero(f - 1);
  }

  const double eta_mag = std::max(1.0, eta.cwiseAbs().maxCoeff());
  double mass = 0.0;
  out.noise_floor = Vector(f);
  for (Eigen::Index a = 0; a < f - 1; ++a) {
    const Eigen::Index r = rows[static_cast<std::size_t>(a)];
    out.lambda(r) = scale(r) * eta(a);
    mass += out.lambda(r);
    out.noise_floor(r) = 1e-11 * scale(r) * eta_mag;
  }
  out.lambda(pivot) = 1.0 - mass;
  out.noise_floor(pivot) = 1e-11 * scale(pivot) * eta_mag;
  return out;
}

}  // namespace

QpSolution solve_prox_qp(const Bundle& bundle, const Vector& center, double mu,
                         const std::optional<Vector>& warm_weights) {
  if (bundle.empty()) {
    throw std::invalid_argument("solve_prox_qp: empty bundle");
  }
  if (center.size() != bundle.dimension()) {
    throw std::invalid_argument("solve_prox_qp: center dimension mismatch");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("solve_prox_qp: mu must be positive");
  }
  if (!center.allFinite()) {
    throw std::invalid_argument("solve_prox_qp: non-finite center");
  }

  const DualData d = assemble(bundle, center);
  const auto m = static_cast<Eigen::Index>(bundle.model_size());

  // Feasible start: warm weights when usable, otherwise the vertex of the
  // cut that is highest at the center.
  Vector w = Vector::Zero(m);
  bool seeded = false;
  if (warm_weights && warm_weights->size() == m && warm_weights->allFinite()) {
    Vector ww = warm_weights->cwiseMax(0.0);
    const double s = ww.sum();
    if (s > 0.0) {
      w = ww / s;
      seeded = true;
    }
  }
  if (!seeded) {
    Eigen::Index top = 0;
    d.c.maxCoeff(&top);
    w(top) = 1.0;
  }

  std::vector<bool> in_face(static_cast<std::size_t>(m), false);
  std::vector<Eigen::Index> free;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (w(i) > 0.0) {
      in_face[static_cast<std::size_t>(i)] = true;
      free.push_back(i);
    }
  }

  const int max_iters = 100 * static_cast<int>(m);

  int iters = 0;
  double grad_noise = 0.0;
  bool at_cap = true;
  Eigen::Index stalled = -1;  // removed by a zero-length step just now
  while (iters < max_iters) {
    ++iters;
    const FaceSolution face = solve_face(d, mu, free);

    double step = 1.0;
    Eigen::Index blocking = -1;
    for (std::size_t r = 0; r < free.size(); ++r) {
      const Eigen::Index i = free[r];
      const double target = face.lambda(static_cast<Eigen::Index>(r));
      if (target < -face.noise_floor(static_cast<Eigen::Index>(r))) {
        const double t = w(i) / (w(i) - target);
        if (t < step) {
          step = t;
          blocking = i;
        }
      }
    }

    if (blocking >= 0) {
      stalled = step <= 1e-14 ? blocking : -1;
      for (std::size_t r = 0; r < free.size(); ++r) {
        const Eigen::Index i = free[r];
        w(i) = std::max(w(i) + step * (face.lambda(static_cast<Eigen::Index>(r)) - w(i)), 0.0);
      }
      w(blocking) = 0.0;
      in_face[static_cast<std::size_t>(blocking)] = false;
      free.erase(std::remove(free.begin(), free.end(), blocking), free.end());
      continue;
    }

    for (std::size_t r = 0; r < free.size(); ++r) {
      w(free[r]) = std::max(face.lambda(static_cast<Eigen::Index>(r)), 0.0);
    }

    // Exit on the primal-dual certificate. With z(w) = center - G w / mu the
    // cut values at z are c - Q w / mu = -grad, so the complementarity gap
    // model(z) - sum_i w_i l_i(z) equals <w, grad> - min(grad). Steep cuts
    // make those accumulations noisy; the floor tracks the entries the
    // certificate actually touches (the weighted ones and the minimizer).
    const Vector grad = (d.Q * w) / mu - d.c;
    const double dual_value = 0.5 * (w.dot(grad) - d.c.dot(w));
    Eigen::Index amin = 0;
    const double grad_min = grad.minCoeff(&amin);
    const double comp_gap = w.dot(grad) - grad_min;
    const Vector mag = (d.Q.cwiseAbs() * w) / mu + d.c.cwiseAbs();
    grad_noise = d.eps_factor * (w.dot(mag) + mag(amin));
    const double exit_tol =
        1e-10 * (1.0 + center.norm() + std::abs(dual_value)) + grad_noise;
    if (comp_gap <= exit_tol) {
      at_cap = false;
      break;
    }

    Eigen::Index entering = -1;
    double lowest = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (in_face[static_cast<std::size_t>(i)]) continue;
      if (grad(i) < lowest) {
        lowest = grad(i);
        entering = i;
      }
    }
    // No cut left to bring in, or the best candidate is the one a
    // degenerate step just expelled: the arithmetic floor is reached.
    if (entering < 0 || entering == stalled) {
      at_cap = false;
      break;
    }
    in_face[static_cast<std::size_t>(entering)] = true;
    free.push_back(entering);
  }

  // Outputs are derived from the multipliers so stationarity holds by
  // construction: zstar = center - ghat / mu.
  QpSolution sol;
  const double wsum = w.sum();
  if (wsum > 0.0) w /= wsum;
  sol.weights = w;
  sol.aggregate_grad = d.G * w;
  sol.zstar = center - sol.aggregate_grad / mu;
  sol.model_value = bundle.evaluate(sol.zstar);
  sol.total_value = sol.model_value + 0.5 * mu * (sol.zstar - center).squaredNorm();
  sol.iterations = iters;

  const double simplex_viol =
      std::abs(wsum - 1.0) + std::max(0.0, -w.minCoeff());
  const Vector cut_values = d.G.transpose() * sol.zstar + d.b;
  Eigen::Index active = 0;
  cut_values.maxCoeff(&active);
  double comp_gap = 0.0;
  double weighted_g = 0.0;
  double weighted_b = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    comp_gap += w(i) * (sol.model_value - cut_values(i));
    weighted_g += w(i) * d.G.col(i).norm();
    weighted_b += w(i) * std::abs(d.b(i));
  }
  sol.kkt_residual = std::max(simplex_viol, comp_gap);

  // Rounding floor for model values at points of interest: only the cuts the
  // solution leans on and the one attaining the max matter.
  const double zmag = std::max(center.norm(), sol.zstar.norm());
  sol.value_noise = d.eps_factor *
                    ((weighted_g + d.G.col(active).norm()) * zmag + weighted_b +
                     std::abs(d.b(active)));

  const double accept_tol = 1e-8 * (1.0 + center.norm() + std::abs(sol.total_value)) +
                            sol.value_noise + 2.0 * grad_noise;
  if (at_cap && !(sol.kkt_residual <= accept_tol)) {
    throw QpError("solve_prox_qp: iteration cap reached with residual above tolerance",
                  sol, sol.kkt_residual);
  }
  return sol;
}

double dual_objective(const Bundle& bundle, const Vector& center, double mu,
                      const Vector& weights) {
  if (static_cast<std::size_t>(weights.size()) != bundle.model_size()) {
    throw std::invalid_argument("dual_objective: weight count mismatch");
  }
  if (weights.minCoeff() < -1e-10 || std::abs(weights.sum() - 1.0) > 1e-10) {
    throw std::invalid_argument("dual_objective: weights outside the unit simplex");
  }
  const DualData d = assemble(bundle, center);
  const Vector ghat = d.G * weights;
  return ghat.squaredNorm() / (2.0 * mu) - d.c.dot(weights);
}

}  // namespace nsbundle

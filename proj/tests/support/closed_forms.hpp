#pragma once

#include <cmath>
#include <random>

#include "nsbundle/bundle.hpp"
#include "nsbundle/oracle.hpp"

namespace nsbundle::testing {

// f(x) = sum_i |x_i| with the 0-at-kink subgradient convention.
inline ObjectiveOracle l1_oracle(Eigen::Index n) {
  return ObjectiveOracle(n, [](const Vector& x) {
    Evaluation ev;
    ev.value = x.cwiseAbs().sum();
    ev.subgrad = x.unaryExpr([](double t) {
      return t > 0.0 ? 1.0 : (t < 0.0 ? -1.0 : 0.0);
    });
    return ev;
  });
}

// Exact proximal point of sum_i |x_i|: componentwise soft threshold at 1/mu.
inline Vector l1_prox_point(const Vector& x, double mu) {
  return x.unaryExpr([&](double t) {
    const double shrink = std::abs(t) - 1.0 / mu;
    return shrink <= 0.0 ? 0.0 : (t > 0.0 ? shrink : -shrink);
  });
}

// Exact envelope value of sum_i |x_i|: sum of Huber terms.
inline double l1_envelope(const Vector& x, double mu) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double a = std::abs(x(i));
    total += a >= 1.0 / mu ? a - 0.5 / mu : 0.5 * mu * a * a;
  }
  return total;
}

inline ObjectiveOracle affine_oracle(Vector g, double b) {
  const Eigen::Index n = g.size();
  return ObjectiveOracle(n, [g = std::move(g), b](const Vector& x) {
    return Evaluation{g.dot(x) + b, g};
  });
}

// Random max-affine instance: the bundle's own model treated as the true
// objective (every cut of a max-affine function is a valid minorant of it).
struct RandomInstance {
  Bundle bundle;
  Vector center;
  double mu;
};

inline RandomInstance random_instance(std::mt19937_64& rng, int index) {
  std::uniform_int_distribution<int> dim(1, 5);
  std::uniform_int_distribution<int> cuts(1, 6);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = dim(rng);
  const int m = cuts(rng);
  const double mus[] = {0.5, 1.0, 4.0};

  RandomInstance inst{Bundle(n), Vector(n), mus[index % 3]};
  for (int i = 0; i < n; ++i) inst.center(i) = coeff(rng) / 2.0;
  for (int i = 0; i < m; ++i) {
    Vector g(n);
    for (int k = 0; k < n; ++k) g(k) = coeff(rng);
    double b = coeff(rng);
    if (i > 0 && unit(rng) < 0.2) {
      g = inst.bundle.cuts()[0].subgrad;  // duplicated gradient, distinct offset
      b = inst.bundle.cuts()[0].const_term + unit(rng);
    }
    Vector z = Vector::Zero(n);
    inst.bundle.add_cut(Cut::make(z, b, g));  // point 0 makes const_term = b
  }
  return inst;
}

}  // namespace nsbundle::testing

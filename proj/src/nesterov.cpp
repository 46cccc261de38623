#include "nsbundle/nesterov.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbundle {

NesterovSequence NesterovSequence::generalized(std::vector<double> lambdas) {
  if (lambdas.empty() || lambdas.front() != 1.0) {
    throw std::invalid_argument("NesterovSequence: generalized table must start at 1");
  }
  for (std::size_t k = 1; k < lambdas.size(); ++k) {
    const double lk = lambdas[k];
    const double lp = lambdas[k - 1];
    if (!(lk > 0.0) || !std::isfinite(lk)) {
      throw std::invalid_argument("NesterovSequence: entries must be positive and finite");
    }
    if (lk * lk - lp * lp > lk + 1e-12 * (1.0 + lk * lk)) {
      throw std::invalid_argument(
          "NesterovSequence: growth condition lambda_k^2 - lambda_{k-1}^2 <= lambda_k violated");
    }
  }
  NesterovSequence seq;
  seq.mode_ = Mode::generalized;
  seq.memo_ = std::move(lambdas);
  return seq;
}

double NesterovSequence::lambda(int k) const {
  if (k < 0) throw std::invalid_argument("NesterovSequence::lambda: negative index");
  const auto idx = static_cast<std::size_t>(k);
  if (mode_ == Mode::generalized) {
    if (idx >= memo_.size()) {
      throw std::out_of_range("NesterovSequence::lambda: past the generalized table");
    }
    return memo_[idx];
  }
  while (memo_.size() <= idx) {
    const double prev = memo_.back();
    memo_.push_back(0.5 * (1.0 + std::sqrt(1.0 + 4.0 * prev * prev)));
  }
  return memo_[idx];
}

double NesterovSequence::alpha(int k) const {
  return (lambda(k) - 1.0) / lambda(k + 1);
}

double NesterovSequence::beta(int k, Variant v) const {
  if (v == Variant::fpba2) return lambda(k) / lambda(k + 1);
  return 0.0;
}

}  // namespace nsbundle

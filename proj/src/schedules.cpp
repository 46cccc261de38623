#include "nsbundle/schedules.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbundle {

InnerStop InnerStop::absolute(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("InnerStop: epsilon must be positive");
  }
  InnerStop s;
  s.kind = Kind::absolute;
  s.epsilon = epsilon;
  return s;
}

InnerStop InnerStop::descent(double sigma, double floor_coeff) {
  if (!(sigma > 0.0) || !(sigma < 1.0)) {
    throw std::invalid_argument("InnerStop: sigma must lie in (0, 1)");
  }
  if (!(floor_coeff >= 0.0)) {
    throw std::invalid_argument("InnerStop: floor coefficient must be nonnegative");
  }
  InnerStop s;
  s.kind = Kind::descent;
  s.sigma = sigma;
  s.floor_coeff = floor_coeff;
  return s;
}

bool InnerStop::accept(double f_trial, double model_at_trial, double f_center) const {
  if (kind == Kind::absolute) {
    return f_trial - model_at_trial <= epsilon;
  }
  if (f_trial <= f_center - sigma * (f_center - model_at_trial)) return true;
  // Gap floor: the descent test can be unattainable once the center is
  // already minimal.
  return f_trial - model_at_trial <= floor_coeff * (1.0 + std::abs(f_center));
}

double InnerStop::realized_eps(double f_trial, double model_at_trial,
                               double f_center) const {
  if (kind == Kind::absolute) return epsilon;
  if (f_trial <= f_center - sigma * (f_center - model_at_trial)) {
    return (1.0 - sigma) * (f_center - model_at_trial);
  }
  return floor_coeff * (1.0 + std::abs(f_center));
}

EpsSchedule EpsSchedule::constant(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw std::invalid_argument("EpsSchedule: eps must be positive");
  }
  EpsSchedule s;
  s.kind_ = Kind::constant;
  s.e0_ = eps;
  return s;
}

EpsSchedule EpsSchedule::decay(double eps0) {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) {
    throw std::invalid_argument("EpsSchedule: eps0 must be positive");
  }
  EpsSchedule s;
  s.kind_ = Kind::decay;
  s.e0_ = eps0;
  return s;
}

EpsSchedule EpsSchedule::descent(double sigma, double floor_coeff) {
  InnerStop::descent(sigma, floor_coeff);  // validate
  EpsSchedule s;
  s.kind_ = Kind::descent;
  s.sigma_ = sigma;
  s.floor_coeff_ = floor_coeff;
  return s;
}

double EpsSchedule::eps_at(int k, const NesterovSequence& seq) const {
  switch (kind_) {
    case Kind::constant:
      return e0_;
    case Kind::decay:
      return e0_ / seq.lambda(k);
    case Kind::descent:
      throw std::logic_error("EpsSchedule: descent tolerance is only known post hoc");
  }
  throw std::logic_error("EpsSchedule: invalid kind");
}

InnerStop EpsSchedule::inner_stop(int k, const NesterovSequence& seq) const {
  if (kind_ == Kind::descent) return InnerStop::descent(sigma_, floor_coeff_);
  return InnerStop::absolute(eps_at(k, seq));
}

std::string EpsSchedule::label() const {
  switch (kind_) {
    case Kind::constant:
      return "const(e0=" + std::to_string(e0_) + ")";
    case Kind::decay:
      return "decay(e0=" + std::to_string(e0_) + ")";
    case Kind::descent:
      return "descent(sigma=" + std::to_string(sigma_) + ")";
  }
  return "?";
}

MuSchedule MuSchedule::constant(double mu0) {
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) {
    throw std::invalid_argument("MuSchedule: mu0 must be positive");
  }
  MuSchedule s;
  s.kind_ = Kind::constant;
  s.mu0_ = mu0;
  return s;
}

MuSchedule MuSchedule::geometric(double mu0, double rho) {
  if (!(mu0 > 0.0) || !std::isfinite(mu0)) {
    throw std::invalid_argument("MuSchedule: mu0 must be positive");
  }
  if (!(rho > 0.0) || !(rho <= 1.0)) {
    throw std::invalid_argument("MuSchedule: rho must lie in (0, 1]");
  }
  MuSchedule s;
  s.kind_ = Kind::geometric;
  s.mu0_ = mu0;
  s.rho_ = rho;
  return s;
}

MuSchedule MuSchedule::table(std::vector<double> values) {
  if (values.empty()) {
    throw std::invalid_argument("MuSchedule: empty table");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("MuSchedule: entries must be positive");
    }
    if (i > 0 && values[i] > values[i - 1]) {
      throw std::invalid_argument("MuSchedule: sequence must be nonincreasing");
    }
  }
  MuSchedule s;
  s.kind_ = Kind::table;
  s.mu0_ = values.front();
  s.table_ = std::move(values);
  return s;
}

double MuSchedule::at(int k) const {
  if (k < 0) throw std::invalid_argument("MuSchedule::at: negative index");
  switch (kind_) {
    case Kind::constant:
      return mu0_;
    case Kind::geometric:
      return mu0_ * std::pow(rho_, k);
    case Kind::table: {
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(k),
                                             table_.size() - 1);
      return table_[idx];
    }
  }
  throw std::logic_error("MuSchedule: invalid kind");
}

double MuSchedule::mu0() const { return mu0_; }

bool MuSchedule::is_constant() const {
  return kind_ == Kind::constant || (kind_ == Kind::geometric && rho_ == 1.0);
}

}  // namespace nsbundle

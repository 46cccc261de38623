#include "nsbundle/oracle.hpp"

#include <cmath>
#include <utility>

namespace nsbundle {

ObjectiveOracle::ObjectiveOracle(Eigen::Index dimension, Fn fn)
    : dimension_(dimension), fn_(std::move(fn)) {
  if (dimension_ <= 0) {
    throw std::invalid_argument("ObjectiveOracle: dimension must be positive");
  }
  if (!fn_) {
    throw std::invalid_argument("ObjectiveOracle: missing evaluation function");
  }
}

Evaluation ObjectiveOracle::operator()(const Vector& x) {
  if (x.size() != dimension_) {
    throw std::invalid_argument("ObjectiveOracle: input dimension mismatch");
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("ObjectiveOracle: non-finite input");
  }
  Evaluation ev = fn_(x);
  ++calls_;
  if (!std::isfinite(ev.value) || ev.subgrad.size() != dimension_ ||
      !ev.subgrad.allFinite()) {
    throw OracleError("ObjectiveOracle: non-finite oracle output");
  }
  if (ev.value < best_value_) {
    best_value_ = ev.value;
    best_point_ = x;
  }
  return ev;
}

void ObjectiveOracle::reset_counter() {
  calls_ = 0;
  best_value_ = std::numeric_limits<double>::infinity();
  best_point_.resize(0);
}

}  // namespace nsbundle

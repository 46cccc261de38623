#include "nsbundle/bundle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nsbundle {

namespace {

bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace

Cut Cut::make(Vector point, double fvalue, Vector subgrad) {
  if (point.size() != subgrad.size()) {
    throw std::invalid_argument("Cut::make: point/subgrad dimension mismatch");
  }
  if (!all_finite(point) || !all_finite(subgrad) || !std::isfinite(fvalue)) {
    throw std::invalid_argument("Cut::make: non-finite cut data");
  }
  Cut cut;
  cut.const_term = fvalue - subgrad.dot(point);
  cut.point = std::move(point);
  cut.fvalue = fvalue;
  cut.subgrad = std::move(subgrad);
  return cut;
}

Bundle::Bundle(Eigen::Index dimension, std::size_t capacity)
    : dimension_(dimension), capacity_(capacity) {
  if (dimension <= 0) {
    throw std::invalid_argument("Bundle: dimension must be positive");
  }
  // Compaction keeps the most recent cut and must still make room for the
  // incoming one, so a finite capacity below 2 cannot be honored.
  if (capacity != kUnbounded && capacity < 2) {
    throw std::invalid_argument("Bundle: finite capacity must be at least 2");
  }
}

void Bundle::add_cut(Cut cut) {
  if (cut.dimension() != dimension_) {
    throw std::invalid_argument("Bundle::add_cut: cut dimension mismatch");
  }
  if (!all_finite(cut.subgrad) || !std::isfinite(cut.const_term)) {
    throw std::invalid_argument("Bundle::add_cut: non-finite cut data");
  }
  if (capacity_ != kUnbounded && cuts_.size() >= capacity_) {
    compact_to(capacity_ - 1);
  }
  cuts_.push_back(std::move(cut));
  if (have_weights_) cut_weights_.push_back(0.0);
}

double Bundle::evaluate(const Vector& x) const {
  if (empty()) {
    throw std::invalid_argument("Bundle::evaluate: empty bundle, model undefined");
  }
  if (x.size() != dimension_) {
    throw std::invalid_argument("Bundle::evaluate: point dimension mismatch");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const Cut& cut : cuts_) {
    best = std::max(best, cut.value_at(x));  // strict max keeps lowest index
  }
  if (aggregate_) best = std::max(best, aggregate_->value_at(x));
  return best;
}

double Bundle::model_gap(const Vector& x, double fx) const {
  return fx - evaluate(x);
}

const Cut* Bundle::cut_at(const Vector& x) const {
  for (const Cut& cut : cuts_) {
    if (cut.point.size() == x.size() && cut.point == x) return &cut;
  }
  return nullptr;
}

void Bundle::note_weights(const Vector& weights) {
  if (static_cast<std::size_t>(weights.size()) != model_size()) {
    throw std::invalid_argument("Bundle::note_weights: weight count mismatch");
  }
  cut_weights_.assign(weights.data(), weights.data() + cuts_.size());
  aggregate_weight_ = aggregate_ ? weights(weights.size() - 1) : 0.0;
  have_weights_ = true;
}

std::optional<Vector> Bundle::warm_weights() const {
  if (!have_weights_) return std::nullopt;
  Vector w(model_size());
  for (std::size_t i = 0; i < cuts_.size(); ++i) w(static_cast<Eigen::Index>(i)) = cut_weights_[i];
  if (aggregate_) w(w.size() - 1) = aggregate_weight_;
  return w;
}

void Bundle::clear() {
  cuts_.clear();
  aggregate_.reset();
  cut_weights_.clear();
  aggregate_weight_ = 0.0;
  have_weights_ = false;
}

void Bundle::compact_to(std::size_t max_cuts) {
  if (cuts_.size() <= max_cuts) return;

  // Without recorded multipliers every cut counts the same.
  std::vector<double> w = have_weights_ ? cut_weights_
                                        : std::vector<double>(cuts_.size(), 1.0);

  // The newest cut always survives; everything else is ranked by weight and
  // the smallest weights go first. Zero-weight cuts vanish outright,
  // positive-weight ones fold into the aggregate.
  const std::size_t newest = cuts_.size() - 1;
  std::vector<std::size_t> order(cuts_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return w[a] < w[b]; });

  std::size_t to_drop = cuts_.size() - max_cuts;
  std::vector<bool> drop(cuts_.size(), false);
  for (std::size_t idx : order) {
    if (to_drop == 0) break;
    if (idx == newest) continue;
    drop[idx] = true;
    --to_drop;
  }
  // Zero-weight survivors are dead weight too once multipliers are known.
  if (have_weights_) {
    for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) {
      if (w[i] == 0.0) drop[i] = true;
    }
  }

  double fold_mass = 0.0;
  Vector fold_grad = Vector::Zero(dimension_);
  Vector fold_point = Vector::Zero(dimension_);
  double fold_const = 0.0;
  auto fold = [&](const Cut& cut, double mass) {
    fold_mass += mass;
    fold_grad += mass * cut.subgrad;
    fold_point += mass * cut.point;
    fold_const += mass * cut.const_term;
  };
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (drop[i] && w[i] > 0.0) fold(cuts_[i], w[i]);
  }
  // The previous aggregate keeps contributing through its own multiplier.
  if (aggregate_) {
    fold(*aggregate_, have_weights_ ? aggregate_weight_ : 1.0);
  }

  if (fold_mass > 0.0) {
    Cut agg;
    agg.subgrad = fold_grad / fold_mass;
    agg.point = fold_point / fold_mass;
    agg.const_term = fold_const / fold_mass;
    agg.fvalue = agg.value_at(agg.point);
    aggregate_ = std::move(agg);
    aggregate_weight_ = fold_mass;
  }

  std::vector<Cut> kept;
  std::vector<double> kept_w;
  for (std::size_t i = 0; i < cuts_.size(); ++i) {
    if (!drop[i]) {
      kept.push_back(std::move(cuts_[i]));
      kept_w.push_back(w[i]);
    }
  }
  cuts_ = std::move(kept);
  if (have_weights_) cut_weights_ = std::move(kept_w);
}

}  // namespace nsbundle

#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <vector>

namespace nsbundle {

using Vector = Eigen::VectorXd;

/// One affine minorant of the objective, generated at `point` where the
/// oracle returned `fvalue` and `subgrad`. Stored in normalized (g, b) form
/// with b = fvalue - <subgrad, point>, so the cut evaluates as <g, x> + b.
struct Cut {
  Vector point;
  double fvalue = 0.0;
  Vector subgrad;
  double const_term = 0.0;

  /// Builds a cut and caches the constant term. Throws on non-finite data or
  /// mismatched dimensions.
  static Cut make(Vector point, double fvalue, Vector subgrad);

  double value_at(const Vector& x) const { return subgrad.dot(x) + const_term; }
  Eigen::Index dimension() const { return subgrad.size(); }
};

/// Cutting-plane model of a convex function: the pointwise max of stored cuts
/// plus an optional synthesized aggregate cut. The aggregate is always a
/// convex combination of cuts held earlier, hence itself a valid minorant.
///
/// Model order for weight vectors is: regular cuts in insertion order, then
/// the aggregate cut last (when present). Single writer per instance.
class Bundle {
 public:
  /// capacity = kUnbounded keeps every cut.
  static constexpr std::size_t kUnbounded = 0;

  explicit Bundle(Eigen::Index dimension, std::size_t capacity = kUnbounded);

  Eigen::Index dimension() const { return dimension_; }
  std::size_t capacity() const { return capacity_; }
  /// Number of regular cuts (the aggregate is stored separately).
  std::size_t size() const { return cuts_.size(); }
  /// Number of affine pieces in the model, aggregate included.
  std::size_t model_size() const { return cuts_.size() + (aggregate_ ? 1 : 0); }
  bool empty() const { return cuts_.empty() && !aggregate_; }

  const std::vector<Cut>& cuts() const { return cuts_; }
  const std::optional<Cut>& aggregate() const { return aggregate_; }

  /// Appends a cut. If the capacity would be exceeded, compaction runs first:
  /// zero-weight cuts (per the last noted weights) are discarded and
  /// positive-weight ones are folded into the aggregate cut, never touching
  /// the most recent cut. Throws on dimension mismatch or non-finite data.
  void add_cut(Cut cut);

  /// Model value max_i { <g_i, x> + b_i } over cuts and aggregate.
  /// Ties keep the lowest index; the aggregate acts as the highest index.
  /// Throws if the bundle is empty.
  double evaluate(const Vector& x) const;

  /// fx - evaluate(x). Nonnegative for any valid lower model; values below
  /// -1e-12 * (1 + |fx|) indicate an inconsistent oracle (caller's check).
  double model_gap(const Vector& x, double fx) const;

  /// True when a cut generated exactly at x (bitwise equal point) is held.
  bool has_cut_at(const Vector& x) const { return cut_at(x) != nullptr; }
  const Cut* cut_at(const Vector& x) const;

  /// Records the simplex multipliers of the last proximal subproblem, in
  /// model order. They steer compaction and warm-start the next solve.
  void note_weights(const Vector& weights);
  /// Last noted weights in current model order, or nullopt.
  std::optional<Vector> warm_weights() const;

  void clear();

 private:
  void compact_to(std::size_t max_cuts);

  Eigen::Index dimension_;
  std::size_t capacity_;
  std::vector<Cut> cuts_;
  std::optional<Cut> aggregate_;
  std::vector<double> cut_weights_;  // aligned with cuts_; empty if never noted
  double aggregate_weight_ = 0.0;
  bool have_weights_ = false;
};

}  // namespace nsbundle

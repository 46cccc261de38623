#pragma once

#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "nsbundle/bundle.hpp"
#include "nsbundle/variant.hpp"

namespace nsbundle {

enum class StopReason { none, ftol, gnorm, max_outer, probe, error };

std::string to_string(StopReason r);

/// One completed outer step. Row k holds f(y^k), the tolerance used by the
/// step that produced y^k, and the accumulated error vartheta_k, so each row
/// lines up with the complexity bounds at the same index.
struct TraceRow {
  int k = 0;
  double f_y = 0.0;
  double f_best = 0.0;
  double eps_k = 0.0;
  long fg_cum = 0;
  double vartheta = 0.0;
  std::optional<double> bound;  // complexity-bound value, when R is known
  StopReason stop = StopReason::none;
};

struct RunTrace {
  // labels
  std::string problem;
  Variant variant = Variant::fpba1;
  std::string eps_label;
  double mu0 = 1.0;

  std::vector<TraceRow> rows;

  // summary
  int steps = 0;
  long fg = 0;
  long checks = 0;  // inner-loop consistency checks that all held
  double f_best = std::numeric_limits<double>::infinity();
  Vector best_point;
  std::optional<double> f_gap;  // f_best - fstar when fstar is known
  StopReason reason = StopReason::none;
  double wall_ms = 0.0;
  std::string error;  // nonempty when the run aborted

  // Final model as (g, b) pairs, recorded only at maximal trace verbosity.
  std::vector<std::pair<Vector, double>> final_cuts;
};

/// Per-step CSV with fixed header `k,f_y,f_best,eps_k,fg_cum,vartheta,stop`
/// and 17-significant-digit reals; byte-stable for identical traces.
std::string trace_csv(const RunTrace& trace);

/// Fixed-field-order JSON document with the summary and per-step rows.
std::string trace_json(const RunTrace& trace);

/// Writes the trace in `format` ("csv" or "json"). I/O failures surface as
/// std::runtime_error naming the path.
void export_trace(const RunTrace& trace, const std::string& format,
                  const std::filesystem::path& path);

}  // namespace nsbundle

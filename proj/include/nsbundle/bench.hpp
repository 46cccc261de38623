#pragma once

#include <string>
#include <vector>

#include "nsbundle/accel.hpp"
#include "nsbundle/problems.hpp"

namespace nsbundle {

/// One benchmark invocation: a set of problems run under a single algorithm
/// and tolerance schedule.
struct RunConfig {
  std::vector<std::string> problems;  // names or 1-based indices; "all" expands
  Variant algo = Variant::fpba1;
  MuSchedule mu = MuSchedule::constant(1.0);
  EpsSchedule eps = EpsSchedule::decay(0.1);
  double ftol = 1e-6;
  int max_outer = 250;
  WarmStart warm = WarmStart::carry;
  std::optional<double> probe_eta;
  std::size_t bundle_capacity = Bundle::kUnbounded;
  int inner_cap = 1000;
  bool strict = false;   // rethrow the first cell error instead of fail-soft
  unsigned threads = 0;  // 0: NSBUNDLE_THREADS env var, else hardware
  unsigned seed = 0;     // reserved; every algorithm is deterministic
};

struct CellResult {
  std::string problem;
  int index = 0;  // 1-based registry index
  RunTrace trace;
  bool converged = false;  // reason in {ftol, gnorm, probe}
};

struct BenchReport {
  std::vector<CellResult> cells;
  bool all_converged = false;
};

/// Runs every cell (possibly concurrently; NSBUNDLE_THREADS caps the workers)
/// and assembles the report in problem order. Cell failures are recorded
/// per-cell unless config.strict. Throws std::invalid_argument on an empty
/// or unresolvable problem list.
BenchReport run_benchmark(const RunConfig& config);

/// Fixed-width table with columns Pb, name, #k, #fg, f-f*, stop.
std::string render_table(const BenchReport& report);

/// Per-cell summary rows as CSV / JSON; byte-stable for identical reports.
std::string summary_csv(const BenchReport& report);
std::string summary_json(const BenchReport& report);

}  // namespace nsbundle

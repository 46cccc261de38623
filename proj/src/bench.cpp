#include "nsbundle/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "nsbundle/diagnostics.hpp"

namespace nsbundle {

namespace {

std::string real17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<const ProblemInstance*> resolve_problems(const RunConfig& config) {
  std::vector<const ProblemInstance*> out;
  for (const std::string& entry : config.problems) {
    if (entry == "all") {
      for (const std::string& name : list_problems()) out.push_back(&get_problem(name));
    } else {
      out.push_back(&get_problem(entry));
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("run_benchmark: empty problem list");
  }
  return out;
}

unsigned resolve_threads(const RunConfig& config, std::size_t cells) {
  unsigned n = config.threads;
  if (n == 0) {
    if (const char* env = std::getenv("NSBUNDLE_THREADS")) {
      const long parsed = std::strtol(env, nullptr, 10);
      if (parsed > 0) n = static_cast<unsigned>(parsed);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(n, cells));
}

int registry_index(const std::string& name) {
  const auto& names = list_problems();
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? 0 : static_cast<int>(it - names.begin()) + 1;
}

CellResult run_cell(const ProblemInstance& problem, const RunConfig& config) {
  DriverConfig driver;
  driver.variant = config.algo;
  driver.mu = config.mu;
  driver.eps = config.eps;
  driver.stop.fstar = problem.fstar;
  driver.stop.ftol = config.ftol;
  driver.stop.max_outer = config.max_outer;
  driver.stop.probe_eta = config.probe_eta;
  driver.warm = config.warm;
  driver.bundle_capacity = config.bundle_capacity;
  driver.inner_cap = config.inner_cap;

  CellResult cell;
  cell.problem = problem.name;
  cell.index = registry_index(problem.name);

  ObjectiveOracle oracle = problem.make_oracle();
  try {
    cell.trace = run(oracle, problem.x0, driver);
  } catch (const std::exception& err) {
    cell.trace.reason = StopReason::error;
    cell.trace.error = err.what();
  }
  cell.trace.problem = problem.name;
  cell.converged = cell.trace.reason == StopReason::ftol ||
                   cell.trace.reason == StopReason::gnorm ||
                   cell.trace.reason == StopReason::probe;

  // Complexity-bound columns: exact when a reference minimizer pins R,
  // advisory (best iterate as surrogate) otherwise.
  if (has_momentum(config.algo) && cell.trace.reason != StopReason::error) {
    if (problem.xstar) {
      annotate_bounds(cell.trace, (problem.x0 - *problem.xstar).norm());
    } else if (cell.trace.best_point.size() == problem.x0.size()) {
      annotate_bounds(cell.trace, (problem.x0 - cell.trace.best_point).norm());
    }
  }
  return cell;
}

}  // namespace

BenchReport run_benchmark(const RunConfig& config) {
  if (!(config.ftol > 0.0)) {
    throw std::invalid_argument("run_benchmark: ftol must be positive");
  }
  if (config.max_outer < 1) {
    throw std::invalid_argument("run_benchmark: max_outer must be at least 1");
  }
  const auto problems = resolve_problems(config);

  BenchReport report;
  report.cells.resize(problems.size());

  const unsigned workers = resolve_threads(config, problems.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < problems.size(); ++i) {
      report.cells[i] = run_cell(*problems[i], config);
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < problems.size();
             i = next.fetch_add(1)) {
          report.cells[i] = run_cell(*problems[i], config);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  report.all_converged = std::all_of(report.cells.begin(), report.cells.end(),
                                     [](const CellResult& c) { return c.converged; });

  if (config.strict) {
    for (const CellResult& cell : report.cells) {
      if (cell.trace.reason == StopReason::error) {
        throw std::runtime_error("run_benchmark: " + cell.problem + ": " +
                                 cell.trace.error);
      }
    }
  }
  return report;
}

std::string render_table(const BenchReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%3s  %-13s %5s %7s %10s  %s\n", "Pb",
                "Problem", "#k", "#fg", "f-f*", "stop");
  out += line;
  for (const CellResult& cell : report.cells) {
    const RunTrace& t = cell.trace;
    if (t.reason == StopReason::error) {
      std::snprintf(line, sizeof(line), "%3d  %-13s %5d %7ld %10s  error: %s\n",
                    cell.index, cell.problem.c_str(), t.steps, t.fg, "-",
                    t.error.c_str());
    } else {
      // absolute residual: reference optima are 6-digit roundings, so the
      // best value may land a hair below them
      std::snprintf(line, sizeof(line), "%3d  %-13s %5d %7ld %10.2E  %s\n",
                    cell.index, cell.problem.c_str(), t.steps, t.fg,
                    std::abs(t.f_gap.value_or(std::nan(""))),
                    to_string(t.reason).c_str());
    }
    out += line;
  }
  return out;
}

std::string summary_csv(const BenchReport& report) {
  std::string out = "pb,problem,k,fg,f_gap,stop,converged\n";
  for (const CellResult& cell : report.cells) {
    const RunTrace& t = cell.trace;
    out += std::to_string(cell.index) + ',' + cell.problem + ',';
    out += std::to_string(t.steps) + ',' + std::to_string(t.fg) + ',';
    if (t.f_gap) out += real17(*t.f_gap);
    out += ',' + to_string(t.reason) + ',';
    out += cell.converged ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string summary_json(const BenchReport& report) {
  std::string out = "{\"all_converged\":";
  out += report.all_converged ? "true" : "false";
  out += ",\"cells\":[";
  bool first = true;
  for (const CellResult& cell : report.cells) {
    const RunTrace& t = cell.trace;
    if (!first) out += ',';
    first = false;
    out += "{\"pb\":" + std::to_string(cell.index);
    out += ",\"problem\":\"" + cell.problem + "\"";
    out += ",\"k\":" + std::to_string(t.steps);
    out += ",\"fg\":" + std::to_string(t.fg);
    out += ",\"f_best\":" + real17(t.f_best);
    out += ",\"f_gap\":" + (t.f_gap ? real17(*t.f_gap) : std::string("null"));
    out += ",\"stop_reason\":\"" + to_string(t.reason) + "\"";
    out += ",\"converged\":" + std::string(cell.converged ? "true" : "false");
    out += ",\"wall_ms\":" + real17(t.wall_ms) + "}";
  }
  out += "]}";
  return out;
}

}  // namespace nsbundle

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "nsbundle/bench.hpp"
#include "nsbundle/trace.hpp"

using namespace nsbundle;

namespace {

RunConfig small_config() {
  RunConfig cfg;
  cfg.problems = {"CB3", "DEM"};
  cfg.algo = Variant::fpba1;
  cfg.eps = EpsSchedule::decay(0.1);
  cfg.threads = 1;
  return cfg;
}

}  // namespace

TEST_CASE("benchmark runs cells in problem order and reports convergence") {
  const BenchReport report = run_benchmark(small_config());
  REQUIRE(report.cells.size() == 2);
  CHECK(report.cells[0].problem == "CB3");
  CHECK(report.cells[0].index == 2);
  CHECK(report.cells[1].problem == "DEM");
  CHECK(report.all_converged);
  for (const CellResult& cell : report.cells) {
    CHECK(cell.trace.reason == StopReason::ftol);
    CHECK(cell.trace.f_gap.has_value());
    CHECK(*cell.trace.f_gap <= 1e-6 * (1.0 + std::abs(cell.trace.f_best)));
  }
}

TEST_CASE("empty problem list is a usage error") {
  RunConfig cfg = small_config();
  cfg.problems = {};
  CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
  cfg.problems = {"unknown-problem"};
  CHECK_THROWS_AS(run_benchmark(cfg), std::invalid_argument);
}

TEST_CASE("'all' expands to the full registry") {
  RunConfig cfg = small_config();
  cfg.problems = {"all"};
  cfg.max_outer = 1;  // keep it quick; convergence not required here
  const BenchReport report = run_benchmark(cfg);
  CHECK(report.cells.size() == 15);
}

TEST_CASE("repeated runs render identical summaries") {
  const BenchReport a = run_benchmark(small_config());
  const BenchReport b = run_benchmark(small_config());
  CHECK(render_table(a) == render_table(b));
  CHECK(summary_csv(a) == summary_csv(b));
  CHECK(summary_json(a).substr(0, summary_json(a).find("wall_ms")) ==
        summary_json(b).substr(0, summary_json(b).find("wall_ms")));
}

TEST_CASE("threaded execution produces the same report as sequential") {
  RunConfig seq = small_config();
  seq.problems = {"all"};
  seq.max_outer = 25;
  RunConfig par = seq;
  par.threads = 4;
  CHECK(summary_csv(run_benchmark(seq)) == summary_csv(run_benchmark(par)));

  // the env var caps the pool when the config leaves it open
  ::setenv("NSBUNDLE_THREADS", "2", 1);
  RunConfig env = seq;
  env.threads = 0;
  CHECK(summary_csv(run_benchmark(env)) == summary_csv(run_benchmark(seq)));
  ::unsetenv("NSBUNDLE_THREADS");
}

TEST_CASE("strict mode rethrows cell failures, fail-soft records them") {
  RunConfig cfg = small_config();
  cfg.problems = {"Shor"};
  cfg.inner_cap = 1;  // guaranteed inner-loop failure
  const BenchReport soft = run_benchmark(cfg);
  CHECK(!soft.all_converged);
  CHECK(soft.cells[0].trace.reason == StopReason::error);
  CHECK(!soft.cells[0].trace.error.empty());

  cfg.strict = true;
  CHECK_THROWS_AS(run_benchmark(cfg), std::runtime_error);
}

TEST_CASE("trace CSV has the fixed schema and is byte-stable") {
  const BenchReport report = run_benchmark(small_config());
  const RunTrace& trace = report.cells[0].trace;
  const std::string csv = trace_csv(trace);
  CHECK(csv.rfind("k,f_y,f_best,eps_k,fg_cum,vartheta,stop\n", 0) == 0);
  CHECK(csv == trace_csv(trace));  // re-export identical

  // final row carries the stop reason
  const auto last_nl = csv.find_last_of('\n', csv.size() - 2);
  CHECK(csv.substr(last_nl + 1).find("ftol") != std::string::npos);
}

TEST_CASE("trace JSON carries the summary with a valid stop reason") {
  const BenchReport report = run_benchmark(small_config());
  const std::string json = trace_json(report.cells[0].trace);
  CHECK(json.find("\"stop_reason\":\"ftol\"") != std::string::npos);
  CHECK(json.find("\"problem\":\"CB3\"") != std::string::npos);
  CHECK(json.find("\"rows\":[") != std::string::npos);
}

TEST_CASE("export_trace writes files and surfaces path errors") {
  const BenchReport report = run_benchmark(small_config());
  const auto dir = std::filesystem::temp_directory_path() / "nsbundle_test_export";
  std::filesystem::create_directories(dir);
  const auto path = dir / "trace.csv";
  export_trace(report.cells[0].trace, "csv", path);
  std::ifstream in(path, std::ios::binary);
  std::string contents((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  CHECK(contents == trace_csv(report.cells[0].trace));

  CHECK_THROWS_AS(export_trace(report.cells[0].trace, "xml", dir / "t.xml"),
                  std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      export_trace(report.cells[0].trace, "csv", dir / "no_dir" / "t.csv"),
      doctest::Contains("no_dir"), std::runtime_error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("oracle-call accounting includes every evaluation") {
  // fg_cum in the last row equals the summary count, and each step adds at
  // least the center evaluation plus one trial
  const BenchReport report = run_benchmark(small_config());
  for (const CellResult& cell : report.cells) {
    const RunTrace& t = cell.trace;
    CHECK(t.rows.back().fg_cum == t.fg);
    long prev = 0;
    double best = std::numeric_limits<double>::infinity();
    for (const TraceRow& row : t.rows) {
      CHECK(row.fg_cum > prev);
      prev = row.fg_cum;
      CHECK(row.f_best <= best + 1e-15);
      best = row.f_best;
    }
  }
}

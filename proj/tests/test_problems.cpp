#include <doctest.h>

#include <random>

#include "nsbundle/accel.hpp"
#include "nsbundle/problems.hpp"

using namespace nsbundle;

TEST_CASE("registry holds the fifteen problems in order") {
  const auto& names = list_problems();
  REQUIRE(names.size() == 15);
  CHECK(names.front() == "CB2");
  CHECK(names.back() == "L1Hilb");
  CHECK(get_problem("8").name == "Rosen-Suzuki");
  CHECK(get_problem("maxquad").name == "Maxquad");
  CHECK_THROWS_AS(get_problem("nope"), std::invalid_argument);
  CHECK_THROWS_AS(get_problem("16"), std::invalid_argument);
  CHECK_THROWS_AS(get_problem("0"), std::invalid_argument);
}

TEST_CASE("registry rows match the reference table") {
  struct Row {
    const char* name;
    int n;
    double fstar;
  };
  const Row rows[] = {
      {"CB2", 2, 1.952224},   {"CB3", 2, 2.0},
      {"DEM", 2, -3.0},       {"QL", 2, 7.2},
      {"LQ", 2, -std::sqrt(2.0)}, {"Mifflin1", 2, -1.0},
      {"Mifflin2", 2, -1.0},  {"Rosen-Suzuki", 4, -44.0},
      {"Shor", 5, 22.600162}, {"Maxquad", 10, -0.841408},
      {"Maxq", 20, 0.0},      {"Maxl", 20, 0.0},
      {"Goffin", 50, 0.0},    {"MxHilb", 50, 0.0},
      {"L1Hilb", 50, 0.0},
  };
  for (const Row& row : rows) {
    const auto& p = get_problem(row.name);
    CHECK(p.dimension == row.n);
    CHECK(p.fstar == row.fstar);
    CHECK(p.x0.size() == row.n);
  }
}

TEST_CASE("spot values and subgradients") {
  {
    const auto& p = get_problem("CB2");
    auto oracle = p.make_oracle();
    Vector z = Vector::Zero(2);
    const Evaluation ev = oracle(z);
    CHECK(ev.value == doctest::Approx(8.0));
    CHECK(ev.subgrad(0) == doctest::Approx(-4.0));
    CHECK(ev.subgrad(1) == doctest::Approx(-4.0));
  }
  {
    auto oracle = get_problem("Maxq").make_oracle();
    const Evaluation ev = oracle(Vector::Zero(20));
    CHECK(ev.value == 0.0);
    CHECK(ev.subgrad.norm() == 0.0);
  }
  {
    auto oracle = get_problem("L1Hilb").make_oracle();
    CHECK(oracle(Vector::Zero(50)).value == 0.0);
  }
  {
    // rows 11-15 all share f* = 0 attained at the origin
    for (const char* name : {"Maxq", "Maxl", "Goffin", "MxHilb", "L1Hilb"}) {
      auto oracle = get_problem(name).make_oracle();
      const int n = get_problem(name).dimension;
      CHECK(oracle(Vector::Zero(n)).value == 0.0);
    }
  }
}

TEST_CASE("known minimizers attain the reference values") {
  for (const std::string& name : list_problems()) {
    const auto& p = get_problem(name);
    if (!p.xstar) continue;
    auto oracle = p.make_oracle();
    const double fx = oracle(*p.xstar).value;
    CHECK(std::abs(fx - p.fstar) <= 1e-6 * (1.0 + std::abs(p.fstar)));
  }
}

TEST_CASE("oracles reject bad input and count calls") {
  const auto& p = get_problem("DEM");
  auto oracle = p.make_oracle();
  CHECK(oracle.calls() == 0);
  (void)oracle(p.x0);
  CHECK(oracle.calls() == 1);
  Vector nanv(2);
  nanv << 0.0, std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(oracle(nanv), std::invalid_argument);
  CHECK_THROWS_AS(oracle(Vector::Zero(3)), std::invalid_argument);
  CHECK(oracle.calls() == 1);  // failed calls are not counted
}

TEST_CASE("every oracle passes the subgradient inequality audit") {
  std::mt19937_64 rng(2718);
  for (const std::string& name : list_problems()) {
    const auto& p = get_problem(name);
    auto oracle = p.make_oracle();
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    int violations = 0;
    for (int pair = 0; pair < 1000; ++pair) {
      Vector x(p.dimension), y(p.dimension);
      for (int i = 0; i < p.dimension; ++i) {
        x(i) = u(rng);
        y(i) = u(rng);
      }
      const Evaluation ex = oracle(x);
      const Evaluation ey = oracle(y);
      const double lin = ex.value + ex.subgrad.dot(y - x);
      if (ey.value < lin - 1e-9 * (1.0 + std::abs(ey.value))) ++violations;
    }
    CHECK_MESSAGE(violations == 0, name);
  }
}

// Long-haul validation of the reference optima: a momentum-free bundle run
// from each standard start must reach every f* under the benchmark rule.
TEST_CASE("reference optima are reachable by the classic bundle baseline") {
  for (const std::string& name : list_problems()) {
    const auto& p = get_problem(name);
    DriverConfig cfg;
    cfg.variant = Variant::classic_pba;
    cfg.eps = EpsSchedule::descent(0.5);
    cfg.stop.fstar = p.fstar;
    cfg.stop.max_outer = 2000;
    auto oracle = p.make_oracle();
    const RunTrace trace = run(oracle, p.x0, cfg);
    CHECK_MESSAGE((trace.reason == StopReason::ftol || trace.reason == StopReason::gnorm),
                  name, " stopped with ", to_string(trace.reason));
  }
}

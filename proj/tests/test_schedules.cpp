#include <doctest.h>


#include <cmath>
#include <stdexcept>
#include "nsbundle/nesterov.hpp"
#include "nsbundle/schedules.hpp"

using namespace nsbundle;

TEST_CASE("acceleration sequence values and identities") {
  NesterovSequence seq;
  CHECK(seq.lambda(0) == 1.0);
  CHECK(seq.lambda(1) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  // lambda_{k-1}^2 = lambda_k (lambda_k - 1)
  const double l4 = seq.lambda(4);
  const double l5 = seq.lambda(5);
  CHECK(std::abs(l4 * l4 - l5 * (l5 - 1.0)) <= 1e-12 * l5 * l5);
}

TEST_CASE("extrapolation coefficients") {
  NesterovSequence seq;
  CHECK(seq.alpha(0) == 0.0);
  CHECK(seq.beta(0, Variant::fpba2) ==
        doctest::Approx(1.0 / seq.lambda(1)).epsilon(1e-15));
  for (int k = 0; k < 20; ++k) {
    CHECK(seq.beta(k, Variant::fpba1) == 0.0);
    CHECK(seq.beta(k, Variant::ppa) == 0.0);
    CHECK(seq.beta(k, Variant::classic_pba) == 0.0);
    CHECK(seq.alpha(k) == doctest::Approx((seq.lambda(k) - 1.0) / seq.lambda(k + 1)));
  }
}

TEST_CASE("generalized sequences are validated against the growth condition") {
  // the standard recurrence satisfies the condition with equality
  NesterovSequence seq;
  std::vector<double> table;
  for (int k = 0; k <= 10; ++k) table.push_back(seq.lambda(k));
  CHECK_NOTHROW(NesterovSequence::generalized(table));

  // constant-1 sequences are admissible (plain proximal iteration)
  CHECK_NOTHROW(NesterovSequence::generalized({1.0, 1.0, 1.0}));

  // growing too fast violates lambda_k^2 - lambda_{k-1}^2 <= lambda_k
  CHECK_THROWS_AS(NesterovSequence::generalized({1.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(NesterovSequence::generalized({2.0, 2.5}), std::invalid_argument);
  CHECK_THROWS_AS(NesterovSequence::generalized({}), std::invalid_argument);

  const auto gen = NesterovSequence::generalized({1.0, 1.5, 1.8});
  CHECK(gen.lambda(2) == 1.8);
  CHECK_THROWS_AS(gen.lambda(3), std::out_of_range);
}

TEST_CASE("decay schedule divides by lambda_k") {
  NesterovSequence seq;
  const EpsSchedule sched = EpsSchedule::decay(0.1);
  CHECK(sched.eps_at(0, seq) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(sched.eps_at(1, seq) == doctest::Approx(0.0618033988749895).epsilon(1e-12));

  // strictly decreasing and below 2 eps0 / (k+2) for large k
  double prev = sched.eps_at(0, seq);
  for (int k = 1; k <= 10000; ++k) {
    const double e = sched.eps_at(k, seq);
    CHECK(e < prev);
    CHECK(e <= 2.0 * 0.1 / (k + 2.0) * (1.0 + 1e-12));
    prev = e;
  }
}

TEST_CASE("schedule construction is validated") {
  CHECK_THROWS_AS(EpsSchedule::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(EpsSchedule::decay(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(EpsSchedule::descent(0.0), std::invalid_argument);
  CHECK_THROWS_AS(EpsSchedule::descent(1.0), std::invalid_argument);
  CHECK_THROWS_AS(EpsSchedule::descent(1.7), std::invalid_argument);
  NesterovSequence seq;
  CHECK_THROWS_AS(EpsSchedule::descent(0.5).eps_at(0, seq), std::logic_error);
}

TEST_CASE("mu schedules enforce positivity and monotonicity") {
  CHECK(MuSchedule::constant(2.0).at(17) == 2.0);
  const MuSchedule geo = MuSchedule::geometric(1.0, 0.5);
  CHECK(geo.at(0) == 1.0);
  CHECK(geo.at(3) == doctest::Approx(0.125).epsilon(1e-15));
  for (int k = 1; k < 50; ++k) CHECK(geo.at(k) <= geo.at(k - 1));

  CHECK_THROWS_AS(MuSchedule::constant(0.0), std::invalid_argument);
  CHECK_THROWS_AS(MuSchedule::geometric(1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(MuSchedule::table({1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(MuSchedule::table({}), std::invalid_argument);
  const MuSchedule tab = MuSchedule::table({4.0, 2.0, 1.0});
  CHECK(tab.at(1) == 2.0);
  CHECK(tab.at(9) == 1.0);  // last entry repeats
}

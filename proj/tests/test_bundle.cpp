#include <doctest.h>

#include <random>

#include "nsbundle/bundle.hpp"
#include "nsbundle/problems.hpp"

using namespace nsbundle;

namespace {

Vector v1(double a) {
  Vector v(1);
  v << a;
  return v;
}

Vector v2(double a, double b) {
  Vector v(2);
  v << a, b;
  return v;
}

// |x| model in 1-D: cuts at +1 and -1.
Bundle abs_model() {
  Bundle b(1);
  b.add_cut(Cut::make(v1(1.0), 1.0, v1(1.0)));
  b.add_cut(Cut::make(v1(-1.0), 1.0, v1(-1.0)));
  return b;
}

}  // namespace

TEST_CASE("cut caches its constant term") {
  const Cut cut = Cut::make(v2(2.0, 2.0), 20.0, v2(4.0, 32.0));
  CHECK(cut.const_term == doctest::Approx(20.0 - (4.0 * 2.0 + 32.0 * 2.0)).epsilon(1e-15));
  CHECK(cut.value_at(v2(2.0, 2.0)) == doctest::Approx(20.0).epsilon(1e-15));
  CHECK_THROWS_AS(Cut::make(v1(0.0), 1.0, v2(1.0, 1.0)), std::invalid_argument);
  Vector bad = v1(0.0);
  bad(0) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(Cut::make(bad, 1.0, v1(1.0)), std::invalid_argument);
}

TEST_CASE("add_cut grows the bundle and checks dimensions") {
  Bundle b(1);
  CHECK(b.empty());
  b.add_cut(Cut::make(v1(0.0), 0.0, v1(1.0)));
  CHECK(b.size() == 1);
  CHECK_THROWS_AS(Bundle(3).add_cut(Cut::make(v2(0, 0), 0.0, v2(1, 1))),
                  std::invalid_argument);
}

TEST_CASE("evaluate is the max of cuts, ties to the lowest index") {
  Bundle b = abs_model();
  CHECK(b.evaluate(v1(0.3)) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(b.evaluate(v1(0.0)) == 0.0);

  Bundle single(1);
  single.add_cut(Cut::make(v1(0.0), 0.0, v1(1.0)));
  CHECK(single.evaluate(v1(-5.0)) == doctest::Approx(-5.0).epsilon(1e-15));

  Bundle empty(1);
  CHECK_THROWS_AS(empty.evaluate(v1(0.0)), std::invalid_argument);
}

TEST_CASE("two-point model of CB2 evaluates as the max of its linearizations") {
  const auto& cb2 = get_problem("CB2");
  auto oracle = cb2.make_oracle();
  Bundle b(2);
  const Vector za = v2(2.0, 2.0);
  const Vector zb = v2(0.0, 0.0);
  const Evaluation ea = oracle(za);
  const Evaluation eb = oracle(zb);
  b.add_cut(Cut::make(za, ea.value, ea.subgrad));
  b.add_cut(Cut::make(zb, eb.value, eb.subgrad));

  const Vector probe = v2(1.0, 1.0);
  const double la = ea.value + ea.subgrad.dot(probe - za);
  const double lb = eb.value + eb.subgrad.dot(probe - zb);
  CHECK(b.evaluate(probe) == doctest::Approx(std::max(la, lb)).epsilon(1e-14));
}

TEST_CASE("model_gap on the |x| model") {
  Bundle b = abs_model();
  CHECK(b.model_gap(v1(0.0), 0.0) == 0.0);  // model exact at the kink

  Bundle one(1);
  one.add_cut(Cut::make(v1(1.0), 1.0, v1(1.0)));
  CHECK(one.model_gap(v1(-1.0), 1.0) == doctest::Approx(2.0).epsilon(1e-15));
  // tight at its own generation point
  CHECK(one.model_gap(v1(1.0), 1.0) == 0.0);
}

TEST_CASE("lower model property against real oracles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const char* name : {"CB2", "Maxq", "Mifflin2"}) {
    const auto& prob = get_problem(name);
    auto oracle = prob.make_oracle();
    Bundle b(prob.dimension);
    for (int i = 0; i < 6; ++i) {
      Vector z(prob.dimension);
      for (int k = 0; k < prob.dimension; ++k) z(k) = u(rng);
      const Evaluation ev = oracle(z);
      b.add_cut(Cut::make(z, ev.value, ev.subgrad));
    }
    for (int i = 0; i < 1000; ++i) {
      Vector x(prob.dimension);
      for (int k = 0; k < prob.dimension; ++k) x(k) = u(rng);
      const double fx = oracle(x).value;
      CHECK(b.evaluate(x) <= fx + 1e-9 * (1.0 + std::abs(fx)));
    }
  }
}

TEST_CASE("adding a cut never lowers the model") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Bundle b(2);
  b.add_cut(Cut::make(v2(0, 0), 1.0, v2(u(rng), u(rng))));
  std::vector<Vector> probes;
  for (int i = 0; i < 50; ++i) probes.push_back(v2(u(rng), u(rng)));
  for (int round = 0; round < 10; ++round) {
    std::vector<double> before;
    for (const auto& p : probes) before.push_back(b.evaluate(p));
    b.add_cut(Cut::make(v2(u(rng), u(rng)), u(rng), v2(u(rng), u(rng))));
    for (std::size_t i = 0; i < probes.size(); ++i) {
      CHECK(b.evaluate(probes[i]) >= before[i]);
    }
  }
}

TEST_CASE("capacity triggers compaction that keeps the newest cut and aggregates") {
  Bundle b(1, 2);
  b.add_cut(Cut::make(v1(0.0), 0.0, v1(-1.0)));  // weight 0.65
  b.add_cut(Cut::make(v1(1.0), 1.0, v1(1.0)));   // weight 0.35
  Vector w(2);
  w << 0.65, 0.35;
  b.note_weights(w);

  b.add_cut(Cut::make(v1(2.0), 2.0, v1(1.0)));
  CHECK(b.size() == 2);
  CHECK(b.aggregate().has_value());
  // newest cut present
  CHECK(b.has_cut_at(v1(2.0)));
  // folded cut was (g=-1, b=0) alone, so the aggregate equals it
  CHECK(b.aggregate()->subgrad(0) == doctest::Approx(-1.0));
  CHECK(b.aggregate()->const_term == doctest::Approx(0.0));
  // model still evaluates: max(x, x, -x)
  CHECK(b.evaluate(v1(-2.0)) == doctest::Approx(2.0));
  CHECK(b.model_size() == 3);
}

TEST_CASE("compaction never raises the model and keeps it a lower bound") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const auto& prob = get_problem("CB2");
  auto oracle = prob.make_oracle();

  Bundle capped(2, 3);
  Bundle full(2);
  for (int i = 0; i < 8; ++i) {
    Vector z = v2(u(rng), u(rng));
    const Evaluation ev = oracle(z);
    capped.add_cut(Cut::make(z, ev.value, ev.subgrad));
    full.add_cut(Cut::make(z, ev.value, ev.subgrad));
    // weights: uniform over current model
    const auto msize = static_cast<Eigen::Index>(capped.model_size());
    capped.note_weights(Vector::Constant(msize, 1.0 / static_cast<double>(msize)));
  }
  CHECK(capped.size() <= 3);
  for (int i = 0; i < 200; ++i) {
    Vector x = v2(u(rng), u(rng));
    const double lo = capped.evaluate(x);
    const double hi = full.evaluate(x);
    const double fx = oracle(x).value;
    CHECK(lo <= hi + 1e-12 * (1.0 + std::abs(hi)));
    CHECK(lo <= fx + 1e-9 * (1.0 + std::abs(fx)));
  }
}

TEST_CASE("warm weights follow cut insertion and compaction") {
  Bundle b(1);
  CHECK(!b.warm_weights());
  b.add_cut(Cut::make(v1(0.0), 0.0, v1(1.0)));
  b.add_cut(Cut::make(v1(1.0), 1.0, v1(-1.0)));
  Vector w(2);
  w << 0.4, 0.6;
  b.note_weights(w);
  b.add_cut(Cut::make(v1(2.0), 2.0, v1(0.5)));
  const auto warm = b.warm_weights();
  REQUIRE(warm.has_value());
  REQUIRE(warm->size() == 3);
  CHECK((*warm)(0) == 0.4);
  CHECK((*warm)(1) == 0.6);
  CHECK((*warm)(2) == 0.0);
  CHECK_THROWS_AS(b.note_weights(w), std::invalid_argument);  // stale size
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "semaopt/diagnostics.hpp"
#include "semaopt/errors.hpp"
#include "semaopt/harness.hpp"
#include "semaopt/optimizer.hpp"
#include "semaopt/problems.hpp"
#include "semaopt/rng.hpp"

using namespace semaopt;

TEST_CASE("descent check worked example") {
  // quadratic 0.5||x||^2 at x=(1,0) with v_next=(1,0), eta=0.1, unit scaling:
  // F_next = 0.405 against rhs = 0.5 - 0.05 - 0.025 = 0.425
  const RealVector grad{1.0, 0.0};
  const RealVector v{1.0, 0.0};
  const Lemma3Result r = lemma3_check(0.405, 0.5, grad, v, 0.1, 1.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(r.slack == doctest::Approx(0.02).epsilon(1e-12));
}

TEST_CASE("exact gradient steps always descend within the precondition") {
  QuadraticProblem p(6, 0.5, 2.0);
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    RealVector x(6);
    for (auto& v : x) v = 3.0 * (2.0 * rng.uniform() - 1.0);
    const RealVector g = p.grad(x);
    const double eta = 0.9 / (2.0 * p.lipschitz()) * rng.uniform() + 1e-4;
    RealVector x_next(6);
    for (std::size_t i = 0; i < 6; ++i) x_next[i] = x[i] - eta * g[i];
    const Lemma3Result r = lemma3_check(p.eval(x_next), p.eval(x), g, g, eta, 1.0, 1.0,
                                        p.lipschitz(), 1.0, 1.0);
    if (eta * p.lipschitz() <= 0.5) {
      CHECK(r.status == CheckStatus::Pass);
    }
  }
}

TEST_CASE("descent check skips when preconditions fail") {
  const RealVector g{1.0};
  // step size above c_l/(2 c_u^2 L_F)
  CHECK(lemma3_check(0.0, 1.0, g, g, 0.9, 1.0, 1.0, 1.0, 1.0, 1.0).status ==
        CheckStatus::Skipped);
  // observed scaling outside [c_l, c_u]
  CHECK(lemma3_check(0.0, 1.0, g, g, 0.1, 1.0, 1.0, 1.0, 0.5, 1.0).status ==
        CheckStatus::Skipped);
  CHECK(lemma3_check(0.0, 1.0, g, g, 0.1, 1.0, 1.0, 1.0, 1.0, 1.5).status ==
        CheckStatus::Skipped);
}

TEST_CASE("descent check flags a genuine violation") {
  const RealVector g{1.0};
  const Lemma3Result r = lemma3_check(1.5, 1.0, g, g, 0.1, 1.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(r.status == CheckStatus::Fail);
  CHECK(r.slack < 0.0);
}

TEST_CASE("variance recursion closed-form cases") {
  SUBCASE("stationary and noiseless") {
    Lemma2Setting s;
    s.h = [](const RealVector& x) { return x; };
    s.oracle = [](const RealVector& x, Rng&) { return x; };
    s.L = 1.0;
    s.beta = 0.5;
    s.z = {1.0};
    s.x_prev = {0.0};
    s.x_cur = {0.0};
    const Lemma2Result r = lemma2_mc_check(s, 10000, 1);
    CHECK(r.pass);
    CHECK(r.lhs_est == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(r.rhs_est == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.stderr_est == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("pure gaussian noise: lhs = beta^2, rhs = 2 beta^2") {
    Lemma2Setting s;
    s.h = [](const RealVector& x) { return x; };
    s.oracle = [](const RealVector& x, Rng& rng) {
      RealVector out(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + rng.normal();
      return out;
    };
    s.L = 1.0;
    s.beta = 0.5;
    s.z = {0.0};
    s.x_prev = {0.0};
    s.x_cur = {0.0};
    const Lemma2Result r = lemma2_mc_check(s, 200000, 2);
    CHECK(r.pass);
    CHECK(r.lhs_est == doctest::Approx(0.25).epsilon(0.02));
    CHECK(r.rhs_est == doctest::Approx(0.5).epsilon(0.02));
  }
  SUBCASE("beta = 1 passes with factor-two slack") {
    Lemma2Setting s = lemma2_linear_setting(1.0, 1.0, 1.0);
    const Lemma2Result r = lemma2_mc_check(s, 50000, 3);
    CHECK(r.pass);
    // lhs ~ sigma^2, oracle term ~ 2 sigma^2 (plus the displacement term)
    CHECK(r.lhs_est == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r.rhs_est >= 2.0 * r.lhs_est * 0.9);
  }
}

TEST_CASE("variance recursion holds across a small grid") {
  std::uint64_t seed = 10;
  for (double beta : {0.1, 0.5}) {
    for (double L : {1.0, 10.0}) {
      for (double noise : {0.0, 1.0}) {
        CAPTURE(beta);
        CAPTURE(L);
        CAPTURE(noise);
        const Lemma2Result r =
            lemma2_mc_check(lemma2_linear_setting(beta, L, noise), 20000, seed++);
        CHECK(r.pass);
      }
    }
  }
}

TEST_CASE("variance recursion argument validation") {
  Lemma2Setting s = lemma2_linear_setting(0.5, 1.0, 1.0);
  CHECK_THROWS_AS(lemma2_mc_check(s, 100, 1), UsageError);
  s.beta = 0.0;
  CHECK_THROWS_AS(lemma2_mc_check(s, 10000, 1), UsageError);
}

TEST_CASE("tracker keeps exact running averages") {
  Tracker t;
  StepRecord r = t.push(0, 1.0, 4.0, 1.0, 1.0, 1.0, 0.5, 0.1);
  CHECK(r.run_avg_grad == 4.0);
  r = t.push(1, 1.0, 4.0, 3.0, 1.0, 1.0, 0.5, 0.1);
  CHECK(r.run_avg_grad == 4.0);  // mean of a constant stays put
  CHECK(r.run_avg_delta == 2.0);

  Tracker t2;
  t2.push(0, 0.0, 2.0, 0.0, 1.0, 1.0, 1.0, 1.0);
  const StepRecord r2 = t2.push(1, 0.0, 4.0, 0.0, 1.0, 1.0, 1.0, 1.0);
  CHECK(r2.run_avg_grad == 3.0);

  // incremental average equals the batch mean on a random stream
  Tracker t3;
  Rng rng(33);
  double sum = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double g = rng.uniform() * 10.0;
    sum += g;
    const StepRecord rec = t3.push(k, 0.0, g, 0.0, 1.0, 1.0, 1.0, 1.0);
    CHECK(rec.run_avg_grad == doctest::Approx(sum / (k + 1)).epsilon(1e-13));
  }
}

TEST_CASE("tracker rejects non-finite metrics") {
  Tracker t;
  try {
    t.push(7, std::nan(""), 1.0, 1.0, 1.0, 1.0, 0.5, 0.1);
    FAIL("expected NumericError");
  } catch (const NumericError& e) {
    CHECK(e.iteration() == 7);
  }
}

TEST_CASE("diagnostic failures carry the offending record") {
  StepRecord rec;
  rec.t = 12;
  rec.F_x = 3.0;
  const DiagnosticFailure f("descent inequality violated", rec);
  CHECK(f.record().t == 12);
  CHECK(f.record().F_x == 3.0);
  CHECK(std::string(f.what()).find("12") != std::string::npos);
}

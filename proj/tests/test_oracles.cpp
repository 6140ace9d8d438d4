#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>

#include "semaopt/errors.hpp"
#include "semaopt/oracles.hpp"
#include "semaopt/problems.hpp"
#include "semaopt/rng.hpp"

using namespace semaopt;

namespace {

struct MomentStats {
  RealVector mean;
  RealVector coord_var;   // per-coordinate sample variance
  double mean_err_sq;     // empirical E||O - grad F||^2
  std::int64_t n;
};

MomentStats collect(const GradientOracle& oracle, const RealVector& x, std::int64_t n,
                    std::uint64_t seed) {
  const auto d = x.size();
  const RealVector g = oracle.problem().grad(x);
  RealVector sum(d, 0.0), sumsq(d, 0.0), draw(d);
  double err = 0.0;
  Rng rng(seed);
  for (std::int64_t t = 0; t < n; ++t) {
    oracle.sample(x, rng, draw);
    for (std::size_t i = 0; i < d; ++i) {
      sum[i] += draw[i];
      sumsq[i] += draw[i] * draw[i];
    }
    err += dist_sq(draw, g);
  }
  MomentStats st;
  st.n = n;
  st.mean.resize(d);
  st.coord_var.resize(d);
  const double dn = static_cast<double>(n);
  for (std::size_t i = 0; i < d; ++i) {
    st.mean[i] = sum[i] / dn;
    st.coord_var[i] = std::max(0.0, sumsq[i] / dn - st.mean[i] * st.mean[i]);
  }
  st.mean_err_sq = err / dn;
  return st;
}

RealVector probe_point(const Problem& p, int which, Rng& rng) {
  RealVector x(static_cast<std::size_t>(p.dim()));
  if (which == 0) return p.start();
  if (which == 1) return RealVector(x.size(), 0.0);
  for (double& v : x) v = 2.5 * (2.0 * rng.uniform() - 1.0);
  return x;
}

}  // namespace

TEST_CASE("zero-noise gaussian oracle returns the exact gradient") {
  auto p = std::make_shared<BoundedCurlProblem>(3);
  auto o = gaussian_oracle(p, 0.0);
  CHECK(o->spec().sigma_sq == 0.0);
  CHECK(o->spec().c == 1.0);
  Rng rng(1);
  const RealVector x{0.3, -1.0, 2.0};
  CHECK(o->sample(x, rng) == p->grad(x));
}

TEST_CASE("gaussian oracle empirical mean matches the gradient") {
  auto p = std::make_shared<QuadraticProblem>(2, 1.0, 1.0);
  auto o = gaussian_oracle(p, 1.0);
  const RealVector x{0.7, -0.4};
  const RealVector g = p->grad(x);
  const std::int64_t n = 100000;
  const MomentStats st = collect(*o, x, n, 31);
  for (std::size_t i = 0; i < x.size(); ++i) {
    CHECK(std::abs(st.mean[i] - g[i]) <= 3.0 / std::sqrt(static_cast<double>(n)));
  }
}

TEST_CASE("gaussian oracle splits variance across coordinates") {
  auto p = std::make_shared<QuadraticProblem>(4, 1.0, 1.0);
  auto o = gaussian_oracle(p, 1.0);
  const RealVector x(4, 0.5);
  const MomentStats st = collect(*o, x, 200000, 37);
  for (double v : st.coord_var) CHECK(v == doctest::Approx(0.25).epsilon(0.03));
}

TEST_CASE("clamp turns the gaussian oracle into a bounded one") {
  auto p = std::make_shared<BoundedCurlProblem>(1);
  auto o = gaussian_oracle(p, 1.0, 3.0);
  REQUIRE(o->spec().g_inf.has_value());
  CHECK(*o->spec().g_inf ==
        doctest::Approx(3.0 * std::sqrt(3.0) / 8.0 + 3.0).epsilon(1e-15));

  // every draw respects the declared bounds
  Rng rng(5);
  RealVector draw(1);
  Rng xr(6);
  for (int t = 0; t < 20000; ++t) {
    const RealVector x{4.0 * (2.0 * xr.uniform() - 1.0)};
    o->sample(x, rng, draw);
    CHECK(std::abs(draw[0]) <= *o->spec().g_inf * (1.0 + 1e-12));
  }

  auto unl = gaussian_oracle(p, 1.0);
  CHECK_FALSE(unl->spec().g_inf.has_value());
  auto quad = gaussian_oracle(std::make_shared<QuadraticProblem>(2, 1.0, 1.0), 1.0, 3.0);
  CHECK_FALSE(quad->spec().g_inf.has_value());  // unbounded gradient stays unbounded
}

TEST_CASE("coordinate oracle enumerates to the exact identity") {
  // E[O] = grad and E||O - grad||^2 = (d-1)||grad||^2, by brute force over
  // the d equiprobable outcomes.
  for (int d : {1, 2, 3, 10}) {
    CAPTURE(d);
    auto p = std::make_shared<BoundedCurlProblem>(d);
    Rng rng(400 + static_cast<std::uint64_t>(d));
    RealVector x(static_cast<std::size_t>(d));
    for (double& v : x) v = 2.0 * (2.0 * rng.uniform() - 1.0);
    const RealVector g = p->grad(x);

    RealVector mean(x.size(), 0.0);
    double err_sq = 0.0;
    for (int i = 0; i < d; ++i) {
      RealVector outcome(x.size(), 0.0);
      outcome[static_cast<std::size_t>(i)] = d * g[static_cast<std::size_t>(i)];
      for (std::size_t j = 0; j < x.size(); ++j) mean[j] += outcome[j] / d;
      err_sq += dist_sq(outcome, g) / d;
    }
    CHECK(std::sqrt(dist_sq(mean, g)) <= 1e-12);
    CHECK(err_sq == doctest::Approx((d - 1) * norm_sq(g)).epsilon(1e-12));
  }
}

TEST_CASE("coordinate oracle draws the advertised outcomes") {
  // gradient (1,1): the only possible draws are (2,0) and (0,2), each w.p. 1/2
  auto p = std::make_shared<QuadraticProblem>(2, 1.0, 1.0);
  auto o = coordinate_oracle(p);
  CHECK(o->spec().sigma_sq == 1.0);
  CHECK(o->spec().c == 1.0);  // d - 1
  CHECK_FALSE(o->spec().g_inf.has_value());

  const RealVector x{1.0, 1.0};
  Rng rng(77);
  RealVector draw(2);
  int first = 0;
  const int n = 10000;
  for (int t = 0; t < n; ++t) {
    o->sample(x, rng, draw);
    const bool a = draw[0] == 2.0 && draw[1] == 0.0;
    const bool b = draw[0] == 0.0 && draw[1] == 2.0;
    CHECK((a || b));
    if (a) ++first;
  }
  CHECK(std::abs(first / static_cast<double>(n) - 0.5) < 0.02);

  // d=3, grad (1,0,0): outcomes (3,0,0), (0,0,0), (0,0,0) average to (1,0,0)
  QuadraticProblem q3(3, 1.0, 1.0);
  const RealVector g3 = q3.grad(RealVector{1.0, 0.0, 0.0});
  RealVector mean(3, 0.0);
  for (int i = 0; i < 3; ++i) {
    mean[static_cast<std::size_t>(i)] += 3.0 * g3[static_cast<std::size_t>(i)] / 3.0;
  }
  CHECK(mean == RealVector{1.0, 0.0, 0.0});

  // d=1 degenerates to the exact gradient
  auto o1 = coordinate_oracle(std::make_shared<BoundedCurlProblem>(1));
  CHECK(o1->spec().c == 0.0);
  Rng r1(3);
  CHECK(o1->sample(RealVector{0.7}, r1) ==
        BoundedCurlProblem(1).grad(RealVector{0.7}));
}

TEST_CASE("minibatch oracle is unbiased and declares a valid bound") {
  auto lp = std::make_shared<LogisticProblem>(10, 100, 42, 0.1);
  auto o = minibatch_oracle(lp, 1);
  const RealVector& x0 = lp->start();
  const RealVector g0 = lp->grad(x0);

  const std::int64_t n = 100000;
  const MomentStats st = collect(*o, x0, n, 55);
  for (std::size_t i = 0; i < st.mean.size(); ++i) {
    const double se = std::sqrt(st.coord_var[i] / static_cast<double>(n));
    CHECK(std::abs(st.mean[i] - g0[i]) <= 3.0 * se + 1e-12);
  }

  // the declared sigma^2 dominates the stored start-point estimate
  REQUIRE(o->stored_start_variance().has_value());
  CHECK(*o->stored_start_variance() <= o->spec().sigma_sq);
  CHECK(*o->stored_start_variance() ==
        doctest::Approx(st.mean_err_sq).epsilon(0.05));

  // with-replacement batch = n still has variance; "full" mode has none
  auto big = minibatch_oracle(lp, lp->n_examples());
  Rng rng(66);
  bool any_off = false;
  RealVector draw(10);
  for (int t = 0; t < 20 && !any_off; ++t) {
    big->sample(x0, rng, draw);
    any_off = dist_sq(draw, g0) > 1e-12;
  }
  CHECK(any_off);

  auto full = full_gradient_oracle(lp);
  CHECK(full->spec().sigma_sq == 0.0);
  Rng r2(1);
  CHECK(full->sample(x0, r2) == g0);
}

TEST_CASE("every oracle satisfies unbiasedness and the variance condition") {
  auto curl = std::make_shared<BoundedCurlProblem>(10);
  auto quad = std::make_shared<QuadraticProblem>(10, 1.0, 1.0);
  auto logi = std::make_shared<LogisticProblem>(10, 100, 42, 0.1);

  std::vector<OraclePtr> oracles;
  oracles.push_back(gaussian_oracle(curl, 1.0));
  oracles.push_back(clamped_gaussian_oracle(curl, 1.0));
  oracles.push_back(gaussian_oracle(quad, 0.5));
  oracles.push_back(coordinate_oracle(curl));
  oracles.push_back(coordinate_oracle(logi));
  oracles.push_back(minibatch_oracle(logi, 2));
  oracles.push_back(full_gradient_oracle(quad));

  const std::int64_t n = 100000;
  const double mc_margin = 1.0 + 4.0 / std::sqrt(static_cast<double>(n));
  std::uint64_t seed = 1000;
  for (const auto& o : oracles) {
    CAPTURE(o->name());
    CAPTURE(o->problem().name());
    Rng point_rng(808);
    for (int pt = 0; pt < 10; ++pt) {
      const RealVector x = probe_point(o->problem(), pt, point_rng);
      const RealVector g = o->problem().grad(x);
      const MomentStats st = collect(*o, x, n, seed++);
      for (std::size_t i = 0; i < x.size(); ++i) {
        const double se = std::sqrt(st.coord_var[i] / static_cast<double>(n));
        // the 1e-10 absolute term absorbs summation rounding for exact oracles
        CHECK(std::abs(st.mean[i] - g[i]) <= 4.0 * se + 1e-10 * (1.0 + std::abs(g[i])));
      }
      const double bound = o->spec().sigma_sq * (1.0 + o->spec().c * norm_sq(g));
      CHECK(st.mean_err_sq <= bound * mc_margin + 1e-12);
    }
  }
}

TEST_CASE("draw streams are pure functions of the seed") {
  auto p = std::make_shared<BoundedCurlProblem>(4);
  auto o = gaussian_oracle(p, 1.0);
  const RealVector x(4, 0.5);
  Rng a(7), b(7);
  for (int t = 0; t < 100; ++t) CHECK(o->sample(x, a) == o->sample(x, b));

  auto lp = std::make_shared<LogisticProblem>(10, 100, 42, 0.1);
  auto m1 = minibatch_oracle(lp, 3);
  auto m2 = minibatch_oracle(lp, 3);
  Rng c(7), d(7);
  for (int t = 0; t < 100; ++t) CHECK(m1->sample(lp->start(), c) == m2->sample(lp->start(), d));
}

TEST_CASE("oracle parameter errors") {
  auto p = std::make_shared<BoundedCurlProblem>(2);
  CHECK_THROWS_AS(gaussian_oracle(p, -1.0), UsageError);
  CHECK_THROWS_AS(gaussian_oracle(p, 1.0, -2.0), UsageError);
  auto lp = std::make_shared<LogisticProblem>(4, 20, 1, 0.1);
  CHECK_THROWS_AS(minibatch_oracle(lp, 0), UsageError);

  auto o = gaussian_oracle(p, 1.0);
  Rng rng(1);
  CHECK_THROWS_AS(o->sample(RealVector{1.0, 2.0, 3.0}, rng), UsageError);
}

#include "semaopt/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "semaopt/errors.hpp"

namespace semaopt {

namespace {

class GaussianOracle final : public GradientOracle {
 public:
  GaussianOracle(ProblemPtr problem, double sigma, std::optional<double> clamp)
      : GradientOracle("gaussian", std::move(problem), {}),
        coord_sd_(sigma / std::sqrt(static_cast<double>(problem_->dim()))),
        clamp_(clamp) {
    spec_.sigma_sq = sigma * sigma;
    spec_.c = 1.0;
    if (clamp_) {
      if (auto b = problem_->grad_inf_bound()) spec_.g_inf = *b + *clamp_;
      if (auto b = problem_->grad_two_bound()) {
        spec_.g_two = *b + std::sqrt(static_cast<double>(problem_->dim())) * *clamp_;
      }
    }
  }

 protected:
  void sample_impl(std::span<const double> x, Rng& rng, std::span<double> out) const override {
    problem_->grad(x, out);
    if (coord_sd_ == 0.0) return;
    for (double& v : out) {
      double noise = coord_sd_ * rng.normal();
      if (clamp_) noise = std::clamp(noise, -*clamp_, *clamp_);
      v += noise;
    }
  }

 private:
  double coord_sd_;
  std::optional<double> clamp_;
};

class CoordinateOracle final : public GradientOracle {
 public:
  explicit CoordinateOracle(ProblemPtr problem)
      : GradientOracle("coordinate", std::move(problem), {}) {
    spec_.sigma_sq = 1.0;
    spec_.c = static_cast<double>(problem_->dim() - 1);
  }

 protected:
  void sample_impl(std::span<const double> x, Rng& rng, std::span<double> out) const override {
    const auto d = static_cast<std::size_t>(dim());
    problem_->grad(x, out);
    const std::size_t pick = rng.uniform_index(d);
    const double scaled = static_cast<double>(d) * out[pick];
    std::fill(out.begin(), out.end(), 0.0);
    out[pick] = scaled;
  }
};

class MinibatchOracle final : public GradientOracle {
 public:
  MinibatchOracle(std::shared_ptr<const LogisticProblem> problem, int batch)
      : GradientOracle("minibatch", problem, {}), logistic_(std::move(problem)), batch_(batch) {
    if (batch < 1) throw UsageError("minibatch_oracle: batch must be >= 1");
    spec_.c = 1.0;
    const auto d = static_cast<std::size_t>(dim());
    const auto n = static_cast<std::size_t>(logistic_->n_examples());
    if (auto bound = per_draw_inf_bound()) spec_.g_inf = bound;

    // Declared sigma^2 is the provable bound (1/(b*n)) * sum_i ||a_i||^2:
    // each example gradient deviates from the mean by w_i a_i - avg(w a)
    // with |w| < 1 and the regularizer common to all examples. A Monte Carlo
    // point estimate at x0 understates the variance elsewhere, so it is kept
    // only as a stored diagnostic.
    const RealVector& a = logistic_->data();
    double rows_sq = 0.0;
    for (double v : a) rows_sq += v * v;
    spec_.sigma_sq = rows_sq / (static_cast<double>(n) * static_cast<double>(batch_));

    // Empirical mean of ||O - grad F||^2 at x0 over 10^4 draws.
    const RealVector& x0 = logistic_->start();
    const RealVector g0 = logistic_->grad(x0);
    Rng rng(0x3a6b1c9d5e7f2840ULL);
    RealVector draw(d);
    double acc = 0.0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
      sample_impl(x0, rng, draw);
      acc += dist_sq(draw, g0);
    }
    sigma_sq_at_start_ = acc / trials;
  }

  std::optional<double> stored_start_variance() const override { return sigma_sq_at_start_; }

 protected:
  void sample_impl(std::span<const double> x, Rng& rng, std::span<double> out) const override {
    const auto d = static_cast<std::size_t>(dim());
    const auto n = static_cast<std::size_t>(logistic_->n_examples());
    std::fill(out.begin(), out.end(), 0.0);
    RealVector g(d);
    for (int b = 0; b < batch_; ++b) {
      const int idx = static_cast<int>(rng.uniform_index(n));
      logistic_->example_grad(idx, x, g);
      for (std::size_t j = 0; j < d; ++j) out[j] += g[j];
    }
    const double inv_b = 1.0 / static_cast<double>(batch_);
    for (double& v : out) v *= inv_b;
  }

 private:
  // Every draw's coordinate j is bounded by max_i |A_ij| plus the regularizer
  // gradient bound.
  std::optional<double> per_draw_inf_bound() const {
    const auto d = static_cast<std::size_t>(dim());
    const auto n = static_cast<std::size_t>(logistic_->n_examples());
    const RealVector& a = logistic_->data();
    double worst = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      double col = 0.0;
      for (std::size_t i = 0; i < n; ++i) col = std::max(col, std::abs(a[i * d + j]));
      worst = std::max(worst, col);
    }
    return worst + logistic_->lambda() * kBoundedCurlGradMax;
  }

  std::shared_ptr<const LogisticProblem> logistic_;
  int batch_;
  double sigma_sq_at_start_ = 0.0;
};

class FullGradientOracle final : public GradientOracle {
 public:
  explicit FullGradientOracle(ProblemPtr problem)
      : GradientOracle("full", std::move(problem), {}) {
    spec_.sigma_sq = 0.0;
    spec_.c = 1.0;
    spec_.g_inf = problem_->grad_inf_bound();
    spec_.g_two = problem_->grad_two_bound();
  }

 protected:
  void sample_impl(std::span<const double> x, Rng&, std::span<double> out) const override {
    problem_->grad(x, out);
  }
};

}  // namespace

OraclePtr gaussian_oracle(ProblemPtr problem, double sigma, std::optional<double> clamp) {
  if (sigma < 0.0) throw UsageError("gaussian_oracle: sigma must be >= 0");
  if (clamp && *clamp <= 0.0) throw UsageError("gaussian_oracle: clamp must be > 0");
  return std::make_unique<GaussianOracle>(std::move(problem), sigma, clamp);
}

OraclePtr clamped_gaussian_oracle(ProblemPtr problem, double sigma) {
  if (sigma <= 0.0) throw UsageError("clamped_gaussian_oracle: sigma must be > 0");
  const double coord_sd = sigma / std::sqrt(static_cast<double>(problem->dim()));
  return gaussian_oracle(std::move(problem), sigma, 6.0 * coord_sd);
}

OraclePtr coordinate_oracle(ProblemPtr problem) {
  return std::make_unique<CoordinateOracle>(std::move(problem));
}

OraclePtr minibatch_oracle(std::shared_ptr<const LogisticProblem> problem, int batch) {
  return std::make_unique<MinibatchOracle>(std::move(problem), batch);
}

OraclePtr full_gradient_oracle(ProblemPtr problem) {
  return std::make_unique<FullGradientOracle>(std::move(problem));
}

}  // namespace semaopt

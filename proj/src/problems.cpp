#include "semaopt/problems.hpp"

#include <cmath>

#include "semaopt/errors.hpp"
#include "semaopt/rng.hpp"

namespace semaopt {

namespace {

// log(1 + exp(t)) without overflow.
double softplus(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

// 1 / (1 + exp(-t)).
double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double curl_term(double u) { return u * u / (1.0 + u * u); }

double curl_grad(double u) {
  const double w = 1.0 + u * u;
  return 2.0 * u / (w * w);
}

}  // namespace

QuadraticProblem::QuadraticProblem(int dim, double mu, double lip)
    : Problem("quadratic", dim, lip, 0.0), diag_(static_cast<std::size_t>(dim)) {
  if (!(mu > 0.0) || !(lip >= mu)) {
    throw UsageError("QuadraticProblem: need 0 < mu <= L");
  }
  for (int i = 0; i < dim; ++i) {
    diag_[static_cast<std::size_t>(i)] =
        dim == 1 ? lip : mu + (lip - mu) * static_cast<double>(i) / (dim - 1);
  }
}

double QuadraticProblem::eval_impl(std::span<const double> x) const {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += diag_[i] * x[i] * x[i];
  return 0.5 * s;
}

void QuadraticProblem::grad_impl(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = diag_[i] * x[i];
}

BoundedCurlProblem::BoundedCurlProblem(int dim) : Problem("boundedcurl", dim, 2.0, 0.0) {
  grad_inf_bound_ = kBoundedCurlGradMax;
  grad_two_bound_ = std::sqrt(static_cast<double>(dim)) * kBoundedCurlGradMax;
}

double BoundedCurlProblem::eval_impl(std::span<const double> x) const {
  double s = 0.0;
  for (double v : x) s += curl_term(v);
  return s;
}

void BoundedCurlProblem::grad_impl(std::span<const double> x, std::span<double> out) const {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = curl_grad(x[i]);
}

namespace {

// Default logistic instance (dim=10, n=100, seed=42, lambda=0.1).
// F_* found by deterministic multi-start full-gradient descent on the
// generated dataset; regenerate with tests/test_problems.cpp's descent
// oracle if the dataset generation ever changes.
constexpr int kLogisticDim = 10;
constexpr int kLogisticN = 100;
constexpr std::uint64_t kLogisticSeed = 42;
constexpr double kLogisticLambda = 0.1;
constexpr double kLogisticFStar = 0.45103095892242157;

}  // namespace

LogisticProblem::LogisticProblem(int dim, int n_examples, std::uint64_t data_seed,
                                 double lambda, std::optional<double> f_star_override)
    : Problem("logistic", dim, 0.0, 0.0), n_(n_examples), lambda_(lambda) {
  if (n_examples < 1) throw UsageError("LogisticProblem: need at least one example");
  if (lambda < 0.0) throw UsageError("LogisticProblem: lambda must be >= 0");

  const auto d = static_cast<std::size_t>(dim);
  const auto n = static_cast<std::size_t>(n_examples);

  // Synthetic dataset: gaussian features, labels from a gaussian ground-truth
  // separator with label noise. Everything flows from the one seed.
  Rng rng(data_seed);
  a_.resize(n * d);
  for (double& v : a_) v = rng.normal();
  RealVector w_true(d);
  for (double& v : w_true) v = rng.normal();
  y_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) z += a_[i * d + j] * w_true[j];
    z += 0.5 * rng.normal();
    y_[i] = z >= 0.0 ? 1.0 : -1.0;
  }

  // L_F from the data matrix: lambda_max(A^T A) <= Gershgorin row bound.
  // The logistic Hessian is at most A^T A / (4n); the regularizer adds 2*lambda.
  double gersh = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    double row = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      double m = 0.0;
      for (std::size_t i = 0; i < n; ++i) m += a_[i * d + j] * a_[i * d + k];
      row += std::abs(m);
    }
    gersh = std::max(gersh, row);
  }
  lipschitz_ = gersh / (4.0 * static_cast<double>(n)) + 2.0 * lambda;

  // Per-coordinate gradient bounds: |logistic loss derivative| < 1.
  RealVector coord_bound(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a_[i * d + j]);
    coord_bound[j] = s / static_cast<double>(n) + lambda * kBoundedCurlGradMax;
  }
  grad_inf_bound_ = inf_norm(coord_bound);
  grad_two_bound_ = norm(coord_bound);

  if (f_star_override) {
    f_star_ = *f_star_override;
  } else if (dim == kLogisticDim && n_examples == kLogisticN &&
             data_seed == kLogisticSeed && lambda == kLogisticLambda) {
    f_star_ = kLogisticFStar;
  } else {
    // Multi-start full-gradient descent, deterministic in the data seed.
    const int starts = 7;
    const int iters = 20000;
    double best = eval_impl(x0_);
    Rng start_rng(mix64(data_seed) ^ 0x5eedf00dULL);
    for (int s = 0; s < starts; ++s) {
      RealVector x(d, 0.0);
      if (s == 0) {
        x = x0_;
      } else if (s == 1) {
        // origin
      } else if (s == 2) {
        x.assign(d, -1.0);
      } else {
        for (double& v : x) v = 2.0 * start_rng.normal();
      }
      RealVector g(d);
      const double step = 1.0 / lipschitz_;
      for (int it = 0; it < iters; ++it) {
        grad_impl(x, g);
        for (std::size_t j = 0; j < d; ++j) x[j] -= step * g[j];
      }
      best = std::min(best, eval_impl(x));
    }
    f_star_ = best;
  }
}

double LogisticProblem::eval_impl(std::span<const double> x) const {
  const auto d = static_cast<std::size_t>(dim_);
  double loss = 0.0;
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) z += a_[i * d + j] * x[j];
    loss += softplus(-y_[i] * z);
  }
  loss /= static_cast<double>(n_);
  for (std::size_t j = 0; j < d; ++j) loss += lambda_ * curl_term(x[j]);
  return loss;
}

void LogisticProblem::grad_impl(std::span<const double> x, std::span<double> out) const {
  const auto d = static_cast<std::size_t>(dim_);
  for (std::size_t j = 0; j < d; ++j) out[j] = lambda_ * curl_grad(x[j]);
  const double inv_n = 1.0 / static_cast<double>(n_);
  for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) z += a_[i * d + j] * x[j];
    const double w = -y_[i] * sigmoid(-y_[i] * z) * inv_n;
    for (std::size_t j = 0; j < d; ++j) out[j] += w * a_[i * d + j];
  }
}

void LogisticProblem::example_grad(int i, std::span<const double> x,
                                   std::span<double> out) const {
  if (i < 0 || i >= n_) throw UsageError("LogisticProblem::example_grad: index out of range");
  check_same_dim(static_cast<std::size_t>(dim_), x.size(), "example_grad");
  check_same_dim(static_cast<std::size_t>(dim_), out.size(), "example_grad output");
  const auto d = static_cast<std::size_t>(dim_);
  double z = 0.0;
  for (std::size_t j = 0; j < d; ++j) z += a_[static_cast<std::size_t>(i) * d + j] * x[j];
  const double w = -y_[static_cast<std::size_t>(i)] * sigmoid(-y_[static_cast<std::size_t>(i)] * z);
  for (std::size_t j = 0; j < d; ++j) {
    out[j] = w * a_[static_cast<std::size_t>(i) * d + j] + lambda_ * curl_grad(x[j]);
  }
}

std::vector<ProblemPtr> builtin_problems() {
  return {
      std::make_shared<QuadraticProblem>(10, 1.0, 1.0),
      std::make_shared<BoundedCurlProblem>(10),
      std::make_shared<LogisticProblem>(kLogisticDim, kLogisticN, kLogisticSeed,
                                        kLogisticLambda),
  };
}

ProblemPtr builtin_problem(const std::string& name) {
  for (auto& p : builtin_problems()) {
    if (p->name() == name) return p;
  }
  throw ConfigError("unknown problem: " + name);
}

}  // namespace semaopt

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semaopt/vec.hpp"

namespace semaopt {

/// A smooth objective with analytic gradient and known constants: gradient
/// Lipschitz constant, global minimum value, and a fixed start point. All
/// problems are immutable after construction and safe to share across runs.
class Problem {
 public:
  virtual ~Problem() = default;

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  /// Gradient Lipschitz constant L_F.
  double lipschitz() const { return lipschitz_; }
  /// Global minimum value F_*.
  double optimum_value() const { return f_star_; }
  const RealVector& start() const { return x0_; }

  /// sup_x ||grad F(x)||_inf when finite, otherwise nullopt.
  std::optional<double> grad_inf_bound() const { return grad_inf_bound_; }
  /// sup_x ||grad F(x)||_2 when finite, otherwise nullopt.
  std::optional<double> grad_two_bound() const { return grad_two_bound_; }

  double eval(std::span<const double> x) const {
    check_same_dim(static_cast<std::size_t>(dim_), x.size(), "Problem::eval");
    return eval_impl(x);
  }

  void grad(std::span<const double> x, std::span<double> out) const {
    check_same_dim(static_cast<std::size_t>(dim_), x.size(), "Problem::grad");
    check_same_dim(static_cast<std::size_t>(dim_), out.size(), "Problem::grad output");
    grad_impl(x, out);
  }

  RealVector grad(std::span<const double> x) const {
    RealVector g(static_cast<std::size_t>(dim_));
    grad(x, g);
    return g;
  }

 protected:
  Problem(std::string name, int dim, double lipschitz, double f_star)
      : name_(std::move(name)), dim_(dim), lipschitz_(lipschitz), f_star_(f_star),
        x0_(static_cast<std::size_t>(dim), 1.0) {
    if (dim < 1) throw UsageError("Problem: dim must be >= 1");
  }

  virtual double eval_impl(std::span<const double> x) const = 0;
  virtual void grad_impl(std::span<const double> x, std::span<double> out) const = 0;

  std::string name_;
  int dim_;
  double lipschitz_;
  double f_star_;
  RealVector x0_;  // default start (1,...,1)
  std::optional<double> grad_inf_bound_;
  std::optional<double> grad_two_bound_;
};

using ProblemPtr = std::shared_ptr<const Problem>;

/// Convex quadratic (1/2) x^T A x with A diagonal, eigenvalues evenly spaced
/// over [mu, lip]. L_F = lip, F_* = 0, minimizer at the origin.
class QuadraticProblem : public Problem {
 public:
  QuadraticProblem(int dim, double mu, double lip);
  const RealVector& spectrum() const { return diag_; }

 protected:
  double eval_impl(std::span<const double> x) const override;
  void grad_impl(std::span<const double> x, std::span<double> out) const override;

 private:
  RealVector diag_;
};

/// Separable non-convex objective sum_i x_i^2 / (1 + x_i^2). Bounded gradient
/// (per-coordinate maximum 3*sqrt(3)/8), L_F = 2, F_* = 0.
class BoundedCurlProblem : public Problem {
 public:
  explicit BoundedCurlProblem(int dim);

 protected:
  double eval_impl(std::span<const double> x) const override;
  void grad_impl(std::span<const double> x, std::span<double> out) const override;
};

/// Per-coordinate gradient bound of BoundedCurlProblem: max_x 2x/(1+x^2)^2.
inline constexpr double kBoundedCurlGradMax = 0.649519052838329;  // 3*sqrt(3)/8

/// Binary logistic loss on a synthetic dataset plus the non-convex bounded
/// regularizer lambda * sum_i x_i^2/(1+x_i^2). The dataset is generated
/// deterministically from a seed; L_F is computed from the data matrix and
/// F_* was obtained offline by deterministic multi-start full-gradient
/// descent and is stored alongside the default dataset.
class LogisticProblem : public Problem {
 public:
  LogisticProblem(int dim, int n_examples, std::uint64_t data_seed, double lambda,
                  std::optional<double> f_star_override = std::nullopt);

  int n_examples() const { return n_; }
  double lambda() const { return lambda_; }
  /// Row-major n x dim feature matrix.
  const RealVector& data() const { return a_; }
  const std::vector<double>& labels() const { return y_; }

  /// Gradient of example i's loss plus the full regularizer; averaging over
  /// a uniform i reproduces grad F.
  void example_grad(int i, std::span<const double> x, std::span<double> out) const;

 protected:
  double eval_impl(std::span<const double> x) const override;
  void grad_impl(std::span<const double> x, std::span<double> out) const override;

 private:
  int n_;
  double lambda_;
  RealVector a_;           // n x dim, row-major
  std::vector<double> y_;  // labels in {-1, +1}
};

/// Default instances: quadratic (A = I, d = 10), boundedcurl (d = 10) and
/// the seed-42 logistic problem.
std::vector<ProblemPtr> builtin_problems();

/// Lookup by name over the builtin set. Throws ConfigError on unknown names.
ProblemPtr builtin_problem(const std::string& name);

}  // namespace semaopt

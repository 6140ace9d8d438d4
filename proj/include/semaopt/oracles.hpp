#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>

#include "semaopt/problems.hpp"
#include "semaopt/rng.hpp"
#include "semaopt/vec.hpp"

namespace semaopt {

/// Declared noise parameters of a stochastic gradient oracle:
/// E||O(x) - grad F(x)||^2 <= sigma_sq * (1 + c * ||grad F(x)||^2),
/// plus optional uniform bounds on the draws themselves.
struct OracleSpec {
  double sigma_sq = 0.0;
  double c = 0.0;
  std::optional<double> g_inf;  // ||O(x)||_inf <= g_inf for every draw
  std::optional<double> g_two;  // ||O(x)||_2   <= g_two for every draw
};

/// Unbiased stochastic gradient source: E[sample(x)] = grad F(x).
/// Oracles are immutable; the caller owns the random stream, so draws from
/// distinct streams may proceed concurrently.
class GradientOracle {
 public:
  virtual ~GradientOracle() = default;

  const std::string& name() const { return name_; }
  const Problem& problem() const { return *problem_; }
  const ProblemPtr& problem_ptr() const { return problem_; }
  int dim() const { return problem_->dim(); }
  const OracleSpec& spec() const { return spec_; }

  void sample(std::span<const double> x, Rng& rng, std::span<double> out) const {
    check_same_dim(static_cast<std::size_t>(dim()), x.size(), "GradientOracle::sample");
    check_same_dim(static_cast<std::size_t>(dim()), out.size(), "GradientOracle::sample output");
    sample_impl(x, rng, out);
  }

  RealVector sample(std::span<const double> x, Rng& rng) const {
    RealVector out(static_cast<std::size_t>(dim()));
    sample(x, rng, out);
    return out;
  }

  /// Stored empirical mean of ||O - grad F||^2 at the start point, where an
  /// oracle keeps one (diagnostic; the declared sigma_sq is what certifies
  /// the variance condition).
  virtual std::optional<double> stored_start_variance() const { return std::nullopt; }

 protected:
  GradientOracle(std::string name, ProblemPtr problem, OracleSpec spec)
      : name_(std::move(name)), problem_(std::move(problem)), spec_(spec) {}

  virtual void sample_impl(std::span<const double> x, Rng& rng,
                           std::span<double> out) const = 0;

  std::string name_;
  ProblemPtr problem_;
  OracleSpec spec_;
};

using OraclePtr = std::unique_ptr<GradientOracle>;

/// grad F(x) plus isotropic gaussian noise with total variance sigma^2
/// (sigma^2/d per coordinate). Reports (sigma^2, c = 1). When `clamp` is set
/// every noise coordinate is truncated to [-clamp, clamp]; the variance is
/// still reported as sigma^2 and, if the problem has gradient bounds, the
/// oracle gains g_inf / g_two bounds derived from them.
OraclePtr gaussian_oracle(ProblemPtr problem, double sigma,
                          std::optional<double> clamp = std::nullopt);

/// Convenience: gaussian oracle clamped at six per-coordinate standard
/// deviations (truncation bias below 1e-8 of sigma).
OraclePtr clamped_gaussian_oracle(ProblemPtr problem, double sigma);

/// Samples a coordinate i uniformly and returns d * grad F(x) o e_i.
/// Reports (sigma^2 = 1, c = d - 1); no uniform draw bound is declared.
OraclePtr coordinate_oracle(ProblemPtr problem);

/// Uniform-with-replacement mini-batch gradient of the logistic problem.
/// sigma^2 is estimated at the start point over 10^4 draws when the oracle
/// is built; reports c = 1.
OraclePtr minibatch_oracle(std::shared_ptr<const LogisticProblem> problem, int batch);

/// Deterministic oracle returning grad F(x) exactly ("full" batch mode).
OraclePtr full_gradient_oracle(ProblemPtr problem);

}  // namespace semaopt

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "semaopt/parallel.hpp"
#include "semaopt/rng.hpp"
#include "semaopt/vec.hpp"

namespace semaopt {

/// Per-iteration diagnostics of one run.
struct StepRecord {
  std::int64_t t = 0;
  double F_x = 0.0;           // F(x_t)
  double grad_norm_sq = 0.0;  // ||grad F(x_t)||^2
  double delta_t = 0.0;       // ||v_{t+1} - grad F(x_t)||^2
  double s_min = 0.0;
  double s_max = 0.0;
  double beta_t = 0.0;
  double eta_t = 0.0;
  double run_avg_grad = 0.0;   // mean of grad_norm_sq over steps 0..t
  double run_avg_delta = 0.0;  // mean of delta_t over steps 0..t
};

/// A pathwise diagnostic inequality failed; carries the offending record.
class DiagnosticFailure : public std::runtime_error {
 public:
  DiagnosticFailure(const std::string& what, StepRecord record)
      : std::runtime_error(what + " at iteration " + std::to_string(record.t)),
        record_(record) {}

  const StepRecord& record() const { return record_; }

 private:
  StepRecord record_;
};

enum class CheckStatus { Pass, Fail, Skipped };

struct Lemma3Result {
  CheckStatus status = CheckStatus::Skipped;
  double slack = 0.0;  // rhs - lhs; negative means violation
};

/// Pathwise descent check. With s-coordinates inside [c_l, c_u] and
/// eta_t * L_F <= c_l / (2 c_u^2), asserts
///   F_next <= F_cur + (eta_t c_u/2)||grad - v_next||^2
///                   - (eta_t c_l/2)||grad||^2 - (eta_t c_l/4)||v_next||^2
/// up to tol = 1e-9 * (1 + |F_cur|). Returns Skipped (never Fail) when the
/// preconditions do not hold.
Lemma3Result lemma3_check(double F_next, double F_cur, std::span<const double> grad,
                          std::span<const double> v_next, double eta_t, double c_l,
                          double c_u, double L_F, double s_min, double s_max);

/// Fixed one-step configuration for the moving-average variance recursion.
/// `h` is an L-Lipschitz mapping and `oracle(x, rng)` draws an unbiased
/// estimate of h(x). The states (z, x_prev, x_cur) are held fixed; only the
/// draw entering z_next = (1-beta) z + beta * O_h(x_cur) is random.
struct Lemma2Setting {
  std::function<RealVector(const RealVector&)> h;
  std::function<RealVector(const RealVector&, Rng&)> oracle;
  double L = 1.0;
  double beta = 0.5;
  RealVector z;
  RealVector x_prev;
  RealVector x_cur;
};

struct Lemma2Result {
  bool pass = false;
  double lhs_est = 0.0;
  double rhs_est = 0.0;
  double stderr_est = 0.0;
  std::int64_t trials = 0;
};

/// Monte Carlo check of the variance recursion
///   E||z_next - h(x_cur)||^2 <= (1-beta)||z - h(x_prev)||^2
///     + 2 beta^2 E||O_h(x_cur) - h(x_cur)||^2 + L^2 ||x_cur - x_prev||^2 / beta
/// at the fixed states. Passes iff lhs_est <= rhs_est + 3 * stderr, where the
/// standard error is that of the (lhs - oracle-variance-term) estimator.
Lemma2Result lemma2_mc_check(const Lemma2Setting& setting, std::int64_t trials,
                             std::uint64_t seed, ExecMode mode = ExecMode::Serial);

/// Accumulates per-step metrics and their running averages. Throws
/// NumericError (via push) when a metric stops being finite.
class Tracker {
 public:
  StepRecord push(std::int64_t t, double F_x, double grad_norm_sq, double delta_t,
                  double s_min, double s_max, double beta_t, double eta_t);

  std::int64_t steps() const { return count_; }
  double run_avg_grad() const { return count_ > 0 ? sum_grad_ / static_cast<double>(count_) : 0.0; }
  double run_avg_delta() const { return count_ > 0 ? sum_delta_ / static_cast<double>(count_) : 0.0; }
  const StepRecord& last() const { return last_; }

 private:
  std::int64_t count_ = 0;
  double sum_grad_ = 0.0;
  double sum_delta_ = 0.0;
  StepRecord last_;
};

}  // namespace semaopt

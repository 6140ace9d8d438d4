#include "semaopt/diagnostics.hpp"

#include <cmath>

#include "semaopt/errors.hpp"

namespace semaopt {

Lemma3Result lemma3_check(double F_next, double F_cur, std::span<const double> grad,
                          std::span<const double> v_next, double eta_t, double c_l,
                          double c_u, double L_F, double s_min, double s_max) {
  check_same_dim(grad.size(), v_next.size(), "lemma3_check");
  Lemma3Result r;
  const bool step_ok = eta_t * L_F <= c_l / (2.0 * c_u * c_u) * (1.0 + 1e-12);
  const bool range_ok = s_min >= c_l * (1.0 - 1e-12) && s_max <= c_u * (1.0 + 1e-12);
  if (!step_ok || !range_ok) {
    r.status = CheckStatus::Skipped;
    return r;
  }
  const double rhs = F_cur + 0.5 * eta_t * c_u * dist_sq(grad, v_next) -
                     0.5 * eta_t * c_l * norm_sq(grad) - 0.25 * eta_t * c_l * norm_sq(v_next);
  const double tol = 1e-9 * (1.0 + std::abs(F_cur));
  r.slack = rhs - F_next;
  r.status = F_next <= rhs + tol ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

Lemma2Result lemma2_mc_check(const Lemma2Setting& setting, std::int64_t trials,
                             std::uint64_t seed, ExecMode mode) {
  if (trials < 10000) throw UsageError("lemma2_mc_check: need at least 10^4 trials");
  if (!(setting.beta > 0.0 && setting.beta <= 1.0)) {
    throw UsageError("lemma2_mc_check: beta must be in (0, 1]");
  }
  const double beta = setting.beta;
  const RealVector h_cur = setting.h(setting.x_cur);
  const RealVector h_prev = setting.h(setting.x_prev);
  check_same_dim(setting.z.size(), h_cur.size(), "lemma2_mc_check");

  const double fixed_rhs = (1.0 - beta) * dist_sq(setting.z, h_prev) +
                           setting.L * setting.L * dist_sq(setting.x_cur, setting.x_prev) / beta;

  // Per trial: Y = ||z_next - h(x_cur)||^2, V = ||draw - h(x_cur)||^2 and the
  // paired statistic D = Y - 2 beta^2 V whose mean is compared to fixed_rhs.
  enum { kY = 0, kV = 1, kD = 2, kDD = 3, kWidth = 4 };
  auto trial = [&](Rng& rng, std::int64_t, std::span<double> acc) {
    const RealVector draw = setting.oracle(setting.x_cur, rng);
    double y = 0.0;
    for (std::size_t i = 0; i < draw.size(); ++i) {
      const double znext = (1.0 - beta) * setting.z[i] + beta * draw[i];
      const double e = znext - h_cur[i];
      y += e * e;
    }
    const double v = dist_sq(draw, h_cur);
    const double d = y - 2.0 * beta * beta * v;
    acc[kY] += y;
    acc[kV] += v;
    acc[kD] += d;
    acc[kDD] += d * d;
  };
  const std::vector<double> sums = mc_accumulate(trials, kWidth, seed, trial, mode);

  const double n = static_cast<double>(trials);
  const double mean_y = sums[kY] / n;
  const double mean_v = sums[kV] / n;
  const double mean_d = sums[kD] / n;
  const double var_d = std::max(0.0, sums[kDD] / n - mean_d * mean_d) * n / (n - 1.0);

  Lemma2Result r;
  r.trials = trials;
  r.lhs_est = mean_y;
  r.rhs_est = fixed_rhs + 2.0 * beta * beta * mean_v;
  r.stderr_est = std::sqrt(var_d / n);
  r.pass = mean_d <= fixed_rhs + 3.0 * r.stderr_est;
  return r;
}

StepRecord Tracker::push(std::int64_t t, double F_x, double grad_norm_sq, double delta_t,
                         double s_min, double s_max, double beta_t, double eta_t) {
  if (!std::isfinite(F_x) || !std::isfinite(grad_norm_sq) || !std::isfinite(delta_t)) {
    throw NumericError("tracker: non-finite metric", t);
  }
  count_ += 1;
  sum_grad_ += grad_norm_sq;
  sum_delta_ += delta_t;
  last_ = StepRecord{t,     F_x,   grad_norm_sq, delta_t,        s_min,
                     s_max, beta_t, eta_t,        run_avg_grad(), run_avg_delta()};
  return last_;
}

}  // namespace semaopt

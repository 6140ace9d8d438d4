#pragma once

#include <cstdint>

#include "semaopt/oracles.hpp"
#include "semaopt/problems.hpp"

namespace semaopt {

/// Constant-schedule budget: the momentum coefficient, step size and horizon
/// that certify mean-square stationarity at accuracy epsilon, together with
/// an echo of the inputs they were derived from.
struct TheoremBudget {
  double beta = 0.0;
  double eta = 0.0;
  std::int64_t T = 0;
  double epsilon = 0.0;
  // echoed inputs
  double sigma_sq = 0.0;
  double c = 0.0;
  double c_l = 0.0;
  double c_u = 0.0;
  double L_F = 0.0;
  double delta0 = 0.0;
  double deltaF = 0.0;
};

/// Constant schedule. beta takes the tighter of the accuracy bound
/// eps^2*c_l/(12*sigma^2*c_u) and the recursion bound c_l/(8*sigma^2*c*c_u);
/// eta and T sit at their bounds with equality. With sigma = 0 the beta
/// bounds are vacuous and beta = 1. All outputs satisfy
/// eta*L_F <= c_l/(2*c_u^2).
TheoremBudget theorem2_budget(double epsilon, double sigma_sq, double c, double c_l,
                              double c_u, double L_F, double delta0, double deltaF);

struct SchedulePoint {
  double beta_t = 0.0;
  double eta_t = 0.0;
};

/// Decreasing schedule: beta_t = c_l/(8*sigma^2*c*c_u*sqrt(t+1)) clamped to
/// <= 1, eta_t = min of its three bounds. Both are non-increasing in t.
SchedulePoint theorem3_schedule(std::int64_t t, double sigma_sq, double c, double c_l,
                                double c_u, double L_F);

/// The constant c_1 = min(1, 1/(4*c*sigma^2)) that accompanies the decreasing
/// schedule. It is logged and compared against beta_t but not applied.
double theorem3_c1(double sigma_sq, double c);

/// Default estimate of Delta_0 = ||v_1 - grad F(x_0)||^2 before any draw is
/// taken: the oracle variance bound evaluated at the start point.
double default_delta0(const Problem& problem, const OracleSpec& spec);

}  // namespace semaopt

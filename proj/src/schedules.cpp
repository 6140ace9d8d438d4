#include "semaopt/schedules.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "semaopt/errors.hpp"

namespace semaopt {

namespace {

double eta_bound(double beta, double sigma_eta_cap, double c_l, double c_u, double L_F) {
  const double from_beta = beta * std::sqrt(c_l) / (2.0 * L_F * std::sqrt(c_u * c_u * c_u));
  const double smooth = c_l / (2.0 * c_u * c_u * L_F);
  return std::min({from_beta, sigma_eta_cap, smooth});
}

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw UsageError(std::string(what) + " must be > 0");
}

}  // namespace

TheoremBudget theorem2_budget(double epsilon, double sigma_sq, double c, double c_l,
                              double c_u, double L_F, double delta0, double deltaF) {
  if (!(epsilon > 0.0 && epsilon <= 1.0)) throw UsageError("epsilon must be in (0, 1]");
  check_positive(c_l, "c_l");
  check_positive(c_u, "c_u");
  check_positive(L_F, "L_F");
  if (sigma_sq < 0.0 || c < 0.0) throw UsageError("sigma_sq and c must be >= 0");
  if (delta0 < 0.0 || deltaF < 0.0) throw UsageError("delta0 and deltaF must be >= 0");
  if (c_l > c_u) throw UsageError("need c_l <= c_u");

  TheoremBudget b;
  b.epsilon = epsilon;
  b.sigma_sq = sigma_sq;
  b.c = c;
  b.c_l = c_l;
  b.c_u = c_u;
  b.L_F = L_F;
  b.delta0 = delta0;
  b.deltaF = deltaF;

  const double inf = std::numeric_limits<double>::infinity();
  const double accuracy_cap =
      sigma_sq > 0.0 ? epsilon * epsilon * c_l / (12.0 * sigma_sq * c_u) : inf;
  // Proof-side requirement 2*beta*sigma^2*c <= c_l/(4*c_u).
  const double recursion_cap =
      sigma_sq * c > 0.0 ? c_l / (8.0 * sigma_sq * c * c_u) : inf;
  b.beta = std::min({accuracy_cap, recursion_cap, 1.0});

  b.eta = eta_bound(b.beta, 1.0 / (std::sqrt(2.0) * L_F * c_u), c_l, c_u, L_F);

  const double eps_sq = epsilon * epsilon;
  const double t_from_delta0 = 6.0 * delta0 * c_u / (b.beta * eps_sq * c_l);
  const double t_from_deltaF = 12.0 * deltaF / (b.eta * eps_sq * c_l);
  b.T = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(std::max(t_from_delta0, t_from_deltaF))));

  assert(b.beta <= accuracy_cap && b.beta <= recursion_cap);
  assert(b.eta * L_F <= c_l / (2.0 * c_u * c_u) * (1.0 + 1e-12));
  assert(static_cast<double>(b.T) >= std::max(t_from_delta0, t_from_deltaF) - 1.0);
  return b;
}

SchedulePoint theorem3_schedule(std::int64_t t, double sigma_sq, double c, double c_l,
                                double c_u, double L_F) {
  if (t < 0) throw UsageError("theorem3_schedule: t must be >= 0");
  check_positive(c_l, "c_l");
  check_positive(c_u, "c_u");
  check_positive(L_F, "L_F");
  if (sigma_sq < 0.0 || c < 0.0) throw UsageError("sigma_sq and c must be >= 0");
  if (c_l > c_u) throw UsageError("need c_l <= c_u");

  SchedulePoint p;
  const double scale = sigma_sq * c > 0.0
                           ? c_l / (8.0 * sigma_sq * c * c_u)
                           : std::numeric_limits<double>::infinity();
  p.beta_t = std::min(1.0, scale / std::sqrt(static_cast<double>(t + 1)));
  p.eta_t = eta_bound(p.beta_t, 1.0 / (2.0 * L_F * c_u), c_l, c_u, L_F);
  assert(p.eta_t * L_F <= c_l / (2.0 * c_u * c_u) * (1.0 + 1e-12));
  return p;
}

double theorem3_c1(double sigma_sq, double c) {
  if (sigma_sq * c <= 0.0) return 1.0;
  return std::min(1.0, 1.0 / (4.0 * c * sigma_sq));
}

double default_delta0(const Problem& problem, const OracleSpec& spec) {
  const double gsq = norm_sq(problem.grad(problem.start()));
  return spec.sigma_sq * (1.0 + spec.c * gsq);
}

}  // namespace semaopt

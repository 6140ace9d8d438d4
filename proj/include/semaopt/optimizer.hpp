#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include <json.hpp>

#include "semaopt/vec.hpp"

namespace semaopt {

/// The six second-moment rules of the Adam-style family, plus a user hook.
enum class RuleKind { SHB, Adam, AMSGrad, AdaFom, AdamPlus, Adabound, Custom };

std::string rule_kind_name(RuleKind kind);
RuleKind rule_kind_from_name(const std::string& name);

/// Custom history map: updates (u, u_aux) in place from the newest draw.
/// Receives the post-update first moment v for rules that depend on it.
using CustomMomentUpdate = std::function<void(RealVector& u, std::optional<RealVector>& u_aux,
                                              std::span<const double> sample,
                                              std::span<const double> v, std::int64_t t)>;

/// Configuration of the second-moment (scaling) rule of the update family.
/// beta2 is the constant averaging coefficient used by Adam, AMSGrad and
/// Adabound; g0 is the additive offset in the scaling denominator; clip_lo
/// and clip_hi are Adabound's target scaling range.
struct SecondMomentRule {
  RuleKind kind = RuleKind::SHB;
  double beta2 = 0.01;
  double g0 = 0.0;
  double clip_lo = 0.0;
  double clip_hi = 0.0;
  CustomMomentUpdate custom_update;

  void validate() const;  // throws UsageError on inconsistent settings
};

SecondMomentRule shb_rule();
SecondMomentRule adam_rule(double beta2 = 0.01, double g0 = 1.0);
SecondMomentRule amsgrad_rule(double beta2 = 0.01, double g0 = 1.0);
SecondMomentRule adafom_rule(double g0 = 1.0);
SecondMomentRule adamplus_rule(double g0 = 1.0);
SecondMomentRule adabound_rule(double beta2, double clip_lo, double clip_hi);

/// Full optimizer state after `t` steps: iterate x (= x_t), first moment v
/// (= v_t), second-moment state u (= u_t) with the auxiliary sequence used
/// by AMSGrad/Adabound, and the most recent oracle draw for diagnostics.
struct OptimizerState {
  std::int64_t t = 0;
  RealVector x;
  RealVector v;
  RealVector u;
  std::optional<RealVector> u_aux;
  RealVector last_sample;
};

/// Fresh state at x0 with v_0 = 0, u_0 = 0 (u'_0 = 0 where applicable).
OptimizerState init_state(const SecondMomentRule& rule, const RealVector& x0);

/// Guaranteed range [c_l, c_u] of the scaling factor s = 1/(sqrt(u) + g0).
struct ScalingBounds {
  double c_l = 1.0;
  double c_u = 1.0;
};

/// Extremes of the scaling-factor coordinates seen in one step.
struct StepInfo {
  double s_min = 0.0;
  double s_max = 0.0;
};

/// Moving-average estimator update: returns (1 - beta) * z + beta * sample.
/// beta must lie in [0, 1].
RealVector sema_update(std::span<const double> z, double beta, std::span<const double> sample);

/// In-place variant of sema_update.
void sema_update_inplace(RealVector& z, double beta, std::span<const double> sample);

/// Applies the rule's history map, writing u_{t+1} (and u'_{t+1}) into the
/// state. `t` is the 0-based step counter; AdamPlus reads state.v, which must
/// already hold v_{t+1}.
void second_moment_update(const SecondMomentRule& rule, OptimizerState& state,
                          std::span<const double> sample, std::int64_t t);

/// One step of the Adam-style family:
///   v <- (1-beta_t) v + beta_t * sample
///   u <- rule history map
///   x <- x - eta_t * v / (sqrt(u) + g0)   (elementwise)
/// Advances state.t and records the draw; returns the scaling extremes.
/// Throws NumericError if the state stops being finite.
StepInfo adam_step(const SecondMomentRule& rule, OptimizerState& state, double beta_t,
                   double eta_t, std::span<const double> sample);

/// Tightest guaranteed scaling range per rule. Rules other than SHB and
/// Adabound need the matching draw bound (inf-norm, or 2-norm for AdamPlus)
/// and g0 > 0; otherwise a ConfigError is thrown.
ScalingBounds scaling_bounds(const SecondMomentRule& rule, std::optional<double> g_inf,
                             std::optional<double> g_two);

/// Heavy-ball recursion in its single-sequence form:
///   x <- x - eta_prime * sample + beta_prime * (x - x_prev).
/// With eta_prime = eta*beta, beta_prime = 1-beta and x_prev initialized to
/// x0 it generates the same iterates as adam_step with the SHB rule.
struct TwoFormState {
  RealVector x;
  RealVector x_prev;
};

void shb_two_form_step(TwoFormState& state, double beta_prime, double eta_prime,
                       std::span<const double> sample);

/// JSON snapshot of the state (layout documented in the README).
nlohmann::json state_to_json(const OptimizerState& state);
OptimizerState state_from_json(const nlohmann::json& j);

}  // namespace semaopt

#include "semaopt/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semaopt/errors.hpp"

namespace semaopt {

std::string rule_kind_name(RuleKind kind) {
  switch (kind) {
    case RuleKind::SHB: return "shb";
    case RuleKind::Adam: return "adam";
    case RuleKind::AMSGrad: return "amsgrad";
    case RuleKind::AdaFom: return "adafom";
    case RuleKind::AdamPlus: return "adamplus";
    case RuleKind::Adabound: return "adabound";
    case RuleKind::Custom: return "custom";
  }
  throw UsageError("rule_kind_name: bad enum value");
}

RuleKind rule_kind_from_name(const std::string& name) {
  for (RuleKind k : {RuleKind::SHB, RuleKind::Adam, RuleKind::AMSGrad, RuleKind::AdaFom,
                     RuleKind::AdamPlus, RuleKind::Adabound, RuleKind::Custom}) {
    if (rule_kind_name(k) == name) return k;
  }
  throw ConfigError("unknown rule: " + name);
}

void SecondMomentRule::validate() const {
  if (!(beta2 > 0.0 && beta2 <= 1.0)) throw UsageError("rule: beta2 must be in (0, 1]");
  if (g0 < 0.0) throw UsageError("rule: g0 must be >= 0");
  if (kind == RuleKind::SHB && g0 != 0.0) throw UsageError("shb: g0 must be 0");
  if (kind == RuleKind::Adabound) {
    if (g0 != 0.0) throw UsageError("adabound: g0 must be 0");
    if (!(clip_lo > 0.0 && clip_hi >= clip_lo)) {
      throw UsageError("adabound: need 0 < clip_lo <= clip_hi");
    }
  }
  if (kind == RuleKind::Custom && !custom_update) {
    throw UsageError("custom rule: update function missing");
  }
}

SecondMomentRule shb_rule() { return {}; }

SecondMomentRule adam_rule(double beta2, double g0) {
  SecondMomentRule r;
  r.kind = RuleKind::Adam;
  r.beta2 = beta2;
  r.g0 = g0;
  return r;
}

SecondMomentRule amsgrad_rule(double beta2, double g0) {
  SecondMomentRule r = adam_rule(beta2, g0);
  r.kind = RuleKind::AMSGrad;
  return r;
}

SecondMomentRule adafom_rule(double g0) {
  SecondMomentRule r;
  r.kind = RuleKind::AdaFom;
  r.g0 = g0;
  return r;
}

SecondMomentRule adamplus_rule(double g0) {
  SecondMomentRule r;
  r.kind = RuleKind::AdamPlus;
  r.g0 = g0;
  return r;
}

SecondMomentRule adabound_rule(double beta2, double clip_lo, double clip_hi) {
  SecondMomentRule r;
  r.kind = RuleKind::Adabound;
  r.beta2 = beta2;
  r.clip_lo = clip_lo;
  r.clip_hi = clip_hi;
  return r;
}

OptimizerState init_state(const SecondMomentRule& rule, const RealVector& x0) {
  rule.validate();
  OptimizerState s;
  s.x = x0;
  s.v.assign(x0.size(), 0.0);
  s.u.assign(x0.size(), rule.kind == RuleKind::SHB ? 1.0 : 0.0);
  if (rule.kind == RuleKind::AMSGrad || rule.kind == RuleKind::Adabound) {
    s.u_aux = RealVector(x0.size(), 0.0);
  }
  s.last_sample.assign(x0.size(), 0.0);
  return s;
}

RealVector sema_update(std::span<const double> z, double beta, std::span<const double> sample) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw UsageError("sema_update: beta must be in [0, 1]");
  check_same_dim(z.size(), sample.size(), "sema_update");
  RealVector out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = (1.0 - beta) * z[i] + beta * sample[i];
  return out;
}

void sema_update_inplace(RealVector& z, double beta, std::span<const double> sample) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw UsageError("sema_update: beta must be in [0, 1]");
  check_same_dim(z.size(), sample.size(), "sema_update");
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (1.0 - beta) * z[i] + beta * sample[i];
}

void second_moment_update(const SecondMomentRule& rule, OptimizerState& state,
                          std::span<const double> sample, std::int64_t t) {
  check_same_dim(state.u.size(), sample.size(), "second_moment_update");
  const std::size_t d = state.u.size();
  switch (rule.kind) {
    case RuleKind::SHB:
      std::fill(state.u.begin(), state.u.end(), 1.0);
      break;
    case RuleKind::Adam:
      for (std::size_t i = 0; i < d; ++i) {
        state.u[i] = (1.0 - rule.beta2) * state.u[i] + rule.beta2 * sample[i] * sample[i];
      }
      break;
    case RuleKind::AMSGrad: {
      RealVector& aux = *state.u_aux;
      for (std::size_t i = 0; i < d; ++i) {
        aux[i] = (1.0 - rule.beta2) * aux[i] + rule.beta2 * sample[i] * sample[i];
        state.u[i] = std::max(state.u[i], aux[i]);
      }
      break;
    }
    case RuleKind::AdaFom:
      // Running mean of squared draws, kept incrementally.
      for (std::size_t i = 0; i < d; ++i) {
        state.u[i] += (sample[i] * sample[i] - state.u[i]) / static_cast<double>(t + 1);
      }
      break;
    case RuleKind::AdamPlus: {
      // Scalar ||v_{t+1}|| broadcast across coordinates.
      const double n = norm(state.v);
      std::fill(state.u.begin(), state.u.end(), n);
      break;
    }
    case RuleKind::Adabound: {
      RealVector& aux = *state.u_aux;
      const double lo = 1.0 / (rule.clip_hi * rule.clip_hi);
      const double hi = 1.0 / (rule.clip_lo * rule.clip_lo);
      for (std::size_t i = 0; i < d; ++i) {
        aux[i] = (1.0 - rule.beta2) * aux[i] + rule.beta2 * sample[i] * sample[i];
        state.u[i] = std::clamp(aux[i], lo, hi);
      }
      break;
    }
    case RuleKind::Custom:
      rule.custom_update(state.u, state.u_aux, sample, state.v, t);
      break;
  }
}

StepInfo adam_step(const SecondMomentRule& rule, OptimizerState& state, double beta_t,
                   double eta_t, std::span<const double> sample) {
  if (!(beta_t > 0.0 && beta_t <= 1.0)) throw UsageError("adam_step: beta_t must be in (0, 1]");
  if (!(eta_t > 0.0)) throw UsageError("adam_step: eta_t must be > 0");
  check_same_dim(state.x.size(), sample.size(), "adam_step");

  sema_update_inplace(state.v, beta_t, sample);
  second_moment_update(rule, state, sample, state.t);

  StepInfo info;
  info.s_min = std::numeric_limits<double>::infinity();
  info.s_max = 0.0;
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    const double s = 1.0 / (std::sqrt(state.u[i]) + rule.g0);
    info.s_min = std::min(info.s_min, s);
    info.s_max = std::max(info.s_max, s);
    state.x[i] -= eta_t * state.v[i] * s;
  }
  state.last_sample.assign(sample.begin(), sample.end());
  state.t += 1;

  if (!all_finite(state.x) || !all_finite(state.v) || !all_finite(state.u) ||
      !std::isfinite(info.s_max)) {
    throw NumericError("adam_step: non-finite state", state.t - 1);
  }
  return info;
}

ScalingBounds scaling_bounds(const SecondMomentRule& rule, std::optional<double> g_inf,
                             std::optional<double> g_two) {
  rule.validate();
  switch (rule.kind) {
    case RuleKind::SHB:
      return {1.0, 1.0};
    case RuleKind::Adam:
    case RuleKind::AMSGrad:
    case RuleKind::AdaFom: {
      if (!g_inf) {
        throw ConfigError(rule_kind_name(rule.kind) + ": needs an inf-norm draw bound");
      }
      if (!(rule.g0 > 0.0)) {
        throw ConfigError(rule_kind_name(rule.kind) + ": needs g0 > 0");
      }
      return {1.0 / (*g_inf + rule.g0), 1.0 / rule.g0};
    }
    case RuleKind::AdamPlus: {
      if (!g_two) throw ConfigError("adamplus: needs a 2-norm draw bound");
      if (!(rule.g0 > 0.0)) throw ConfigError("adamplus: needs g0 > 0");
      return {1.0 / (std::sqrt(*g_two) + rule.g0), 1.0 / rule.g0};
    }
    case RuleKind::Adabound:
      return {rule.clip_lo, rule.clip_hi};
    case RuleKind::Custom:
      throw ConfigError("custom rule: no guaranteed scaling bounds; supply them explicitly");
  }
  throw UsageError("scaling_bounds: bad enum value");
}

void shb_two_form_step(TwoFormState& state, double beta_prime, double eta_prime,
                       std::span<const double> sample) {
  if (!(beta_prime >= 0.0 && beta_prime < 1.0)) {
    throw UsageError("shb_two_form_step: beta_prime must be in [0, 1)");
  }
  if (!(eta_prime > 0.0)) throw UsageError("shb_two_form_step: eta_prime must be > 0");
  check_same_dim(state.x.size(), sample.size(), "shb_two_form_step");
  for (std::size_t i = 0; i < state.x.size(); ++i) {
    const double next = state.x[i] - eta_prime * sample[i] + beta_prime * (state.x[i] - state.x_prev[i]);
    state.x_prev[i] = state.x[i];
    state.x[i] = next;
  }
}

nlohmann::json state_to_json(const OptimizerState& state) {
  nlohmann::json j;
  j["t"] = state.t;
  j["x"] = state.x;
  j["v"] = state.v;
  j["u"] = state.u;
  j["u_aux"] = state.u_aux ? nlohmann::json(*state.u_aux) : nlohmann::json(nullptr);
  j["last_sample"] = state.last_sample;
  return j;
}

OptimizerState state_from_json(const nlohmann::json& j) {
  OptimizerState s;
  s.t = j.at("t").get<std::int64_t>();
  s.x = j.at("x").get<RealVector>();
  s.v = j.at("v").get<RealVector>();
  s.u = j.at("u").get<RealVector>();
  if (!j.at("u_aux").is_null()) s.u_aux = j.at("u_aux").get<RealVector>();
  s.last_sample = j.at("last_sample").get<RealVector>();
  const std::size_t d = s.x.size();
  if (s.v.size() != d || s.u.size() != d || s.last_sample.size() != d ||
      (s.u_aux && s.u_aux->size() != d)) {
    throw UsageError("state_from_json: inconsistent dimensions");
  }
  return s;
}

}  // namespace semaopt

#include "semaopt/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include "semaopt/errors.hpp"

namespace semaopt {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed, const char* where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw ConfigError(std::string(where) + ": unknown key '" + it.key() + "'");
    }
  }
}

double resolved_g0(const RunConfig& cfg) {
  if (cfg.g0) return *cfg.g0;
  return (cfg.rule == "shb" || cfg.rule == "adabound") ? 0.0 : 1.0;
}

std::string format_row(const StepRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "%lld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                static_cast<long long>(r.t), r.F_x, r.grad_norm_sq, r.delta_t,
                r.run_avg_grad, r.run_avg_delta, r.s_min, r.s_max, r.beta_t, r.eta_t);
  return buf;
}

constexpr const char* kCsvHeader =
    "t,F,grad_norm_sq,delta_t,run_avg_grad,run_avg_delta,s_min,s_max,beta_t,eta_t\n";

struct Plan {
  // schedule evaluated at step t
  std::function<SchedulePoint(std::int64_t)> schedule;
  std::int64_t T = 0;
  std::optional<TheoremBudget> budget;
  std::optional<double> c1;
  double c_l = 1.0;
  double c_u = 1.0;
  bool bounds_declared = false;
};

struct SeedOutcome {
  SeedStats stats;
  DiagCounts diag;
  std::int64_t beta_above_c1 = 0;
};

SeedOutcome run_one_seed(const RunConfig& cfg, const Instruments& inst, const Plan& plan,
                         std::uint64_t seed, const std::string& trace_path) {
  const Problem& problem = *inst.problem;
  const auto d = static_cast<std::size_t>(problem.dim());

  Rng rng(seed);
  OptimizerState state = init_state(inst.rule, problem.start());
  if (cfg.init == "oracle") state.v = inst.oracle->sample(problem.start(), rng);

  std::FILE* file = nullptr;
  if (!trace_path.empty()) {
    file = std::fopen(trace_path.c_str(), "w");
    if (!file) throw ConfigError("cannot open trace file: " + trace_path);
    std::fputs(kCsvHeader, file);
  }

  SeedOutcome out;
  out.stats.seed = seed;
  Tracker tracker;
  RealVector grad(d);
  RealVector sample(d);
  double f_cur = problem.eval(state.x);

  try {
    for (std::int64_t t = 0; t <= plan.T; ++t) {
      const SchedulePoint sp = plan.schedule(t);
      if (plan.c1 && sp.beta_t > *plan.c1) out.beta_above_c1 += 1;

      problem.grad(state.x, grad);
      inst.oracle->sample(state.x, rng, sample);
      const StepInfo info = adam_step(inst.rule, state, sp.beta_t, sp.eta_t, sample);
      const double f_next = problem.eval(state.x);

      const StepRecord rec =
          tracker.push(t, f_cur, norm_sq(grad), dist_sq(state.v, grad), info.s_min,
                       info.s_max, sp.beta_t, sp.eta_t);

      if (plan.bounds_declared) {
        out.diag.sbound_checked += 1;
        if (info.s_min < plan.c_l * (1.0 - 1e-12) || info.s_max > plan.c_u * (1.0 + 1e-12)) {
          throw DiagnosticFailure("scaling factor left [c_l, c_u]", rec);
        }
      }

      const double cl_eff = plan.bounds_declared ? plan.c_l : info.s_min;
      const double cu_eff = plan.bounds_declared ? plan.c_u : info.s_max;
      const Lemma3Result l3 = lemma3_check(f_next, f_cur, grad, state.v, sp.eta_t, cl_eff,
                                           cu_eff, problem.lipschitz(), info.s_min,
                                           info.s_max);
      out.diag.lemma3_checked += 1;
      if (l3.status == CheckStatus::Pass) {
        out.diag.lemma3_passed += 1;
      } else if (l3.status == CheckStatus::Skipped) {
        out.diag.lemma3_skipped += 1;
      } else {
        throw DiagnosticFailure("descent inequality violated", rec);
      }

      if (file && (t % cfg.thin == 0 || t == plan.T)) {
        std::fputs(format_row(rec).c_str(), file);
        out.stats.rows += 1;
      }

      f_cur = f_next;
      if (t == plan.T) {
        out.stats.final_F = rec.F_x;
        out.stats.final_grad_norm_sq = rec.grad_norm_sq;
        out.stats.final_run_avg_grad = rec.run_avg_grad;
        out.stats.final_run_avg_delta = rec.run_avg_delta;
      }
    }
  } catch (...) {
    if (file) std::fclose(file);
    throw;
  }
  if (file) std::fclose(file);
  return out;
}

Plan build_plan(const RunConfig& cfg, const Instruments& inst) {
  Plan plan;
  const OracleSpec& spec = inst.oracle->spec();

  // Scaling bounds: declared from the rule + oracle bounds where possible,
  // otherwise the per-step observed extremes stand in for them.
  if (cfg.bounds_mode == "declared" || cfg.bounds_mode == "auto") {
    try {
      const ScalingBounds sb = scaling_bounds(inst.rule, spec.g_inf, spec.g_two);
      plan.c_l = sb.c_l;
      plan.c_u = sb.c_u;
      plan.bounds_declared = true;
    } catch (const ConfigError&) {
      if (cfg.bounds_mode == "declared") throw;
    }
  } else if (cfg.bounds_mode != "observed") {
    throw ConfigError("bounds mode must be auto, declared or observed");
  }

  const double c_eff = cfg.c_override.value_or(spec.c);
  const double sigma_sq = spec.sigma_sq;
  const double L_F = inst.problem->lipschitz();

  if (cfg.schedule == "manual") {
    if (!cfg.max_T) throw ConfigError("manual schedule requires max_T");
    if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw ConfigError("manual beta must be in (0, 1]");
    if (!(cfg.eta > 0.0)) throw ConfigError("manual eta must be > 0");
    const SchedulePoint p{cfg.beta, cfg.eta};
    plan.schedule = [p](std::int64_t) { return p; };
    plan.T = *cfg.max_T;
  } else if (cfg.schedule == "theorem2") {
    if (!plan.bounds_declared) {
      throw ConfigError("theorem2 schedule requires declared scaling bounds");
    }
    const double delta0 =
        cfg.delta0_override.value_or(default_delta0(*inst.problem, spec));
    const double deltaF =
        inst.problem->eval(inst.problem->start()) - inst.problem->optimum_value();
    plan.budget = theorem2_budget(cfg.epsilon, sigma_sq, c_eff, plan.c_l, plan.c_u, L_F,
                                  delta0, deltaF);
    const SchedulePoint p{plan.budget->beta, plan.budget->eta};
    plan.schedule = [p](std::int64_t) { return p; };
    plan.T = cfg.max_T.value_or(plan.budget->T);
  } else if (cfg.schedule == "theorem3") {
    if (!plan.bounds_declared) {
      throw ConfigError("theorem3 schedule requires declared scaling bounds");
    }
    if (!cfg.max_T) throw ConfigError("theorem3 schedule requires max_T");
    plan.c1 = theorem3_c1(sigma_sq, c_eff);
    const double cl = plan.c_l, cu = plan.c_u;
    plan.schedule = [sigma_sq, c_eff, cl, cu, L_F](std::int64_t t) {
      return theorem3_schedule(t, sigma_sq, c_eff, cl, cu, L_F);
    };
    plan.T = *cfg.max_T;
  } else {
    throw ConfigError("unknown schedule: " + cfg.schedule);
  }

  if (plan.T < 0) throw ConfigError("max_T must be >= 0");
  return plan;
}

}  // namespace

Instruments build_instruments(const RunConfig& cfg) {
  Instruments inst;

  if (cfg.problem == "quadratic") {
    inst.problem = std::make_shared<QuadraticProblem>(cfg.dim, cfg.quad_mu, cfg.quad_L);
  } else if (cfg.problem == "boundedcurl") {
    inst.problem = std::make_shared<BoundedCurlProblem>(cfg.dim);
  } else if (cfg.problem == "logistic") {
    inst.problem = std::make_shared<LogisticProblem>(cfg.dim, cfg.n_examples, cfg.data_seed,
                                                     cfg.lambda, cfg.f_star_override);
  } else {
    throw ConfigError("unknown problem: " + cfg.problem);
  }

  try {
    if (cfg.oracle == "gaussian") {
      if (cfg.default_clamp) {
        inst.oracle = clamped_gaussian_oracle(inst.problem, cfg.sigma);
      } else {
        inst.oracle = gaussian_oracle(inst.problem, cfg.sigma, cfg.clamp);
      }
    } else if (cfg.oracle == "coordinate") {
      inst.oracle = coordinate_oracle(inst.problem);
    } else if (cfg.oracle == "full") {
      inst.oracle = full_gradient_oracle(inst.problem);
    } else if (cfg.oracle == "minibatch") {
      auto logistic = std::dynamic_pointer_cast<const LogisticProblem>(inst.problem);
      if (!logistic) throw ConfigError("minibatch oracle requires the logistic problem");
      if (cfg.full_batch) {
        inst.oracle = full_gradient_oracle(inst.problem);
      } else {
        inst.oracle = minibatch_oracle(logistic, cfg.batch);
      }
    } else {
      throw ConfigError("unknown oracle: " + cfg.oracle);
    }

    const RuleKind kind = rule_kind_from_name(cfg.rule);
    SecondMomentRule rule;
    rule.kind = kind;
    rule.beta2 = cfg.beta2;
    rule.g0 = resolved_g0(cfg);
    rule.clip_lo = cfg.clip_lo;
    rule.clip_hi = cfg.clip_hi;
    rule.validate();
    inst.rule = rule;
  } catch (const UsageError& e) {
    throw ConfigError(e.what());  // bad parameter values in a config are config errors
  }
  return inst;
}

RunConfig config_from_json(const json& j) {
  RunConfig cfg;
  check_keys(j, {"problem", "oracle", "rule", "schedule", "seeds", "max_T", "thin", "out",
                 "init", "bounds", "delta0", "c", "exec"},
             "config");

  if (j.contains("problem")) {
    const json& p = j.at("problem");
    check_keys(p, {"name", "dim", "mu", "L", "data_seed", "lambda", "n", "f_star"},
               "problem");
    cfg.problem = p.value("name", cfg.problem);
    cfg.dim = p.value("dim", cfg.dim);
    cfg.quad_mu = p.value("mu", cfg.quad_mu);
    cfg.quad_L = p.value("L", cfg.quad_L);
    cfg.data_seed = p.value("data_seed", cfg.data_seed);
    cfg.lambda = p.value("lambda", cfg.lambda);
    cfg.n_examples = p.value("n", cfg.n_examples);
    if (p.contains("f_star")) cfg.f_star_override = p.at("f_star").get<double>();
  }

  if (j.contains("oracle")) {
    const json& o = j.at("oracle");
    check_keys(o, {"name", "sigma", "clamp", "batch"}, "oracle");
    cfg.oracle = o.value("name", cfg.oracle);
    cfg.sigma = o.value("sigma", cfg.sigma);
    if (o.contains("clamp")) {
      if (o.at("clamp").is_string()) {
        if (o.at("clamp").get<std::string>() != "default") {
          throw ConfigError("oracle.clamp must be a number or \"default\"");
        }
        cfg.default_clamp = true;
      } else {
        cfg.clamp = o.at("clamp").get<double>();
      }
    }
    if (o.contains("batch")) {
      if (o.at("batch").is_string()) {
        if (o.at("batch").get<std::string>() != "full") {
          throw ConfigError("oracle.batch must be a positive integer or \"full\"");
        }
        cfg.full_batch = true;
      } else {
        cfg.batch = o.at("batch").get<int>();
      }
    }
  }

  if (j.contains("rule")) {
    const json& r = j.at("rule");
    check_keys(r, {"name", "beta2", "g0", "clip_lo", "clip_hi"}, "rule");
    cfg.rule = r.value("name", cfg.rule);
    cfg.beta2 = r.value("beta2", cfg.beta2);
    if (r.contains("g0")) cfg.g0 = r.at("g0").get<double>();
    cfg.clip_lo = r.value("clip_lo", cfg.clip_lo);
    cfg.clip_hi = r.value("clip_hi", cfg.clip_hi);
  }

  if (j.contains("schedule")) {
    const json& s = j.at("schedule");
    check_keys(s, {"kind", "epsilon", "beta", "eta"}, "schedule");
    cfg.schedule = s.value("kind", cfg.schedule);
    cfg.epsilon = s.value("epsilon", cfg.epsilon);
    cfg.beta = s.value("beta", cfg.beta);
    cfg.eta = s.value("eta", cfg.eta);
  }

  if (j.contains("seeds")) cfg.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("max_T")) cfg.max_T = j.at("max_T").get<std::int64_t>();
  if (j.contains("thin")) cfg.thin = j.at("thin").get<int>();
  if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  if (j.contains("init")) cfg.init = j.at("init").get<std::string>();
  if (j.contains("bounds")) cfg.bounds_mode = j.at("bounds").get<std::string>();
  if (j.contains("delta0")) cfg.delta0_override = j.at("delta0").get<double>();
  if (j.contains("c")) cfg.c_override = j.at("c").get<double>();
  if (j.contains("exec")) {
    const std::string mode = j.at("exec").get<std::string>();
    if (mode == "serial") {
      cfg.exec = ExecMode::Serial;
    } else if (mode == "parallel") {
      cfg.exec = ExecMode::Parallel;
    } else {
      throw ConfigError("exec must be serial or parallel");
    }
  }

  if (cfg.thin < 1) throw ConfigError("thin must be >= 1");
  if (cfg.seeds.empty()) throw ConfigError("need at least one seed");
  if (cfg.init != "zero" && cfg.init != "oracle") {
    throw ConfigError("init must be zero or oracle");
  }
  return cfg;
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const RunConfig& cfg) {
  json j;
  j["problem"] = {{"name", cfg.problem}, {"dim", cfg.dim}};
  if (cfg.problem == "quadratic") {
    j["problem"]["mu"] = cfg.quad_mu;
    j["problem"]["L"] = cfg.quad_L;
  }
  if (cfg.problem == "logistic") {
    j["problem"]["data_seed"] = cfg.data_seed;
    j["problem"]["lambda"] = cfg.lambda;
    j["problem"]["n"] = cfg.n_examples;
    if (cfg.f_star_override) j["problem"]["f_star"] = *cfg.f_star_override;
  }
  j["oracle"] = {{"name", cfg.oracle}};
  if (cfg.oracle == "gaussian") {
    j["oracle"]["sigma"] = cfg.sigma;
    if (cfg.default_clamp) {
      j["oracle"]["clamp"] = "default";
    } else if (cfg.clamp) {
      j["oracle"]["clamp"] = *cfg.clamp;
    }
  }
  if (cfg.oracle == "minibatch") {
    if (cfg.full_batch) {
      j["oracle"]["batch"] = "full";
    } else {
      j["oracle"]["batch"] = cfg.batch;
    }
  }
  j["rule"] = {{"name", cfg.rule}, {"beta2", cfg.beta2}, {"g0", resolved_g0(cfg)}};
  if (cfg.rule == "adabound") {
    j["rule"]["clip_lo"] = cfg.clip_lo;
    j["rule"]["clip_hi"] = cfg.clip_hi;
  }
  j["schedule"] = {{"kind", cfg.schedule}};
  if (cfg.schedule == "manual") {
    j["schedule"]["beta"] = cfg.beta;
    j["schedule"]["eta"] = cfg.eta;
  } else {
    j["schedule"]["epsilon"] = cfg.epsilon;
  }
  j["seeds"] = cfg.seeds;
  if (cfg.max_T) j["max_T"] = *cfg.max_T;
  if (cfg.delta0_override) j["delta0"] = *cfg.delta0_override;
  if (cfg.c_override) j["c"] = *cfg.c_override;
  j["init"] = cfg.init;
  j["bounds"] = cfg.bounds_mode;
  j["thin"] = cfg.thin;
  if (!cfg.out.empty()) j["out"] = cfg.out;
  j["exec"] = cfg.exec == ExecMode::Serial ? "serial" : "parallel";
  return j;
}

namespace {

json budget_to_json(const TheoremBudget& b) {
  return json{{"beta", b.beta},     {"eta", b.eta},       {"T", b.T},
              {"epsilon", b.epsilon}, {"sigma_sq", b.sigma_sq}, {"c", b.c},
              {"c_l", b.c_l},       {"c_u", b.c_u},       {"L_F", b.L_F},
              {"delta0", b.delta0}, {"deltaF", b.deltaF}};
}

void mean_stderr(const std::vector<double>& xs, double& mean, double& se) {
  const double n = static_cast<double>(xs.size());
  mean = 0.0;
  for (double x : xs) mean += x;
  mean /= n;
  if (xs.size() < 2) {
    se = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  se = std::sqrt(ss / (n - 1.0) / n);
}

}  // namespace

json summary_to_json(const RunSummary& s) {
  json j;
  j["config"] = s.config_echo;
  j["budget"] = s.budget ? budget_to_json(*s.budget) : json(nullptr);
  if (s.c1) {
    j["c1"] = *s.c1;
    j["beta_above_c1_steps"] = s.beta_above_c1_steps;
  }
  j["c_l"] = s.c_l;
  j["c_u"] = s.c_u;
  j["bounds_declared"] = s.bounds_declared;
  j["T"] = s.T;
  json per_seed = json::array();
  for (const SeedStats& st : s.per_seed) {
    per_seed.push_back({{"seed", st.seed},
                        {"rows", st.rows},
                        {"final_F", st.final_F},
                        {"final_grad_norm_sq", st.final_grad_norm_sq},
                        {"final_run_avg_grad", st.final_run_avg_grad},
                        {"final_run_avg_delta", st.final_run_avg_delta}});
  }
  j["per_seed"] = per_seed;
  j["mean_final_run_avg_grad"] = s.mean_final_run_avg_grad;
  j["stderr_final_run_avg_grad"] = s.stderr_final_run_avg_grad;
  j["mean_final_run_avg_delta"] = s.mean_final_run_avg_delta;
  j["stderr_final_run_avg_delta"] = s.stderr_final_run_avg_delta;
  j["diagnostics"] = {{"lemma3_checked", s.diag.lemma3_checked},
                      {"lemma3_passed", s.diag.lemma3_passed},
                      {"lemma3_skipped", s.diag.lemma3_skipped},
                      {"sbound_checked", s.diag.sbound_checked}};
  j["wall_time_s"] = s.wall_time_s;
  return j;
}

RunSummary run(const RunConfig& cfg) {
  const auto t_start = std::chrono::steady_clock::now();
  const Instruments inst = build_instruments(cfg);
  const Plan plan = build_plan(cfg, inst);

  if (!cfg.out.empty()) std::filesystem::create_directories(cfg.out);

  const std::size_t n_seeds = cfg.seeds.size();
  std::vector<SeedOutcome> outcomes(n_seeds);
  std::vector<std::exception_ptr> errors(n_seeds);

  auto worker = [&](std::size_t i) {
    try {
      std::string trace;
      if (!cfg.out.empty()) {
        trace = (std::filesystem::path(cfg.out) /
                 ("trace_seed" + std::to_string(cfg.seeds[i]) + ".csv"))
                    .string();
      }
      outcomes[i] = run_one_seed(cfg, inst, plan, cfg.seeds[i], trace);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  if (cfg.exec == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < n_seeds; ++i) worker(i);
  } else {
    for (std::size_t i = 0; i < n_seeds; ++i) worker(i);
  }

  for (std::size_t i = 0; i < n_seeds; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
  }

  RunSummary summary;
  summary.config_echo = config_to_json(cfg);
  summary.budget = plan.budget;
  summary.c1 = plan.c1;
  summary.c_l = plan.c_l;
  summary.c_u = plan.c_u;
  summary.bounds_declared = plan.bounds_declared;
  summary.T = plan.T;
  std::vector<double> grads, deltas;
  for (const SeedOutcome& o : outcomes) {
    summary.per_seed.push_back(o.stats);
    grads.push_back(o.stats.final_run_avg_grad);
    deltas.push_back(o.stats.final_run_avg_delta);
    summary.diag.lemma3_checked += o.diag.lemma3_checked;
    summary.diag.lemma3_passed += o.diag.lemma3_passed;
    summary.diag.lemma3_skipped += o.diag.lemma3_skipped;
    summary.diag.sbound_checked += o.diag.sbound_checked;
    summary.beta_above_c1_steps += o.beta_above_c1;
  }
  mean_stderr(grads, summary.mean_final_run_avg_grad, summary.stderr_final_run_avg_grad);
  mean_stderr(deltas, summary.mean_final_run_avg_delta, summary.stderr_final_run_avg_delta);
  summary.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();

  if (!cfg.out.empty()) {
    std::ofstream out(std::filesystem::path(cfg.out) / "summary.json");
    out << summary_to_json(summary).dump(2) << "\n";
  }
  return summary;
}

Lemma2Setting lemma2_linear_setting(double beta, double L, double noise_sigma_sq,
                                    int dim) {
  Lemma2Setting s;
  s.beta = beta;
  s.L = L;
  const auto d = static_cast<std::size_t>(dim);
  s.h = [L](const RealVector& x) {
    RealVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = L * x[i];
    return out;
  };
  const double coord_sd = std::sqrt(noise_sigma_sq / static_cast<double>(dim));
  s.oracle = [L, coord_sd](const RealVector& x, Rng& rng) {
    RealVector out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = L * x[i] + coord_sd * rng.normal();
    return out;
  };
  s.z = RealVector(d, 1.0);
  s.x_prev = RealVector(d, 0.0);
  s.x_cur = RealVector(d, 0.1);
  return s;
}

DivergenceReport divergence_demo(double momentum_small, double momentum_large,
                                 const std::vector<std::uint64_t>& seeds,
                                 std::int64_t steps) {
  for (double m : {momentum_small, momentum_large}) {
    if (!(m >= 0.0 && m < 1.0)) throw UsageError("momentum must be in [0, 1)");
  }
  DivergenceReport rep;
  rep.steps = steps;
  rep.momentum_small = momentum_small;
  rep.momentum_large = momentum_large;

  // Adam on the bounded counterexample; iterates clamped to [-1, 1], which
  // deviates from the unconstrained update on purpose: the construction
  // lives on a bounded domain. beta2 = 1 so u is the squared current draw.
  auto simulate = [&](double momentum, std::uint64_t seed) {
    const double beta_t = 1.0 - momentum;
    const double g0 = 1e-8;
    Rng rng(seed);
    double x = 0.0, v = 0.0;
    for (std::int64_t t = 0; t < steps; ++t) {
      const double g = rng.uniform() < rep.p ? rep.C : -1.0;
      v = (1.0 - beta_t) * v + beta_t * g;
      const double u = g * g;
      x -= rep.eta * v / (std::sqrt(u) + g0);
      x = std::clamp(x, -1.0, 1.0);
    }
    return x;
  };

  for (std::uint64_t seed : seeds) {
    rep.finals_small.push_back(simulate(momentum_small, seed));
    rep.finals_large.push_back(simulate(momentum_large, seed));
  }
  for (double f : rep.finals_small) rep.mean_small += f;
  rep.mean_small /= static_cast<double>(rep.finals_small.size());
  for (double f : rep.finals_large) rep.mean_large += f;
  rep.mean_large /= static_cast<double>(rep.finals_large.size());
  return rep;
}

}  // namespace semaopt

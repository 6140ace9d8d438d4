#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "semaopt/diagnostics.hpp"
#include "semaopt/oracles.hpp"
#include "semaopt/optimizer.hpp"
#include "semaopt/parallel.hpp"
#include "semaopt/problems.hpp"
#include "semaopt/schedules.hpp"

namespace semaopt {

/// Everything needed to reproduce one experiment: problem, oracle, rule,
/// schedule, seeds and output options. Parsed from / serialized to the JSON
/// config format documented in the README.
struct RunConfig {
  // problem
  std::string problem = "boundedcurl";
  int dim = 10;
  double quad_mu = 1.0;
  double quad_L = 1.0;
  std::uint64_t data_seed = 42;
  double lambda = 0.1;
  int n_examples = 100;
  std::optional<double> f_star_override;

  // oracle
  std::string oracle = "gaussian";  // gaussian | coordinate | minibatch | full
  double sigma = 1.0;
  std::optional<double> clamp;  // absolute per-coordinate noise clamp
  bool default_clamp = false;   // clamp at 6 per-coordinate standard deviations
  int batch = 1;
  bool full_batch = false;

  // rule
  std::string rule = "shb";
  double beta2 = 0.01;
  std::optional<double> g0;  // default: 0 for shb/adabound, 1 otherwise
  double clip_lo = 0.5;
  double clip_hi = 2.0;

  // schedule
  std::string schedule = "manual";  // manual | theorem2 | theorem3
  double epsilon = 0.1;
  double beta = 1.0;
  double eta = 0.1;

  // run control
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::optional<std::int64_t> max_T;
  std::optional<double> delta0_override;
  std::optional<double> c_override;
  std::string init = "zero";         // zero | oracle
  std::string bounds_mode = "auto";  // auto | declared | observed
  int thin = 1;
  std::string out;  // output directory; empty disables file output
  ExecMode exec = ExecMode::Parallel;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_file(const std::string& path);

struct SeedStats {
  std::uint64_t seed = 0;
  std::int64_t rows = 0;  // CSV rows written (excluding header)
  double final_F = 0.0;
  double final_grad_norm_sq = 0.0;
  double final_run_avg_grad = 0.0;
  double final_run_avg_delta = 0.0;
};

struct DiagCounts {
  std::int64_t lemma3_checked = 0;
  std::int64_t lemma3_passed = 0;
  std::int64_t lemma3_skipped = 0;
  std::int64_t sbound_checked = 0;
};

struct RunSummary {
  nlohmann::json config_echo;
  std::optional<TheoremBudget> budget;
  std::optional<double> c1;  // decreasing-schedule constant, logged only
  std::int64_t beta_above_c1_steps = 0;
  double c_l = 1.0;
  double c_u = 1.0;
  bool bounds_declared = false;
  std::int64_t T = 0;  // iterations run: t = 0..T
  std::vector<SeedStats> per_seed;
  double mean_final_run_avg_grad = 0.0;
  double stderr_final_run_avg_grad = 0.0;
  double mean_final_run_avg_delta = 0.0;
  double stderr_final_run_avg_delta = 0.0;
  DiagCounts diag;
  double wall_time_s = 0.0;
};

nlohmann::json summary_to_json(const RunSummary& summary);

/// Executes the configured experiment over all seeds (concurrently unless
/// cfg.exec is Serial; results do not depend on the mode). Writes one CSV
/// trace per seed plus summary.json when cfg.out is set. Throws ConfigError
/// on invalid configs and DiagnosticFailure when a pathwise check fails.
RunSummary run(const RunConfig& cfg);

/// Momentum divergence demo on the bounded stochastic linear counterexample:
/// gradient +C with probability p, -1 otherwise (expected gradient positive,
/// optimum at -1), iterates clamped to [-1, 1]. Runs Adam with
/// beta_t = 1 - momentum for the two momentum settings over the seeds.
struct DivergenceReport {
  double C = 11.0;
  double p = 0.1;
  double eta = 0.01;
  std::int64_t steps = 5000;
  double momentum_small = 0.0;
  double momentum_large = 0.99;
  std::vector<double> finals_small;  // per seed, momentum_small
  std::vector<double> finals_large;  // per seed, momentum_large
  double mean_small = 0.0;
  double mean_large = 0.0;
};

DivergenceReport divergence_demo(double momentum_small, double momentum_large,
                                 const std::vector<std::uint64_t>& seeds,
                                 std::int64_t steps = 5000);

/// Builds the problem / oracle / rule triple a config describes. Exposed for
/// tests and tools.
struct Instruments {
  ProblemPtr problem;
  OraclePtr oracle;
  SecondMomentRule rule;
};
Instruments build_instruments(const RunConfig& cfg);

/// Standard variance-recursion check cell: h(x) = L*x (Lipschitz constant
/// exactly L), gaussian oracle noise with total variance noise_sigma_sq,
/// fixed states z = 1, x_prev = 0, x_cur = 0.1 (per coordinate).
Lemma2Setting lemma2_linear_setting(double beta, double L, double noise_sigma_sq,
                                    int dim = 4);

}  // namespace semaopt

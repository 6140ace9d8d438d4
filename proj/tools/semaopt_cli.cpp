#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semaopt/errors.hpp"
#include "semaopt/harness.hpp"

namespace {

using namespace semaopt;

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            std::optional<int> thin, std::optional<std::string> out, bool serial) {
  RunConfig cfg = config_from_file(config_path);
  if (seed) cfg.seeds = {*seed};
  if (thin) cfg.thin = *thin;
  if (out) cfg.out = *out;
  if (serial) cfg.exec = ExecMode::Serial;

  const RunSummary summary = run(cfg);
  std::cout << summary_to_json(summary).dump(2) << "\n";
  return 0;
}

int cmd_demo_divergence(double momentum_small, double momentum_large,
                        std::vector<std::uint64_t> seeds, std::int64_t steps) {
  const DivergenceReport rep = divergence_demo(momentum_small, momentum_large, seeds, steps);
  std::printf("divergence demo: gradient +%g with p=%g, -1 otherwise; eta=%g, %lld steps\n",
              rep.C, rep.p, rep.eta, static_cast<long long>(rep.steps));
  std::printf("expected gradient %+.4f (optimum at -1)\n", rep.p * rep.C - (1.0 - rep.p));
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    std::printf("  seed %llu: momentum %.2f -> final %+.4f | momentum %.2f -> final %+.4f\n",
                static_cast<unsigned long long>(seeds[i]), rep.momentum_small,
                rep.finals_small[i], rep.momentum_large, rep.finals_large[i]);
  }
  std::printf("means: momentum %.2f -> %+.4f | momentum %.2f -> %+.4f\n", rep.momentum_small,
              rep.mean_small, rep.momentum_large, rep.mean_large);
  return 0;
}

int cmd_check_lemma2(std::int64_t trials, std::uint64_t seed, bool serial) {
  const ExecMode mode = serial ? ExecMode::Serial : ExecMode::Parallel;
  bool all_pass = true;
  std::printf("%6s %4s %6s  %12s %12s %12s  %s\n", "beta", "L", "noise", "lhs", "rhs",
              "stderr", "result");
  int cell = 0;
  for (double beta : {0.01, 0.1, 0.5, 1.0}) {
    for (double L : {1.0, 10.0}) {
      for (double noise : {0.0, 1.0}) {
        const Lemma2Setting setting = lemma2_linear_setting(beta, L, noise);
        const Lemma2Result r =
            lemma2_mc_check(setting, trials, seed + static_cast<std::uint64_t>(cell), mode);
        std::printf("%6.2f %4.0f %6.1f  %12.6g %12.6g %12.6g  %s\n", beta, L, noise,
                    r.lhs_est, r.rhs_est, r.stderr_est, r.pass ? "pass" : "FAIL");
        all_pass = all_pass && r.pass;
        ++cell;
      }
    }
  }
  return all_pass ? 0 : 1;
}

int cmd_list_problems() {
  for (const auto& p : builtin_problems()) {
    std::printf("%-12s dim=%-3d L_F=%-10.6g F_star=%-12.6g", p->name().c_str(), p->dim(),
                p->lipschitz(), p->optimum_value());
    if (auto b = p->grad_inf_bound()) {
      std::printf(" grad_inf_bound=%.6g", *b);
    } else {
      std::printf(" grad_inf_bound=none");
    }
    std::printf("\n");
  }
  return 0;
}

int cmd_list_rules() {
  std::printf("shb       u = 1, g0 = 0                          c_l = c_u = 1\n");
  std::printf("adam      u <- (1-beta2) u + beta2 * g^2         c_l >= 1/(G+g0), c_u <= 1/g0 (needs ||g||_inf <= G)\n");
  std::printf("amsgrad   u <- max(u, sema of g^2)               c_l >= 1/(G+g0), c_u <= 1/g0 (needs ||g||_inf <= G)\n");
  std::printf("adafom    u = running mean of g^2                c_l >= 1/(G+g0), c_u <= 1/g0 (needs ||g||_inf <= G)\n");
  std::printf("adamplus  u = ||v|| broadcast                    c_l >= 1/(sqrt(G)+g0), c_u <= 1/g0 (needs ||g||_2 <= G)\n");
  std::printf("adabound  u = clip(sema of g^2), g0 = 0          c_l = clip_lo, c_u = clip_hi\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adam-family optimizer experiment harness"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
  std::string config_path;
  run_cmd->add_option("--config", config_path, "config file")->required();
  std::optional<std::uint64_t> seed;
  run_cmd->add_option("--seed", seed, "run a single seed instead of the config's list");
  std::optional<int> thin;
  run_cmd->add_option("--thin", thin, "write every Nth CSV row");
  std::optional<std::string> out;
  run_cmd->add_option("--out", out, "output directory");
  bool run_serial = false;
  run_cmd->add_flag("--serial", run_serial, "run seeds on the serial path");

  // demo-divergence
  auto* demo_cmd = app.add_subcommand("demo-divergence", "momentum divergence demo");
  double momentum_small = 0.0, momentum_large = 0.99;
  demo_cmd->add_option("--momentum-small", momentum_small, "small momentum setting");
  demo_cmd->add_option("--momentum-large", momentum_large, "large momentum setting");
  std::uint64_t demo_seed = 0;
  demo_cmd->add_option("--seed", demo_seed, "first seed");
  int demo_nseeds = 5;
  demo_cmd->add_option("--seeds", demo_nseeds, "number of seeds");
  std::int64_t demo_steps = 5000;
  demo_cmd->add_option("--steps", demo_steps, "steps per run");

  // check-lemma2
  auto* lemma2_cmd = app.add_subcommand("check-lemma2", "variance recursion Monte Carlo grid");
  std::int64_t trials = 100000;
  lemma2_cmd->add_option("--trials", trials, "trials per grid cell");
  std::uint64_t lemma2_seed = 20240801;
  lemma2_cmd->add_option("--seed", lemma2_seed, "base seed");
  bool lemma2_serial = false;
  lemma2_cmd->add_flag("--serial", lemma2_serial, "use the serial path");

  auto* list_p = app.add_subcommand("list-problems", "print builtin problems");
  auto* list_r = app.add_subcommand("list-rules", "print second-moment rules");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, seed, thin, out, run_serial);
    if (demo_cmd->parsed()) {
      std::vector<std::uint64_t> seeds;
      for (int i = 0; i < demo_nseeds; ++i) seeds.push_back(demo_seed + static_cast<std::uint64_t>(i));
      return cmd_demo_divergence(momentum_small, momentum_large, seeds, demo_steps);
    }
    if (lemma2_cmd->parsed()) return cmd_check_lemma2(trials, lemma2_seed, lemma2_serial);
    if (list_p->parsed()) return cmd_list_problems();
    if (list_r->parsed()) return cmd_list_rules();
  } catch (const semaopt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const semaopt::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const semaopt::DiagnosticFailure& e) {
    const semaopt::StepRecord& r = e.record();
    std::cerr << "diagnostic failure: " << e.what() << "\n";
    std::cerr << "  t=" << r.t << " F=" << r.F_x << " grad_norm_sq=" << r.grad_norm_sq
              << " delta_t=" << r.delta_t << " s_min=" << r.s_min << " s_max=" << r.s_max
              << " beta_t=" << r.beta_t << " eta_t=" << r.eta_t << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

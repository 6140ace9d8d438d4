// Compares the serial reference path against the OpenMP path on the two
// data-parallel kernels: multi-seed experiment runs and Monte Carlo
// accumulation. Both paths must produce identical numbers; the point of the
// benchmark is the wall-time ratio.
#include <cstdio>
#include <cstdlib>

#include <omp.h>

#include "semaopt/harness.hpp"

using namespace semaopt;

namespace {

RunConfig bench_run_config(std::int64_t steps, int n_seeds) {
  RunConfig cfg;
  cfg.problem = "boundedcurl";
  cfg.dim = 10;
  cfg.oracle = "gaussian";
  cfg.sigma = 1.0;
  cfg.rule = "shb";
  cfg.schedule = "theorem3";
  cfg.max_T = steps;
  cfg.seeds.clear();
  for (int i = 0; i < n_seeds; ++i) cfg.seeds.push_back(static_cast<std::uint64_t>(i));
  return cfg;
}

bool close(double a, double b) { return a == b; }

}  // namespace

int main(int argc, char** argv) {
  std::int64_t steps = 200000;
  std::int64_t trials = 2000000;
  if (argc > 1) steps = std::atoll(argv[1]);
  if (argc > 2) trials = std::atoll(argv[2]);

  std::printf("threads available: %d\n\n", omp_get_max_threads());
  std::printf("%-28s %10s %10s %8s %10s\n", "kernel", "serial[s]", "openmp[s]", "speedup",
              "identical");

  {
    RunConfig cfg = bench_run_config(steps, 8);
    cfg.exec = ExecMode::Serial;
    double t0 = omp_get_wtime();
    const RunSummary a = run(cfg);
    double t1 = omp_get_wtime();
    cfg.exec = ExecMode::Parallel;
    const RunSummary b = run(cfg);
    double t2 = omp_get_wtime();
    const bool same = close(a.mean_final_run_avg_grad, b.mean_final_run_avg_grad) &&
                      close(a.mean_final_run_avg_delta, b.mean_final_run_avg_delta);
    std::printf("%-28s %10.3f %10.3f %8.2fx %10s\n", "multi-seed run (8 seeds)", t1 - t0,
                t2 - t1, (t1 - t0) / (t2 - t1), same ? "yes" : "NO");
    if (!same) return 1;
  }

  {
    double serial_s = 0.0, parallel_s = 0.0;
    bool same = true;
    for (double beta : {0.1, 1.0}) {
      for (double L : {1.0, 10.0}) {
        const Lemma2Setting setting = lemma2_linear_setting(beta, L, 1.0);
        double t0 = omp_get_wtime();
        const Lemma2Result a = lemma2_mc_check(setting, trials, 7, ExecMode::Serial);
        double t1 = omp_get_wtime();
        const Lemma2Result b = lemma2_mc_check(setting, trials, 7, ExecMode::Parallel);
        double t2 = omp_get_wtime();
        serial_s += t1 - t0;
        parallel_s += t2 - t1;
        same = same && close(a.lhs_est, b.lhs_est) && close(a.rhs_est, b.rhs_est) &&
               close(a.stderr_est, b.stderr_est);
      }
    }
    std::printf("%-28s %10.3f %10.3f %8.2fx %10s\n", "variance-recursion MC x4", serial_s,
                parallel_s, serial_s / parallel_s, same ? "yes" : "NO");
    if (!same) return 1;
  }

  return 0;
}

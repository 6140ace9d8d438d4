#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "semaopt/rng.hpp"

namespace semaopt {

/// Execution path for the data-parallel kernels. `Serial` is the reference
/// implementation; `Parallel` distributes work across OpenMP threads. Both
/// paths produce bit-identical results: work is split into fixed blocks with
/// per-block RNG substreams and partial sums are combined in block order.
enum class ExecMode { Serial, Parallel };

namespace detail {
constexpr std::int64_t kMcBlock = 4096;
}

/// Accumulates `width` statistics over `trials` Monte Carlo trials.
/// `fn(rng, trial_index, acc)` adds one trial's contribution into acc[0..width).
/// Returns the vector of sums. Deterministic in (trials, width, seed) and
/// independent of ExecMode and thread count.
template <class TrialFn>
std::vector<double> mc_accumulate(std::int64_t trials, std::size_t width,
                                  std::uint64_t seed, TrialFn&& fn,
                                  ExecMode mode = ExecMode::Serial) {
  const std::int64_t nblocks = (trials + detail::kMcBlock - 1) / detail::kMcBlock;
  std::vector<std::vector<double>> partial(static_cast<std::size_t>(nblocks));

  auto run_block = [&](std::int64_t b) {
    Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(b));
    std::vector<double> acc(width, 0.0);
    const std::int64_t lo = b * detail::kMcBlock;
    const std::int64_t hi = std::min(trials, lo + detail::kMcBlock);
    for (std::int64_t i = lo; i < hi; ++i) {
      fn(rng, i, std::span<double>(acc));
    }
    partial[static_cast<std::size_t>(b)] = std::move(acc);
  };

  if (mode == ExecMode::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) run_block(b);
  } else {
    for (std::int64_t b = 0; b < nblocks; ++b) run_block(b);
  }

  std::vector<double> total(width, 0.0);
  for (std::int64_t b = 0; b < nblocks; ++b) {
    for (std::size_t k = 0; k < width; ++k) total[k] += partial[static_cast<std::size_t>(b)][k];
  }
  return total;
}

}  // namespace semaopt

#pragma once

#include <map>
#include <optional>
#include <vector>

#include "nsrl/generators.hpp"
#include "nsrl/run.hpp"

namespace nsrl {

struct SweepCell {
    std::string algorithm;
    long long T = 0;
    double mean_regret = 0.0;
    double std_regret = 0.0; // sample standard deviation over seeds
    int n_seeds = 0;
    std::vector<double> per_seed;
};

struct SlopeFit {
    double slope = 0.0;
    double residual = 0.0; // rms residual of the log-log least-squares fit
};

struct SweepSummary {
    std::vector<SweepCell> cells;        // (algorithm, T) grid, grid order
    std::vector<RunRecord> runs;         // per-run summaries, steps dropped
    /// log-log regret slope per algorithm; absent below 4 usable grid
    /// points or when a mean regret is not positive.
    std::map<std::string, std::optional<SlopeFit>> slopes;
};

/// Least-squares slope of ln(y) against ln(x). Requires matching sizes,
/// >= 2 points and positive values.
SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Number of worker threads to use: `requested` (or hardware concurrency
/// when <= 0), capped by the NONSTAT_RL_THREADS env var if set.
int effective_parallelism(int requested);

/// Runs every (agent, T, seed) tuple of the grid, in parallel up to
/// `parallelism` workers, and aggregates mean/std regret per cell plus a
/// log-log slope per algorithm. Results are identical to sequential
/// execution; run failures propagate as flagged records, never silently
/// dropped. Seeds must number at least 2 for the std column.
SweepSummary sweep(const GeneratorSpec& env_spec, const std::vector<AgentConfig>& agents,
                   const std::vector<long long>& T_grid, const std::vector<std::uint64_t>& seeds,
                   int parallelism = 0, const RunOptions& opts = {.record_steps = false});

} // namespace nsrl

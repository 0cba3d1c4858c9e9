#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nsrl/agent.hpp"
#include "nsrl/env.hpp"

namespace nsrl {

struct StepRow {
    long long t = 0;
    int s = 0;
    int a = 0;
    double r = 0.0;
    long long episode = 0;
    long long phase = 0;

    bool operator==(const StepRow&) const = default;
};

/// Per-episode planning diagnostics, emitted as CSV when verbose.
struct DiagRow {
    long long t = 0;
    long long episode = 0;
    long long phase = 0;
    double gain = 0.0;
    double bias_span = 0.0;
    long long evi_iterations = 0;
};

struct RunRecord {
    std::string algorithm;
    long long T = 0;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;

    std::vector<StepRow> steps; // empty unless record_steps
    std::vector<DiagRow> diagnostics;

    double total_reward = 0.0;
    double benchmark_value = 0.0; // v*,T(s1), exact backward DP
    double regret = 0.0;          // benchmark_value - total_reward
    long long episodes = 0;
    long long phases = 0;
    double v_r = 0.0; // realized budgets of the env
    double v_p = 0.0;
    double runtime_ms = 0.0;

    /// Online invariant failures; empty means the run is clean.
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

struct RunOptions {
    bool record_steps = true;
    bool record_diagnostics = false;
    bool check_invariants = true;
};

/// Resolves the config's empty variation estimates to the env's realized
/// budgets (their documented default) and returns the agent wired to the
/// variation-aware restart schedule. The agent's policy-sampling stream
/// derives from `seed`, separate from the env stream.
VbUcrlAgent make_agent_for_env(const AgentConfig& cfg, double v_r, double v_p,
                               std::uint64_t seed = 0);

/// Simulates T steps of the agent on the env (T = -1 means the full
/// horizon) with substreams of `seed` split between env sampling and
/// agent internals, computes the exact dynamic-regret benchmark, and
/// checks the structural invariants online: the per-phase episode count
/// against SA log2(8 t / SA), the phase count against 1 + (3 V^2 T)^(1/3),
/// visit-count accounting at episode starts, and exact regret
/// accounting at the end. Violations are recorded on the run, never
/// silently dropped.
RunRecord run_episode_loop(const NonStationaryEnv& env, const AgentConfig& cfg,
                           std::uint64_t seed, long long T = -1, const RunOptions& opts = {});

/// FNV-1a hash of an agent config's behavioural fields, stamped into run
/// records so aggregated rows can be traced back to their settings.
std::uint64_t config_hash(const AgentConfig& cfg);

} // namespace nsrl

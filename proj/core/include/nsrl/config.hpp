#pragma once

#include <string>
#include <vector>

#include "nsrl/agent.hpp"
#include "nsrl/generators.hpp"

namespace nsrl {

/// A full experiment file: one env spec, any number of agent blocks, the
/// horizon grid and the seed set.
///
/// Top-level JSON keys: `env`, `agents`, `T_grid`, `seeds` (count or
/// explicit list), `output_dir`, `parallelism`, `verbose`.
///
/// Agent block keys: `algorithm` (a baseline name; supplies defaults),
/// `delta`, `alpha`, `v_hat_r`, `v_hat_p` (null or absent = use the
/// env's realized budgets), `radius_kind`, `restart`, `epsilon_clock`.
///
/// Env specs carry a `kind` (or the `type`/`name`/`params` spelling used
/// by trace files) plus the generator's parameters; snapshots are inline
/// JSON documents, file paths, or {"builtin": "chain", "S": ...,
/// "reward_at": "right"|"left"}.
struct ExperimentConfig {
    GeneratorSpec env;
    std::vector<AgentConfig> agents;
    std::vector<long long> T_grid;
    std::vector<std::uint64_t> seeds;
    std::string output_dir = "out";
    int parallelism = 0; // 0 = hardware concurrency (NONSTAT_RL_THREADS still caps)
    bool verbose = false;
};

ExperimentConfig config_from_json(const std::string& text, const std::string& base_dir = "");
ExperimentConfig load_config(const std::string& path);

/// Parses just an env/trace spec document.
GeneratorSpec env_spec_from_json(const std::string& text, const std::string& base_dir = "");

/// Serializes a materialized env as an explicit trace document
/// ({"type": "explicit", "segments": [{"snapshot": ..., "steps": n}]})
/// with inline snapshots. Drift segments are expanded step by step.
std::string env_to_explicit_trace_json(const NonStationaryEnv& env, int indent = 2);

/// Applies a CLI --seed override: seeds become {base, base+1, ...} with
/// the same count.
void override_seed_base(ExperimentConfig& cfg, std::uint64_t base);

} // namespace nsrl

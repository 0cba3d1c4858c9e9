#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>

#include "nsrl/confidence.hpp"
#include "nsrl/evi.hpp"
#include "nsrl/sample.hpp"
#include "nsrl/stats.hpp"

namespace nsrl {

enum class RestartKind { None, VariationSchedule };

/// Which step counter feeds the per-episode planning accuracy
/// r_max / t_k. PhaseLocal restarts the counter with each phase;
/// Global never resets it.
enum class EpsilonClock { PhaseLocal, Global };

struct AgentConfig {
    std::string name = "vb-ucrl";     // label used in result rows
    double delta = 0.1;               // confidence, in (0, 1)
    double r_max = 1.0;
    int S = 0;
    int A = 0;
    /// Variation estimates added to every confidence box. Empty means
    /// "use the realized budgets of the env" (resolved by the harness).
    std::optional<double> v_hat_r;
    std::optional<double> v_hat_p;
    double alpha = 0.9;               // aperiodicity coefficient, in (0, 1]
    RadiusKind radius_kind = RadiusKind::Bernstein;
    RestartKind restart = RestartKind::None;
    EpsilonClock epsilon_clock = EpsilonClock::PhaseLocal;
    long long evi_iteration_cap = kDefaultIterationCap;

    double v_hat_r_or(double fallback) const { return v_hat_r.value_or(fallback); }
    double v_hat_p_or(double fallback) const { return v_hat_p.value_or(fallback); }
};

/// The variation-aware restart schedule: phase i runs for
/// theta_i = ceil(i^2 / (2 V_r + V_p)^2) steps with per-phase confidence
/// delta / (2 tau^2), tau being the global step at which the phase
/// starts. A zero combined budget degenerates to a single unbounded
/// phase.
class RestartSchedule {
public:
    static constexpr long long kUnbounded = std::numeric_limits<long long>::max();

    RestartSchedule(double v_r, double v_p, double delta);

    struct Phase {
        int index = 0;          // 1-based
        long long start = 0;    // global step tau at which the phase starts
        long long length = 0;   // kUnbounded for the degenerate schedule
        double delta = 0.0;
    };

    /// Yields phases 1, 2, 3, ...
    Phase next();

    bool single_phase() const { return combined_budget_ == 0.0; }
    double combined_budget() const { return combined_budget_; } // 2 V_r + V_p

private:
    double combined_budget_;
    double delta_;
    int i_ = 0;
    long long tau_ = 1;
};

struct AgentDecision {
    int action = 0;
    bool episode_started = false;
    bool phase_started = false;
    long long episode = 0; // cumulative across phases, 1-based
    long long phase = 0;   // 1-based
    // diagnostics of the current episode's planning step
    double gain = 0.0;
    double bias_span = 0.0;
    long long evi_iterations = 0;
};

/// The learning agent: episodes with the visit-doubling rule, optimistic
/// planning over Bernstein (or Hoeffding) confidence sets, and optional
/// variation-scheduled restarts. Callers drive a strict act/observe
/// alternation; one instance is single-threaded.
class VbUcrlAgent {
public:
    /// schedule_v_r / schedule_v_p are the variation terms handed to the
    /// restart schedule (ignored when restarts are off). policy_seed
    /// only matters if a randomized policy is ever installed.
    VbUcrlAgent(AgentConfig config, double schedule_v_r = 0.0, double schedule_v_p = 0.0,
                std::uint64_t policy_seed = 0);

    /// Chooses the action at the observed state. Recomputes the policy
    /// first when the previous step closed an episode or a phase.
    AgentDecision act(int state);

    /// Feeds back one transition. The reward must lie in [0, r_max].
    void observe(int state, int action, double reward, int next_state);

    const AgentConfig& config() const { return config_; }
    const SufficientStats& stats() const { return stats_; }
    /// Boxes of the current episode (valid after the first act).
    const ConfidenceModel& confidence() const { return confidence_; }
    const StationaryPolicy& policy() const { return policy_; }

    long long episodes() const { return episodes_total_; }
    long long phases() const { return phase_index_; }
    long long episodes_in_phase() const { return episode_in_phase_; }
    long long steps_in_phase() const { return steps_in_phase_; }
    long long total_steps() const { return t_ - 1; }
    double phase_delta() const { return phase_delta_; }

private:
    void start_phase();
    void start_episode();

    AgentConfig config_;
    RestartSchedule schedule_;
    SufficientStats stats_;
    ConfidenceModel confidence_;
    StationaryPolicy policy_;
    RngStream policy_rng_;

    bool expect_observe_ = false;
    int last_state_ = -1;
    int last_action_ = -1;

    long long t_ = 1;               // global step about to be played
    long long phase_index_ = 0;     // phases started
    long long phase_length_ = 0;
    long long steps_in_phase_ = 0;
    double phase_delta_ = 0.0;
    bool phase_pending_ = true;     // first act opens phase 1

    long long episodes_total_ = 0;
    long long episode_in_phase_ = 0;
    bool episode_pending_ = true;
    double gain_ = 0.0;
    double bias_span_ = 0.0;
    long long evi_iterations_ = 0;
};

/// Reference agent configurations:
///   "vb-ucrl"                  Bernstein radii, no restarts (Alg. 2 alone)
///   "vb-ucrl-norestart"        alias of the above
///   "vb-ucrl-restart"          Bernstein radii + variation-scheduled restarts
///   "ucrl2-hoeffding"          Hoeffding radii, no restarts
///   "ucrl2-hoeffding-restart"  Hoeffding radii + restarts
AgentConfig baseline_config(const std::string& kind, double delta, double r_max, int S, int A);

/// Builds the agent directly from a baseline name.
VbUcrlAgent make_baseline(const std::string& kind, double delta, double r_max, int S, int A,
                          double schedule_v_r = 0.0, double schedule_v_p = 0.0);

} // namespace nsrl

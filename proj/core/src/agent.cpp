#include "nsrl/agent.hpp"

#include <cmath>

#include "nsrl/errors.hpp"

namespace nsrl {

RestartSchedule::RestartSchedule(double v_r, double v_p, double delta) : delta_(delta) {
    if (v_r < 0.0 || v_p < 0.0) throw InvariantViolation("variation budgets must be >= 0");
    combined_budget_ = 2.0 * v_r + v_p;
}

RestartSchedule::Phase RestartSchedule::next() {
    ++i_;
    Phase phase;
    phase.index = i_;
    phase.start = tau_;
    phase.delta = delta_ / (2.0 * static_cast<double>(tau_) * static_cast<double>(tau_));
    if (combined_budget_ == 0.0) {
        phase.length = kUnbounded;
        return phase;
    }
    const double theta =
        std::ceil(static_cast<double>(i_) * i_ / (combined_budget_ * combined_budget_));
    phase.length = theta >= 9.0e18 ? kUnbounded : static_cast<long long>(theta);
    if (phase.length != kUnbounded && tau_ <= kUnbounded - phase.length)
        tau_ += phase.length;
    return phase;
}

VbUcrlAgent::VbUcrlAgent(AgentConfig config, double schedule_v_r, double schedule_v_p,
                         std::uint64_t policy_seed)
    : config_(std::move(config)),
      // Without restarts there is a single unbounded phase whatever the
      // budgets say. config_ precedes schedule_ in declaration order.
      schedule_(config_.restart == RestartKind::VariationSchedule ? schedule_v_r : 0.0,
                config_.restart == RestartKind::VariationSchedule ? schedule_v_p : 0.0,
                config_.delta),
      stats_(config_.S, config_.A),
      policy_rng_(policy_seed) {
    if (config_.S < 1 || config_.A < 1) throw InvariantViolation("agent needs S >= 1, A >= 1");
    if (!(config_.delta > 0.0) || config_.delta >= 1.0)
        throw InvariantViolation("delta must lie in (0, 1)");
    if (!(config_.r_max > 0.0)) throw InvariantViolation("r_max must be positive");
    if (!(config_.alpha > 0.0) || config_.alpha > 1.0)
        throw InvariantViolation("alpha must lie in (0, 1]");
    if (config_.v_hat_r_or(0.0) < 0.0 || config_.v_hat_p_or(0.0) < 0.0)
        throw InvariantViolation("variation estimates must be >= 0");
}

void VbUcrlAgent::start_phase() {
    const auto phase = schedule_.next();
    phase_index_ = phase.index;
    phase_length_ = phase.length;
    steps_in_phase_ = 0;
    episode_in_phase_ = 0;
    // A restarting agent runs every phase at confidence delta / (2 tau^2);
    // without restarts the confidence parameter is delta itself.
    phase_delta_ = config_.restart == RestartKind::VariationSchedule ? phase.delta : config_.delta;
    stats_.reset();
    phase_pending_ = false;
    episode_pending_ = true;
}

void VbUcrlAgent::start_episode() {
    stats_.fold_episode();
    ++episodes_total_;
    ++episode_in_phase_;
    const long long t_k =
        config_.epsilon_clock == EpsilonClock::PhaseLocal ? steps_in_phase_ + 1 : t_;
    // r_max / t_k, except that t_k = 1 would breach the planner's
    // accuracy range (0, r_max); the first episode uses r_max / 2.
    const double epsilon = config_.r_max / static_cast<double>(std::max<long long>(2, t_k));
    confidence_ = build_confidence(stats_, phase_delta_, config_.v_hat_r_or(0.0),
                                   config_.v_hat_p_or(0.0), config_.r_max, config_.radius_kind);
    auto evi = extended_value_iteration(confidence_, epsilon, config_.alpha, 0,
                                        config_.evi_iteration_cap);
    policy_ = std::move(evi.policy);
    gain_ = evi.gain;
    bias_span_ = span(evi.bias);
    evi_iterations_ = evi.iterations;
    episode_pending_ = false;
}

AgentDecision VbUcrlAgent::act(int state) {
    if (expect_observe_) throw ProtocolError("act() called twice without observe()");
    if (state < 0 || state >= config_.S) throw InvariantViolation("state out of range");

    AgentDecision decision;
    if (phase_pending_) {
        start_phase();
        decision.phase_started = true;
    }
    if (episode_pending_) {
        start_episode();
        decision.episode_started = true;
    }

    if (policy_.kind == StationaryPolicy::Kind::Deterministic) {
        decision.action = policy_.action[state];
    } else {
        double u = policy_rng_.uniform01();
        int a = 0;
        for (; a < config_.A - 1; ++a) {
            u -= policy_.prob_of(state, a);
            if (u < 0.0) break;
        }
        decision.action = a;
    }
    decision.episode = episodes_total_;
    decision.phase = phase_index_;
    decision.gain = gain_;
    decision.bias_span = bias_span_;
    decision.evi_iterations = evi_iterations_;

    expect_observe_ = true;
    last_state_ = state;
    last_action_ = decision.action;
    return decision;
}

void VbUcrlAgent::observe(int state, int action, double reward, int next_state) {
    if (!expect_observe_) throw ProtocolError("observe() called without a preceding act()");
    if (state != last_state_ || action != last_action_)
        throw ProtocolError("observe() does not match the acted (state, action)");
    if (next_state < 0 || next_state >= config_.S)
        throw InvariantViolation("next state out of range");
    if (!(reward >= 0.0) || reward > config_.r_max)
        throw InvariantViolation("observed reward outside [0, r_max]");

    stats_.record(state, action, reward, next_state);
    steps_in_phase_ += 1;
    t_ += 1;
    expect_observe_ = false;

    // Doubling rule: the episode closes once the just-played pair's
    // in-episode count reaches its prior total (floored at 1).
    if (stats_.episode_visits(state, action) >= stats_.visits_plus(state, action))
        episode_pending_ = true;
    if (phase_length_ != RestartSchedule::kUnbounded && steps_in_phase_ >= phase_length_)
        phase_pending_ = true;
}

AgentConfig baseline_config(const std::string& kind, double delta, double r_max, int S, int A) {
    AgentConfig cfg;
    cfg.name = kind;
    cfg.delta = delta;
    cfg.r_max = r_max;
    cfg.S = S;
    cfg.A = A;
    if (kind == "vb-ucrl" || kind == "vb-ucrl-norestart") {
        cfg.radius_kind = RadiusKind::Bernstein;
        cfg.restart = RestartKind::None;
    } else if (kind == "vb-ucrl-restart") {
        cfg.radius_kind = RadiusKind::Bernstein;
        cfg.restart = RestartKind::VariationSchedule;
    } else if (kind == "ucrl2-hoeffding") {
        cfg.radius_kind = RadiusKind::Hoeffding;
        cfg.restart = RestartKind::None;
    } else if (kind == "ucrl2-hoeffding-restart") {
        cfg.radius_kind = RadiusKind::Hoeffding;
        cfg.restart = RestartKind::VariationSchedule;
    } else {
        throw Error("unknown baseline kind: " + kind);
    }
    return cfg;
}

VbUcrlAgent make_baseline(const std::string& kind, double delta, double r_max, int S, int A,
                          double schedule_v_r, double schedule_v_p) {
    return VbUcrlAgent(baseline_config(kind, delta, r_max, S, A), schedule_v_r, schedule_v_p);
}

} // namespace nsrl

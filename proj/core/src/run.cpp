#include "nsrl/run.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "nsrl/errors.hpp"
#include "nsrl/sample.hpp"
#include "nsrl/solve.hpp"

namespace nsrl {

VbUcrlAgent make_agent_for_env(const AgentConfig& cfg, double v_r, double v_p,
                               std::uint64_t seed) {
    AgentConfig resolved = cfg;
    if (!resolved.v_hat_r) resolved.v_hat_r = v_r;
    if (!resolved.v_hat_p) resolved.v_hat_p = v_p;
    return VbUcrlAgent(std::move(resolved), v_r, v_p, derive_seed(seed, "agent"));
}

std::uint64_t config_hash(const AgentConfig& cfg) {
    std::ostringstream os;
    os << cfg.name << '|' << cfg.delta << '|' << cfg.r_max << '|' << cfg.S << '|' << cfg.A << '|'
       << (cfg.v_hat_r ? std::to_string(*cfg.v_hat_r) : "env") << '|'
       << (cfg.v_hat_p ? std::to_string(*cfg.v_hat_p) : "env") << '|' << cfg.alpha << '|'
       << (cfg.radius_kind == RadiusKind::Bernstein ? "bernstein" : "hoeffding") << '|'
       << (cfg.restart == RestartKind::VariationSchedule ? "restart" : "none") << '|'
       << (cfg.epsilon_clock == EpsilonClock::PhaseLocal ? "phase" : "global");
    const std::string text = os.str();
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : text) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

// Prop.-18-style episode bound inside one phase. Theorem 2 applies the
// single-phase analysis to each phase independently, so the counters are
// phase-local; for a run without restarts this is the global bound.
bool episode_bound_holds(long long episodes_in_phase, long long steps_in_phase, int S, int A) {
    const double sa = static_cast<double>(S) * A;
    if (static_cast<double>(steps_in_phase) < sa) return true; // bound stated for t >= SA
    const double cap = sa * std::log2(8.0 * static_cast<double>(steps_in_phase) / sa);
    return static_cast<double>(episodes_in_phase) <= cap;
}

} // namespace

RunRecord run_episode_loop(const NonStationaryEnv& env, const AgentConfig& cfg,
                           std::uint64_t seed, long long T, const RunOptions& opts) {
    const auto t_start = std::chrono::steady_clock::now();
    if (T < 0) T = env.horizon();
    if (T > env.horizon()) throw InvariantViolation("T exceeds the env horizon");
    if (cfg.S != env.state_count() || cfg.A != env.action_count())
        throw InvariantViolation("agent and env shapes do not match");

    RunRecord rec;
    rec.algorithm = cfg.name;
    rec.T = T;
    rec.seed = seed;
    rec.config_hash = config_hash(cfg);

    auto [v_r, v_p] = variation_budgets(env);
    rec.v_r = v_r;
    rec.v_p = v_p;
    VbUcrlAgent agent = make_agent_for_env(cfg, v_r, v_p, seed);

    RngStream env_rng(derive_seed(seed, "env"));
    if (opts.record_steps) rec.steps.reserve(static_cast<size_t>(T));

    auto violation = [&rec](const std::string& what, long long t, long long k, long long i) {
        std::ostringstream os;
        os << what << " (t=" << t << ", episode=" << k << ", phase=" << i << ")";
        rec.violations.push_back(os.str());
    };

    int state = env.initial_state();
    long long prev_episode = 0;
    for (long long t = 1; t <= T; ++t) {
        AgentDecision d;
        try {
            d = agent.act(state);
        } catch (const Error& e) {
            violation(std::string("agent error: ") + e.what(), t, agent.episodes(),
                      agent.phases());
            break;
        }

        if (opts.check_invariants) {
            if (d.episode < prev_episode)
                violation("episode index decreased", t, d.episode, d.phase);
            if (d.episode_started) {
                // After the fold at an episode start, the stats must account
                // for every step of the phase so far.
                long long folded = agent.stats().total_visits();
                if (folded != agent.steps_in_phase())
                    violation("visit-count accounting mismatch at episode start", t, d.episode,
                              d.phase);
                if (!episode_bound_holds(agent.episodes_in_phase(), agent.steps_in_phase() + 1,
                                         cfg.S, cfg.A))
                    violation("episode-count bound exceeded", t, d.episode, d.phase);
            }
            prev_episode = d.episode;
        }
        if (opts.record_diagnostics && (d.episode_started || d.phase_started))
            rec.diagnostics.push_back(
                {t, d.episode, d.phase, d.gain, d.bias_span, d.evi_iterations});

        const MdpSnapshot* pooled = env.pooled_at(t);
        MdpSnapshot scratch;
        if (pooled == nullptr) {
            scratch = env.snapshot_at(t);
            pooled = &scratch;
        }
        const StepSample smp = sample_step(*pooled, state, d.action, env_rng);
        try {
            agent.observe(state, d.action, smp.reward, smp.next_state);
        } catch (const Error& e) {
            violation(std::string("agent error: ") + e.what(), t, d.episode, d.phase);
            break;
        }

        if (opts.record_steps)
            rec.steps.push_back({t, state, d.action, smp.reward, d.episode, d.phase});
        rec.total_reward += smp.reward;
        state = smp.next_state;
    }

    rec.episodes = agent.episodes();
    rec.phases = agent.phases();
    rec.benchmark_value = finite_horizon_value(env, T);
    rec.regret = rec.benchmark_value - rec.total_reward;

    if (opts.check_invariants) {
        // Phase-count bound N < 1 + (3 V^2 T)^(1/3) with V = 2 V_r + V_p.
        if (cfg.restart == RestartKind::VariationSchedule) {
            const double V = 2.0 * v_r + v_p;
            if (V > 0.0) {
                const double cap = 1.0 + std::cbrt(3.0 * V * V * static_cast<double>(T));
                if (static_cast<double>(rec.phases) >= cap)
                    violation("phase-count bound exceeded", T, rec.episodes, rec.phases);
            }
        }
        const double drift = std::abs(rec.benchmark_value - (rec.regret + rec.total_reward));
        if (drift > 1e-9 * static_cast<double>(T) * env.r_max())
            violation("regret accounting drifted", T, rec.episodes, rec.phases);
    }

    rec.runtime_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t_start)
                         .count();
    return rec;
}

} // namespace nsrl

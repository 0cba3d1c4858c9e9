#pragma once

#include <vector>

#include "nsrl/env.hpp"
#include "nsrl/mdp.hpp"

namespace nsrl {

/// Solves the Bellman evaluation equations r_d + P_d h = h + g e with
/// h[reference_state] = 0 by a direct dense linear solve of the square
/// (g, h) system. The induced chain must have a single recurrent class;
/// a rank-deficient or inconsistent system (multichain) raises
/// InvariantViolation. The returned pair satisfies the equations with
/// residual at most 1e-9 * r_max in sup norm.
GainBias policy_gain_bias(const MdpSnapshot& m, const StationaryPolicy& d, int reference_state);

struct OptimalGainResult {
    double gain = 0.0;
    std::vector<double> bias;
    StationaryPolicy policy;
    long long iterations = 0;
};

/// Relative value iteration on the alpha-aperiodic transform of the
/// exact Bellman operator. Stops when the span of successive differences
/// drops to epsilon; the returned gain is the midpoint of that
/// difference and satisfies |gain - g*| <= epsilon/2 for communicating
/// m. Raises ConvergenceError past the iteration cap.
OptimalGainResult optimal_gain(const MdpSnapshot& m, double epsilon, double alpha = 0.9,
                               long long iteration_cap = kDefaultIterationCap);

/// Max over ordered state pairs of the minimal expected hitting time,
/// via one shortest-path value iteration per target state (per-step
/// reward -1, target row frozen). Non-convergence within the cap signals
/// a non-communicating MDP and raises ConvergenceError.
double diameter(const MdpSnapshot& m, double tolerance = 1e-9,
                long long iteration_cap = kDefaultIterationCap);

/// Exact optimal T-step values v*_1(.) of the time-varying env by
/// backward dynamic programming over (r_t, p_t), t = 1..T (v_{T+1} = 0).
/// Cost O(T S^2 A). `T` <= env.horizon() truncates; -1 means the full
/// horizon.
std::vector<double> finite_horizon_values(const NonStationaryEnv& env, long long T = -1);

/// finite_horizon_values at the env's initial state: the dynamic-regret
/// benchmark v*,T(s1).
double finite_horizon_value(const NonStationaryEnv& env, long long T = -1);

} // namespace nsrl

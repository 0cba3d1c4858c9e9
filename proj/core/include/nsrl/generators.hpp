#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nsrl/env.hpp"
#include "nsrl/mdp.hpp"
#include "nsrl/sample.hpp"

namespace nsrl {

/// Which end of the chain testbed carries the large reward.
enum class RewardEnd { Right, Left };

/// An S-state, 2-action hard-exploration chain. Action 0 steps left
/// deterministically and pays a small reward at state 0; action 1 steps
/// right with probability 0.6, stays with 0.35 and slips left with 0.05
/// (boundary rows fold the missing moves into staying / slipping), and
/// pays r_max at the far state. RewardEnd::Left relocates the large
/// reward onto (0, action 0) without touching the transitions.
MdpSnapshot chain_testbed(int S, double r_max, RewardEnd reward_end = RewardEnd::Right);

/// Random MDP with branching factor gamma: every transition row is
/// supported on gamma uniformly-chosen states with Dirichlet(1) weights,
/// mean rewards uniform on [0, r_max]. Rejection-sampled until
/// communicating.
MdpSnapshot random_garnet(int S, int A, int gamma, double r_max, RngStream& rng);

/// True iff the union-over-actions support graph is strongly connected,
/// which is equivalent to the MDP being communicating.
bool is_communicating(const MdpSnapshot& m);

/// Declarative recipe for a reproducible non-stationary environment.
struct GeneratorSpec {
    // stationary | abrupt-switch | linear-drift | random-garnet-switch | explicit
    std::string kind = "stationary";
    long long T = 0;
    int s1 = 0;

    std::vector<MdpSnapshot> snapshots;    // bases (stationary 1, drift 2, switch >= 2)
    std::vector<double> switch_fracs;      // abrupt-switch: fractions of T, in (0, 1)
    std::vector<long long> switch_times;   // ... or absolute first steps of later pieces
    std::vector<long long> segment_steps;  // explicit: steps per snapshot

    // linear-drift: optional realized-budget targets; the drift endpoint
    // is pulled toward the base so variation_budgets matches them.
    std::optional<double> target_v_r;
    std::optional<double> target_v_p;

    // random-garnet-switch
    int garnet_S = 0;
    int garnet_A = 0;
    int garnet_gamma = 0;
    double garnet_r_max = 1.0;
    int garnet_segments = 0;
    std::uint64_t seed = 0;
};

/// Materializes the spec into an env of horizon T (T_override > 0
/// replaces spec.T; switch fractions scale with it).
NonStationaryEnv generate(const GeneratorSpec& spec, long long T_override = -1);

} // namespace nsrl

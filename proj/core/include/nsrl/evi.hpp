#pragma once

#include <span>
#include <vector>

#include "nsrl/confidence.hpp"
#include "nsrl/mdp.hpp"

namespace nsrl {

/// Span seminorm sp(v) = max(v) - min(v).
double span(std::span<const double> v);

/// State indices sorted by descending v, ties broken by lower index.
/// The greedy transition maximizer fills mass in this order.
std::vector<int> descending_value_order(std::span<const double> v);

/// Exact maximizer of p . v over the box-simplex polytope
/// { p : p_lo <= p <= p_hi, sum p = 1 }: start from p_lo and hand the
/// remaining mass to coordinates in descending order of v, each up to
/// its upper bound. `order` must be descending_value_order(v).
/// Raises InternalError when the box is infeasible (sum p_lo > 1 or
/// sum p_hi < 1 beyond tolerance), which is unreachable for clipped
/// confidence boxes.
void inner_max_transition(std::span<const double> p_lo, std::span<const double> p_hi,
                          std::span<const int> order, std::span<double> p_out);

/// Convenience overload that computes the fill order itself.
std::vector<double> inner_max_transition(std::span<const double> p_lo,
                                         std::span<const double> p_hi,
                                         std::span<const double> v);

struct BellmanResult {
    std::vector<double> values;       // L^alpha v
    std::vector<int> greedy;          // argmax action per state, ties to lower index
    std::vector<double> optimistic_r; // maximizing rewards, S*A (upper interval ends)
    std::vector<double> optimistic_p; // maximizing transitions, S*A*S
};

/// One application of the extended optimistic Bellman operator with
/// aperiodic transformation:
///   L v(s) = max_a { r_hi(s,a) + alpha max_{p in box} p.v } + (1-alpha) v(s).
BellmanResult extended_bellman(const ConfidenceModel& conf, std::span<const double> v,
                               double alpha);

struct EviResult {
    double gain = 0.0;
    std::vector<double> bias;
    StationaryPolicy policy;
    std::vector<double> optimistic_r; // S*A
    std::vector<double> optimistic_p; // S*A*S, the maximizers under the final bias
    long long iterations = 0;
};

/// Relative value iteration with the extended operator: iterate
/// v <- L v with per-iteration re-centering at the reference state, stop
/// when sp(v_{n+1} - v_n) <= epsilon, return the midpoint gain, the
/// final bias, the greedy policy, and the optimistic (r, p) realized at
/// the final iterate. Guarantees |gain - g*| <= epsilon/2 for the
/// optimistic MDP. Raises ConvergenceError past the iteration cap,
/// carrying the last span.
EviResult extended_value_iteration(const ConfidenceModel& conf, double epsilon, double alpha,
                                   int reference_state,
                                   long long iteration_cap = kDefaultIterationCap);

} // namespace nsrl

#include "nsrl/evi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nsrl/errors.hpp"

namespace nsrl {

double span(std::span<const double> v) {
    if (v.empty()) throw InvariantViolation("span of an empty vector");
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

std::vector<int> descending_value_order(std::span<const double> v) {
    std::vector<int> order(v.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return v[i] > v[j]; });
    return order;
}

void inner_max_transition(std::span<const double> p_lo, std::span<const double> p_hi,
                          std::span<const int> order, std::span<double> p_out) {
    const size_t n = p_lo.size();
    double mass = 0.0;
    for (size_t i = 0; i < n; ++i) {
        p_out[i] = p_lo[i];
        mass += p_lo[i];
    }
    double remaining = 1.0 - mass;
    if (remaining < -kProbTolerance)
        throw InternalError("infeasible transition box: sum of lower bounds exceeds 1");
    for (size_t k = 0; k < n && remaining > 0.0; ++k) {
        const int i = order[k];
        const double room = p_hi[i] - p_lo[i];
        const double give = std::min(room, remaining);
        p_out[i] += give;
        remaining -= give;
    }
    if (remaining > kProbTolerance)
        throw InternalError("infeasible transition box: sum of upper bounds is below 1");
}

std::vector<double> inner_max_transition(std::span<const double> p_lo,
                                         std::span<const double> p_hi,
                                         std::span<const double> v) {
    std::vector<double> p(p_lo.size());
    inner_max_transition(p_lo, p_hi, descending_value_order(v), p);
    return p;
}

namespace {

// Shared worker: one operator application. opt_p may be null when the
// caller does not need the maximizing transitions of this sweep.
void apply_extended_bellman(const ConfidenceModel& conf, std::span<const double> v, double alpha,
                            std::span<const int> order, std::vector<double>& scratch_p,
                            std::span<double> out, std::span<int> greedy, double* opt_p) {
    const int S = conf.S;
    const int A = conf.A;
    for (int s = 0; s < S; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        int best_a = 0;
        for (int a = 0; a < A; ++a) {
            inner_max_transition({conf.p_lo_row(s, a), static_cast<size_t>(S)},
                                 {conf.p_hi_row(s, a), static_cast<size_t>(S)}, order, scratch_p);
            double pv = 0.0;
            for (int s2 = 0; s2 < S; ++s2) pv += scratch_p[s2] * v[s2];
            const double q = conf.r_hi[conf.idx(s, a)] + alpha * pv;
            if (q > best) {
                best = q;
                best_a = a;
            }
            if (opt_p != nullptr)
                std::copy(scratch_p.begin(), scratch_p.end(), opt_p + conf.idx(s, a, 0));
        }
        out[s] = best + (1.0 - alpha) * v[s];
        greedy[s] = best_a;
    }
}

} // namespace

BellmanResult extended_bellman(const ConfidenceModel& conf, std::span<const double> v,
                               double alpha) {
    if (!(alpha > 0.0) || alpha > 1.0) throw InvariantViolation("alpha must lie in (0, 1]");
    if (static_cast<int>(v.size()) != conf.S)
        throw InvariantViolation("value vector length does not match the model");
    BellmanResult out;
    out.values.assign(conf.S, 0.0);
    out.greedy.assign(conf.S, 0);
    out.optimistic_r = conf.r_hi;
    out.optimistic_p.assign(conf.p_lo.size(), 0.0);
    std::vector<double> scratch(conf.S);
    const auto order = descending_value_order(v);
    apply_extended_bellman(conf, v, alpha, order, scratch, out.values, out.greedy,
                           out.optimistic_p.data());
    return out;
}

EviResult extended_value_iteration(const ConfidenceModel& conf, double epsilon, double alpha,
                                   int reference_state, long long iteration_cap) {
    if (!(epsilon > 0.0) || epsilon >= conf.r_max)
        throw InvariantViolation("accuracy must lie in (0, r_max)");
    if (!(alpha > 0.0) || alpha > 1.0) throw InvariantViolation("alpha must lie in (0, 1]");
    if (reference_state < 0 || reference_state >= conf.S)
        throw InvariantViolation("reference state out of range");

    const int S = conf.S;
    std::vector<double> v(S, 0.0), next(S, 0.0), diff(S, 0.0), scratch(S);
    std::vector<int> greedy(S, 0);

    auto order = descending_value_order(v);
    apply_extended_bellman(conf, v, alpha, order, scratch, next, greedy, nullptr);

    long long n = 0;
    while (true) {
        for (int s = 0; s < S; ++s) diff[s] = next[s] - v[s];
        const double sp = span(diff);
        if (sp <= epsilon) break;
        if (++n > iteration_cap)
            throw ConvergenceError("extended value iteration exceeded its iteration cap", sp);
        const double c = next[reference_state];
        for (int s = 0; s < S; ++s) v[s] = next[s] - c;
        order = descending_value_order(v);
        apply_extended_bellman(conf, v, alpha, order, scratch, next, greedy, nullptr);
    }

    EviResult out;
    auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
    out.gain = 0.5 * (*hi + *lo);
    out.bias = v;
    out.policy = StationaryPolicy::deterministic(greedy, conf.A);
    out.iterations = n;
    out.optimistic_r = conf.r_hi;
    out.optimistic_p.assign(conf.p_lo.size(), 0.0);
    // Maximizing transitions under the final bias.
    order = descending_value_order(v);
    std::vector<double> dummy(S);
    std::vector<int> dummy_greedy(S);
    apply_extended_bellman(conf, v, alpha, order, scratch, dummy, dummy_greedy,
                           out.optimistic_p.data());
    return out;
}

} // namespace nsrl

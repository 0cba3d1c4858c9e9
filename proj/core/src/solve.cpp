#include "nsrl/solve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "nsrl/errors.hpp"

namespace nsrl {

namespace {

double span_of(const std::vector<double>& v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi - *lo;
}

} // namespace

GainBias policy_gain_bias(const MdpSnapshot& m, const StationaryPolicy& d, int reference_state) {
    auto rep = validate_policy(d, m);
    if (!rep.ok()) throw InvariantViolation("invalid policy: " + rep.to_string());
    if (reference_state < 0 || reference_state >= m.S)
        throw InvariantViolation("reference state out of range");

    const int S = m.S;

    // Induced reward vector and transition matrix.
    Eigen::VectorXd r_d(S);
    Eigen::MatrixXd P_d = Eigen::MatrixXd::Zero(S, S);
    for (int s = 0; s < S; ++s) {
        double r = 0.0;
        for (int a = 0; a < m.A; ++a) {
            const double w = d.prob_of(s, a);
            if (w == 0.0) continue;
            r += w * m.r(s, a);
            for (int s2 = 0; s2 < S; ++s2) P_d(s, s2) += w * m.p(s, a, s2);
        }
        r_d(s) = r;
    }

    // Unknowns x = (h(s) for s != ref, g); equation s reads
    //   h(s) - sum_{s'} P_d(s'|s) h(s') + g = r_d(s)   with h(ref) = 0.
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(S, S);
    auto col_of = [&](int s2) { return s2 < reference_state ? s2 : s2 - 1; };
    for (int s = 0; s < S; ++s) {
        for (int s2 = 0; s2 < S; ++s2) {
            if (s2 == reference_state) continue;
            M(s, col_of(s2)) = (s == s2 ? 1.0 : 0.0) - P_d(s, s2);
        }
        M(s, S - 1) = 1.0;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
    if (!lu.isInvertible())
        throw InvariantViolation(
            "gain/bias system is singular; the induced chain is not unichain");
    Eigen::VectorXd x = lu.solve(r_d);

    GainBias out;
    out.gain = x(S - 1);
    out.reference_state = reference_state;
    out.bias.assign(S, 0.0);
    for (int s2 = 0; s2 < S; ++s2)
        if (s2 != reference_state) out.bias[s2] = x(col_of(s2));

    // Residual of the evaluation equations; a consistent unichain solve
    // leaves only rounding noise here.
    double resid = 0.0;
    for (int s = 0; s < S; ++s) {
        double lhs = out.bias[s] + out.gain;
        double rhs = r_d(s);
        for (int s2 = 0; s2 < S; ++s2) rhs += P_d(s, s2) * out.bias[s2];
        resid = std::max(resid, std::abs(lhs - rhs));
    }
    if (resid > 1e-9 * m.r_max)
        throw InvariantViolation("gain/bias solve residual too large; chain is likely multichain");
    return out;
}

OptimalGainResult optimal_gain(const MdpSnapshot& m, double epsilon, double alpha,
                               long long iteration_cap) {
    if (!(epsilon > 0.0) || epsilon >= m.r_max)
        throw InvariantViolation("accuracy must lie in (0, r_max)");
    if (!(alpha > 0.0) || alpha > 1.0) throw InvariantViolation("alpha must lie in (0, 1]");

    const int S = m.S;
    std::vector<double> v(S, 0.0), next(S, 0.0), diff(S, 0.0);
    std::vector<int> greedy(S, 0);

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            int best_a = 0;
            for (int a = 0; a < m.A; ++a) {
                double q = m.r(s, a);
                const double* row = m.row(s, a);
                double pv = 0.0;
                for (int s2 = 0; s2 < S; ++s2) pv += row[s2] * in[s2];
                q += alpha * pv;
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            out[s] = best + (1.0 - alpha) * in[s];
            greedy[s] = best_a;
        }
    };

    apply(v, next);
    long long n = 0;
    while (true) {
        for (int s = 0; s < S; ++s) diff[s] = next[s] - v[s];
        const double sp = span_of(diff);
        if (sp <= epsilon) break;
        if (++n > iteration_cap)
            throw ConvergenceError("relative value iteration exceeded its iteration cap", sp);
        // Re-center on state 0 to keep the iterates bounded.
        const double c = next[0];
        for (int s = 0; s < S; ++s) v[s] = next[s] - c;
        apply(v, next);
    }

    auto [lo, hi] = std::minmax_element(diff.begin(), diff.end());
    OptimalGainResult out;
    out.gain = 0.5 * (*hi + *lo);
    out.bias = v;
    out.policy = StationaryPolicy::deterministic(greedy, m.A);
    out.iterations = n;
    return out;
}

double diameter(const MdpSnapshot& m, double tolerance, long long iteration_cap) {
    const int S = m.S;
    if (S == 1) return 0.0;

    double worst = 0.0;
    std::vector<double> v(S), next(S);
    for (int target = 0; target < S; ++target) {
        std::fill(v.begin(), v.end(), 0.0);
        long long n = 0;
        double change = 0.0;
        while (true) {
            for (int s = 0; s < S; ++s) {
                if (s == target) {
                    next[s] = v[s];
                    continue;
                }
                double best = -std::numeric_limits<double>::infinity();
                for (int a = 0; a < m.A; ++a) {
                    const double* row = m.row(s, a);
                    double q = -1.0;
                    for (int s2 = 0; s2 < S; ++s2) q += row[s2] * v[s2];
                    best = std::max(best, q);
                }
                next[s] = best;
            }
            change = 0.0;
            for (int s = 0; s < S; ++s) change = std::max(change, std::abs(next[s] - v[s]));
            v.swap(next);
            if (change <= tolerance) break;
            if (++n > iteration_cap)
                throw ConvergenceError(
                    "shortest-path value iteration did not converge; MDP is likely "
                    "non-communicating",
                    change);
        }
        for (int s = 0; s < S; ++s)
            if (s != target) worst = std::max(worst, -v[s]);
    }
    return worst;
}

std::vector<double> finite_horizon_values(const NonStationaryEnv& env, long long T) {
    if (T < 0) T = env.horizon();
    if (T > env.horizon()) throw InvariantViolation("T exceeds the env horizon");
    const int S = env.state_count();
    const int A = env.action_count();

    std::vector<double> v(S, 0.0), prev(S, 0.0);
    MdpSnapshot scratch;
    for (long long t = T; t >= 1; --t) {
        const MdpSnapshot* m = env.pooled_at(t);
        if (m == nullptr) {
            scratch = env.snapshot_at(t);
            m = &scratch;
        }
        prev.swap(v);
        for (int s = 0; s < S; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < A; ++a) {
                double q = m->r(s, a);
                const double* row = m->row(s, a);
                for (int s2 = 0; s2 < S; ++s2) q += row[s2] * prev[s2];
                best = std::max(best, q);
            }
            v[s] = best;
        }
    }
    return v;
}

double finite_horizon_value(const NonStationaryEnv& env, long long T) {
    return finite_horizon_values(env, T)[env.initial_state()];
}

} // namespace nsrl

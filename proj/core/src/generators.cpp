#include "nsrl/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nsrl/errors.hpp"

namespace nsrl {

MdpSnapshot chain_testbed(int S, double r_max, RewardEnd reward_end) {
    if (S < 2) throw InvariantViolation("chain testbed needs S >= 2");
    MdpSnapshot m = MdpSnapshot::zeros(S, 2, r_max);

    for (int s = 0; s < S; ++s) {
        // Action 0: deterministic step left.
        m.p(s, 0, std::max(0, s - 1)) = 1.0;
        // Action 1: right 0.6, stay 0.35, slip left 0.05; boundary rows
        // fold the impossible move into staying.
        if (s == 0) {
            m.p(s, 1, 1) = 0.6;
            m.p(s, 1, 0) = 0.4;
        } else if (s == S - 1) {
            m.p(s, 1, s) = 0.6;
            m.p(s, 1, s - 1) = 0.4;
        } else {
            m.p(s, 1, s + 1) = 0.6;
            m.p(s, 1, s) = 0.35;
            m.p(s, 1, s - 1) = 0.05;
        }
    }
    const double small = 0.05 * r_max;
    if (reward_end == RewardEnd::Right) {
        m.r(0, 0) = small;
        m.r(S - 1, 1) = r_max;
    } else {
        m.r(0, 0) = r_max;
        m.r(S - 1, 1) = small;
    }
    return m;
}

bool is_communicating(const MdpSnapshot& m) {
    const int S = m.S;
    auto reach = [&](int start, bool transpose) {
        std::vector<char> seen(S, 0);
        std::vector<int> stack{start};
        seen[start] = 1;
        while (!stack.empty()) {
            const int s = stack.back();
            stack.pop_back();
            for (int s2 = 0; s2 < S; ++s2) {
                if (seen[s2]) continue;
                bool edge = false;
                for (int a = 0; a < m.A && !edge; ++a)
                    edge = transpose ? m.p(s2, a, s) > 0.0 : m.p(s, a, s2) > 0.0;
                if (edge) {
                    seen[s2] = 1;
                    stack.push_back(s2);
                }
            }
        }
        return seen;
    };
    const auto fwd = reach(0, false);
    const auto bwd = reach(0, true);
    for (int s = 0; s < S; ++s)
        if (!fwd[s] || !bwd[s]) return false;
    return true;
}

MdpSnapshot random_garnet(int S, int A, int gamma, double r_max, RngStream& rng) {
    if (S < 1 || A < 1 || gamma < 1 || gamma > S)
        throw InvariantViolation("garnet needs 1 <= gamma <= S and positive A");
    std::vector<int> states(S);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        MdpSnapshot m = MdpSnapshot::zeros(S, A, r_max);
        for (int s = 0; s < S; ++s) {
            for (int a = 0; a < A; ++a) {
                std::iota(states.begin(), states.end(), 0);
                // Partial Fisher-Yates: first gamma entries are the support.
                for (int i = 0; i < gamma; ++i) {
                    const int j = i + static_cast<int>(rng.below(S - i));
                    std::swap(states[i], states[j]);
                }
                // Dirichlet(1,...,1) via normalized exponentials.
                double sum = 0.0;
                std::vector<double> w(gamma);
                for (int i = 0; i < gamma; ++i) {
                    w[i] = -std::log(1.0 - rng.uniform01());
                    sum += w[i];
                }
                for (int i = 0; i < gamma; ++i) m.p(s, a, states[i]) = w[i] / sum;
                m.r(s, a) = r_max * rng.uniform01();
            }
        }
        normalize_rows(m);
        if (is_communicating(m)) return m;
    }
    throw Error("garnet rejection sampling failed to find a communicating MDP");
}

namespace {

void require(bool cond, const std::string& what) {
    if (!cond) throw InvariantViolation(what);
}

NonStationaryEnv make_switch(std::vector<MdpSnapshot> snapshots,
                             std::vector<long long> boundaries, long long T, int s1) {
    // boundaries are the first steps of pieces 2..n, strictly increasing in (1, T].
    require(boundaries.size() + 1 == snapshots.size(),
            "abrupt-switch needs one more snapshot than switch times");
    std::vector<NonStationaryEnv::Segment> segments;
    long long start = 1;
    for (size_t i = 0; i <= boundaries.size(); ++i) {
        const long long end = i < boundaries.size() ? boundaries[i] : T + 1;
        require(end > start && end <= T + 1, "switch times must be strictly increasing in (1, T]");
        segments.push_back({end - start, static_cast<int>(i), static_cast<int>(i), 0.0, 0.0});
        start = end;
    }
    return NonStationaryEnv(std::move(snapshots), std::move(segments), s1);
}

} // namespace

NonStationaryEnv generate(const GeneratorSpec& spec, long long T_override) {
    for (const auto& m : spec.snapshots)
        require(is_communicating(m), "base snapshots must be communicating");

    if (spec.kind == "explicit") {
        require(!spec.snapshots.empty() && spec.segment_steps.size() == spec.snapshots.size(),
                "explicit spec needs matching snapshots and step counts");
        std::vector<NonStationaryEnv::Segment> segments;
        long long total = 0;
        for (size_t i = 0; i < spec.snapshots.size(); ++i) {
            segments.push_back(
                {spec.segment_steps[i], static_cast<int>(i), static_cast<int>(i), 0.0, 0.0});
            total += spec.segment_steps[i];
        }
        require(T_override <= 0 || T_override == total,
                "explicit trace length does not match the requested horizon");
        return NonStationaryEnv(spec.snapshots, std::move(segments), spec.s1);
    }

    const long long T = T_override > 0 ? T_override : spec.T;
    require(T >= 1, "generator needs a positive horizon T");

    if (spec.kind == "stationary") {
        require(spec.snapshots.size() == 1, "stationary spec needs exactly one snapshot");
        return NonStationaryEnv::stationary(spec.snapshots.front(), T, spec.s1);
    }

    if (spec.kind == "abrupt-switch") {
        require(spec.snapshots.size() >= 2, "abrupt-switch needs at least two snapshots");
        std::vector<long long> boundaries;
        if (!spec.switch_fracs.empty()) {
            for (double f : spec.switch_fracs) {
                require(f > 0.0 && f < 1.0, "switch fractions must lie in (0, 1)");
                boundaries.push_back(1 + static_cast<long long>(std::floor(f * T)));
            }
        } else {
            boundaries = spec.switch_times;
        }
        return make_switch(spec.snapshots, std::move(boundaries), T, spec.s1);
    }

    if (spec.kind == "linear-drift") {
        require(spec.snapshots.size() == 2, "linear-drift needs exactly two snapshots");
        double lambda_end = 1.0;
        if (spec.target_v_r || spec.target_v_p) {
            // Realized budgets of a full drift equal the endpoint deltas
            // (telescoping); scaling the final blend weight scales both.
            NonStationaryEnv probe(spec.snapshots, {{2, 0, 1, 0.0, 1.0}}, spec.s1);
            auto [dr, dp] = variation_budgets(probe);
            std::optional<double> c_r, c_p;
            if (spec.target_v_r) {
                require(dr > 0.0 || *spec.target_v_r == 0.0,
                        "reward drift target requires differing endpoint rewards");
                c_r = dr > 0.0 ? *spec.target_v_r / dr : 0.0;
            }
            if (spec.target_v_p) {
                require(dp > 0.0 || *spec.target_v_p == 0.0,
                        "transition drift target requires differing endpoint kernels");
                c_p = dp > 0.0 ? *spec.target_v_p / dp : 0.0;
            }
            if (c_r && c_p)
                require(std::abs(*c_r - *c_p) <= 1e-9,
                        "reward and transition drift targets are inconsistent");
            lambda_end = c_r ? *c_r : *c_p;
            require(lambda_end <= 1.0, "drift target exceeds the endpoint variation");
        }
        return NonStationaryEnv(spec.snapshots, {{T, 0, 1, 0.0, lambda_end}}, spec.s1);
    }

    if (spec.kind == "random-garnet-switch") {
        require(spec.garnet_segments >= 1, "random-garnet-switch needs segments >= 1");
        RngStream rng(derive_seed(spec.seed, "garnet"));
        std::vector<MdpSnapshot> snapshots;
        for (int i = 0; i < spec.garnet_segments; ++i)
            snapshots.push_back(random_garnet(spec.garnet_S, spec.garnet_A, spec.garnet_gamma,
                                              spec.garnet_r_max, rng));
        if (spec.garnet_segments == 1)
            return NonStationaryEnv::stationary(std::move(snapshots.front()), T, spec.s1);
        std::vector<long long> boundaries;
        for (int i = 1; i < spec.garnet_segments; ++i)
            boundaries.push_back(1 + i * T / spec.garnet_segments);
        return make_switch(std::move(snapshots), std::move(boundaries), T, spec.s1);
    }

    throw Error("unknown generator kind: " + spec.kind);
}

} // namespace nsrl

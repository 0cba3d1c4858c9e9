#include <doctest.h>

#include <cmath>

#include "nsrl/errors.hpp"
#include "nsrl/generators.hpp"
#include "nsrl/solve.hpp"

using namespace nsrl;

TEST_CASE("chain testbed is a valid communicating MDP") {
    for (int S : {2, 4, 6}) {
        auto m = chain_testbed(S, 1.0);
        CHECK(validate_snapshot(m).ok());
        CHECK(is_communicating(m));
        const double d = diameter(m);
        CHECK(d >= 1.0);
        CHECK(std::isfinite(d));
    }
}

TEST_CASE("chain optimal gain beats the always-left policy") {
    auto m = chain_testbed(4, 1.0);
    auto left = policy_gain_bias(m, StationaryPolicy::deterministic({0, 0, 0, 0}, 2), 0);
    auto opt = optimal_gain(m, 1e-8);
    CHECK(opt.gain > left.gain + 0.01);
    CHECK(left.gain == doctest::Approx(0.05).epsilon(1e-9)); // parked at state 0
}

TEST_CASE("chain with the reward at the left end flips the optimal policy") {
    auto m = chain_testbed(4, 1.0, RewardEnd::Left);
    auto opt = optimal_gain(m, 1e-8);
    CHECK(opt.gain == doctest::Approx(1.0).epsilon(1e-6)); // sit at state 0
    CHECK(opt.policy.action[0] == 0);
}

TEST_CASE("garnet rows have exactly gamma nonzeros") {
    RngStream rng(derive_seed(1, "garnet-test"));
    auto m = random_garnet(6, 2, 2, 1.0, rng);
    CHECK(validate_snapshot(m).ok());
    for (int s = 0; s < 6; ++s)
        for (int a = 0; a < 2; ++a) CHECK(m.support_count(s, a) == 2);
    CHECK(is_communicating(m));
}

TEST_CASE("generated envs pass snapshot validation everywhere") {
    GeneratorSpec spec;
    spec.kind = "linear-drift";
    spec.T = 37;
    spec.snapshots = {chain_testbed(3, 1.0), chain_testbed(3, 1.0, RewardEnd::Left)};
    auto env = generate(spec);
    for (long long t = 1; t <= env.horizon(); ++t)
        CHECK(validate_snapshot(env.snapshot_at(t)).ok());
}

TEST_CASE("stationary generator realizes zero budgets") {
    GeneratorSpec spec;
    spec.kind = "stationary";
    spec.T = 64;
    spec.snapshots = {chain_testbed(3, 1.0)};
    auto env = generate(spec);
    auto [vr, vp] = variation_budgets(env);
    CHECK(vr == 0.0);
    CHECK(vp == 0.0);
}

TEST_CASE("abrupt switch with one switch realizes the single-step deltas") {
    GeneratorSpec spec;
    spec.kind = "abrupt-switch";
    spec.T = 100;
    spec.snapshots = {chain_testbed(3, 1.0), chain_testbed(3, 1.0, RewardEnd::Left)};
    spec.switch_fracs = {0.5};
    auto env = generate(spec);
    auto [vr, vp] = variation_budgets(env);
    CHECK(vr == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(vp == 0.0);
    // Fixed total budget across horizons: fractions scale with T.
    auto env2 = generate(spec, 1000);
    auto [vr2, vp2] = variation_budgets(env2);
    CHECK(vr2 == doctest::Approx(vr).epsilon(1e-12));
    CHECK(vp2 == vp);
}

TEST_CASE("drift with target budgets realizes them") {
    GeneratorSpec spec;
    spec.kind = "linear-drift";
    spec.T = 50;
    spec.snapshots = {chain_testbed(3, 1.0), chain_testbed(3, 1.0, RewardEnd::Left)};
    spec.target_v_r = 0.4;
    auto env = generate(spec);
    auto [vr, vp] = variation_budgets(env);
    CHECK(vr == doctest::Approx(0.4).epsilon(1e-9));
    CHECK(vp <= 1e-12); // blend rounding noise only

}

TEST_CASE("garnet switch envs are deterministic under a fixed seed") {
    GeneratorSpec spec;
    spec.kind = "random-garnet-switch";
    spec.T = 40;
    spec.garnet_S = 5;
    spec.garnet_A = 2;
    spec.garnet_gamma = 3;
    spec.garnet_segments = 3;
    spec.seed = 1234;
    auto a = generate(spec);
    auto b = generate(spec);
    REQUIRE(a.horizon() == b.horizon());
    for (long long t = 1; t <= a.horizon(); ++t) {
        auto ma = a.snapshot_at(t);
        auto mb = b.snapshot_at(t);
        CHECK(ma.P == mb.P);
        CHECK(ma.r_mean == mb.r_mean);
    }
    GeneratorSpec other = spec;
    other.seed = 999;
    auto c = generate(other);
    CHECK(c.snapshot_at(1).P != a.snapshot_at(1).P);
}

TEST_CASE("non-communicating bases are rejected") {
    MdpSnapshot bad = MdpSnapshot::zeros(2, 1, 1.0);
    bad.p(0, 0, 0) = 1.0;
    bad.p(1, 0, 0) = 1.0;
    GeneratorSpec spec;
    spec.kind = "stationary";
    spec.T = 10;
    spec.snapshots = {bad};
    CHECK_THROWS_AS(generate(spec), InvariantViolation);
}

TEST_CASE("shape-incompatible snapshots are rejected") {
    GeneratorSpec spec;
    spec.kind = "abrupt-switch";
    spec.T = 10;
    spec.snapshots = {chain_testbed(3, 1.0), chain_testbed(4, 1.0)};
    spec.switch_fracs = {0.5};
    CHECK_THROWS_AS(generate(spec), InvariantViolation);
}

#include <doctest.h>

#include <cmath>

#include "nsrl/errors.hpp"
#include "nsrl/generators.hpp"
#include "nsrl/json_io.hpp"
#include "nsrl/mdp.hpp"
#include "nsrl/sample.hpp"

using namespace nsrl;

namespace {

// Deterministic ring: state s moves to (s+1) mod S under the only action.
MdpSnapshot ring(int S) {
    MdpSnapshot m = MdpSnapshot::zeros(S, 1, 1.0);
    for (int s = 0; s < S; ++s) m.p(s, 0, (s + 1) % S) = 1.0;
    return m;
}

} // namespace

TEST_CASE("validate_snapshot accepts an exact identity chain") {
    auto m = ring(3);
    CHECK(validate_snapshot(m).ok());
}

TEST_CASE("validate_snapshot reports a deficient row with coordinates") {
    auto m = ring(3);
    m.p(1, 0, 2) = 0.9;
    auto rep = validate_snapshot(m);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations)
        if (v.s == 1 && v.a == 0 && v.what.find("sum") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("validate_snapshot reports rewards above r_max") {
    auto m = ring(2);
    m.r(0, 0) = m.r_max + 0.1;
    auto rep = validate_snapshot(m);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations.front().what.find("reward") != std::string::npos);
}

TEST_CASE("normalize_rows repairs rows within 1e-9 and rejects worse") {
    auto m = ring(2);
    m.p(0, 0, 1) = 1.0 + 5e-10;
    normalize_rows(m);
    CHECK(m.p(0, 0, 1) == doctest::Approx(1.0).epsilon(1e-14));

    auto bad = ring(2);
    bad.p(0, 0, 1) = 0.9;
    CHECK_THROWS_AS(normalize_rows(bad), InvariantViolation);
}

TEST_CASE("support count matches the chain construction") {
    auto m = chain_testbed(6, 1.0);
    CHECK(m.support_count(0, 0) == 1);
    for (int s = 1; s + 1 < 6; ++s) CHECK(m.support_count(s, 1) == 3);
    CHECK(m.max_support() == 3);
}

TEST_CASE("snapshot JSON round-trips") {
    auto m = chain_testbed(4, 2.5);
    m.reward_dist = RewardDist::uniform(0.25);
    auto text = snapshot_to_json(m);
    auto back = snapshot_from_json(text);
    CHECK(back.S == m.S);
    CHECK(back.A == m.A);
    CHECK(back.r_max == m.r_max);
    CHECK(back.reward_dist == m.reward_dist);
    CHECK(back.r_mean == m.r_mean);
    CHECK(back.P == m.P);
}

TEST_CASE("policy validation catches shape and range errors") {
    auto m = chain_testbed(3, 1.0);
    CHECK(validate_policy(StationaryPolicy::deterministic({0, 1, 1}, 2), m).ok());
    CHECK_FALSE(validate_policy(StationaryPolicy::deterministic({0, 2, 1}, 2), m).ok());
    CHECK(validate_policy(StationaryPolicy::uniform(3, 2), m).ok());
}

TEST_CASE("sample_step follows deterministic rows exactly") {
    auto m = ring(4);
    RngStream rng(7);
    for (int i = 0; i < 50; ++i) {
        auto smp = sample_step(m, 2, 0, rng);
        CHECK(smp.next_state == 3);
    }
}

TEST_CASE("bernoulli-scaled rewards with mean zero are always zero") {
    auto m = ring(2); // all r_mean already 0
    RngStream rng(11);
    for (int i = 0; i < 50; ++i) CHECK(sample_step(m, 0, 0, rng).reward == 0.0);
}

TEST_CASE("bernoulli-scaled sample mean concentrates on the declared mean") {
    MdpSnapshot m = MdpSnapshot::zeros(1, 1, 1.0);
    m.p(0, 0, 0) = 1.0;
    m.r(0, 0) = 0.3;
    RngStream rng(derive_seed(42, "mc"));
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += sample_step(m, 0, 0, rng).reward;
    // Binomial 3-sigma band at n = 1e5 is ~0.0043, well inside 0.01.
    CHECK(std::abs(sum / n - 0.3) < 0.01);
}

TEST_CASE("uniform-interval rewards keep the mean and the range") {
    MdpSnapshot m = MdpSnapshot::zeros(1, 1, 1.0);
    m.p(0, 0, 0) = 1.0;
    m.r(0, 0) = 0.05; // near the boundary: width must shrink to 0.05
    m.reward_dist = RewardDist::uniform(0.2);
    RngStream rng(3);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double r = sample_step(m, 0, 0, rng).reward;
        CHECK(r >= 0.0);
        CHECK(r <= 0.1);
        sum += r;
    }
    CHECK(sum / n == doctest::Approx(0.05).epsilon(0.01));
}

TEST_CASE("reward samples are reproducible under equal rng state") {
    auto m = chain_testbed(5, 1.0);
    RngStream a(123), b(123);
    for (int i = 0; i < 200; ++i) {
        auto sa = sample_step(m, i % 5, i % 2, a);
        auto sb = sample_step(m, i % 5, i % 2, b);
        CHECK(sa.reward == sb.reward);
        CHECK(sa.next_state == sb.next_state);
    }
}

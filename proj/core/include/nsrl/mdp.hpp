#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nsrl {

/// Tolerance applied to every probability comparison after construction.
inline constexpr double kProbTolerance = 1e-12;

/// Rows whose sum is within this distance of 1 are renormalized at
/// construction time; rows further off are rejected as hard errors.
inline constexpr double kRowRepairTolerance = 1e-9;

/// Default iteration cap shared by all fixed-point solvers.
inline constexpr long long kDefaultIterationCap = 1'000'000;

/// Family of the per-(s,a) reward distribution. Only the mean and the
/// range [0, r_max] are fixed by the model; the family is a modelling
/// choice. BernoulliScaled takes values in {0, r_max} and maximizes the
/// variance for a given mean; UniformInterval is uniform on a symmetric
/// interval around the mean (width shrunk near the boundaries so the
/// mean is preserved), and degenerates to a point mass at width 0.
struct RewardDist {
    enum class Kind { BernoulliScaled, UniformInterval };
    Kind kind = Kind::BernoulliScaled;
    double width = 0.0; // half-width, UniformInterval only

    static RewardDist bernoulli() { return {Kind::BernoulliScaled, 0.0}; }
    static RewardDist uniform(double width) { return {Kind::UniformInterval, width}; }
    static RewardDist deterministic() { return uniform(0.0); }

    bool operator==(const RewardDist&) const = default;
};

/// One time step's true MDP: mean rewards and a transition kernel over S
/// states and A actions (A uniform across states). Immutable by
/// convention once built; all solvers treat it as read-only.
struct MdpSnapshot {
    int S = 0;
    int A = 0;
    double r_max = 1.0;
    RewardDist reward_dist;
    std::vector<double> r_mean; // S*A, row-major (s,a)
    std::vector<double> P;      // S*A*S, index ((s*A + a)*S + s2)

    static MdpSnapshot zeros(int S, int A, double r_max);

    double r(int s, int a) const { return r_mean[static_cast<size_t>(s) * A + a]; }
    double& r(int s, int a) { return r_mean[static_cast<size_t>(s) * A + a]; }
    double p(int s, int a, int s2) const {
        return P[(static_cast<size_t>(s) * A + a) * S + s2];
    }
    double& p(int s, int a, int s2) { return P[(static_cast<size_t>(s) * A + a) * S + s2]; }

    const double* row(int s, int a) const { return &P[(static_cast<size_t>(s) * A + a) * S]; }

    /// Number of reachable next states of (s,a): |{s' : p(s'|s,a) > 0}|.
    int support_count(int s, int a) const;
    /// Max of support_count over all (s,a).
    int max_support() const;
};

/// A stationary decision rule. Deterministic policies store one action
/// per state; randomized policies store a full S*A probability table.
struct StationaryPolicy {
    enum class Kind { Deterministic, Randomized };
    Kind kind = Kind::Deterministic;
    int S = 0;
    int A = 0;
    std::vector<int> action;  // S, Deterministic only
    std::vector<double> prob; // S*A, Randomized only

    static StationaryPolicy deterministic(std::vector<int> actions, int A);
    static StationaryPolicy randomized(std::vector<double> prob, int S, int A);
    static StationaryPolicy uniform(int S, int A);

    /// Probability of playing a in s under this rule.
    double prob_of(int s, int a) const;
};

/// Gain/bias pair of a stationary policy, with the bias pinned to 0 at
/// reference_state.
struct GainBias {
    double gain = 0.0;
    std::vector<double> bias;
    int reference_state = 0;
};

struct Violation {
    std::string what;
    int s = -1;
    int a = -1;
    int s2 = -1;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
    std::string to_string() const;
};

/// Reports every invariant violation of a snapshot with its (s,a,s')
/// coordinates. Never throws; an untouched default snapshot reports its
/// shape problems the same way.
ValidationReport validate_snapshot(const MdpSnapshot& m);

/// Validates a policy against a snapshot's shape.
ValidationReport validate_policy(const StationaryPolicy& d, const MdpSnapshot& m);

/// Renormalizes transition rows whose sums are within kRowRepairTolerance
/// of 1 and throws InvariantViolation for rows further off (or any other
/// validation failure). Loaders and generators call this once; solvers
/// assume it already ran.
void normalize_rows(MdpSnapshot& m);

} // namespace nsrl

#pragma once

#include <utility>
#include <vector>

#include "nsrl/mdp.hpp"

namespace nsrl {

/// A T-indexed sequence of snapshots m_1..m_T sharing (S, A, r_max) and
/// the reward family, plus the initial state. Stored as segments over a
/// snapshot pool: constant segments reference one pool entry, drift
/// segments interpolate linearly between two. Immutable after
/// construction and safe to share across threads.
class NonStationaryEnv {
public:
    struct Segment {
        long long steps = 0;
        int from = 0;          // pool index
        int to = 0;            // pool index; == from for constant segments
        double lambda0 = 0.0;  // blend weight of `to` at the segment's first step
        double lambda1 = 0.0;  // ... and at its last step
    };

    NonStationaryEnv(std::vector<MdpSnapshot> pool, std::vector<Segment> segments, int s1);

    static NonStationaryEnv stationary(MdpSnapshot m, long long T, int s1);
    /// One snapshot per step; T = sequence length.
    static NonStationaryEnv from_sequence(std::vector<MdpSnapshot> per_step, int s1);

    long long horizon() const { return T_; }
    int initial_state() const { return s1_; }
    int state_count() const { return pool_.front().S; }
    int action_count() const { return pool_.front().A; }
    double r_max() const { return pool_.front().r_max; }

    /// Snapshot at step t, t in [1, T].
    MdpSnapshot snapshot_at(long long t) const;

    /// Non-null fast path when the snapshot at t is a pool entry verbatim
    /// (constant segments and drift endpoints).
    const MdpSnapshot* pooled_at(long long t) const;

    const std::vector<MdpSnapshot>& pool() const { return pool_; }
    const std::vector<Segment>& segments() const { return segments_; }

private:
    std::pair<const Segment*, long long> locate(long long t) const; // (segment, offset from its start)

    std::vector<MdpSnapshot> pool_;
    std::vector<Segment> segments_;
    std::vector<long long> segment_start_; // first step index of each segment (1-based)
    long long T_ = 0;
    int s1_ = 0;
};

/// Convex combination (1-w)*a + w*b of rewards, transitions and the
/// uniform width; preserves row-stochasticity and the reward range.
MdpSnapshot blend_snapshots(const MdpSnapshot& a, const MdpSnapshot& b, double w);

/// Realized variation budgets of the trace:
///   V_r = sum_t max_{s,a} |r_{t+1}(s,a) - r_t(s,a)|
///   V_p = sum_t max_{s,a} ||p_{t+1}(.|s,a) - p_t(.|s,a)||_1
std::pair<double, double> variation_budgets(const NonStationaryEnv& env);

} // namespace nsrl

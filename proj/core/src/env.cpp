#include "nsrl/env.hpp"

#include <algorithm>
#include <cmath>

#include "nsrl/errors.hpp"

namespace nsrl {

NonStationaryEnv::NonStationaryEnv(std::vector<MdpSnapshot> pool, std::vector<Segment> segments,
                                   int s1)
    : pool_(std::move(pool)), segments_(std::move(segments)), s1_(s1) {
    if (pool_.empty()) throw InvariantViolation("env needs at least one snapshot");
    const auto& first = pool_.front();
    for (const auto& m : pool_) {
        if (m.S != first.S || m.A != first.A)
            throw InvariantViolation("all snapshots of an env must share (S, A)");
        if (m.r_max != first.r_max)
            throw InvariantViolation("all snapshots of an env must share r_max");
        if (m.reward_dist.kind != first.reward_dist.kind)
            throw InvariantViolation("all snapshots of an env must share the reward family");
        auto rep = validate_snapshot(m);
        if (!rep.ok()) throw InvariantViolation("invalid snapshot in env: " + rep.to_string());
    }
    if (s1_ < 0 || s1_ >= first.S) throw InvariantViolation("initial state out of range");
    if (segments_.empty()) throw InvariantViolation("env needs at least one segment");

    segment_start_.reserve(segments_.size());
    for (const auto& seg : segments_) {
        if (seg.steps <= 0) throw InvariantViolation("segment length must be positive");
        if (seg.from < 0 || seg.from >= static_cast<int>(pool_.size()) || seg.to < 0 ||
            seg.to >= static_cast<int>(pool_.size()))
            throw InvariantViolation("segment references a snapshot outside the pool");
        segment_start_.push_back(T_ + 1);
        T_ += seg.steps;
    }
}

NonStationaryEnv NonStationaryEnv::stationary(MdpSnapshot m, long long T, int s1) {
    std::vector<MdpSnapshot> pool;
    pool.push_back(std::move(m));
    return NonStationaryEnv(std::move(pool), {Segment{T, 0, 0, 0.0, 0.0}}, s1);
}

NonStationaryEnv NonStationaryEnv::from_sequence(std::vector<MdpSnapshot> per_step, int s1) {
    std::vector<Segment> segments;
    segments.reserve(per_step.size());
    for (int i = 0; i < static_cast<int>(per_step.size()); ++i)
        segments.push_back(Segment{1, i, i, 0.0, 0.0});
    return NonStationaryEnv(std::move(per_step), std::move(segments), s1);
}

std::pair<const NonStationaryEnv::Segment*, long long> NonStationaryEnv::locate(
    long long t) const {
    if (t < 1 || t > T_) throw InvariantViolation("step index outside [1, T]");
    auto it = std::upper_bound(segment_start_.begin(), segment_start_.end(), t);
    const size_t idx = static_cast<size_t>(it - segment_start_.begin()) - 1;
    return {&segments_[idx], t - segment_start_[idx]};
}

MdpSnapshot NonStationaryEnv::snapshot_at(long long t) const {
    auto [seg, offset] = locate(t);
    if (const MdpSnapshot* m = pooled_at(t)) return *m;
    const double frac = seg->steps > 1 ? static_cast<double>(offset) / (seg->steps - 1) : 0.0;
    const double w = seg->lambda0 + (seg->lambda1 - seg->lambda0) * frac;
    return blend_snapshots(pool_[seg->from], pool_[seg->to], w);
}

const MdpSnapshot* NonStationaryEnv::pooled_at(long long t) const {
    auto [seg, offset] = locate(t);
    if (seg->from == seg->to) return &pool_[seg->from];
    const double frac = seg->steps > 1 ? static_cast<double>(offset) / (seg->steps - 1) : 0.0;
    const double w = seg->lambda0 + (seg->lambda1 - seg->lambda0) * frac;
    if (w == 0.0) return &pool_[seg->from];
    if (w == 1.0) return &pool_[seg->to];
    return nullptr;
}

MdpSnapshot blend_snapshots(const MdpSnapshot& a, const MdpSnapshot& b, double w) {
    MdpSnapshot out = a;
    out.reward_dist.width = (1.0 - w) * a.reward_dist.width + w * b.reward_dist.width;
    for (size_t i = 0; i < out.r_mean.size(); ++i)
        out.r_mean[i] = (1.0 - w) * a.r_mean[i] + w * b.r_mean[i];
    for (size_t i = 0; i < out.P.size(); ++i) out.P[i] = (1.0 - w) * a.P[i] + w * b.P[i];
    return out;
}

std::pair<double, double> variation_budgets(const NonStationaryEnv& env) {
    double v_r = 0.0, v_p = 0.0;
    const long long T = env.horizon();
    if (T < 2) return {0.0, 0.0};

    MdpSnapshot prev = env.snapshot_at(1);
    MdpSnapshot cur;
    for (long long t = 2; t <= T; ++t) {
        cur = env.snapshot_at(t);
        double dr = 0.0, dp = 0.0;
        for (int s = 0; s < cur.S; ++s) {
            for (int a = 0; a < cur.A; ++a) {
                dr = std::max(dr, std::abs(cur.r(s, a) - prev.r(s, a)));
                double l1 = 0.0;
                for (int s2 = 0; s2 < cur.S; ++s2)
                    l1 += std::abs(cur.p(s, a, s2) - prev.p(s, a, s2));
                dp = std::max(dp, l1);
            }
        }
        v_r += dr;
        v_p += dp;
        prev = std::move(cur);
    }
    return {v_r, v_p};
}

} // namespace nsrl

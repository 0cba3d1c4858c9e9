#pragma once

#include <cstdint>
#include <vector>

#include "nsrl/mdp.hpp"

namespace nsrl {

/// Per-(s,a[,s']) sufficient statistics of an agent: visit counts,
/// empirical transition frequencies, empirical mean rewards, reward
/// sums of squares and the reward population variance. Observations
/// accumulate into in-episode buffers; fold_episode() merges them into
/// the frozen statistics via the recursive variance update
///   sigma2' = N/(N+nu) (sigma2 + rhat^2) + sq_episode/(N+nu) - rhat'^2,
/// so whole-history recomputation is never needed. Single-writer: one
/// agent owns one instance.
class SufficientStats {
public:
    SufficientStats(int S, int A);

    /// Records one step (s, a, r, s') into the in-episode buffers.
    void record(int s, int a, double reward, int next_state);

    /// Merges the in-episode buffers into (N, p_hat, r_hat, sigma2_r)
    /// and clears them. No-op for pairs without in-episode visits.
    void fold_episode();

    /// Wipes everything (phase restart).
    void reset();

    int state_count() const { return S_; }
    int action_count() const { return A_; }

    long long visits(int s, int a) const { return N_[idx(s, a)]; }
    long long visits_plus(int s, int a) const { return std::max<long long>(1, N_[idx(s, a)]); }
    long long episode_visits(int s, int a) const { return nu_[idx(s, a)]; }
    long long total_visits() const { return total_visits_; }          // folded only
    long long total_steps() const { return total_steps_; }            // folded + live

    /// Empirical transition frequency; all-zero row while N(s,a) = 0.
    double p_hat(int s, int a, int s2) const;
    double r_hat(int s, int a) const { return r_hat_[idx(s, a)]; }
    double sigma2_r(int s, int a) const { return sigma2_r_[idx(s, a)]; }
    /// Cumulative sum of squared rewards at (s,a) over folded episodes.
    double sq_sum(int s, int a) const { return sq_sum_[idx(s, a)]; }

    /// Nonzero entries of the empirical transition row.
    int empirical_support(int s, int a) const;

private:
    size_t idx(int s, int a) const { return static_cast<size_t>(s) * A_ + a; }
    size_t idx(int s, int a, int s2) const { return idx(s, a) * S_ + s2; }

    int S_ = 0;
    int A_ = 0;
    std::vector<long long> N_;          // folded visit counts
    std::vector<long long> trans_;      // folded transition counts, S*A*S
    std::vector<double> r_hat_;
    std::vector<double> sigma2_r_;
    std::vector<double> sq_sum_;
    long long total_visits_ = 0;
    long long total_steps_ = 0;

    std::vector<long long> nu_;         // in-episode visit counts
    std::vector<long long> ep_trans_;   // in-episode transition counts
    std::vector<double> ep_reward_;     // in-episode reward sums
    std::vector<double> ep_sq_;         // in-episode reward square sums
};

} // namespace nsrl

#include "nsrl/stats.hpp"

#include <algorithm>

#include "nsrl/errors.hpp"

namespace nsrl {

SufficientStats::SufficientStats(int S, int A) : S_(S), A_(A) {
    if (S < 1 || A < 1) throw InvariantViolation("stats need S >= 1 and A >= 1");
    const size_t sa = static_cast<size_t>(S) * A;
    N_.assign(sa, 0);
    trans_.assign(sa * S, 0);
    r_hat_.assign(sa, 0.0);
    sigma2_r_.assign(sa, 0.0);
    sq_sum_.assign(sa, 0.0);
    nu_.assign(sa, 0);
    ep_trans_.assign(sa * S, 0);
    ep_reward_.assign(sa, 0.0);
    ep_sq_.assign(sa, 0.0);
}

void SufficientStats::record(int s, int a, double reward, int next_state) {
    if (s < 0 || s >= S_ || a < 0 || a >= A_ || next_state < 0 || next_state >= S_)
        throw InvariantViolation("stats record out of range");
    nu_[idx(s, a)] += 1;
    ep_trans_[idx(s, a, next_state)] += 1;
    ep_reward_[idx(s, a)] += reward;
    ep_sq_[idx(s, a)] += reward * reward;
    total_steps_ += 1;
}

void SufficientStats::fold_episode() {
    for (int s = 0; s < S_; ++s) {
        for (int a = 0; a < A_; ++a) {
            const size_t i = idx(s, a);
            const long long nu = nu_[i];
            if (nu == 0) continue;
            const long long n_old = N_[i];
            const long long n_new = n_old + nu;
            const double r_old = r_hat_[i];
            const double r_new = (n_old * r_old + ep_reward_[i]) / n_new;
            // Recursive population-variance update over episode blocks.
            double s2 = (static_cast<double>(n_old) / n_new) * (sigma2_r_[i] + r_old * r_old) +
                        ep_sq_[i] / n_new - r_new * r_new;
            sigma2_r_[i] = std::max(0.0, s2);
            r_hat_[i] = r_new;
            sq_sum_[i] += ep_sq_[i];
            N_[i] = n_new;
            total_visits_ += nu;
            for (int s2i = 0; s2i < S_; ++s2i) {
                trans_[idx(s, a, s2i)] += ep_trans_[idx(s, a, s2i)];
                ep_trans_[idx(s, a, s2i)] = 0;
            }
            nu_[i] = 0;
            ep_reward_[i] = 0.0;
            ep_sq_[i] = 0.0;
        }
    }
}

void SufficientStats::reset() {
    std::fill(N_.begin(), N_.end(), 0);
    std::fill(trans_.begin(), trans_.end(), 0);
    std::fill(r_hat_.begin(), r_hat_.end(), 0.0);
    std::fill(sigma2_r_.begin(), sigma2_r_.end(), 0.0);
    std::fill(sq_sum_.begin(), sq_sum_.end(), 0.0);
    std::fill(nu_.begin(), nu_.end(), 0);
    std::fill(ep_trans_.begin(), ep_trans_.end(), 0);
    std::fill(ep_reward_.begin(), ep_reward_.end(), 0.0);
    std::fill(ep_sq_.begin(), ep_sq_.end(), 0.0);
    total_visits_ = 0;
    total_steps_ = 0;
}

double SufficientStats::p_hat(int s, int a, int s2) const {
    const long long n = N_[idx(s, a)];
    if (n == 0) return 0.0;
    return static_cast<double>(trans_[idx(s, a, s2)]) / static_cast<double>(n);
}

int SufficientStats::empirical_support(int s, int a) const {
    int count = 0;
    for (int s2 = 0; s2 < S_; ++s2)
        if (trans_[idx(s, a, s2)] > 0) ++count;
    return count;
}

} // namespace nsrl

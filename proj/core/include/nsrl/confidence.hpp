#pragma once

#include <string>
#include <vector>

#include "nsrl/mdp.hpp"
#include "nsrl/stats.hpp"

namespace nsrl {

enum class RadiusKind { Bernstein, Hoeffding };

/// Per-(s,a,s') transition boxes and per-(s,a) reward intervals around
/// the empirical estimates: radius + variation inflation, clipped to
/// [0,1] and [0, r_max]. Clipping the lower transition bound at 0
/// guarantees sum p_lo <= 1 <= sum p_hi whenever the empirical row sums
/// to at most 1, so the boxes are always jointly feasible.
struct ConfidenceModel {
    int S = 0;
    int A = 0;
    double delta = 0.0;
    double v_hat_r = 0.0;
    double v_hat_p = 0.0;
    double r_max = 1.0;
    std::vector<double> beta_p; // S*A*S
    std::vector<double> beta_r; // S*A
    std::vector<double> p_lo, p_hi; // S*A*S
    std::vector<double> r_lo, r_hi; // S*A

    size_t idx(int s, int a) const { return static_cast<size_t>(s) * A + a; }
    size_t idx(int s, int a, int s2) const { return idx(s, a) * S + s2; }
    const double* p_lo_row(int s, int a) const { return &p_lo[idx(s, a, 0)]; }
    const double* p_hi_row(int s, int a) const { return &p_hi[idx(s, a, 0)]; }
};

/// Builds the confidence model from sufficient statistics.
///
/// Bernstein radii (with L = ln(6 S A N+ / delta)):
///   beta_p(s,a,s') = 2 sqrt(p_hat (1 - p_hat) L / N+) + 6 L / N+
///   beta_r(s,a)    = 2 sqrt(sigma2_r L / N+) + 6 r_max L / N+
/// Hoeffding radii (baseline):
///   beta_p(s,a,s') = sqrt(L / (2 N+)),  beta_r = r_max sqrt(L / (2 N+))
ConfidenceModel build_confidence(const SufficientStats& stats, double delta, double v_hat_r,
                                 double v_hat_p, double r_max,
                                 RadiusKind kind = RadiusKind::Bernstein);

/// Degenerate model whose boxes contain exactly the given snapshot.
/// Extended value iteration on it reduces to exact planning.
ConfidenceModel singleton_confidence(const MdpSnapshot& m);

/// True iff every mean reward and transition probability of m lies
/// inside the model's boxes (the coverage event).
bool covers(const ConfidenceModel& conf, const MdpSnapshot& m);

/// JSON debug dump / reload, for test fixtures.
std::string confidence_to_json(const ConfidenceModel& conf, int indent = 2);
ConfidenceModel confidence_from_json(const std::string& text);

} // namespace nsrl

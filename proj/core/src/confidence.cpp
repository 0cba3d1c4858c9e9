#include "nsrl/confidence.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "nsrl/errors.hpp"

namespace nsrl {

using nlohmann::json;

ConfidenceModel build_confidence(const SufficientStats& stats, double delta, double v_hat_r,
                                 double v_hat_p, double r_max, RadiusKind kind) {
    if (!(delta > 0.0) || delta >= 1.0) throw InvariantViolation("delta must lie in (0, 1)");
    if (v_hat_r < 0.0 || v_hat_p < 0.0)
        throw InvariantViolation("variation estimates must be >= 0");

    const int S = stats.state_count();
    const int A = stats.action_count();
    ConfidenceModel c;
    c.S = S;
    c.A = A;
    c.delta = delta;
    c.v_hat_r = v_hat_r;
    c.v_hat_p = v_hat_p;
    c.r_max = r_max;
    const size_t sa = static_cast<size_t>(S) * A;
    c.beta_p.assign(sa * S, 0.0);
    c.p_lo.assign(sa * S, 0.0);
    c.p_hi.assign(sa * S, 0.0);
    c.beta_r.assign(sa, 0.0);
    c.r_lo.assign(sa, 0.0);
    c.r_hi.assign(sa, 0.0);

    for (int s = 0; s < S; ++s) {
        for (int a = 0; a < A; ++a) {
            const double n_plus = static_cast<double>(stats.visits_plus(s, a));
            const double log_term = std::log(6.0 * S * A * n_plus / delta);

            double br;
            if (kind == RadiusKind::Bernstein) {
                br = 2.0 * std::sqrt(stats.sigma2_r(s, a) * log_term / n_plus) +
                     6.0 * r_max * log_term / n_plus;
            } else {
                br = r_max * std::sqrt(log_term / (2.0 * n_plus));
            }
            c.beta_r[c.idx(s, a)] = br;
            const double rh = stats.r_hat(s, a);
            c.r_lo[c.idx(s, a)] = std::max(0.0, rh - br - v_hat_r);
            c.r_hi[c.idx(s, a)] = std::min(r_max, rh + br + v_hat_r);

            for (int s2 = 0; s2 < S; ++s2) {
                const double ph = stats.p_hat(s, a, s2);
                double bp;
                if (kind == RadiusKind::Bernstein) {
                    const double var = ph * (1.0 - ph);
                    bp = 2.0 * std::sqrt(var * log_term / n_plus) + 6.0 * log_term / n_plus;
                } else {
                    bp = std::sqrt(log_term / (2.0 * n_plus));
                }
                c.beta_p[c.idx(s, a, s2)] = bp;
                c.p_lo[c.idx(s, a, s2)] = std::max(0.0, ph - bp - v_hat_p);
                c.p_hi[c.idx(s, a, s2)] = std::min(1.0, ph + bp + v_hat_p);
            }
        }
    }
    return c;
}

ConfidenceModel singleton_confidence(const MdpSnapshot& m) {
    ConfidenceModel c;
    c.S = m.S;
    c.A = m.A;
    c.delta = 0.5; // unused; boxes are exact
    c.r_max = m.r_max;
    const size_t sa = static_cast<size_t>(m.S) * m.A;
    c.beta_p.assign(sa * m.S, 0.0);
    c.beta_r.assign(sa, 0.0);
    c.p_lo = m.P;
    c.p_hi = m.P;
    c.r_lo = m.r_mean;
    c.r_hi = m.r_mean;
    return c;
}

bool covers(const ConfidenceModel& conf, const MdpSnapshot& m) {
    if (conf.S != m.S || conf.A != m.A) throw InvariantViolation("shape mismatch in covers()");
    for (int s = 0; s < m.S; ++s) {
        for (int a = 0; a < m.A; ++a) {
            const double r = m.r(s, a);
            if (r < conf.r_lo[conf.idx(s, a)] - kProbTolerance ||
                r > conf.r_hi[conf.idx(s, a)] + kProbTolerance)
                return false;
            for (int s2 = 0; s2 < m.S; ++s2) {
                const double p = m.p(s, a, s2);
                if (p < conf.p_lo[conf.idx(s, a, s2)] - kProbTolerance ||
                    p > conf.p_hi[conf.idx(s, a, s2)] + kProbTolerance)
                    return false;
            }
        }
    }
    return true;
}

std::string confidence_to_json(const ConfidenceModel& c, int indent) {
    json j;
    j["S"] = c.S;
    j["A"] = c.A;
    j["delta"] = c.delta;
    j["v_hat_r"] = c.v_hat_r;
    j["v_hat_p"] = c.v_hat_p;
    j["r_max"] = c.r_max;
    j["beta_p"] = c.beta_p;
    j["beta_r"] = c.beta_r;
    j["p_lo"] = c.p_lo;
    j["p_hi"] = c.p_hi;
    j["r_lo"] = c.r_lo;
    j["r_hi"] = c.r_hi;
    return j.dump(indent);
}

ConfidenceModel confidence_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("confidence JSON parse error: ") + e.what());
    }
    ConfidenceModel c;
    try {
        c.S = j.at("S").get<int>();
        c.A = j.at("A").get<int>();
        c.delta = j.at("delta").get<double>();
        c.v_hat_r = j.at("v_hat_r").get<double>();
        c.v_hat_p = j.at("v_hat_p").get<double>();
        c.r_max = j.at("r_max").get<double>();
        c.beta_p = j.at("beta_p").get<std::vector<double>>();
        c.beta_r = j.at("beta_r").get<std::vector<double>>();
        c.p_lo = j.at("p_lo").get<std::vector<double>>();
        c.p_hi = j.at("p_hi").get<std::vector<double>>();
        c.r_lo = j.at("r_lo").get<std::vector<double>>();
        c.r_hi = j.at("r_hi").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw Error(std::string("confidence JSON schema error: ") + e.what());
    }
    const size_t sa = static_cast<size_t>(c.S) * c.A;
    if (c.beta_r.size() != sa || c.r_lo.size() != sa || c.r_hi.size() != sa ||
        c.beta_p.size() != sa * c.S || c.p_lo.size() != sa * c.S || c.p_hi.size() != sa * c.S)
        throw Error("confidence arrays do not match the declared (S, A)");
    return c;
}

} // namespace nsrl

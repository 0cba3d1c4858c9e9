#include "nsrl/mdp.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "nsrl/errors.hpp"

namespace nsrl {

MdpSnapshot MdpSnapshot::zeros(int S, int A, double r_max) {
    MdpSnapshot m;
    m.S = S;
    m.A = A;
    m.r_max = r_max;
    m.r_mean.assign(static_cast<size_t>(S) * A, 0.0);
    m.P.assign(static_cast<size_t>(S) * A * S, 0.0);
    return m;
}

int MdpSnapshot::support_count(int s, int a) const {
    const double* row = this->row(s, a);
    int count = 0;
    for (int s2 = 0; s2 < S; ++s2)
        if (row[s2] > 0.0) ++count;
    return count;
}

int MdpSnapshot::max_support() const {
    int best = 0;
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) best = std::max(best, support_count(s, a));
    return best;
}

StationaryPolicy StationaryPolicy::deterministic(std::vector<int> actions, int A) {
    StationaryPolicy d;
    d.kind = Kind::Deterministic;
    d.S = static_cast<int>(actions.size());
    d.A = A;
    d.action = std::move(actions);
    return d;
}

StationaryPolicy StationaryPolicy::randomized(std::vector<double> prob, int S, int A) {
    StationaryPolicy d;
    d.kind = Kind::Randomized;
    d.S = S;
    d.A = A;
    d.prob = std::move(prob);
    return d;
}

StationaryPolicy StationaryPolicy::uniform(int S, int A) {
    return randomized(std::vector<double>(static_cast<size_t>(S) * A, 1.0 / A), S, A);
}

double StationaryPolicy::prob_of(int s, int a) const {
    if (kind == Kind::Deterministic) return action[s] == a ? 1.0 : 0.0;
    return prob[static_cast<size_t>(s) * A + a];
}

std::string ValidationReport::to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& v : violations) {
        os << v.what;
        if (v.s >= 0) {
            os << " at (s=" << v.s;
            if (v.a >= 0) os << ", a=" << v.a;
            if (v.s2 >= 0) os << ", s'=" << v.s2;
            os << ")";
        }
        os << "\n";
    }
    return os.str();
}

ValidationReport validate_snapshot(const MdpSnapshot& m) {
    ValidationReport rep;
    auto add = [&rep](std::string what, int s = -1, int a = -1, int s2 = -1) {
        rep.violations.push_back({std::move(what), s, a, s2});
    };

    if (m.S < 1) add("state count must be >= 1");
    if (m.A < 1) add("action count must be >= 1");
    if (!(m.r_max > 0.0)) add("r_max must be positive");
    if (m.S < 1 || m.A < 1) return rep;

    const size_t sa = static_cast<size_t>(m.S) * m.A;
    if (m.r_mean.size() != sa) {
        add("r_mean has wrong shape");
        return rep;
    }
    if (m.P.size() != sa * m.S) {
        add("P has wrong shape");
        return rep;
    }
    if (m.reward_dist.kind == RewardDist::Kind::UniformInterval && m.reward_dist.width < 0.0)
        add("uniform-interval width must be >= 0");

    for (int s = 0; s < m.S; ++s) {
        for (int a = 0; a < m.A; ++a) {
            const double r = m.r(s, a);
            if (!(r >= 0.0) || r > m.r_max) add("mean reward outside [0, r_max]", s, a);
            double sum = 0.0;
            for (int s2 = 0; s2 < m.S; ++s2) {
                const double p = m.p(s, a, s2);
                if (!(p >= 0.0) || p > 1.0) add("transition probability outside [0, 1]", s, a, s2);
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbTolerance) add("transition row does not sum to 1", s, a);
        }
    }
    return rep;
}

ValidationReport validate_policy(const StationaryPolicy& d, const MdpSnapshot& m) {
    ValidationReport rep;
    auto add = [&rep](std::string what, int s = -1, int a = -1) {
        rep.violations.push_back({std::move(what), s, a, -1});
    };
    if (d.S != m.S || d.A != m.A) {
        add("policy shape does not match snapshot");
        return rep;
    }
    if (d.kind == StationaryPolicy::Kind::Deterministic) {
        for (int s = 0; s < d.S; ++s)
            if (d.action[s] < 0 || d.action[s] >= d.A) add("action index out of range", s);
    } else {
        for (int s = 0; s < d.S; ++s) {
            double sum = 0.0;
            for (int a = 0; a < d.A; ++a) {
                const double p = d.prob_of(s, a);
                if (!(p >= 0.0) || p > 1.0) add("action probability outside [0, 1]", s, a);
                sum += p;
            }
            if (std::abs(sum - 1.0) > kProbTolerance) add("policy row does not sum to 1", s);
        }
    }
    return rep;
}

void normalize_rows(MdpSnapshot& m) {
    if (m.S < 1 || m.A < 1 || m.P.size() != static_cast<size_t>(m.S) * m.A * m.S)
        throw InvariantViolation("snapshot has invalid shape");
    for (int s = 0; s < m.S; ++s) {
        for (int a = 0; a < m.A; ++a) {
            double sum = 0.0;
            for (int s2 = 0; s2 < m.S; ++s2) sum += m.p(s, a, s2);
            if (std::abs(sum - 1.0) > kRowRepairTolerance) {
                ValidationReport rep;
                rep.violations.push_back({"transition row does not sum to 1", s, a, -1});
                throw InvariantViolation(rep.to_string());
            }
            for (int s2 = 0; s2 < m.S; ++s2) m.p(s, a, s2) /= sum;
        }
    }
    auto rep = validate_snapshot(m);
    if (!rep.ok()) throw InvariantViolation(rep.to_string());
}

} // namespace nsrl

#include "nsrl/sample.hpp"

#include <algorithm>

#include "nsrl/errors.hpp"

namespace nsrl {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose) {
    std::uint64_t h = 0xcbf29ce484222325ULL; // FNV-1a
    for (char c : purpose) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return splitmix64(master ^ splitmix64(h));
}

StepSample sample_step(const MdpSnapshot& m, int s, int a, RngStream& rng) {
    if (s < 0 || s >= m.S || a < 0 || a >= m.A)
        throw InvariantViolation("sample_step: state or action out of range");

    StepSample out;

    // Next state by inverse CDF over the row.
    const double u = rng.uniform01();
    const double* row = m.row(s, a);
    double cum = 0.0;
    out.next_state = m.S - 1; // fallback absorbs float residue in the last entry
    for (int s2 = 0; s2 < m.S; ++s2) {
        cum += row[s2];
        if (u < cum) {
            out.next_state = s2;
            break;
        }
    }

    const double mean = m.r(s, a);
    const double v = rng.uniform01();
    switch (m.reward_dist.kind) {
        case RewardDist::Kind::BernoulliScaled:
            out.reward = (v < mean / m.r_max) ? m.r_max : 0.0;
            break;
        case RewardDist::Kind::UniformInterval: {
            // Shrink the half-width near the boundaries so the mean is kept
            // exact and the support stays inside [0, r_max].
            const double w = std::min({m.reward_dist.width, mean, m.r_max - mean});
            out.reward = mean + w * (2.0 * v - 1.0);
            break;
        }
    }
    return out;
}

} // namespace nsrl

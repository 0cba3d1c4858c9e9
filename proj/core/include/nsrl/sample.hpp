#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "nsrl/mdp.hpp"

namespace nsrl {

/// Derives an independent substream seed from a master seed and a
/// purpose label (splitmix64 over an FNV-1a hash of the label). Keeps
/// env sampling and agent internals on separate streams so that agents
/// consuming different draw counts cannot contaminate each other.
std::uint64_t derive_seed(std::uint64_t master, std::string_view purpose);

/// Explicit rng state handed through every sampling call. Deterministic:
/// equal seeds give equal draw sequences.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : gen_(seed) {}

    /// Uniform draw in [0, 1).
    double uniform01() {
        return std::generate_canonical<double, 53>(gen_);
    }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_);
    }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

struct StepSample {
    double reward = 0.0;
    int next_state = 0;
};

/// Draws (reward, next state) for playing a in s on snapshot m. The next
/// state follows p(.|s,a) by inverse CDF; the reward follows the
/// snapshot's reward family with the declared mean and support inside
/// [0, r_max]. Exactly two uniform draws are consumed per call.
StepSample sample_step(const MdpSnapshot& m, int s, int a, RngStream& rng);

} // namespace nsrl

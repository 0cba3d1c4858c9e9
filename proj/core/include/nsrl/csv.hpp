#pragma once

#include <string>
#include <vector>

#include "nsrl/run.hpp"
#include "nsrl/sweep.hpp"

namespace nsrl {

// CSV schemas:
//   steps    t,s,a,r,episode,phase
//   summary  algorithm,T,seed,regret,episodes,phases,runtime_ms
//   sweep    algorithm,T,mean_regret,std_regret,n_seeds
//   slope    algorithm,slope,residual
// Doubles are printed with max_digits10 so a parse round-trips exactly.

std::string steps_csv(const RunRecord& rec);
std::string summary_csv(const std::vector<RunRecord>& runs);
std::string sweep_csv(const SweepSummary& summary);
std::string slope_csv(const SweepSummary& summary);
std::string diagnostics_csv(const RunRecord& rec);

std::vector<StepRow> parse_steps_csv(const std::string& text);

struct SummaryRow {
    std::string algorithm;
    long long T = 0;
    std::uint64_t seed = 0;
    double regret = 0.0;
    long long episodes = 0;
    long long phases = 0;
    double runtime_ms = 0.0;
};
std::vector<SummaryRow> parse_summary_csv(const std::string& text);

} // namespace nsrl

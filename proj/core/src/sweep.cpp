#include "nsrl/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "nsrl/errors.hpp"

namespace nsrl {

SlopeFit fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw InvariantViolation("slope fit needs >= 2 matching points");
    const size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw InvariantViolation("slope fit needs positive values");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw InvariantViolation("slope fit needs distinct x values");
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double e = ly[i] - (intercept + fit.slope * lx[i]);
        ss += e * e;
    }
    fit.residual = std::sqrt(ss / n);
    return fit;
}

int effective_parallelism(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* cap = std::getenv("NONSTAT_RL_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) n = std::min(n, c);
    }
    return n;
}

SweepSummary sweep(const GeneratorSpec& env_spec, const std::vector<AgentConfig>& agents,
                   const std::vector<long long>& T_grid, const std::vector<std::uint64_t>& seeds,
                   int parallelism, const RunOptions& opts) {
    if (agents.empty() || T_grid.empty() || seeds.empty())
        throw InvariantViolation("sweep needs a nonempty (agents, T_grid, seeds) grid");
    if (seeds.size() < 2) throw InvariantViolation("sweep needs at least 2 seeds");

    struct Task {
        size_t agent = 0;
        size_t t_index = 0;
        size_t seed_index = 0;
    };
    std::vector<Task> tasks;
    for (size_t ai = 0; ai < agents.size(); ++ai)
        for (size_t ti = 0; ti < T_grid.size(); ++ti)
            for (size_t si = 0; si < seeds.size(); ++si) tasks.push_back({ai, ti, si});

    // Environments are generated once per grid T and shared read-only.
    std::vector<NonStationaryEnv> envs;
    envs.reserve(T_grid.size());
    for (long long T : T_grid) envs.push_back(generate(env_spec, T));

    std::vector<RunRecord> results(tasks.size());
    std::vector<std::string> errors(tasks.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            const size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            AgentConfig cfg = agents[task.agent];
            cfg.S = envs[task.t_index].state_count();
            cfg.A = envs[task.t_index].action_count();
            cfg.r_max = envs[task.t_index].r_max();
            try {
                results[i] =
                    run_episode_loop(envs[task.t_index], cfg, seeds[task.seed_index], -1, opts);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    const int workers = std::min<int>(effective_parallelism(parallelism),
                                      static_cast<int>(tasks.size()));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (size_t i = 0; i < tasks.size(); ++i)
        if (!errors[i].empty()) throw Error("sweep run failed: " + errors[i]);

    SweepSummary summary;
    summary.runs.reserve(tasks.size());
    for (size_t ai = 0; ai < agents.size(); ++ai) {
        for (size_t ti = 0; ti < T_grid.size(); ++ti) {
            SweepCell cell;
            cell.algorithm = agents[ai].name;
            cell.T = T_grid[ti];
            for (size_t si = 0; si < seeds.size(); ++si) {
                const size_t i = (ai * T_grid.size() + ti) * seeds.size() + si;
                RunRecord rec = std::move(results[i]);
                rec.steps.clear();
                rec.steps.shrink_to_fit();
                cell.per_seed.push_back(rec.regret);
                summary.runs.push_back(std::move(rec));
            }
            cell.n_seeds = static_cast<int>(cell.per_seed.size());
            double sum = 0.0;
            for (double r : cell.per_seed) sum += r;
            cell.mean_regret = sum / cell.n_seeds;
            double ss = 0.0;
            for (double r : cell.per_seed) ss += (r - cell.mean_regret) * (r - cell.mean_regret);
            cell.std_regret = std::sqrt(ss / (cell.n_seeds - 1));
            summary.cells.push_back(std::move(cell));
        }
    }

    for (const auto& agent : agents) {
        std::vector<double> xs, ys;
        for (const auto& cell : summary.cells) {
            if (cell.algorithm != agent.name) continue;
            if (cell.mean_regret > 0.0) {
                xs.push_back(static_cast<double>(cell.T));
                ys.push_back(cell.mean_regret);
            }
        }
        if (xs.size() >= 4)
            summary.slopes[agent.name] = fit_loglog_slope(xs, ys);
        else
            summary.slopes[agent.name] = std::nullopt;
    }
    return summary;
}

} // namespace nsrl

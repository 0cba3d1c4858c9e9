// nsrl command line: drive experiments from config files and run the
// exact solvers on snapshot files.
//
//   nsrl run      --config exp.json [--seed N]   detailed runs, step CSVs
//   nsrl sweep    --config exp.json [--seed N]   parallel grid + slope fit
//   nsrl validate --mdp snapshot.json            invariant report
//   nsrl oracle   --mdp snapshot.json --op gain|diameter|finite-horizon
//
// Exit codes: 0 success, 2 invariant violation, 1 any other error.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "nsrl/config.hpp"
#include "nsrl/csv.hpp"
#include "nsrl/errors.hpp"
#include "nsrl/json_io.hpp"
#include "nsrl/solve.hpp"
#include "nsrl/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvariant = 2;

std::string run_file_tag(const nsrl::RunRecord& rec) {
    return rec.algorithm + "_T" + std::to_string(rec.T) + "_seed" + std::to_string(rec.seed);
}

void prepare_agents(nsrl::ExperimentConfig& cfg, const nsrl::NonStationaryEnv& env) {
    for (auto& a : cfg.agents) {
        a.S = env.state_count();
        a.A = env.action_count();
        a.r_max = env.r_max();
    }
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed_base) {
    auto cfg = nsrl::load_config(config_path);
    if (seed_base) nsrl::override_seed_base(cfg, *seed_base);
    std::filesystem::create_directories(cfg.output_dir);

    nsrl::RunOptions opts;
    opts.record_steps = true;
    opts.record_diagnostics = cfg.verbose;

    std::vector<nsrl::RunRecord> runs;
    bool violated = false;
    for (long long T : cfg.T_grid) {
        auto env = nsrl::generate(cfg.env, T);
        prepare_agents(cfg, env);
        for (const auto& agent : cfg.agents) {
            for (auto seed : cfg.seeds) {
                auto rec = nsrl::run_episode_loop(env, agent, seed, -1, opts);
                const auto tag = run_file_tag(rec);
                nsrl::write_text_file(cfg.output_dir + "/steps_" + tag + ".csv",
                                      nsrl::steps_csv(rec));
                if (cfg.verbose)
                    nsrl::write_text_file(cfg.output_dir + "/diag_" + tag + ".csv",
                                          nsrl::diagnostics_csv(rec));
                for (const auto& v : rec.violations) {
                    std::cerr << "invariant violation [" << tag << "]: " << v << "\n";
                    violated = true;
                }
                std::cout << tag << ": regret=" << rec.regret << " episodes=" << rec.episodes
                          << " phases=" << rec.phases << "\n";
                rec.steps.clear();
                runs.push_back(std::move(rec));
            }
        }
    }
    nsrl::write_text_file(cfg.output_dir + "/summary.csv", nsrl::summary_csv(runs));
    std::cout << "wrote " << cfg.output_dir << "/summary.csv\n";
    return violated ? kExitInvariant : kExitOk;
}

int cmd_sweep(const std::string& config_path, std::optional<std::uint64_t> seed_base) {
    auto cfg = nsrl::load_config(config_path);
    if (seed_base) nsrl::override_seed_base(cfg, *seed_base);
    std::filesystem::create_directories(cfg.output_dir);

    // Shapes are resolved against the env at the first grid point.
    auto env0 = nsrl::generate(cfg.env, cfg.T_grid.front());
    prepare_agents(cfg, env0);

    auto summary = nsrl::sweep(cfg.env, cfg.agents, cfg.T_grid, cfg.seeds, cfg.parallelism);
    nsrl::write_text_file(cfg.output_dir + "/summary.csv", nsrl::summary_csv(summary.runs));
    nsrl::write_text_file(cfg.output_dir + "/sweep.csv", nsrl::sweep_csv(summary));
    nsrl::write_text_file(cfg.output_dir + "/slope.csv", nsrl::slope_csv(summary));

    bool violated = false;
    for (const auto& rec : summary.runs)
        for (const auto& v : rec.violations) {
            std::cerr << "invariant violation [" << run_file_tag(rec) << "]: " << v << "\n";
            violated = true;
        }
    for (const auto& cell : summary.cells)
        std::cout << cell.algorithm << " T=" << cell.T << " mean_regret=" << cell.mean_regret
                  << " std=" << cell.std_regret << " (n=" << cell.n_seeds << ")\n";
    for (const auto& [name, fit] : summary.slopes) {
        if (fit)
            std::cout << name << " slope=" << fit->slope << " residual=" << fit->residual << "\n";
        else
            std::cout << name << " slope=absent\n";
    }
    std::cout << "wrote " << cfg.output_dir << "/{summary,sweep,slope}.csv\n";
    return violated ? kExitInvariant : kExitOk;
}

int cmd_validate(const std::string& mdp_path) {
    // Raw load: reporting would be pointless after repair.
    auto m = nsrl::load_snapshot(mdp_path, /*repair=*/false);
    auto rep = nsrl::validate_snapshot(m);
    std::cout << rep.to_string();
    if (rep.ok()) return kExitOk;
    std::cout << rep.violations.size() << " violation(s)\n";
    return kExitInvariant;
}

int cmd_oracle(const std::string& mdp_path, const std::string& op, long long T, int s1,
               double epsilon, double alpha) {
    auto m = nsrl::load_snapshot(mdp_path);
    if (op == "gain") {
        auto res = nsrl::optimal_gain(m, epsilon * m.r_max, alpha);
        std::cout << "gain " << res.gain << "\n";
        std::cout << "policy";
        for (int a : res.policy.action) std::cout << ' ' << a;
        std::cout << "\niterations " << res.iterations << "\n";
        return kExitOk;
    }
    if (op == "diameter") {
        std::cout << "diameter " << nsrl::diameter(m) << "\n";
        return kExitOk;
    }
    if (op == "finite-horizon") {
        if (T <= 0) throw nsrl::Error("--op finite-horizon needs --T");
        if (s1 < 0 || s1 >= m.S) throw nsrl::Error("--s1 out of range");
        auto env = nsrl::NonStationaryEnv::stationary(std::move(m), T, s1);
        std::cout << "value " << nsrl::finite_horizon_value(env) << "\n";
        return kExitOk;
    }
    throw nsrl::Error("unknown oracle op: " + op);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-stationary average-reward RL laboratory"};
    app.require_subcommand(1);

    std::string config_path, mdp_path, op;
    std::optional<std::uint64_t> seed_base;
    long long T = 0;
    int s1 = 0;
    double epsilon = 1e-6;
    double alpha = 0.9;

    auto* run = app.add_subcommand("run", "run the config grid and write step CSVs");
    run->add_option("--config", config_path, "experiment config JSON")->required();
    run->add_option("--seed", seed_base, "seed base override");

    auto* sw = app.add_subcommand("sweep", "run the grid in parallel and fit regret slopes");
    sw->add_option("--config", config_path, "experiment config JSON")->required();
    sw->add_option("--seed", seed_base, "seed base override");

    auto* val = app.add_subcommand("validate", "report snapshot invariant violations");
    val->add_option("--mdp", mdp_path, "MDP snapshot JSON")->required();

    auto* orc = app.add_subcommand("oracle", "exact solvers on a snapshot");
    orc->add_option("--mdp", mdp_path, "MDP snapshot JSON")->required();
    orc->add_option("--op", op, "gain | diameter | finite-horizon")->required();
    orc->add_option("--T", T, "horizon for finite-horizon");
    orc->add_option("--s1", s1, "initial state for finite-horizon (default 0)");
    orc->add_option("--epsilon", epsilon, "gain accuracy, relative to r_max (default 1e-6)");
    orc->add_option("--alpha", alpha, "aperiodicity coefficient (default 0.9)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, seed_base);
        if (sw->parsed()) return cmd_sweep(config_path, seed_base);
        if (val->parsed()) return cmd_validate(mdp_path);
        if (orc->parsed()) return cmd_oracle(mdp_path, op, T, s1, epsilon, alpha);
    } catch (const nsrl::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}

#include "nsrl/config.hpp"

#include <filesystem>

#include <json.hpp>

#include "nsrl/errors.hpp"
#include "nsrl/json_io.hpp"

namespace nsrl {

using nlohmann::json;

namespace {

MdpSnapshot snapshot_from_spec(const json& j, const std::string& base_dir) {
    if (j.is_string()) {
        std::filesystem::path p = j.get<std::string>();
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        return load_snapshot(p.string());
    }
    if (j.is_object() && j.contains("builtin")) {
        const std::string builtin = j.at("builtin").get<std::string>();
        if (builtin == "chain") {
            const int S = j.at("S").get<int>();
            const double r_max = j.value("r_max", 1.0);
            const std::string at = j.value("reward_at", "right");
            if (at != "right" && at != "left")
                throw Error("chain reward_at must be \"right\" or \"left\"");
            return chain_testbed(S, r_max, at == "left" ? RewardEnd::Left : RewardEnd::Right);
        }
        throw Error("unknown builtin snapshot: " + builtin);
    }
    return snapshot_from_json(j.dump());
}

GeneratorSpec env_spec_from_parsed(json j, const std::string& base_dir) {
    // Trace files may use {"type": "generator", "name": ..., "params": {...}}
    // or {"type": "explicit", ...}; fold both into the flat `kind` form.
    if (j.contains("type")) {
        const std::string type = j.at("type").get<std::string>();
        if (type == "generator") {
            json params = j.value("params", json::object());
            params["kind"] = j.at("name").get<std::string>();
            if (j.contains("T")) params["T"] = j.at("T");
            if (j.contains("s1")) params["s1"] = j.at("s1");
            j = std::move(params);
        } else if (type == "explicit") {
            j["kind"] = "explicit";
        } else {
            throw Error("unknown trace type: " + type);
        }
    }

    GeneratorSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    spec.T = j.value("T", 0LL);
    spec.s1 = j.value("s1", 0);

    if (spec.kind == "stationary") {
        spec.snapshots.push_back(snapshot_from_spec(j.at("base"), base_dir));
    } else if (spec.kind == "abrupt-switch") {
        for (const auto& s : j.at("snapshots"))
            spec.snapshots.push_back(snapshot_from_spec(s, base_dir));
        if (j.contains("switch_fracs"))
            spec.switch_fracs = j.at("switch_fracs").get<std::vector<double>>();
        if (j.contains("switch_times"))
            spec.switch_times = j.at("switch_times").get<std::vector<long long>>();
        if (spec.switch_fracs.empty() && spec.switch_times.empty())
            throw Error("abrupt-switch needs switch_fracs or switch_times");
    } else if (spec.kind == "linear-drift") {
        spec.snapshots.push_back(snapshot_from_spec(j.at("from"), base_dir));
        spec.snapshots.push_back(snapshot_from_spec(j.at("to"), base_dir));
        if (j.contains("target_v_r") && !j.at("target_v_r").is_null())
            spec.target_v_r = j.at("target_v_r").get<double>();
        if (j.contains("target_v_p") && !j.at("target_v_p").is_null())
            spec.target_v_p = j.at("target_v_p").get<double>();
    } else if (spec.kind == "random-garnet-switch") {
        spec.garnet_S = j.at("S").get<int>();
        spec.garnet_A = j.at("A").get<int>();
        spec.garnet_gamma = j.at("gamma").get<int>();
        spec.garnet_r_max = j.value("r_max", 1.0);
        spec.garnet_segments = j.value("segments", 1);
        spec.seed = j.value("seed", 0ULL);
    } else if (spec.kind == "explicit") {
        for (const auto& seg : j.at("segments")) {
            spec.snapshots.push_back(snapshot_from_spec(seg.at("snapshot"), base_dir));
            spec.segment_steps.push_back(seg.at("steps").get<long long>());
        }
    } else {
        throw Error("unknown env kind: " + spec.kind);
    }
    return spec;
}

AgentConfig agent_from_json(const json& j) {
    AgentConfig cfg;
    const std::string algorithm = j.value("algorithm", "vb-ucrl");
    // Known algorithm names seed radius/restart; explicit keys override.
    try {
        cfg = baseline_config(algorithm, cfg.delta, cfg.r_max, 1, 1);
    } catch (const Error&) {
        cfg.name = algorithm;
    }
    cfg.S = 0;
    cfg.A = 0;
    cfg.delta = j.value("delta", cfg.delta);
    cfg.alpha = j.value("alpha", cfg.alpha);
    if (j.contains("v_hat_r") && !j.at("v_hat_r").is_null())
        cfg.v_hat_r = j.at("v_hat_r").get<double>();
    if (j.contains("v_hat_p") && !j.at("v_hat_p").is_null())
        cfg.v_hat_p = j.at("v_hat_p").get<double>();
    if (j.contains("radius_kind")) {
        const std::string kind = j.at("radius_kind").get<std::string>();
        if (kind == "bernstein")
            cfg.radius_kind = RadiusKind::Bernstein;
        else if (kind == "hoeffding")
            cfg.radius_kind = RadiusKind::Hoeffding;
        else
            throw Error("unknown radius_kind: " + kind);
    }
    if (j.contains("restart")) {
        const std::string restart = j.at("restart").get<std::string>();
        if (restart == "none")
            cfg.restart = RestartKind::None;
        else if (restart == "variation-schedule")
            cfg.restart = RestartKind::VariationSchedule;
        else
            throw Error("unknown restart kind: " + restart);
    }
    if (j.contains("epsilon_clock")) {
        const std::string clock = j.at("epsilon_clock").get<std::string>();
        if (clock == "phase-local")
            cfg.epsilon_clock = EpsilonClock::PhaseLocal;
        else if (clock == "global")
            cfg.epsilon_clock = EpsilonClock::Global;
        else
            throw Error("unknown epsilon_clock: " + clock);
    }
    return cfg;
}

} // namespace

GeneratorSpec env_spec_from_json(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("env spec JSON parse error: ") + e.what());
    }
    return env_spec_from_parsed(std::move(j), base_dir);
}

ExperimentConfig config_from_json(const std::string& text, const std::string& base_dir) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("config JSON parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        cfg.env = env_spec_from_parsed(j.at("env"), base_dir);
        for (const auto& a : j.at("agents")) cfg.agents.push_back(agent_from_json(a));
        cfg.T_grid = j.at("T_grid").get<std::vector<long long>>();
        const auto& seeds = j.at("seeds");
        if (seeds.is_number()) {
            const auto n = seeds.get<std::uint64_t>();
            for (std::uint64_t i = 0; i < n; ++i) cfg.seeds.push_back(i);
        } else {
            cfg.seeds = seeds.get<std::vector<std::uint64_t>>();
        }
        cfg.output_dir = j.value("output_dir", std::string("out"));
        cfg.parallelism = j.value("parallelism", 0);
        cfg.verbose = j.value("verbose", false);
    } catch (const json::exception& e) {
        throw Error(std::string("config JSON schema error: ") + e.what());
    }
    if (cfg.agents.empty()) throw Error("config needs at least one agent");
    if (cfg.T_grid.empty()) throw Error("config needs a nonempty T_grid");
    if (cfg.seeds.empty()) throw Error("config needs at least one seed");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    const auto base = std::filesystem::path(path).parent_path().string();
    return config_from_json(read_text_file(path), base);
}

std::string env_to_explicit_trace_json(const NonStationaryEnv& env, int indent) {
    json segments = json::array();
    auto push = [&segments](const MdpSnapshot& m, long long steps) {
        segments.push_back({{"snapshot", json::parse(snapshot_to_json(m, -1))},
                            {"steps", steps}});
    };
    long long start = 1;
    for (const auto& seg : env.segments()) {
        if (seg.from == seg.to && seg.lambda0 == seg.lambda1) {
            push(env.snapshot_at(start), seg.steps);
        } else {
            for (long long off = 0; off < seg.steps; ++off) push(env.snapshot_at(start + off), 1);
        }
        start += seg.steps;
    }
    json j{{"type", "explicit"}, {"s1", env.initial_state()}, {"segments", std::move(segments)}};
    return j.dump(indent);
}

void override_seed_base(ExperimentConfig& cfg, std::uint64_t base) {
    for (size_t i = 0; i < cfg.seeds.size(); ++i) cfg.seeds[i] = base + i;
}

} // namespace nsrl

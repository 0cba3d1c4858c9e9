#include "nsrl/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nsrl/errors.hpp"

namespace nsrl {

using nlohmann::json;

namespace {

RewardDist reward_dist_from_json(const json& j) {
    if (j.is_null()) return RewardDist::bernoulli();
    std::string kind;
    double width = 0.0;
    if (j.is_string()) {
        kind = j.get<std::string>();
    } else {
        kind = j.at("kind").get<std::string>();
        width = j.value("width", 0.0);
    }
    if (kind == "bernoulli-scaled") return RewardDist::bernoulli();
    if (kind == "uniform-interval") return RewardDist::uniform(width);
    throw Error("unknown reward_dist kind: " + kind);
}

json reward_dist_to_json(const RewardDist& d) {
    json j;
    switch (d.kind) {
        case RewardDist::Kind::BernoulliScaled:
            j["kind"] = "bernoulli-scaled";
            break;
        case RewardDist::Kind::UniformInterval:
            j["kind"] = "uniform-interval";
            j["width"] = d.width;
            break;
    }
    return j;
}

} // namespace

MdpSnapshot snapshot_from_json(const std::string& text, bool repair) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(std::string("snapshot JSON parse error: ") + e.what());
    }
    MdpSnapshot m;
    try {
        m.S = j.at("S").get<int>();
        m.A = j.at("A").get<int>();
        m.r_max = j.at("r_max").get<double>();
        m.reward_dist = reward_dist_from_json(j.value("reward_dist", json()));
        if (m.S < 1 || m.A < 1) throw Error("snapshot needs S >= 1 and A >= 1");
        m.r_mean.reserve(static_cast<size_t>(m.S) * m.A);
        for (const auto& row : j.at("r_mean"))
            for (const auto& x : row) m.r_mean.push_back(x.get<double>());
        m.P.reserve(static_cast<size_t>(m.S) * m.A * m.S);
        for (const auto& per_s : j.at("P"))
            for (const auto& per_a : per_s)
                for (const auto& x : per_a) m.P.push_back(x.get<double>());
    } catch (const json::exception& e) {
        throw Error(std::string("snapshot JSON schema error: ") + e.what());
    }
    if (m.r_mean.size() != static_cast<size_t>(m.S) * m.A ||
        m.P.size() != static_cast<size_t>(m.S) * m.A * m.S)
        throw Error("snapshot arrays do not match the declared (S, A)");
    if (repair) normalize_rows(m);
    return m;
}

MdpSnapshot load_snapshot(const std::string& path, bool repair) {
    return snapshot_from_json(read_text_file(path), repair);
}

std::string snapshot_to_json(const MdpSnapshot& m, int indent) {
    json j;
    j["S"] = m.S;
    j["A"] = m.A;
    j["r_max"] = m.r_max;
    j["reward_dist"] = reward_dist_to_json(m.reward_dist);
    json r = json::array();
    for (int s = 0; s < m.S; ++s) {
        json row = json::array();
        for (int a = 0; a < m.A; ++a) row.push_back(m.r(s, a));
        r.push_back(std::move(row));
    }
    j["r_mean"] = std::move(r);
    json p = json::array();
    for (int s = 0; s < m.S; ++s) {
        json per_s = json::array();
        for (int a = 0; a < m.A; ++a) {
            json per_a = json::array();
            for (int s2 = 0; s2 < m.S; ++s2) per_a.push_back(m.p(s, a, s2));
            per_s.push_back(std::move(per_a));
        }
        p.push_back(std::move(per_s));
    }
    j["P"] = std::move(p);
    return j.dump(indent);
}

void save_snapshot(const MdpSnapshot& m, const std::string& path) {
    write_text_file(path, snapshot_to_json(m));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open file for writing: " + path);
    out << text;
    if (!out) throw Error("write failed: " + path);
}

} // namespace nsrl

#pragma once

// JSON (de)serialization for simulation configs and snapshot files.
// Snapshot files are a JSON array of [x, y] pairs, optionally wrapped in an
// object carrying a tolerance sidecar.

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ucf/geometry.hpp"
#include "ucf/trace.hpp"

namespace ucf {

enum class AdversaryKind { FullSync, SemiSync, Async, Scripted };

inline const char* to_string(AdversaryKind k) {
    switch (k) {
        case AdversaryKind::FullSync: return "fullsync";
        case AdversaryKind::SemiSync: return "semisync";
        case AdversaryKind::Async: return "async";
        case AdversaryKind::Scripted: return "scripted";
    }
    return "?";
}

inline AdversaryKind adversary_from_string(const std::string& s) {
    if (s == "fullsync") return AdversaryKind::FullSync;
    if (s == "semisync") return AdversaryKind::SemiSync;
    if (s == "async") return AdversaryKind::Async;
    if (s == "scripted") return AdversaryKind::Scripted;
    throw std::invalid_argument("unknown adversary kind: " + s);
}

struct AdversaryPolicy {
    AdversaryKind kind = AdversaryKind::Async;
    uint64_t rng_seed = 1;
    double delta = 1e-3;           // minimum guaranteed travel, fraction of SEC radius
    double interrupt_prob = 0.25;  // chance a legal mid-move stop is taken
    bool frame_noise = true;       // fresh random local frame per Look
    int starvation_bound = 64;     // per-robot, multiplied by n
};

struct SimConfig {
    int n = 0;
    std::vector<Point> initial;
    AdversaryPolicy adversary;
    long max_cycles = 50000;
    double regular_tolerance = 1e-6;  // vertex deviation, fraction of SEC radius
    double collision_eps = 1e-9;      // fraction of SEC radius
};

inline std::string to_json(const SimConfig& c) {
    std::string out = "{\"n\":" + std::to_string(c.n) + ",\"initial\":[";
    for (size_t i = 0; i < c.initial.size(); ++i) {
        if (i) out += ",";
        out += fmt_point(c.initial[i]);
    }
    out += "],\"adversary\":{\"kind\":\"";
    out += to_string(c.adversary.kind);
    out += "\",\"seed\":" + std::to_string(c.adversary.rng_seed) +
           ",\"delta\":" + fmt_double(c.adversary.delta) +
           ",\"interrupt_prob\":" + fmt_double(c.adversary.interrupt_prob) +
           ",\"frame_noise\":" + (c.adversary.frame_noise ? std::string("true") : std::string("false")) +
           ",\"starvation_bound\":" + std::to_string(c.adversary.starvation_bound) + "}";
    out += ",\"max_cycles\":" + std::to_string(c.max_cycles);
    out += ",\"regular_tolerance\":" + fmt_double(c.regular_tolerance);
    out += ",\"collision_eps\":" + fmt_double(c.collision_eps);
    out += "}";
    return out;
}

inline SimConfig sim_config_from_json(const nlohmann::json& j) {
    SimConfig c;
    c.n = j.at("n").get<int>();
    for (const auto& p : j.at("initial")) c.initial.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    if (j.contains("adversary")) {
        const auto& a = j["adversary"];
        if (a.contains("kind")) c.adversary.kind = adversary_from_string(a["kind"].get<std::string>());
        if (a.contains("seed")) c.adversary.rng_seed = a["seed"].get<uint64_t>();
        if (a.contains("delta")) c.adversary.delta = a["delta"].get<double>();
        if (a.contains("interrupt_prob")) c.adversary.interrupt_prob = a["interrupt_prob"].get<double>();
        if (a.contains("frame_noise")) c.adversary.frame_noise = a["frame_noise"].get<bool>();
        if (a.contains("starvation_bound")) c.adversary.starvation_bound = a["starvation_bound"].get<int>();
    }
    if (j.contains("max_cycles")) c.max_cycles = j["max_cycles"].get<long>();
    if (j.contains("regular_tolerance")) c.regular_tolerance = j["regular_tolerance"].get<double>();
    if (j.contains("collision_eps")) c.collision_eps = j["collision_eps"].get<double>();
    if (c.n != static_cast<int>(c.initial.size()))
        throw std::invalid_argument("config: n does not match the number of initial points");
    return c;
}

inline SimConfig load_sim_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    nlohmann::json j;
    in >> j;
    return sim_config_from_json(j);
}

inline std::vector<Point> load_snapshot_points(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open snapshot: " + path);
    nlohmann::json j;
    in >> j;
    const nlohmann::json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("points")) throw std::invalid_argument("snapshot object lacks 'points'");
        arr = &j["points"];
    }
    std::vector<Point> pts;
    for (const auto& p : *arr) pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
    return pts;
}

inline void save_snapshot_points(const std::string& path, const std::vector<Point>& pts) {
    std::ofstream out(path);
    out << "[";
    for (size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ",";
        out << fmt_point(pts[i]);
    }
    out << "]\n";
}

}  // namespace ucf

#pragma once

// Pipeline configuration: one struct covering every stage, loadable from a
// JSON file with per-key command-line overrides (flags > file > defaults).
// Unknown keys are rejected so typos fail loudly.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "skytrack/cluster.hpp"
#include "skytrack/denoise.hpp"
#include "skytrack/score.hpp"

namespace skytrack {

struct PipelineConfig {
    DenoiseParams denoise;
    DbscanParams dbscan;
    std::uint32_t window_frames = 20;
    double voxel_resolution = 0.5;
    ScoringConfig scoring;
    int median_window = 5;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const {
        denoise.validate();
        dbscan.validate();
        scoring.validate();
        if (window_frames < 1) throw Error("cluster.window_frames must be >= 1");
        if (!(voxel_resolution > 0.0))
            throw Error("cluster.voxel_resolution must be positive");
        if (median_window < 1 || median_window % 2 == 0)
            throw Error("trajectory.median_window must be odd and >= 1");
        if (threads < 0) throw Error("threads must be >= 0");
    }
};

namespace detail {

inline SensorSet sensors_from_list(const std::vector<std::string>& names) {
    SensorSet set{false, false};
    for (const std::string& n : names) {
        switch (sensor_from_name(n)) {
            case Sensor::Avia: set.avia = true; break;
            case Sensor::Mid360: set.mid360 = true; break;
        }
    }
    return set;
}

inline std::vector<std::string> sensors_to_list(const SensorSet& set) {
    std::vector<std::string> out;
    if (set.avia) out.emplace_back("avia");
    if (set.mid360) out.emplace_back("mid360");
    return out;
}

// Applies one dotted key from a JSON value. Returns false for unknown keys.
inline bool apply_config_key(PipelineConfig& cfg, const std::string& key,
                             const nlohmann::json& value) {
    const auto as_sensor_list = [&value]() {
        std::vector<std::string> names;
        if (value.is_string()) {
            // comma-separated, as used by --set overrides
            std::string s = value.get<std::string>();
            std::size_t start = 0;
            while (start <= s.size()) {
                const std::size_t pos = s.find(',', start);
                const std::string tok =
                    s.substr(start, pos == std::string::npos ? std::string::npos : pos - start);
                if (!tok.empty()) names.push_back(tok);
                if (pos == std::string::npos) break;
                start = pos + 1;
            }
        } else {
            names = value.get<std::vector<std::string>>();
        }
        return names;
    };

    if (key == "denoise.radius") cfg.denoise.radius = value.get<double>();
    else if (key == "denoise.min_neighbors") cfg.denoise.min_neighbors = value.get<int>();
    else if (key == "denoise.sensors") cfg.denoise.apply_to = sensors_from_list(as_sensor_list());
    else if (key == "cluster.eps") cfg.dbscan.eps = value.get<double>();
    else if (key == "cluster.min_pts") cfg.dbscan.min_pts = value.get<int>();
    else if (key == "cluster.window_frames") cfg.window_frames = value.get<std::uint32_t>();
    else if (key == "cluster.voxel_resolution") cfg.voxel_resolution = value.get<double>();
    else if (key == "score.lambda") cfg.scoring.lambda = value.get<double>();
    else if (key == "score.iou_floor") cfg.scoring.iou_floor = value.get<double>();
    else if (key == "score.min_active_windows") cfg.scoring.min_active_windows = value.get<int>();
    else if (key == "score.normalize") cfg.scoring.normalize = value.get<bool>();
    else if (key == "trajectory.median_window") cfg.median_window = value.get<int>();
    else if (key == "threads") cfg.threads = value.get<int>();
    else return false;
    return true;
}

}  // namespace detail

inline PipelineConfig config_from_json(const nlohmann::json& j) {
    PipelineConfig cfg;
    for (const auto& [section, body] : j.items()) {
        if (section == "threads") {
            if (!detail::apply_config_key(cfg, section, body))
                throw Error("unknown config key: " + section);
            continue;
        }
        const bool known_section = section == "denoise" || section == "cluster" ||
                                   section == "score" || section == "trajectory";
        if (!known_section || !body.is_object())
            throw Error("unknown config key: " + section);
        for (const auto& [name, value] : body.items()) {
            const std::string key = section + "." + name;
            if (!detail::apply_config_key(cfg, key, value))
                throw Error("unknown config key: " + key);
        }
    }
    cfg.validate();
    return cfg;
}

// Parses a "key=value" override, e.g. "cluster.eps=0.5". Values are parsed
// as JSON when possible so numbers and booleans work; anything else is a
// string (used by denoise.sensors).
inline void apply_config_override(PipelineConfig& cfg, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos) throw Error("bad override (expected key=value): " + assignment);
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    if (!detail::apply_config_key(cfg, key, value))
        throw Error("unknown config key: " + key);
}

inline nlohmann::json config_to_json(const PipelineConfig& cfg) {
    return {
        {"denoise",
         {{"radius", cfg.denoise.radius},
          {"min_neighbors", cfg.denoise.min_neighbors},
          {"sensors", detail::sensors_to_list(cfg.denoise.apply_to)}}},
        {"cluster",
         {{"eps", cfg.dbscan.eps},
          {"min_pts", cfg.dbscan.min_pts},
          {"window_frames", cfg.window_frames},
          {"voxel_resolution", cfg.voxel_resolution}}},
        {"score",
         {{"lambda", cfg.scoring.lambda},
          {"iou_floor", cfg.scoring.iou_floor},
          {"min_active_windows", cfg.scoring.min_active_windows},
          {"normalize", cfg.scoring.normalize}}},
        {"trajectory", {{"median_window", cfg.median_window}}},
        {"threads", cfg.threads},
    };
}

inline PipelineConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("bad config JSON: " + std::string(e.what()));
    }
    return config_from_json(j);
}

}  // namespace skytrack

#pragma once

// Deterministic synthetic LiDAR scene generator. Scenes combine stationary
// structures (sampled fresh every frame, so returns accumulate on fixed
// surfaces), uniform far-range noise, and a sparse moving target with known
// analytic ground truth.
//
// Generation is a pure function of the spec (seed included): the engine is
// std::mt19937_64 and every distribution is mapped from raw engine output by
// the explicit formulas below, so identical specs produce byte-identical
// scenes on any platform.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "skytrack/geometry.hpp"
#include "skytrack/ingest.hpp"

namespace skytrack::synth {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1): top 53 bits of the engine output.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    bool bernoulli(double p) { return uniform() < p; }

    // Uniform integer in [0, n).
    std::uint64_t uniform_int(std::uint64_t n) {
        const auto v = static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
        return v < n ? v : n - 1;
    }

    // Box-Muller; the second value of each pair is cached.
    double normal(double mu = 0.0, double sigma = 1.0) {
        if (has_spare_) {
            has_spare_ = false;
            return mu + sigma * spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        has_spare_ = true;
        return mu + sigma * r * std::cos(theta);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

enum class Axis : std::uint8_t { X = 0, Y = 1, Z = 2 };

struct BoxSpec {
    Vec3 center;
    Vec3 size;                 // full extents
    int points_per_frame = 0;  // samples on the surface per frame
    double jitter = 0.02;      // gaussian jitter sigma, meters
    Sensor sensor = Sensor::Mid360;
};

struct PlaneSpec {
    Vec3 center;
    Axis normal = Axis::Z;
    double width = 1.0;   // extent along the first in-plane axis
    double height = 1.0;  // extent along the second in-plane axis
    int points_per_frame = 0;
    double jitter = 0.02;
    Sensor sensor = Sensor::Mid360;
};

struct BlobSpec {
    Vec3 center;
    double sigma = 1.0;  // isotropic gaussian spread
    int points_per_frame = 0;
    Sensor sensor = Sensor::Mid360;
};

using StructureSpec = std::variant<BoxSpec, PlaneSpec, BlobSpec>;

struct NoiseSpec {
    int per_frame = 0;
    double range_min = 0.0;
    double range_max = 400.0;
    Sensor sensor = Sensor::Avia;
    int streaks_per_frame = 0;  // range-correlated streaks, optional
    int streak_points = 5;
};

struct HoverPath {
    Vec3 position;
};
struct LinePath {
    Vec3 start;
    Vec3 velocity;  // m/s
};
struct HelixPath {
    Vec3 center;
    double radius = 1.0;
    double angular_rate = 1.0;   // rad/s
    double vertical_rate = 0.0;  // m/s
    double phase = 0.0;          // rad
};
struct WaypointPath {
    std::vector<Vec3> waypoints;
    double speed = 1.0;  // m/s along the polyline; holds at the last waypoint
};

using PathSpec = std::variant<HoverPath, LinePath, HelixPath, WaypointPath>;

struct TargetSpec {
    PathSpec path = HoverPath{{0.0, 0.0, 10.0}};
    double hit_probability = 1.0;  // per-frame Bernoulli
    int hits_min = 1;
    int hits_max = 5;
    double noise_sigma = 0.05;  // offsets are clamped to 3 sigma in norm
    Sensor sensor = Sensor::Mid360;
};

struct SceneSpec {
    std::string name;
    std::uint64_t seed = 1;
    double duration = 60.0;    // seconds
    double frame_rate = 10.0;  // Hz
    std::vector<StructureSpec> structures;
    NoiseSpec noise;
    TargetSpec target;

    std::size_t frame_count() const {
        return static_cast<std::size_t>(std::llround(duration * frame_rate));
    }

    void validate() const {
        if (!(frame_rate > 0.0)) throw Error("scene frame_rate must be positive");
        if (!(duration > 0.0)) throw Error("scene duration must be positive");
        if (frame_count() == 0) throw Error("scene has no frames");
        if (!(target.hit_probability >= 0.0 && target.hit_probability <= 1.0))
            throw Error("target hit_probability must be in [0, 1]");
        if (target.hits_min < 1 || target.hits_max < target.hits_min)
            throw Error("bad target hits range");
        if (target.noise_sigma < 0.0) throw Error("target noise_sigma must be >= 0");
        if (noise.per_frame < 0 || noise.streaks_per_frame < 0 || noise.streak_points < 0)
            throw Error("noise counts must be >= 0");
        if (!(noise.range_max > noise.range_min && noise.range_min >= 0.0))
            throw Error("bad noise range");
        for (const StructureSpec& s : structures) {
            const int ppf = std::visit([](const auto& v) { return v.points_per_frame; }, s);
            if (ppf < 0) throw Error("structure sample count must be >= 0");
        }
    }
};

// Analytic target position at time t.
inline Vec3 path_position(const PathSpec& path, double t) {
    return std::visit(
        [t](const auto& p) -> Vec3 {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, HoverPath>) {
                return p.position;
            } else if constexpr (std::is_same_v<T, LinePath>) {
                return p.start + p.velocity * t;
            } else if constexpr (std::is_same_v<T, HelixPath>) {
                const double a = p.phase + p.angular_rate * t;
                return {p.center.x + p.radius * std::cos(a),
                        p.center.y + p.radius * std::sin(a),
                        p.center.z + p.vertical_rate * t};
            } else {
                static_assert(std::is_same_v<T, WaypointPath>);
                if (p.waypoints.empty()) throw Error("waypoint path is empty");
                if (p.waypoints.size() == 1 || !(p.speed > 0.0)) return p.waypoints.front();
                double remaining = p.speed * t;
                for (std::size_t i = 0; i + 1 < p.waypoints.size(); ++i) {
                    const Vec3 seg = p.waypoints[i + 1] - p.waypoints[i];
                    const double len = seg.norm();
                    if (remaining <= len || len == 0.0) {
                        const double u = len == 0.0 ? 0.0 : remaining / len;
                        return p.waypoints[i] + seg * u;
                    }
                    remaining -= len;
                }
                return p.waypoints.back();
            }
        },
        path);
}

enum class Provenance : std::uint8_t { Structure = 0, Noise = 1, Target = 2 };

struct SyntheticScene {
    SequenceCloud sequence;
    GroundTruth gt;                        // analytic path at frame timestamps
    std::vector<Provenance> provenance;    // aligned with superimposed point order
};

namespace detail {

inline Vec3 gaussian_offset(Rng& rng, double sigma, double max_norm) {
    Vec3 v{rng.normal(0.0, sigma), rng.normal(0.0, sigma), rng.normal(0.0, sigma)};
    const double n = v.norm();
    if (n > max_norm && n > 0.0) v = v * (max_norm / n);
    return v;
}

inline Vec3 unit_direction(Rng& rng) {
    // Spherical angles keep the draw count fixed regardless of value.
    const double cos_theta = rng.uniform(-1.0, 1.0);
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const double phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return {sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
}

inline Vec3 sample_box_surface(const BoxSpec& box, Rng& rng) {
    const double sx = box.size.x, sy = box.size.y, sz = box.size.z;
    const double axy = sx * sy, axz = sx * sz, ayz = sy * sz;
    const double total = 2.0 * (axy + axz + ayz);
    double pick = rng.uniform() * total;
    const double u = rng.uniform(-0.5, 0.5);
    const double v = rng.uniform(-0.5, 0.5);

    Vec3 p = box.center;
    if (pick < 2.0 * axy) {  // z faces
        p.x += u * sx;
        p.y += v * sy;
        p.z += (pick < axy ? -0.5 : 0.5) * sz;
    } else if ((pick -= 2.0 * axy) < 2.0 * axz) {  // y faces
        p.x += u * sx;
        p.z += v * sz;
        p.y += (pick < axz ? -0.5 : 0.5) * sy;
    } else {  // x faces
        pick -= 2.0 * axz;
        p.y += u * sy;
        p.z += v * sz;
        p.x += (pick < ayz ? -0.5 : 0.5) * sx;
    }
    return p;
}

inline Vec3 sample_plane(const PlaneSpec& plane, Rng& rng) {
    const double u = rng.uniform(-0.5, 0.5) * plane.width;
    const double v = rng.uniform(-0.5, 0.5) * plane.height;
    Vec3 p = plane.center;
    switch (plane.normal) {
        case Axis::X:
            p.y += u;
            p.z += v;
            break;
        case Axis::Y:
            p.x += u;
            p.z += v;
            break;
        case Axis::Z:
            p.x += u;
            p.y += v;
            break;
    }
    return p;
}

}  // namespace detail

// Generates the scene. Per frame, points are drawn in a fixed order:
// structures in spec order, then noise, then the target.
inline SyntheticScene generate(const SceneSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const std::size_t n = spec.frame_count();

    SyntheticScene scene;
    scene.sequence.frames.reserve(n);
    scene.gt.samples.reserve(n);

    for (std::size_t fi = 0; fi < n; ++fi) {
        const double t = static_cast<double>(fi) / spec.frame_rate;
        Frame frame{static_cast<std::uint32_t>(fi), t, {}};
        const auto push = [&](const Vec3& p, Sensor sensor, Provenance prov) {
            frame.points.push_back(
                TimedPoint{p.x, p.y, p.z, t, sensor, static_cast<std::uint32_t>(fi)});
            scene.provenance.push_back(prov);
        };

        for (const StructureSpec& s : spec.structures) {
            std::visit(
                [&](const auto& st) {
                    using T = std::decay_t<decltype(st)>;
                    for (int k = 0; k < st.points_per_frame; ++k) {
                        if constexpr (std::is_same_v<T, BoxSpec>) {
                            Vec3 p = detail::sample_box_surface(st, rng);
                            p += detail::gaussian_offset(rng, st.jitter, 3.0 * st.jitter);
                            push(p, st.sensor, Provenance::Structure);
                        } else if constexpr (std::is_same_v<T, PlaneSpec>) {
                            Vec3 p = detail::sample_plane(st, rng);
                            p += detail::gaussian_offset(rng, st.jitter, 3.0 * st.jitter);
                            push(p, st.sensor, Provenance::Structure);
                        } else {
                            static_assert(std::is_same_v<T, BlobSpec>);
                            Vec3 p = st.center;
                            p.x += rng.normal(0.0, st.sigma);
                            p.y += rng.normal(0.0, st.sigma);
                            p.z += rng.normal(0.0, st.sigma);
                            push(p, st.sensor, Provenance::Structure);
                        }
                    }
                },
                s);
        }

        for (int k = 0; k < spec.noise.per_frame; ++k) {
            const Vec3 dir = detail::unit_direction(rng);
            // Radius from the shell-uniform inverse CDF.
            const double r3_lo = std::pow(spec.noise.range_min, 3.0);
            const double r3_hi = std::pow(spec.noise.range_max, 3.0);
            const double r = std::cbrt(rng.uniform(r3_lo, r3_hi));
            push(dir * r, spec.noise.sensor, Provenance::Noise);
        }
        for (int s = 0; s < spec.noise.streaks_per_frame; ++s) {
            const Vec3 dir = detail::unit_direction(rng);
            const double base = rng.uniform(spec.noise.range_min, spec.noise.range_max);
            for (int k = 0; k < spec.noise.streak_points; ++k) {
                const double r = base + 0.5 * k + rng.normal(0.0, 0.05);
                push(dir * r, spec.noise.sensor, Provenance::Noise);
            }
        }

        const Vec3 truth = path_position(spec.target.path, t);
        scene.gt.samples.push_back(GroundTruthSample{t, truth.x, truth.y, truth.z});
        if (rng.bernoulli(spec.target.hit_probability)) {
            const std::uint64_t span =
                static_cast<std::uint64_t>(spec.target.hits_max - spec.target.hits_min) + 1;
            const int hits = spec.target.hits_min + static_cast<int>(rng.uniform_int(span));
            for (int k = 0; k < hits; ++k) {
                const Vec3 p = truth + detail::gaussian_offset(rng, spec.target.noise_sigma,
                                                               3.0 * spec.target.noise_sigma);
                push(p, spec.target.sensor, Provenance::Target);
            }
        }

        scene.sequence.frames.push_back(std::move(frame));
    }
    return scene;
}

// ---------------------------------------------------------------------------
// JSON (de)serialization of scene specs.

namespace detail {

inline nlohmann::json vec_to_json(const Vec3& v) {
    return nlohmann::json::array({v.x, v.y, v.z});
}

inline Vec3 vec_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 3) throw Error("expected a 3-element array");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::X: return "x";
        case Axis::Y: return "y";
        default: return "z";
    }
}

inline Axis axis_from_name(const std::string& s) {
    if (s == "x") return Axis::X;
    if (s == "y") return Axis::Y;
    if (s == "z") return Axis::Z;
    throw Error("unknown axis: " + s);
}

}  // namespace detail

inline nlohmann::json scene_spec_to_json(const SceneSpec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["seed"] = spec.seed;
    j["duration"] = spec.duration;
    j["frame_rate"] = spec.frame_rate;
    j["structures"] = nlohmann::json::array();
    for (const StructureSpec& s : spec.structures) {
        nlohmann::json js;
        std::visit(
            [&js](const auto& st) {
                using T = std::decay_t<decltype(st)>;
                if constexpr (std::is_same_v<T, BoxSpec>) {
                    js["kind"] = "box";
                    js["center"] = detail::vec_to_json(st.center);
                    js["size"] = detail::vec_to_json(st.size);
                    js["jitter"] = st.jitter;
                } else if constexpr (std::is_same_v<T, PlaneSpec>) {
                    js["kind"] = "plane";
                    js["center"] = detail::vec_to_json(st.center);
                    js["normal"] = detail::axis_name(st.normal);
                    js["width"] = st.width;
                    js["height"] = st.height;
                    js["jitter"] = st.jitter;
                } else {
                    js["kind"] = "blob";
                    js["center"] = detail::vec_to_json(st.center);
                    js["sigma"] = st.sigma;
                }
                js["points_per_frame"] = st.points_per_frame;
                js["sensor"] = sensor_name(st.sensor);
            },
            s);
        j["structures"].push_back(std::move(js));
    }
    j["noise"] = {{"per_frame", spec.noise.per_frame},
                  {"range_min", spec.noise.range_min},
                  {"range_max", spec.noise.range_max},
                  {"sensor", sensor_name(spec.noise.sensor)},
                  {"streaks_per_frame", spec.noise.streaks_per_frame},
                  {"streak_points", spec.noise.streak_points}};

    nlohmann::json jp;
    std::visit(
        [&jp](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, HoverPath>) {
                jp["kind"] = "hover";
                jp["position"] = detail::vec_to_json(p.position);
            } else if constexpr (std::is_same_v<T, LinePath>) {
                jp["kind"] = "line";
                jp["start"] = detail::vec_to_json(p.start);
                jp["velocity"] = detail::vec_to_json(p.velocity);
            } else if constexpr (std::is_same_v<T, HelixPath>) {
                jp["kind"] = "helix";
                jp["center"] = detail::vec_to_json(p.center);
                jp["radius"] = p.radius;
                jp["angular_rate"] = p.angular_rate;
                jp["vertical_rate"] = p.vertical_rate;
                jp["phase"] = p.phase;
            } else {
                jp["kind"] = "waypoints";
                jp["points"] = nlohmann::json::array();
                for (const Vec3& w : p.waypoints) jp["points"].push_back(detail::vec_to_json(w));
                jp["speed"] = p.speed;
            }
        },
        spec.target.path);
    j["target"] = {{"path", std::move(jp)},
                   {"hit_probability", spec.target.hit_probability},
                   {"hits_min", spec.target.hits_min},
                   {"hits_max", spec.target.hits_max},
                   {"noise_sigma", spec.target.noise_sigma},
                   {"sensor", sensor_name(spec.target.sensor)}};
    return j;
}

inline SceneSpec scene_spec_from_json(const nlohmann::json& j) {
    SceneSpec spec;
    spec.name = j.value("name", "");
    spec.seed = j.value("seed", std::uint64_t{1});
    spec.duration = j.value("duration", 60.0);
    spec.frame_rate = j.value("frame_rate", 10.0);

    for (const nlohmann::json& js : j.value("structures", nlohmann::json::array())) {
        const std::string kind = js.at("kind").get<std::string>();
        if (kind == "box") {
            BoxSpec b;
            b.center = detail::vec_from_json(js.at("center"));
            b.size = detail::vec_from_json(js.at("size"));
            b.points_per_frame = js.value("points_per_frame", 0);
            b.jitter = js.value("jitter", 0.02);
            b.sensor = sensor_from_name(js.value("sensor", "mid360"));
            spec.structures.push_back(b);
        } else if (kind == "plane") {
            PlaneSpec p;
            p.center = detail::vec_from_json(js.at("center"));
            p.normal = detail::axis_from_name(js.value("normal", "z"));
            p.width = js.value("width", 1.0);
            p.height = js.value("height", 1.0);
            p.points_per_frame = js.value("points_per_frame", 0);
            p.jitter = js.value("jitter", 0.02);
            p.sensor = sensor_from_name(js.value("sensor", "mid360"));
            spec.structures.push_back(p);
        } else if (kind == "blob") {
            BlobSpec b;
            b.center = detail::vec_from_json(js.at("center"));
            b.sigma = js.value("sigma", 1.0);
            b.points_per_frame = js.value("points_per_frame", 0);
            b.sensor = sensor_from_name(js.value("sensor", "mid360"));
            spec.structures.push_back(b);
        } else {
            throw Error("unknown structure kind: " + kind);
        }
    }

    if (j.contains("noise")) {
        const nlohmann::json& jn = j.at("noise");
        spec.noise.per_frame = jn.value("per_frame", 0);
        spec.noise.range_min = jn.value("range_min", 0.0);
        spec.noise.range_max = jn.value("range_max", 400.0);
        spec.noise.sensor = sensor_from_name(jn.value("sensor", "avia"));
        spec.noise.streaks_per_frame = jn.value("streaks_per_frame", 0);
        spec.noise.streak_points = jn.value("streak_points", 5);
    }

    if (j.contains("target")) {
        const nlohmann::json& jt = j.at("target");
        if (jt.contains("path")) {
            const nlohmann::json& jp = jt.at("path");
            const std::string kind = jp.at("kind").get<std::string>();
            if (kind == "hover") {
                spec.target.path = HoverPath{detail::vec_from_json(jp.at("position"))};
            } else if (kind == "line") {
                spec.target.path = LinePath{detail::vec_from_json(jp.at("start")),
                                            detail::vec_from_json(jp.at("velocity"))};
            } else if (kind == "helix") {
                HelixPath h;
                h.center = detail::vec_from_json(jp.at("center"));
                h.radius = jp.value("radius", 1.0);
                h.angular_rate = jp.value("angular_rate", 1.0);
                h.vertical_rate = jp.value("vertical_rate", 0.0);
                h.phase = jp.value("phase", 0.0);
                spec.target.path = h;
            } else if (kind == "waypoints") {
                WaypointPath w;
                for (const nlohmann::json& jw : jp.at("points"))
                    w.waypoints.push_back(detail::vec_from_json(jw));
                w.speed = jp.value("speed", 1.0);
                spec.target.path = w;
            } else {
                throw Error("unknown path kind: " + kind);
            }
        }
        spec.target.hit_probability = jt.value("hit_probability", 1.0);
        spec.target.hits_min = jt.value("hits_min", 1);
        spec.target.hits_max = jt.value("hits_max", 5);
        spec.target.noise_sigma = jt.value("noise_sigma", 0.05);
        spec.target.sensor = sensor_from_name(jt.value("sensor", "mid360"));
    }

    spec.validate();
    return spec;
}

// ---------------------------------------------------------------------------
// Named reference scenes used by the end-to-end tests and the CLI.

inline SceneSpec scene_clean_hover() {
    SceneSpec spec;
    spec.name = "clean-hover";
    spec.seed = 101;
    spec.duration = 60.0;
    spec.frame_rate = 10.0;
    spec.noise = NoiseSpec{15, 5.0, 200.0, Sensor::Avia, 0, 5};
    spec.target.path = HoverPath{{12.0, -8.0, 25.0}};
    spec.target.hit_probability = 1.0;
    spec.target.hits_min = 1;
    spec.target.hits_max = 3;
    spec.target.noise_sigma = 0.05;
    spec.target.sensor = Sensor::Avia;
    return spec;
}

inline SceneSpec scene_urban_canyon() {
    SceneSpec spec;
    spec.name = "urban-canyon";
    spec.seed = 202;
    spec.duration = 60.0;
    spec.frame_rate = 10.0;
    spec.structures = {
        PlaneSpec{{2.0, 2.0, 0.0}, Axis::Z, 12.0, 12.0, 60, 0.03, Sensor::Mid360},
        BoxSpec{{-15.0, -10.0, 3.0}, {4.0, 4.0, 6.0}, 75, 0.03, Sensor::Mid360},
        BoxSpec{{15.0, 10.0, 3.0}, {4.0, 4.0, 6.0}, 75, 0.03, Sensor::Mid360},
        BoxSpec{{-12.0, 18.0, 3.0}, {4.0, 4.0, 6.0}, 75, 0.03, Sensor::Mid360},
        BlobSpec{{8.0, -14.0, 2.0}, 0.9, 20, Sensor::Mid360},
        BlobSpec{{-3.0, 30.0, 2.0}, 0.9, 15, Sensor::Mid360},
    };
    spec.noise = NoiseSpec{70, 5.0, 400.0, Sensor::Avia, 2, 4};
    spec.target.path = WaypointPath{{{-30.0, -30.0, 12.0},
                                     {0.0, -22.0, 16.0},
                                     {22.0, 2.0, 20.0},
                                     {0.0, 26.0, 15.0},
                                     {-24.0, 30.0, 18.0}},
                                    2.0};
    spec.target.hit_probability = 0.9;
    spec.target.hits_min = 1;
    spec.target.hits_max = 4;
    spec.target.noise_sigma = 0.05;
    spec.target.sensor = Sensor::Avia;
    return spec;
}

inline SceneSpec scene_fast_transit() {
    SceneSpec spec;
    spec.name = "fast-transit";
    spec.seed = 303;
    spec.duration = 60.0;
    spec.frame_rate = 10.0;
    spec.structures = {
        BoxSpec{{30.0, -20.0, 3.0}, {4.0, 4.0, 6.0}, 75, 0.03, Sensor::Mid360},
        BlobSpec{{-25.0, 15.0, 2.5}, 1.0, 18, Sensor::Mid360},
    };
    spec.noise = NoiseSpec{40, 5.0, 400.0, Sensor::Avia, 0, 5};
    spec.target.path = LinePath{{-170.0, -60.0, 15.0}, {5.6, 2.0, 0.6}};
    spec.target.hit_probability = 0.99;
    spec.target.hits_min = 2;
    spec.target.hits_max = 4;
    spec.target.noise_sigma = 0.05;
    spec.target.sensor = Sensor::Avia;
    return spec;
}

inline SceneSpec scene_sparse_hits() {
    SceneSpec spec;
    spec.name = "sparse-hits";
    spec.seed = 404;
    spec.duration = 60.0;
    spec.frame_rate = 10.0;
    spec.structures = {
        BoxSpec{{12.0, -10.0, 2.5}, {4.0, 4.0, 5.0}, 70, 0.03, Sensor::Mid360},
        BlobSpec{{-12.0, 9.0, 2.0}, 0.9, 15, Sensor::Mid360},
    };
    spec.noise = NoiseSpec{25, 5.0, 400.0, Sensor::Avia, 0, 5};
    spec.target.path = LinePath{{-10.0, -5.0, 20.0}, {0.3, 0.15, 0.05}};
    spec.target.hit_probability = 0.3;
    spec.target.hits_min = 1;
    spec.target.hits_max = 2;
    spec.target.noise_sigma = 0.05;
    spec.target.sensor = Sensor::Mid360;
    return spec;
}

inline std::vector<SceneSpec> standard_suite() {
    return {scene_clean_hover(), scene_urban_canyon(), scene_fast_transit(),
            scene_sparse_hits()};
}

inline SceneSpec standard_scene(const std::string& name) {
    for (SceneSpec& spec : standard_suite())
        if (spec.name == name) return spec;
    throw Error("unknown scene: " + name);
}

}  // namespace skytrack::synth

#pragma once

// Core 3D primitives shared by the whole pipeline: timestamped points,
// axis-aligned bounds, voxel occupancy sets and voxel-set IoU.

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace skytrack {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// No cluster survived scoring. The CLI maps this to exit code 2 so batch
// harnesses can count undetected sequences separately from hard failures.
class NoCandidateError : public Error {
public:
    NoCandidateError() : Error("no candidate trajectory") {}
};

enum class Sensor : std::uint8_t { Avia = 0, Mid360 = 1 };

inline const char* sensor_name(Sensor s) {
    return s == Sensor::Avia ? "avia" : "mid360";
}

inline Sensor sensor_from_name(std::string_view name) {
    if (name == "avia") return Sensor::Avia;
    if (name == "mid360") return Sensor::Mid360;
    throw Error("unknown sensor name: " + std::string(name));
}

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    double squared_norm() const { return dot(*this); }
    double norm() const { return std::sqrt(squared_norm()); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// One LiDAR return. t is seconds since sequence start; frame_index is the
// scan interval the point belongs to.
struct TimedPoint {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double t = 0.0;
    Sensor sensor = Sensor::Avia;
    std::uint32_t frame_index = 0;

    Vec3 pos() const { return {x, y, z}; }
    bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline double squared_distance(const TimedPoint& a, const TimedPoint& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return dx * dx + dy * dy + dz * dz;
}

struct Aabb {
    Vec3 min;
    Vec3 max;

    static Aabb of_point(const Vec3& p) { return {p, p}; }

    void expand(const Vec3& p) {
        min.x = std::min(min.x, p.x);
        min.y = std::min(min.y, p.y);
        min.z = std::min(min.z, p.z);
        max.x = std::max(max.x, p.x);
        max.y = std::max(max.y, p.y);
        max.z = std::max(max.z, p.z);
    }

    bool contains(const Vec3& p, double slack = 0.0) const {
        return p.x >= min.x - slack && p.x <= max.x + slack &&
               p.y >= min.y - slack && p.y <= max.y + slack &&
               p.z >= min.z - slack && p.z <= max.z + slack;
    }
};

struct VoxelCoord {
    std::int64_t x = 0;
    std::int64_t y = 0;
    std::int64_t z = 0;

    bool operator==(const VoxelCoord&) const = default;
};

struct VoxelCoordHash {
    std::size_t operator()(const VoxelCoord& c) const {
        std::uint64_t h = 0x9E3779B97F4A7C15ull;
        const auto mix = [&h](std::uint64_t v) {
            h ^= v + 0x9E3779B97F4A7C15ull + (h << 6) + (h >> 2);
        };
        mix(static_cast<std::uint64_t>(c.x));
        mix(static_cast<std::uint64_t>(c.y));
        mix(static_cast<std::uint64_t>(c.z));
        return static_cast<std::size_t>(h);
    }
};

inline VoxelCoord voxel_of(double x, double y, double z, double resolution) {
    return {static_cast<std::int64_t>(std::floor(x / resolution)),
            static_cast<std::int64_t>(std::floor(y / resolution)),
            static_cast<std::int64_t>(std::floor(z / resolution))};
}

// Set of occupied fixed-resolution grid cells. Volume is cell count times
// cell volume, so it never degenerates to zero for single-point clusters.
class VoxelSet {
public:
    using CellSet = std::unordered_set<VoxelCoord, VoxelCoordHash>;

    explicit VoxelSet(double resolution) : resolution_(resolution) {
        if (!(resolution > 0.0)) throw Error("bad resolution");
    }

    void insert(const VoxelCoord& c) { cells_.insert(c); }
    void insert_point(const TimedPoint& p) {
        cells_.insert(voxel_of(p.x, p.y, p.z, resolution_));
    }

    double resolution() const { return resolution_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    bool contains(const VoxelCoord& c) const { return cells_.count(c) > 0; }
    const CellSet& cells() const { return cells_; }

    double volume() const {
        return static_cast<double>(cells_.size()) * resolution_ * resolution_ *
               resolution_;
    }

private:
    double resolution_;
    CellSet cells_;
};

inline VoxelSet voxelize(std::span<const TimedPoint> points, double resolution) {
    if (!(resolution > 0.0)) throw Error("bad resolution");
    if (points.empty()) throw Error("empty cluster");
    VoxelSet out(resolution);
    for (const TimedPoint& p : points) out.insert_point(p);
    return out;
}

// Voxelize the subset of `points` selected by `indices`.
inline VoxelSet voxelize(std::span<const TimedPoint> points,
                         std::span<const std::size_t> indices,
                         double resolution) {
    if (!(resolution > 0.0)) throw Error("bad resolution");
    if (indices.empty()) throw Error("empty cluster");
    VoxelSet out(resolution);
    for (std::size_t i : indices) out.insert_point(points[i]);
    return out;
}

// |a ∩ b| / |a ∪ b| over occupied cells. Requires matching resolutions.
inline double voxel_iou(const VoxelSet& a, const VoxelSet& b) {
    if (a.resolution() != b.resolution()) throw Error("resolution mismatch");
    if (a.empty() && b.empty()) throw Error("empty voxel sets");
    const VoxelSet& small = a.size() <= b.size() ? a : b;
    const VoxelSet& large = a.size() <= b.size() ? b : a;
    std::size_t inter = 0;
    for (const VoxelCoord& c : small.cells())
        if (large.contains(c)) ++inter;
    const std::size_t uni = a.size() + b.size() - inter;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

}  // namespace skytrack

#pragma once

// DBSCAN over the denoised global cloud plus per-window slicing of each
// global cluster. Window slices are plain time-filtered subsets of a global
// cluster; they are never re-clustered.

#include <cstdint>
#include <optional>
#include <vector>

#include "skytrack/geometry.hpp"
#include "skytrack/spatial_grid.hpp"

namespace skytrack {

struct DbscanParams {
    double eps = 0.8;
    int min_pts = 5;

    void validate() const {
        if (!(eps > 0.0)) throw Error("dbscan eps must be positive");
        if (min_pts < 1) throw Error("dbscan min_pts must be >= 1");
    }
};

inline constexpr std::int32_t kNoiseLabel = -1;

// Classical DBSCAN. A core point has >= min_pts neighbors within eps,
// counting itself. Points are scanned in input order and clusters expanded
// breadth-first, so labels are deterministic and border points attach to the
// lowest cluster id that reaches them.
inline std::vector<std::int32_t> dbscan(const std::vector<TimedPoint>& points,
                                        const DbscanParams& params) {
    params.validate();
    constexpr std::int32_t kUndefined = -2;
    std::vector<std::int32_t> labels(points.size(), kUndefined);
    if (points.empty()) return labels;

    const HashGrid grid(points, params.eps);
    const std::size_t min_pts = static_cast<std::size_t>(params.min_pts);
    std::vector<std::size_t> ball;
    std::vector<std::size_t> seeds;
    std::int32_t next_id = 0;

    for (std::size_t i = 0; i < points.size(); ++i) {
        if (labels[i] != kUndefined) continue;
        grid.query_ball(points[i].x, points[i].y, points[i].z, params.eps, ball);
        if (ball.size() < min_pts) {
            labels[i] = kNoiseLabel;
            continue;
        }

        const std::int32_t cluster = next_id++;
        labels[i] = cluster;
        seeds.clear();
        for (std::size_t j : ball) {
            if (j == i) continue;
            if (labels[j] == kNoiseLabel) {
                labels[j] = cluster;  // border point
            } else if (labels[j] == kUndefined) {
                labels[j] = cluster;
                seeds.push_back(j);
            }
        }

        for (std::size_t cursor = 0; cursor < seeds.size(); ++cursor) {
            const std::size_t q = seeds[cursor];
            grid.query_ball(points[q].x, points[q].y, points[q].z, params.eps, ball);
            if (ball.size() < min_pts) continue;  // border point, no expansion
            for (std::size_t j : ball) {
                if (labels[j] == kNoiseLabel) {
                    labels[j] = cluster;
                } else if (labels[j] == kUndefined) {
                    labels[j] = cluster;
                    seeds.push_back(j);
                }
            }
        }
    }
    return labels;
}

struct ClusterStats {
    std::size_t num = 0;       // point count
    VoxelSet voxels;           // occupied voxel space
    double density = 0.0;      // num / voxels.volume(), points per m^3

    ClusterStats(std::size_t count, VoxelSet v)
        : num(count), voxels(std::move(v)), density(static_cast<double>(count) / voxels.volume()) {}
};

struct Cluster {
    std::int32_t id = 0;
    std::vector<std::size_t> point_indices;  // sorted indices into the global list
    ClusterStats stats;
};

// One Cluster per non-noise label, ordered by id, with voxel stats at the
// given resolution.
inline std::vector<Cluster> extract_global_clusters(
    const std::vector<TimedPoint>& points, const std::vector<std::int32_t>& labels,
    double voxel_resolution) {
    if (labels.size() != points.size()) throw Error("labels do not match points");
    std::int32_t max_label = -1;
    for (std::int32_t l : labels) max_label = std::max(max_label, l);

    std::vector<std::vector<std::size_t>> members(static_cast<std::size_t>(max_label + 1));
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] >= 0) members[static_cast<std::size_t>(labels[i])].push_back(i);

    std::vector<Cluster> clusters;
    clusters.reserve(members.size());
    for (std::size_t id = 0; id < members.size(); ++id) {
        std::vector<std::size_t>& idx = members[id];
        if (idx.empty()) continue;  // ids are dense by construction, but stay safe
        const std::size_t count = idx.size();
        VoxelSet voxels = voxelize(points, idx, voxel_resolution);
        clusters.push_back(Cluster{static_cast<std::int32_t>(id), std::move(idx),
                                   ClusterStats(count, std::move(voxels))});
    }
    return clusters;
}

// Time slice of a global cluster over frames [start_frame, start_frame+length).
struct WindowSlice {
    std::int32_t cluster_id = 0;
    std::uint32_t start_frame = 0;
    std::uint32_t length = 0;
    std::vector<std::size_t> point_indices;   // subset of the parent cluster
    std::optional<ClusterStats> stats;        // empty marker when no points

    bool empty() const { return point_indices.empty(); }
};

// One slice per start frame in [0, n_frames - length]. Slices with no points
// carry no stats and are skipped by scoring.
inline std::vector<WindowSlice> slice_windows(const Cluster& cluster,
                                              const std::vector<TimedPoint>& points,
                                              std::size_t n_frames,
                                              std::uint32_t length,
                                              double voxel_resolution) {
    if (length < 1) throw Error("window length must be >= 1");
    if (length > n_frames) throw Error("window longer than sequence");

    // Bucket the cluster's points by frame.
    std::vector<std::vector<std::size_t>> by_frame(n_frames);
    for (std::size_t i : cluster.point_indices) {
        const std::uint32_t f = points[i].frame_index;
        if (f >= n_frames) throw Error("frame index out of range");
        by_frame[f].push_back(i);
    }

    const std::size_t window_count = n_frames - length + 1;
    std::vector<WindowSlice> slices;
    slices.reserve(window_count);
    for (std::size_t start = 0; start < window_count; ++start) {
        WindowSlice slice;
        slice.cluster_id = cluster.id;
        slice.start_frame = static_cast<std::uint32_t>(start);
        slice.length = length;
        for (std::size_t f = start; f < start + length; ++f)
            slice.point_indices.insert(slice.point_indices.end(), by_frame[f].begin(),
                                       by_frame[f].end());
        if (!slice.point_indices.empty()) {
            VoxelSet voxels = voxelize(points, slice.point_indices, voxel_resolution);
            slice.stats.emplace(slice.point_indices.size(), std::move(voxels));
        }
        slices.push_back(std::move(slice));
    }
    return slices;
}

}  // namespace skytrack

#pragma once

// Uniform hash-grid index over a fixed point cloud for radius queries.
// Cells are cubes of the given size; a radius-r query scans the cells
// overlapping the query ball, so with cell_size == r that is the classic
// 27-cell neighborhood. Query results follow a fixed deterministic order:
// cells in lexicographic (x, y, z) order, insertion order within a cell.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "skytrack/geometry.hpp"

namespace skytrack {

class HashGrid {
public:
    HashGrid(std::span<const TimedPoint> points, double cell_size)
        : cell_(cell_size) {
        if (!(cell_size > 0.0)) throw Error("bad resolution");
        xs_.reserve(points.size());
        ys_.reserve(points.size());
        zs_.reserve(points.size());
        for (const TimedPoint& p : points) {
            xs_.push_back(p.x);
            ys_.push_back(p.y);
            zs_.push_back(p.z);
        }
        for (std::size_t i = 0; i < xs_.size(); ++i)
            cells_[voxel_of(xs_[i], ys_[i], zs_[i], cell_)].push_back(i);
    }

    std::size_t size() const { return xs_.size(); }

    // Indices of all points with distance <= radius from q (inclusive).
    void query_ball(double qx, double qy, double qz, double radius,
                    std::vector<std::size_t>& out) const {
        out.clear();
        const double r2 = radius * radius;
        for_cells_in_range(qx, qy, qz, radius, [&](const std::vector<std::size_t>& bucket) {
            for (std::size_t i : bucket) {
                if (sq_dist(i, qx, qy, qz) <= r2) out.push_back(i);
            }
            return false;  // never stop early
        });
    }

    // Exact number of points within radius of point `query_index`, excluding
    // the query point itself.
    std::size_t count_within(std::size_t query_index, double radius) const {
        const double qx = xs_[query_index];
        const double qy = ys_[query_index];
        const double qz = zs_[query_index];
        const double r2 = radius * radius;
        std::size_t count = 0;
        for_cells_in_range(qx, qy, qz, radius, [&](const std::vector<std::size_t>& bucket) {
            for (std::size_t i : bucket) {
                if (i != query_index && sq_dist(i, qx, qy, qz) <= r2) ++count;
            }
            return false;
        });
        return count;
    }

    // True iff at least `k` points (self excluded) lie within radius of point
    // `query_index`. Equivalent to count_within(...) >= k but stops early.
    bool has_at_least(std::size_t query_index, double radius, std::size_t k) const {
        if (k == 0) return true;
        const double qx = xs_[query_index];
        const double qy = ys_[query_index];
        const double qz = zs_[query_index];
        const double r2 = radius * radius;
        std::size_t count = 0;
        bool reached = false;
        for_cells_in_range(qx, qy, qz, radius, [&](const std::vector<std::size_t>& bucket) {
            for (std::size_t i : bucket) {
                if (i != query_index && sq_dist(i, qx, qy, qz) <= r2) {
                    if (++count >= k) {
                        reached = true;
                        return true;
                    }
                }
            }
            return false;
        });
        return reached;
    }

private:
    double sq_dist(std::size_t i, double qx, double qy, double qz) const {
        const double dx = xs_[i] - qx;
        const double dy = ys_[i] - qy;
        const double dz = zs_[i] - qz;
        return dx * dx + dy * dy + dz * dz;
    }

    // Visit buckets of every cell overlapping the ball's bounding box, in a
    // fixed lexicographic order. `fn` returns true to stop the scan.
    template <typename Fn>
    void for_cells_in_range(double qx, double qy, double qz, double radius,
                            Fn&& fn) const {
        const VoxelCoord lo = voxel_of(qx - radius, qy - radius, qz - radius, cell_);
        const VoxelCoord hi = voxel_of(qx + radius, qy + radius, qz + radius, cell_);
        for (std::int64_t cx = lo.x; cx <= hi.x; ++cx)
            for (std::int64_t cy = lo.y; cy <= hi.y; ++cy)
                for (std::int64_t cz = lo.z; cz <= hi.z; ++cz) {
                    const auto it = cells_.find(VoxelCoord{cx, cy, cz});
                    if (it == cells_.end()) continue;
                    if (fn(it->second)) return;
                }
    }

    double cell_;
    std::vector<double> xs_, ys_, zs_;
    std::unordered_map<VoxelCoord, std::vector<std::size_t>, VoxelCoordHash> cells_;
};

}  // namespace skytrack

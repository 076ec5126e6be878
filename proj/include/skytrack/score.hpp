#pragma once

// Spatio-temporal confidence scoring. Each cluster gets a density-matching
// score (mean or sum of exp of window-to-global relative density) and a
// voxel-coincidence score (mean or sum of ln(1/IoU) over consecutive window
// slices); the highest combined score is taken as the target trajectory.
//
// Stationary surfaces accumulate returns over the whole sequence, so their
// windows are locally sparse (relative density well below 1) and their voxel
// sets barely move (IoU near 1, ln term near 0). A mover is sampled at a
// steady rate (relative density near 1) and keeps vacating voxels (smaller
// IoU, larger ln term), so it wins on both axes.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "skytrack/cluster.hpp"
#include "skytrack/geometry.hpp"

namespace skytrack {

struct ScoringConfig {
    double lambda = 1.0;          // weight of the voxel-coincidence score
    double iou_floor = 1e-3;      // clamp before ln(1/IoU); keeps movers finite
    int min_active_windows = 3;   // exclude clusters with less temporal support
    bool normalize = true;        // mean instead of raw sum for both scores

    void validate() const {
        if (lambda < 0.0) throw Error("score lambda must be >= 0");
        if (!(iou_floor > 0.0 && iou_floor <= 1.0))
            throw Error("score iou_floor must be in (0, 1]");
        if (min_active_windows < 1)
            throw Error("score min_active_windows must be >= 1");
    }
};

struct ScoreBreakdown {
    std::int32_t cluster_id = 0;
    std::vector<std::uint32_t> window_start_frames;  // non-empty windows, in order
    std::vector<double> relative_densities;          // R per non-empty window
    std::vector<double> ious;                        // consecutive non-empty pairs
    double score_iou = 0.0;
    double score_dens = 0.0;
    double total = 0.0;
    std::size_t active_window_count = 0;
};

// R = window density / global cluster density.
inline double relative_density(const Cluster& cluster, const WindowSlice& slice) {
    if (slice.empty() || !slice.stats) throw Error("empty window");
    return slice.stats->density / cluster.stats.density;
}

// Voxel IoU between each consecutive pair of non-empty slices, in time order.
inline std::vector<double> iou_chain(const std::vector<WindowSlice>& slices) {
    std::vector<const WindowSlice*> active;
    for (const WindowSlice& s : slices)
        if (!s.empty()) active.push_back(&s);
    if (active.size() < 2) throw Error("insufficient windows");

    std::vector<double> chain;
    chain.reserve(active.size() - 1);
    for (std::size_t i = 0; i + 1 < active.size(); ++i)
        chain.push_back(voxel_iou(active[i]->stats->voxels, active[i + 1]->stats->voxels));
    return chain;
}

// Sum (or mean, when cfg.normalize) of ln(1 / max(IoU, iou_floor)).
inline double score_iou_value(std::span<const double> ious, const ScoringConfig& cfg) {
    if (ious.empty()) throw Error("insufficient windows");
    double sum = 0.0;
    for (double iou : ious) sum += std::log(1.0 / std::max(iou, cfg.iou_floor));
    return cfg.normalize ? sum / static_cast<double>(ious.size()) : sum;
}

// Sum (or mean, when cfg.normalize) of exp(R).
inline double score_dens_value(std::span<const double> relative_densities,
                               const ScoringConfig& cfg) {
    if (relative_densities.empty()) throw Error("empty window");
    double sum = 0.0;
    for (double r : relative_densities) sum += std::exp(r);
    return cfg.normalize ? sum / static_cast<double>(relative_densities.size()) : sum;
}

// Scores one cluster from its window slices. Returns nullopt when the
// cluster has too little temporal support to evaluate motion (fewer than
// min_active_windows non-empty windows, or fewer than the 2 a chain needs).
inline std::optional<ScoreBreakdown> score_cluster(const Cluster& cluster,
                                                   const std::vector<WindowSlice>& slices,
                                                   const ScoringConfig& cfg) {
    cfg.validate();

    ScoreBreakdown b;
    b.cluster_id = cluster.id;
    for (const WindowSlice& s : slices) {
        if (s.empty()) continue;
        b.window_start_frames.push_back(s.start_frame);
        b.relative_densities.push_back(relative_density(cluster, s));
    }
    b.active_window_count = b.relative_densities.size();
    if (b.active_window_count < static_cast<std::size_t>(cfg.min_active_windows) ||
        b.active_window_count < 2)
        return std::nullopt;

    b.ious = iou_chain(slices);
    b.score_dens = score_dens_value(b.relative_densities, cfg);
    b.score_iou = score_iou_value(b.ious, cfg);
    b.total = b.score_dens + cfg.lambda * b.score_iou;
    return b;
}

// Argmax of total score. Ties break to the higher density score, then to the
// lower cluster id.
inline std::int32_t select_uav_cluster(const std::vector<ScoreBreakdown>& breakdowns) {
    if (breakdowns.empty()) throw NoCandidateError();
    const ScoreBreakdown* best = &breakdowns.front();
    for (const ScoreBreakdown& b : breakdowns) {
        if (b.total > best->total ||
            (b.total == best->total &&
             (b.score_dens > best->score_dens ||
              (b.score_dens == best->score_dens && b.cluster_id < best->cluster_id))))
            best = &b;
    }
    return best->cluster_id;
}

}  // namespace skytrack

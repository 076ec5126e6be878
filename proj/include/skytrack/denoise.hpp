#pragma once

// Density-based noise rejection over the superimposed sequence. Only points
// from the configured sensors are eligible for removal; neighbor counts are
// taken against the full superimposed cloud regardless of sensor.

#include <cstddef>
#include <vector>

#include "skytrack/geometry.hpp"
#include "skytrack/ingest.hpp"
#include "skytrack/parallel.hpp"
#include "skytrack/spatial_grid.hpp"

namespace skytrack {

struct SensorSet {
    bool avia = true;
    bool mid360 = false;

    bool contains(Sensor s) const {
        return s == Sensor::Avia ? avia : mid360;
    }
};

struct DenoiseParams {
    double radius = 1.0;
    int min_neighbors = 4;
    SensorSet apply_to;  // default: AVIA only

    void validate() const {
        if (!(radius > 0.0)) throw Error("denoise radius must be positive");
        if (min_neighbors < 1) throw Error("denoise min_neighbors must be >= 1");
    }
};

// Concatenation of all frames' points, stable by (frame_index, stored order).
inline std::vector<TimedPoint> superimpose(const SequenceCloud& seq) {
    std::vector<TimedPoint> out;
    out.reserve(seq.total_points());
    for (const Frame& f : seq.frames)
        out.insert(out.end(), f.points.begin(), f.points.end());
    return out;
}

struct DenoiseResult {
    std::vector<TimedPoint> kept;
    std::vector<TimedPoint> removed;
};

// A point from an eligible sensor is kept iff at least min_neighbors other
// points lie within radius of it. The partition is a pure function of
// (points, params) and independent of the thread count.
inline DenoiseResult density_filter(const std::vector<TimedPoint>& points,
                                    const DenoiseParams& params,
                                    unsigned threads = 1) {
    params.validate();
    DenoiseResult result;
    if (points.empty()) return result;

    const HashGrid grid(points, params.radius);
    const std::size_t need = static_cast<std::size_t>(params.min_neighbors);
    std::vector<std::uint8_t> keep(points.size(), 1);

    parallel_for(points.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            if (!params.apply_to.contains(points[i].sensor)) continue;
            if (!grid.has_at_least(i, params.radius, need)) keep[i] = 0;
        }
    });

    for (std::size_t i = 0; i < points.size(); ++i) {
        if (keep[i])
            result.kept.push_back(points[i]);
        else
            result.removed.push_back(points[i]);
    }
    return result;
}

}  // namespace skytrack

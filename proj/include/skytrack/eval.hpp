#pragma once

// Accuracy metrics: mean squared Euclidean error over matched, detected
// samples, and Sequence Detection Accuracy (detected time over total time).

#include <algorithm>
#include <cstddef>
#include <vector>

#include "skytrack/geometry.hpp"
#include "skytrack/ingest.hpp"
#include "skytrack/trajectory.hpp"

namespace skytrack {

struct EvalReport {
    double mse = 0.0;              // m^2, over matched detected samples
    double sda = 0.0;              // in [0, 1]
    std::size_t matched_count = 0; // matched and detected samples
    double undetected_time = 0.0;  // seconds charged against SDA
};

// Mean squared Euclidean error over samples whose timestamps match a ground
// truth sample exactly. Undetected samples are excluded here; they are
// charged to SDA instead.
inline double mse(const Trajectory& pred, const GroundTruth& gt) {
    double sum = 0.0;
    std::size_t matched = 0;
    std::size_t gi = 0;
    for (const TrajectorySample& s : pred.samples) {
        while (gi < gt.samples.size() && gt.samples[gi].t < s.t) ++gi;
        if (gi == gt.samples.size()) break;
        if (gt.samples[gi].t != s.t || !s.detected) continue;
        sum += (s.pos() - gt.samples[gi].pos()).squared_norm();
        ++matched;
    }
    if (matched == 0) throw Error("nothing to score");
    return sum / static_cast<double>(matched);
}

namespace detail {

// Time interval each sample represents: half-interval to each neighbor,
// with the first and last samples extended to the window edges 0 and
// total_time. Weights tile [0, total_time] for in-range timestamps.
inline std::vector<double> sample_time_weights(const std::vector<TrajectorySample>& samples,
                                               double total_time) {
    const std::size_t m = samples.size();
    std::vector<double> w(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const double left = i == 0 ? 0.0 : (samples[i - 1].t + samples[i].t) / 2.0;
        const double right =
            i + 1 == m ? total_time : (samples[i].t + samples[i + 1].t) / 2.0;
        const double lo = std::clamp(left, 0.0, total_time);
        const double hi = std::clamp(right, 0.0, total_time);
        w[i] = hi > lo ? hi - lo : 0.0;
    }
    return w;
}

}  // namespace detail

// Fraction of the sequence time covered by detected samples.
inline double sda(const Trajectory& pred, double total_time) {
    if (!(total_time > 0.0)) throw Error("bad total time");
    if (pred.samples.empty()) return 0.0;

    bool all_detected = true;
    bool none_detected = true;
    for (const TrajectorySample& s : pred.samples) {
        if (s.detected)
            none_detected = false;
        else
            all_detected = false;
    }
    if (all_detected) return 1.0;
    if (none_detected) return 0.0;

    const std::vector<double> w = detail::sample_time_weights(pred.samples, total_time);
    double detected = 0.0;
    for (std::size_t i = 0; i < pred.samples.size(); ++i)
        if (pred.samples[i].detected) detected += w[i];
    return detected / total_time;
}

inline double undetected_time(const Trajectory& pred, double total_time) {
    return total_time * (1.0 - sda(pred, total_time));
}

inline EvalReport evaluate(const Trajectory& pred, const GroundTruth& gt,
                           double total_time) {
    EvalReport report;
    report.sda = sda(pred, total_time);
    report.undetected_time = total_time * (1.0 - report.sda);

    double sum = 0.0;
    std::size_t matched = 0;
    std::size_t gi = 0;
    for (const TrajectorySample& s : pred.samples) {
        while (gi < gt.samples.size() && gt.samples[gi].t < s.t) ++gi;
        if (gi == gt.samples.size()) break;
        if (gt.samples[gi].t != s.t || !s.detected) continue;
        sum += (s.pos() - gt.samples[gi].pos()).squared_norm();
        ++matched;
    }
    if (matched == 0) throw Error("nothing to score");
    report.mse = sum / static_cast<double>(matched);
    report.matched_count = matched;
    return report;
}

}  // namespace skytrack

#pragma once

// Continuous trajectory reconstruction: sliding-median prefilter over the
// segmented target points, uniform cubic B-spline evaluation, and
// timestamp-mapped interpolation with clamped ends.

#include <algorithm>
#include <array>
#include <cstddef>
#include <vector>

#include "skytrack/geometry.hpp"

namespace skytrack {

// Time-sorted target returns. Multiple returns may share one timestamp;
// they stay in stored order as a consecutive block.
struct UavPointSet {
    std::vector<TimedPoint> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

inline UavPointSet make_uav_point_set(std::vector<TimedPoint> points) {
    std::stable_sort(points.begin(), points.end(),
                     [](const TimedPoint& a, const TimedPoint& b) { return a.t < b.t; });
    return UavPointSet{std::move(points)};
}

struct TrajectorySample {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    // False when the query fell outside the control points' time span and
    // the boundary evaluation was used instead.
    bool detected = true;

    Vec3 pos() const { return {x, y, z}; }
};

struct Trajectory {
    UavPointSet control_points;
    std::vector<TrajectorySample> samples;  // strictly increasing t
};

// Per-coordinate sliding median of odd width `window` over the time-sorted
// points. Windows are clipped at the edges; even-sized clipped windows take
// the lower median. Timestamps and tags are left untouched.
inline UavPointSet prefilter(const UavPointSet& input, int window) {
    if (input.empty()) throw Error("no trajectory points");
    if (window < 1 || window % 2 == 0) throw Error("bad median window");
    if (window == 1) return input;

    const std::vector<TimedPoint>& pts = input.points;
    const std::size_t n = pts.size();
    const std::size_t half = static_cast<std::size_t>(window) / 2;
    std::vector<TimedPoint> out = pts;
    std::vector<double> buf;
    buf.reserve(static_cast<std::size_t>(window));

    const auto median_of = [&buf](auto&& coord, std::size_t lo, std::size_t hi) {
        buf.clear();
        for (std::size_t j = lo; j <= hi; ++j) buf.push_back(coord(j));
        std::sort(buf.begin(), buf.end());
        return buf[(buf.size() - 1) / 2];
    };

    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(n - 1, i + half);
        out[i].x = median_of([&pts](std::size_t j) { return pts[j].x; }, lo, hi);
        out[i].y = median_of([&pts](std::size_t j) { return pts[j].y; }, lo, hi);
        out[i].z = median_of([&pts](std::size_t j) { return pts[j].z; }, lo, hi);
    }
    return UavPointSet{std::move(out)};
}

// Uniform cubic B-spline basis. Weights sum to 1 for any u in [0, 1].
inline std::array<double, 4> spline_basis(double u) {
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double omu = 1.0 - u;
    return {omu * omu * omu / 6.0, (3.0 * u3 - 6.0 * u2 + 4.0) / 6.0,
            (-3.0 * u3 + 3.0 * u2 + 3.0 * u + 1.0) / 6.0, u3 / 6.0};
}

inline Vec3 spline_eval(const Vec3& p0, const Vec3& p1, const Vec3& p2,
                        const Vec3& p3, double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw Error("parameter out of range");
    const std::array<double, 4> b = spline_basis(u);
    return p0 * b[0] + p1 * b[1] + p2 * b[2] + p3 * b[3];
}

namespace detail {

// Sliding 4-point segments over the control sequence with both boundary
// points tripled, so evaluation covers the full [t_first, t_last] window.
// Segment j spans the timestamps of its two middle control points.
class SplineCurve {
public:
    explicit SplineCurve(const UavPointSet& control) {
        const std::vector<TimedPoint>& src = control.points;
        pts_.reserve(src.size() + 4);
        pts_.push_back(src.front().pos());
        pts_.push_back(src.front().pos());
        ts_.reserve(src.size() + 4);
        ts_.push_back(src.front().t);
        ts_.push_back(src.front().t);
        for (const TimedPoint& p : src) {
            pts_.push_back(p.pos());
            ts_.push_back(p.t);
        }
        pts_.push_back(src.back().pos());
        pts_.push_back(src.back().pos());
        ts_.push_back(src.back().t);
        ts_.push_back(src.back().t);
        for (std::size_t j = 0; j + 3 < pts_.size(); ++j) {
            if (ts_[j + 2] > ts_[j + 1]) spans_.push_back(j);
        }
    }

    double t_first() const { return ts_.front(); }
    double t_last() const { return ts_.back(); }

    Vec3 eval_segment(std::size_t j, double u) const {
        return spline_eval(pts_[j], pts_[j + 1], pts_[j + 2], pts_[j + 3], u);
    }

    // Position at time t, clamped to the boundary evaluation outside the
    // covered window.
    Vec3 at(double t) const {
        if (t <= t_first()) return eval_segment(0, 0.0);
        if (t >= t_last()) return eval_segment(pts_.size() - 4, 1.0);
        // Positive-length spans tile (t_first, t_last); pick the last one
        // starting at or before t.
        std::size_t lo = 0;
        std::size_t hi = spans_.size();
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            if (ts_[spans_[mid] + 1] <= t)
                lo = mid;
            else
                hi = mid;
        }
        const std::size_t j = spans_[lo];
        const double start = ts_[j + 1];
        const double end = ts_[j + 2];
        const double u = std::clamp((t - start) / (end - start), 0.0, 1.0);
        return eval_segment(j, u);
    }

private:
    std::vector<Vec3> pts_;
    std::vector<double> ts_;
    std::vector<std::size_t> spans_;  // segment indices with positive span
};

}  // namespace detail

// Evaluates the fitted curve at each query timestamp. Queries must be
// strictly increasing. Queries outside the control points' time span are
// clamped to the boundary evaluation and flagged detected=false.
inline Trajectory interpolate(const UavPointSet& control,
                              const std::vector<double>& query_ts) {
    if (control.size() < 4) throw Error("insufficient points for spline");
    for (std::size_t i = 1; i < query_ts.size(); ++i)
        if (!(query_ts[i] > query_ts[i - 1]))
            throw Error("query timestamps not increasing");

    const detail::SplineCurve curve(control);
    Trajectory traj;
    traj.control_points = control;
    traj.samples.reserve(query_ts.size());
    for (double t : query_ts) {
        const Vec3 p = curve.at(t);
        const bool covered = t >= curve.t_first() && t <= curve.t_last();
        traj.samples.push_back(TrajectorySample{t, p.x, p.y, p.z, covered});
    }
    return traj;
}

}  // namespace skytrack

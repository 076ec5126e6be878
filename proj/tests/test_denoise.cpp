#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <vector>

#include "oracles.hpp"
#include "skytrack/denoise.hpp"
#include "skytrack/spatial_grid.hpp"

using namespace skytrack;

namespace {

TimedPoint pt(double x, double y, double z, Sensor s = Sensor::Avia, std::uint32_t f = 0) {
    return TimedPoint{x, y, z, 0.1 * f, s, f};
}

std::vector<TimedPoint> random_cloud(std::uint64_t seed, std::size_t n, double extent,
                                     double avia_fraction = 0.7) {
    oracles::TestRng rng(seed);
    std::vector<TimedPoint> pts;
    pts.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back(pt(rng.uniform(-extent, extent), rng.uniform(-extent, extent),
                         rng.uniform(-extent, extent),
                         rng.uniform() < avia_fraction ? Sensor::Avia : Sensor::Mid360,
                         static_cast<std::uint32_t>(rng.index(50))));
    return pts;
}

bool same_points(const std::vector<TimedPoint>& a, const std::vector<TimedPoint>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].x != b[i].x || a[i].y != b[i].y || a[i].z != b[i].z ||
            a[i].sensor != b[i].sensor || a[i].frame_index != b[i].frame_index)
            return false;
    return true;
}

}  // namespace

TEST_CASE("superimpose: concatenates frames in order") {
    SequenceCloud seq;
    seq.frames.push_back(Frame{0, 0.0, {pt(1, 0, 0, Sensor::Avia, 0), pt(2, 0, 0, Sensor::Avia, 0)}});
    seq.frames.push_back(Frame{1, 0.1, {}});
    seq.frames.push_back(Frame{2, 0.2,
                               {pt(3, 0, 0, Sensor::Avia, 2), pt(4, 0, 0, Sensor::Avia, 2),
                                pt(5, 0, 0, Sensor::Avia, 2), pt(6, 0, 0, Sensor::Avia, 2),
                                pt(7, 0, 0, Sensor::Avia, 2)}});
    const std::vector<TimedPoint> all = superimpose(seq);
    REQUIRE(all.size() == 7);
    for (std::size_t i = 0; i < all.size(); ++i) CHECK(all[i].x == static_cast<double>(i + 1));
}

TEST_CASE("superimpose: single frame is the identity") {
    SequenceCloud seq;
    seq.frames.push_back(Frame{0, 0.0, {pt(1, 2, 3), pt(4, 5, 6)}});
    const std::vector<TimedPoint> all = superimpose(seq);
    CHECK(same_points(all, seq.frames[0].points));
}

TEST_CASE("density_filter: isolated avia point removed, mid360 kept") {
    std::vector<TimedPoint> pts;
    // Dense blob far away plus one isolated point 100 m out.
    for (int i = 0; i < 20; ++i) pts.push_back(pt(0.01 * i, 0, 0));
    pts.push_back(pt(100, 100, 100, Sensor::Avia));
    DenoiseParams params;  // radius 1.0, min_neighbors 4, avia only

    const DenoiseResult r = density_filter(pts, params);
    REQUIRE(r.removed.size() == 1);
    CHECK(r.removed[0].x == 100.0);

    pts.back().sensor = Sensor::Mid360;
    const DenoiseResult r2 = density_filter(pts, params);
    CHECK(r2.removed.empty());
    CHECK(r2.kept.size() == pts.size());
}

TEST_CASE("density_filter: empty input") {
    const DenoiseResult r = density_filter({}, DenoiseParams{});
    CHECK(r.kept.empty());
    CHECK(r.removed.empty());
}

TEST_CASE("density_filter: matches brute-force neighbor counting") {
    const std::vector<TimedPoint> pts = random_cloud(42, 500, 8.0);
    DenoiseParams params;
    params.radius = 1.2;
    params.min_neighbors = 3;

    const std::vector<std::size_t> counts = oracles::neighbor_counts(pts, params.radius);
    std::vector<TimedPoint> expect_kept, expect_removed;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const bool eligible = pts[i].sensor == Sensor::Avia;
        if (eligible && counts[i] < static_cast<std::size_t>(params.min_neighbors))
            expect_removed.push_back(pts[i]);
        else
            expect_kept.push_back(pts[i]);
    }

    const DenoiseResult r = density_filter(pts, params);
    CHECK(same_points(r.kept, expect_kept));
    CHECK(same_points(r.removed, expect_removed));
}

TEST_CASE("density_filter: kept and removed partition the input") {
    const std::vector<TimedPoint> pts = random_cloud(7, 300, 4.0);
    const DenoiseResult r = density_filter(pts, DenoiseParams{});
    CHECK(r.kept.size() + r.removed.size() == pts.size());
    // Partition preserves input order within each side; merge them back.
    std::vector<TimedPoint> merged;
    std::size_t ki = 0, ri = 0;
    for (const TimedPoint& p : pts) {
        if (ki < r.kept.size() && r.kept[ki].x == p.x && r.kept[ki].y == p.y &&
            r.kept[ki].z == p.z) {
            merged.push_back(r.kept[ki++]);
        } else {
            REQUIRE(ri < r.removed.size());
            merged.push_back(r.removed[ri++]);
        }
    }
    CHECK(same_points(merged, pts));
}

TEST_CASE("density_filter: raising min_neighbors never grows the kept set") {
    const std::vector<TimedPoint> pts = random_cloud(19, 400, 5.0);
    std::size_t prev_kept = pts.size() + 1;
    for (int mn = 1; mn <= 8; ++mn) {
        DenoiseParams params;
        params.min_neighbors = mn;
        const DenoiseResult r = density_filter(pts, params);
        CHECK(r.kept.size() <= prev_kept);
        prev_kept = r.kept.size();
    }
}

TEST_CASE("density_filter: result independent of thread count") {
    const std::vector<TimedPoint> pts = random_cloud(23, 1000, 6.0);
    DenoiseParams params;
    params.min_neighbors = 2;
    const DenoiseResult r1 = density_filter(pts, params, 1);
    const DenoiseResult r3 = density_filter(pts, params, 3);
    CHECK(same_points(r1.kept, r3.kept));
    CHECK(same_points(r1.removed, r3.removed));
}

TEST_CASE("hash grid: exact counts equal brute force") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const std::vector<TimedPoint> pts = random_cloud(seed, 400, 5.0);
        const double radius = 0.9;
        const HashGrid grid(pts, radius);
        const std::vector<std::size_t> expected = oracles::neighbor_counts(pts, radius);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            CHECK(grid.count_within(i, radius) == expected[i]);
            CHECK(grid.has_at_least(i, radius, 3) == (expected[i] >= 3));
        }
    }
}

TEST_CASE("hash grid: ball queries equal brute force membership") {
    const std::vector<TimedPoint> pts = random_cloud(31, 300, 4.0);
    const double radius = 1.1;
    const HashGrid grid(pts, radius);
    std::vector<std::size_t> got;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        grid.query_ball(pts[i].x, pts[i].y, pts[i].z, radius, got);
        std::vector<std::size_t> sorted = got;
        std::sort(sorted.begin(), sorted.end());
        CHECK(sorted == oracles::eps_ball(pts, i, radius));
    }
}

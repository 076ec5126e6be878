#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skytrack/cluster.hpp"

using namespace skytrack;

namespace {

TimedPoint pt(double x, double y, double z, std::uint32_t frame = 0) {
    return TimedPoint{x, y, z, 0.1 * frame, Sensor::Avia, frame};
}

bool throws_with(const std::function<void()>& fn, const std::string& needle) {
    try {
        fn();
    } catch (const Error& e) {
        return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
}

std::vector<TimedPoint> gaussian_blob(oracles::TestRng& rng, const Vec3& center, double sigma,
                                      int n) {
    std::vector<TimedPoint> pts;
    for (int i = 0; i < n; ++i)
        pts.push_back(pt(center.x + rng.normal(0, sigma), center.y + rng.normal(0, sigma),
                         center.z + rng.normal(0, sigma)));
    return pts;
}

}  // namespace

TEST_CASE("dbscan: coincident points form one cluster") {
    std::vector<TimedPoint> pts(10, pt(1.0, 1.0, 1.0));
    const std::vector<std::int32_t> labels = dbscan(pts, DbscanParams{0.5, 5});
    for (std::int32_t l : labels) CHECK(l == 0);
}

TEST_CASE("dbscan: isolated point is noise") {
    const std::vector<TimedPoint> pts{pt(0, 0, 0)};
    const std::vector<std::int32_t> labels = dbscan(pts, DbscanParams{0.5, 2});
    CHECK(labels[0] == kNoiseLabel);
}

TEST_CASE("dbscan: empty input") {
    CHECK(dbscan({}, DbscanParams{}).empty());
}

TEST_CASE("dbscan: two gaussian blobs match brute-force oracle") {
    oracles::TestRng rng(5);
    std::vector<TimedPoint> pts = gaussian_blob(rng, {0, 0, 0}, 0.1, 200);
    const std::vector<TimedPoint> blob2 = gaussian_blob(rng, {10, 0, 0}, 0.1, 200);
    pts.insert(pts.end(), blob2.begin(), blob2.end());

    const DbscanParams params{0.8, 5};
    const std::vector<std::int32_t> labels = dbscan(pts, params);

    std::set<std::int32_t> cluster_ids;
    for (std::int32_t l : labels)
        if (l >= 0) cluster_ids.insert(l);
    CHECK(cluster_ids.size() == 2);

    std::string why;
    const bool matches = oracles::dbscan_matches(pts, labels, params.eps,
                                                 static_cast<std::size_t>(params.min_pts), &why);
    CHECK_MESSAGE(matches, why);
}

TEST_CASE("dbscan: random instances match brute-force oracle") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        oracles::TestRng rng(seed * 977);
        const int n = 50 + static_cast<int>(rng.index(250));
        std::vector<TimedPoint> pts;
        for (int i = 0; i < n; ++i)
            pts.push_back(pt(rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)));
        const double eps = rng.uniform(0.3, 1.5);
        const int min_pts = 2 + static_cast<int>(rng.index(6));
        const std::vector<std::int32_t> labels = dbscan(pts, DbscanParams{eps, min_pts});
        std::string why;
        const bool matches =
            oracles::dbscan_matches(pts, labels, eps, static_cast<std::size_t>(min_pts), &why);
        const std::string msg = "seed " + std::to_string(seed) + ": " + why;
        CHECK_MESSAGE(matches, msg);
    }
}

TEST_CASE("dbscan: every point is noise or in exactly one cluster") {
    oracles::TestRng rng(17);
    std::vector<TimedPoint> pts;
    for (int i = 0; i < 400; ++i)
        pts.push_back(pt(rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)));
    const std::vector<std::int32_t> labels = dbscan(pts, DbscanParams{0.7, 4});
    std::int32_t max_label = -1;
    for (std::int32_t l : labels) {
        CHECK(l >= kNoiseLabel);
        max_label = std::max(max_label, l);
    }
    // Cluster ids are dense from 0.
    std::set<std::int32_t> seen(labels.begin(), labels.end());
    for (std::int32_t id = 0; id <= max_label; ++id) CHECK(seen.count(id) == 1);
}

TEST_CASE("dbscan: core partition invariant under input permutation") {
    oracles::TestRng rng(29);
    std::vector<TimedPoint> pts = gaussian_blob(rng, {0, 0, 0}, 0.4, 120);
    const std::vector<TimedPoint> blob2 = gaussian_blob(rng, {6, 0, 0}, 0.4, 120);
    pts.insert(pts.end(), blob2.begin(), blob2.end());
    const DbscanParams params{0.8, 5};

    // Identify core points (objective property of the point set).
    std::vector<bool> core(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        core[i] = oracles::eps_ball(pts, i, params.eps).size() >=
                  static_cast<std::size_t>(params.min_pts);

    const std::vector<std::int32_t> base = dbscan(pts, params);

    std::vector<std::size_t> perm(pts.size());
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.index(i)]);

    std::vector<TimedPoint> shuffled(pts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) shuffled[i] = pts[perm[i]];
    const std::vector<std::int32_t> permuted = dbscan(shuffled, params);

    // Map permuted labels back to original indexing.
    std::vector<std::int32_t> back(pts.size());
    for (std::size_t i = 0; i < perm.size(); ++i) back[perm[i]] = permuted[i];

    const auto part_a = oracles::canonical_core_partition(
        pts.size(), core, [&](std::size_t i) { return static_cast<long long>(base[i]); });
    const auto part_b = oracles::canonical_core_partition(
        pts.size(), core, [&](std::size_t i) { return static_cast<long long>(back[i]); });
    CHECK(part_a == part_b);
}

TEST_CASE("extract_global_clusters: all noise gives empty list") {
    const std::vector<TimedPoint> pts{pt(0, 0, 0), pt(10, 0, 0)};
    const std::vector<std::int32_t> labels{kNoiseLabel, kNoiseLabel};
    CHECK(extract_global_clusters(pts, labels, 0.5).empty());
}

TEST_CASE("extract_global_clusters: stats arithmetic") {
    std::vector<TimedPoint> pts;
    for (int i = 0; i < 8; ++i) pts.push_back(pt(0.2 + 0.05 * i, 0.5, 0.5));
    const std::vector<std::int32_t> labels(8, 0);
    const std::vector<Cluster> clusters = extract_global_clusters(pts, labels, 1.0);
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].stats.num == 8);
    CHECK(clusters[0].stats.voxels.volume() == doctest::Approx(1.0));
    CHECK(clusters[0].stats.density == doctest::Approx(8.0));
    CHECK(std::is_sorted(clusters[0].point_indices.begin(), clusters[0].point_indices.end()));
}

TEST_CASE("extract_global_clusters: member counts match a label-count oracle") {
    oracles::TestRng rng(3);
    std::vector<TimedPoint> pts;
    std::vector<std::int32_t> labels;
    std::map<std::int32_t, std::size_t> expected;
    for (int i = 0; i < 500; ++i) {
        pts.push_back(pt(rng.uniform(-10, 10), rng.uniform(-10, 10), rng.uniform(-10, 10)));
        const std::int32_t l = static_cast<std::int32_t>(rng.index(5)) - 1;  // -1..3
        labels.push_back(l);
        if (l >= 0) ++expected[l];
    }
    const std::vector<Cluster> clusters = extract_global_clusters(pts, labels, 0.5);
    REQUIRE(clusters.size() == expected.size());
    for (const Cluster& c : clusters) {
        CHECK(c.stats.num == expected[c.id]);
        CHECK(c.point_indices.size() == expected[c.id]);
        CHECK(c.stats.density ==
              doctest::Approx(static_cast<double>(c.stats.num) / c.stats.voxels.volume()));
    }
}

TEST_CASE("slice_windows: window count follows n - length + 1") {
    std::vector<TimedPoint> pts;
    for (std::uint32_t f = 0; f < 100; ++f) pts.push_back(pt(0.01 * f, 0, 0, f));
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    const Cluster cluster{0, idx, ClusterStats(pts.size(), voxelize(pts, 0.5))};
    const std::vector<WindowSlice> slices = slice_windows(cluster, pts, 100, 10, 0.5);
    CHECK(slices.size() == 91);
    CHECK(slices.front().start_frame == 0);
    CHECK(slices.back().start_frame == 90);
}

TEST_CASE("slice_windows: early cluster fills slice 0, leaves slice 50 empty") {
    std::vector<TimedPoint> pts;
    for (std::uint32_t f = 0; f < 10; ++f)
        for (int k = 0; k < 3; ++k) pts.push_back(pt(0.1 * f, 0.1 * k, 0, f));
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    const Cluster cluster{0, idx, ClusterStats(pts.size(), voxelize(pts, 0.5))};
    const std::vector<WindowSlice> slices = slice_windows(cluster, pts, 100, 10, 0.5);
    REQUIRE(slices.size() == 91);
    CHECK(slices[0].point_indices.size() == pts.size());
    CHECK_FALSE(slices[0].empty());
    CHECK(slices[0].stats.has_value());
    CHECK(slices[50].empty());
    CHECK_FALSE(slices[50].stats.has_value());
}

TEST_CASE("slice_windows: slices equal a brute-force frame filter") {
    oracles::TestRng rng(13);
    const std::size_t n_frames = 40;
    std::vector<TimedPoint> pts;
    for (int i = 0; i < 600; ++i)
        pts.push_back(pt(rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3),
                         static_cast<std::uint32_t>(rng.index(n_frames))));
    // Cluster owns a random subset.
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (rng.uniform() < 0.6) idx.push_back(i);
    const Cluster cluster{0, idx, ClusterStats(idx.size(), voxelize(pts, idx, 0.5))};

    const std::uint32_t length = 7;
    const std::vector<WindowSlice> slices = slice_windows(cluster, pts, n_frames, length, 0.5);
    REQUIRE(slices.size() == n_frames - length + 1);
    for (const WindowSlice& s : slices) {
        std::vector<std::size_t> expected;
        for (std::size_t i : idx) {
            const std::uint32_t f = pts[i].frame_index;
            if (f >= s.start_frame && f < s.start_frame + length) expected.push_back(i);
        }
        std::vector<std::size_t> got = s.point_indices;
        std::sort(got.begin(), got.end());
        std::sort(expected.begin(), expected.end());
        CHECK(got == expected);
    }
}

TEST_CASE("slice_windows: each point appears in the expected number of windows") {
    oracles::TestRng rng(41);
    const std::size_t n_frames = 30;
    const std::uint32_t length = 6;
    std::vector<TimedPoint> pts;
    for (int i = 0; i < 200; ++i)
        pts.push_back(pt(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2),
                         static_cast<std::uint32_t>(rng.index(n_frames))));
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    const Cluster cluster{0, idx, ClusterStats(pts.size(), voxelize(pts, 0.5))};

    const std::vector<WindowSlice> slices = slice_windows(cluster, pts, n_frames, length, 0.5);
    std::vector<std::size_t> appearances(pts.size(), 0);
    for (const WindowSlice& s : slices)
        for (std::size_t i : s.point_indices) ++appearances[i];
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const std::size_t f = pts[i].frame_index;
        const std::size_t first = f + 1 >= length ? f + 1 - length : 0;
        const std::size_t last = std::min<std::size_t>(f, n_frames - length);
        CHECK(appearances[i] == last - first + 1);
    }
}

TEST_CASE("slice_windows: window longer than sequence rejected") {
    std::vector<TimedPoint> pts{pt(0, 0, 0, 0)};
    const Cluster cluster{0, {0}, ClusterStats(1, voxelize(pts, 0.5))};
    CHECK(throws_with([&] { slice_windows(cluster, pts, 5, 6, 0.5); },
                      "window longer than sequence"));
}

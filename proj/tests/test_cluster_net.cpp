#include <doctest.h>

#include <set>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/rng.hpp"
#include "fixtures.hpp"

using namespace clusterlab;

namespace {

// Brute-force all-pairs segment intersection oracle for the planarity check.
bool brute_force_planar(const ClusterNet& net) {
    struct Seg {
        int arc, idx;
        Point2 a, b;
    };
    std::vector<Seg> segs;
    for (const auto& arc : net.arcs)
        for (size_t k = 0; k + 1 < arc.points.size(); ++k)
            segs.push_back({arc.id, static_cast<int>(k), arc.points[k], arc.points[k + 1]});
    for (size_t i = 0; i < segs.size(); ++i)
        for (size_t j = i + 1; j < segs.size(); ++j) {
            if (segs[i].arc == segs[j].arc && std::abs(segs[i].idx - segs[j].idx) <= 1)
                continue;
            if (segments_conflict(segs[i].a, segs[i].b, segs[j].a, segs[j].b, 1e-11))
                return false;
        }
    return true;
}

// Independent flood-fill rasterization: counts connected components per
// region on a grid, treating boundary-adjacent cells as walls.
std::vector<int> flood_fill_component_counts(const ClusterNet& net, int grid) {
    const Rect& w = net.window;
    std::vector<int> wall(grid * grid, 0);
    double dx = w.width() / grid, dy = w.height() / grid;
    double pad = 1.5 * std::max(dx, dy);
    for (const auto& arc : net.arcs)
        for (size_t k = 0; k + 1 < arc.points.size(); ++k) {
            Point2 a = arc.points[k], b = arc.points[k + 1];
            int i0 = std::max(0, static_cast<int>((std::min(a.x, b.x) - pad - w.xmin) / dx));
            int i1 = std::min(grid - 1,
                              static_cast<int>((std::max(a.x, b.x) + pad - w.xmin) / dx));
            int j0 = std::max(0, static_cast<int>((std::min(a.y, b.y) - pad - w.ymin) / dy));
            int j1 = std::min(grid - 1,
                              static_cast<int>((std::max(a.y, b.y) + pad - w.ymin) / dy));
            for (int i = i0; i <= i1; ++i)
                for (int j = j0; j <= j1; ++j) {
                    Point2 c{w.xmin + (i + 0.5) * dx, w.ymin + (j + 0.5) * dy};
                    if (point_segment_dist2(c, a, b) < pad * pad) wall[j * grid + i] = 1;
                }
        }
    RegionIndex index(net);
    std::vector<int> label(grid * grid, -2);
    std::vector<int> counts(net.m + 1, 0);
    std::vector<int> stack;
    for (int start = 0; start < grid * grid; ++start) {
        if (wall[start] || label[start] != -2) continue;
        int i = start % grid, j = start / grid;
        Point2 c{w.xmin + (i + 0.5) * dx, w.ymin + (j + 0.5) * dy};
        int region = index.locate(c);
        ++counts[region];
        stack.assign(1, start);
        label[start] = region;
        while (!stack.empty()) {
            int cell = stack.back();
            stack.pop_back();
            int ci = cell % grid, cj = cell / grid;
            const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
            for (int d = 0; d < 4; ++d) {
                int ni = ci + di[d], nj = cj + dj[d];
                if (ni < 0 || nj < 0 || ni >= grid || nj >= grid) continue;
                int n = nj * grid + ni;
                if (wall[n] || label[n] != -2) continue;
                label[n] = region;
                stack.push_back(n);
            }
        }
    }
    return counts;
}

}  // namespace

TEST_CASE("validate accepts the tangent-disk and bubble fixtures") {
    CHECK(validate(fixtures::disk_net(), CheckLevel::Strict).ok());
    CHECK(validate(fixtures::double_bubble_init(), CheckLevel::Strict).ok());
    CHECK(validate(fixtures::island_net(), CheckLevel::Strict).ok());
    CHECK(validate(fixtures::square_net(), CheckLevel::Structural).ok());
}

TEST_CASE("validate flags degenerate labels") {
    ClusterNet net = fixtures::double_bubble_init();
    net.arcs[2].left = net.arcs[2].right = 1;
    auto res = validate(net);
    REQUIRE(!res.ok());
    bool found = false;
    for (const auto& v : res.violations)
        if (v.code == "degenerate_labels") found = true;
    CHECK(found);
}

TEST_CASE("validate flags planarity breaks that the brute-force oracle sees") {
    ClusterNet net = fixtures::disk_net(1.0, 32);
    // Drag one vertex across the polygon so two far-apart segments cross.
    net.arcs[0].points[8] = {-1.2, 0.1};
    CHECK(!brute_force_planar(net));
    auto res = validate(net, CheckLevel::Structural);
    bool found = false;
    for (const auto& v : res.violations)
        if (v.code == "planarity" || v.code == "self_intersection") found = true;
    CHECK(found);

    CHECK(brute_force_planar(fixtures::double_bubble_init()));
}

TEST_CASE("validate rejects zero-length segments") {
    ClusterNet net = fixtures::disk_net();
    net.arcs[0].points[3] = net.arcs[0].points[2];
    auto res = validate(net);
    bool found = false;
    for (const auto& v : res.violations)
        if (v.code == "duplicate_point") found = true;
    CHECK(found);
}

TEST_CASE("region loops: disk orientation both sides") {
    ClusterNet net = fixtures::disk_net();
    auto inside = region_loops(net, 1);
    REQUIRE(inside.size() == 1);
    CHECK(signed_area(inside[0]) > 0.0);  // counterclockwise

    auto outside = region_loops(net, 0);
    REQUIRE(outside.size() == 1);
    CHECK(signed_area(outside[0]) < 0.0);  // clockwise (exterior complement)
    CHECK(std::abs(signed_area(outside[0]) + signed_area(inside[0])) < 1e-12);
}

TEST_CASE("region loops: double bubble hand-traced adjacency") {
    ClusterNet net = fixtures::double_bubble_init();
    auto sides = region_side_loops(net, 1);
    REQUIRE(sides.size() == 1);
    REQUIRE(sides[0].size() == 2);
    // Region 1 is the left bubble: its outer arc (id 0) forward and the
    // chord (id 2, which has region 1 on its right) backward.
    std::set<std::pair<int, bool>> got;
    for (const auto& s : sides[0]) got.insert({s.arc, s.forward});
    CHECK(got.count({0, true}) == 1);
    CHECK(got.count({2, false}) == 1);

    for (int region = 1; region <= net.m; ++region) {
        double total = 0.0;
        for (const auto& loop : region_loops(net, region)) total += signed_area(loop);
        CHECK(total > 0.0);
    }
}

TEST_CASE("region loops raise OpenLoop on corrupted topology") {
    ClusterNet net = fixtures::double_bubble_init();
    net.arcs.erase(net.arcs.begin());  // remove the left outer arc
    net.rebuild_incidence();
    CHECK_THROWS_AS(region_loops(net, 1), OpenLoopError);
}

TEST_CASE("components: counts, diameter, unbounded exterior") {
    auto disk = fixtures::disk_net();
    CHECK(components(disk, 1).size() == 1);

    auto island = fixtures::island_net(0.05);
    auto one = components(island, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].diameter == doctest::Approx(0.1).epsilon(0.02));
    auto two = components(island, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].loop_indices.size() == 2);  // outer ring plus the island hole

    auto db = fixtures::double_bubble_init();
    auto exterior = components(db, 0);
    REQUIRE(exterior.size() == 1);
    CHECK(!exterior[0].bounded);

    // A second disjoint loop of region 1 inside region 2 makes two
    // components for label 1.
    ClusterNet pair_net = fixtures::island_net(0.05);
    Arc extra;
    extra.id = 2;
    extra.from = extra.to = kFreeLoop;
    extra.left = 1;
    extra.right = 0;
    for (int k = 0; k <= 24; ++k) {
        double t = 2.0 * M_PI * k / 24;
        extra.points.push_back(Point2{-1.6, 0.0} + 0.2 * Vec2{std::cos(t), std::sin(t)});
    }
    extra.points.back() = extra.points.front();
    pair_net.arcs.push_back(extra);
    pair_net.rebuild_incidence();
    REQUIRE(validate(pair_net).ok());
    CHECK(components(pair_net, 1).size() == 2);
}

TEST_CASE("components agree with the flood-fill rasterization oracle") {
    for (const ClusterNet& net :
         {fixtures::disk_net(), fixtures::double_bubble_init(), fixtures::island_net(0.2)}) {
        auto counts = flood_fill_component_counts(net, 512);
        for (int region = 0; region <= net.m; ++region) {
            auto comps = components(net, region);
            CHECK(static_cast<int>(comps.size()) == counts[region]);
        }
    }
}

TEST_CASE("point sampling: every point lies in exactly one region") {
    ClusterNet net = fixtures::double_bubble_init();
    RegionIndex index(net);
    SplitMix64 rng(7);
    int on_boundary_skips = 0;
    for (int i = 0; i < 2000; ++i) {
        Point2 p = rng.point_in(net.window);
        double nearest = 1e300;
        for (const auto& arc : net.arcs)
            for (size_t k = 0; k + 1 < arc.points.size(); ++k)
                nearest = std::min(nearest,
                                   point_segment_dist2(p, arc.points[k], arc.points[k + 1]));
        if (nearest < 1e-18) { ++on_boundary_skips; continue; }
        int hits = 0;
        for (int region = 1; region <= net.m; ++region)
            if (point_in_loops(p, index.loops(region))) ++hits;
        // Region 0's loops trace the exterior clockwise, so even-odd
        // containment in them means "inside the bounded complement": there
        // the m regions cover the point exactly once, outside not at all.
        bool in_bounded_complement = point_in_loops(p, index.loops(0));
        CHECK(hits == (in_bounded_complement ? 1 : 0));
        CHECK(index.locate(p) == (hits ? index.locate(p) : 0));
    }
    CHECK(on_boundary_skips < 5);
}

TEST_CASE("save/load round trip is the identity") {
    for (const ClusterNet& net : {fixtures::disk_net(), fixtures::double_bubble_init()}) {
        std::string text = save_cluster(net);
        ClusterNet back = load_cluster(text);
        CHECK(nets_equal(net, back));
        CHECK(save_cluster(back) == text);  // bit-exact through decimal text
    }
}

TEST_CASE("load errors: missing fields and bad version") {
    ClusterNet net = fixtures::disk_net();
    std::string text = save_cluster(net);

    std::string no_targets = text;
    auto pos = no_targets.find("\"target_areas\"");
    no_targets = no_targets.substr(0, pos - 1) + "}";
    CHECK_THROWS_AS(load_cluster(no_targets), ParseError);

    std::string bad_version = text;
    pos = bad_version.find("\"1\"");
    bad_version.replace(pos, 3, "\"99\"");
    CHECK_THROWS_AS(load_cluster(bad_version), SchemaVersionError);

    CHECK_THROWS_AS(load_cluster("{not json"), ParseError);
}

TEST_CASE("load rejects endpoint mismatch beyond 1e-12") {
    ClusterNet net = fixtures::double_bubble_init();
    net.arcs[0].points.front().x += 1e-9;
    CHECK_THROWS_AS(load_cluster(save_cluster(net)), ParseError);
}

TEST_CASE("strict validation requires degree-3 nodes") {
    ClusterNet net = fixtures::pinwheel_net();
    CHECK(validate(net, CheckLevel::Structural).ok());
    auto res = validate(net, CheckLevel::Strict);
    bool found = false;
    for (const auto& v : res.violations)
        if (v.code == "degree") found = true;
    CHECK(found);
}

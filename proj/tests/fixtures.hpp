#pragma once

#include <vector>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/density.hpp"
#include "clusterlab/optimizer.hpp"
#include "clusterlab/scenario.hpp"

namespace clusterlab::fixtures {

inline ClusterNet disk_net(double radius = 1.0, int segments = 64) {
    ClusterNet net = polygon_circle_net({0.0, 0.0}, radius, segments);
    net.target_areas = {M_PI * radius * radius};
    net.rebuild_incidence();
    return net;
}

// Two tangent-free disks sharing one straight interface (the scenario
// builder's double bubble template).
inline ClusterNet double_bubble_init() {
    Scenario s;
    s.name = "double_bubble";
    s.areas = {1.0, 1.0};
    s.density.kind = "constant";
    DensityField field = DensityField::constant(1.0);
    return build_scenario(s, field);
}

// Unit square as one region bounded by four arcs between four corner nodes.
// Corner nodes have degree 2, so this passes only structural validation;
// area and perimeter formulas do not care.
inline ClusterNet square_net(double x0 = 0.0, double y0 = 0.0, double side = 1.0) {
    ClusterNet net;
    net.m = 1;
    net.target_areas = {side * side};
    Point2 c[4] = {{x0, y0}, {x0 + side, y0}, {x0 + side, y0 + side}, {x0, y0 + side}};
    for (int k = 0; k < 4; ++k) net.nodes.push_back({k, c[k], {}});
    for (int k = 0; k < 4; ++k) {
        Arc a;
        a.id = k;
        a.from = k;
        a.to = (k + 1) % 4;
        a.left = 1;
        a.right = 0;
        a.points = {c[k], c[(k + 1) % 4]};
        net.arcs.push_back(std::move(a));
    }
    net.window = {x0 - side, y0 - side, x0 + 2 * side, y0 + 2 * side};
    net.rebuild_incidence();
    return net;
}

// Big disk labeled `outer` with a small loop labeled `inner` inside it.
inline ClusterNet island_net(double island_radius = 0.05) {
    ClusterNet net;
    net.m = 2;
    net.target_areas = {M_PI * island_radius * island_radius,
                        M_PI - M_PI * island_radius * island_radius};
    auto circle_arc = [&](int id, Point2 center, double r, int n, int left, int right) {
        Arc a;
        a.id = id;
        a.from = a.to = kFreeLoop;
        a.left = left;
        a.right = right;
        for (int k = 0; k <= n; ++k) {
            double t = 2.0 * M_PI * k / n;
            a.points.push_back(center + r * Vec2{std::cos(t), std::sin(t)});
        }
        a.points.back() = a.points.front();
        return a;
    };
    net.arcs.push_back(circle_arc(0, {0, 0}, 1.0, 64, 2, 0));                  // big disk
    net.arcs.push_back(circle_arc(1, {0.3, 0.2}, island_radius, 16, 1, 2));    // island
    net.window = {-2, -2, 2, 2};
    net.rebuild_incidence();
    return net;
}

// Sector regions in a disk, all interfaces meeting at one central node of
// degree = angles_deg.size(). Exercises junction popping.
inline ClusterNet pinwheel_net(double radius = 1.0,
                               std::vector<double> angles_deg = {0, 90, 180, 270}) {
    ClusterNet net;
    int n = static_cast<int>(angles_deg.size());
    net.m = n;
    net.target_areas.assign(n, M_PI * radius * radius / n);
    Point2 center{0.0, 0.0};
    net.nodes.push_back({0, center, {}});
    std::vector<Point2> rim(n);
    for (int k = 0; k < n; ++k) {
        double a = angles_deg[k] * M_PI / 180.0;
        rim[k] = {radius * std::cos(a), radius * std::sin(a)};
        net.nodes.push_back({k + 1, rim[k], {}});
    }
    const int spoke_segs = 12, rim_segs = 24;
    for (int k = 0; k < n; ++k) {  // spokes, sector k (ccw of spoke k) is region k+1
        Arc a;
        a.id = k;
        a.from = 0;
        a.to = k + 1;
        a.left = k + 1;
        a.right = (k + n - 1) % n + 1;
        for (int j = 0; j <= spoke_segs; ++j)
            a.points.push_back(center + (static_cast<double>(j) / spoke_segs) *
                                            (rim[k] - center));
        a.points.front() = center;
        a.points.back() = rim[k];
        net.arcs.push_back(std::move(a));
    }
    for (int k = 0; k < n; ++k) {  // rim arcs
        Arc a;
        a.id = n + k;
        a.from = k + 1;
        a.to = (k + 1) % n + 1;
        a.left = k + 1;
        a.right = 0;
        double a0 = angles_deg[k] * M_PI / 180.0;
        double a1 = angles_deg[(k + 1) % n] * M_PI / 180.0;
        if (a1 <= a0) a1 += 2.0 * M_PI;
        for (int j = 0; j <= rim_segs; ++j) {
            double ang = a0 + (a1 - a0) * j / rim_segs;
            a.points.push_back({radius * std::cos(ang), radius * std::sin(ang)});
        }
        a.points.front() = rim[k];
        a.points.back() = rim[(k + 1) % n];
        net.arcs.push_back(std::move(a));
    }
    net.window = {-2 * radius, -2 * radius, 2 * radius, 2 * radius};
    net.rebuild_incidence();
    return net;
}

// Converged fixtures, solved once and shared across test cases.
inline const std::pair<ClusterNet, SolveTrace>& converged_double_bubble() {
    static const std::pair<ClusterNet, SolveTrace> result = [] {
        Scenario s;
        s.name = "double_bubble";
        s.areas = {1.0, 1.0};
        s.density.kind = "constant";
        DensityField field = DensityField::constant(1.0);
        ClusterNet init = build_scenario(s, field);
        SolveConfig cfg;
        return solve(init, field, cfg);
    }();
    return result;
}

inline const ClusterNet& converged_circle() {
    static const ClusterNet result = [] {
        Scenario s;
        s.name = "circle";
        s.areas = {M_PI};
        s.density.kind = "constant";
        DensityField field = DensityField::constant(1.0);
        ClusterNet init = build_scenario(s, field);
        SolveConfig cfg;
        cfg.max_iters = 2000;
        return solve(init, field, cfg).first;
    }();
    return result;
}

}  // namespace clusterlab::fixtures

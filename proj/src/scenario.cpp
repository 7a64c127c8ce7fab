#include "clusterlab/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "clusterlab/functionals.hpp"
#include "clusterlab/numerics.hpp"
#include "clusterlab/optimizer.hpp"
#include "clusterlab/rng.hpp"

namespace clusterlab {

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {
        "circle",          "double_bubble",        "triple_bubble",
        "gaussian_double_bubble", "grushin_bubble", "grushin_double_bubble",
        "custom"};
    return names;
}

Scenario resolve_scenario_defaults(Scenario s) {
    if (s.density.kind.empty()) s.density.kind = "constant";
    if (s.name == "gaussian_double_bubble") s.density.kind = "gaussian";
    if (s.name == "grushin_bubble" || s.name == "grushin_double_bubble") {
        if (s.density.kind != "grushin") {
            s.density.kind = "grushin";
            s.density.alpha = 1.0;
        }
    }
    if (s.areas.empty()) {
        if (s.name == "circle") s.areas = {M_PI};
        else if (s.name == "double_bubble") s.areas = {1.0, 1.0};
        else if (s.name == "triple_bubble") s.areas = {1.0, 1.0, 1.0};
        else if (s.name == "gaussian_double_bubble") s.areas = {0.2, 0.2};
        else if (s.name == "grushin_bubble") s.areas = {0.5};
        else if (s.name == "grushin_double_bubble") s.areas = {0.4, 0.4};
    }
    return s;
}

ClusterNet polygon_circle_net(const Point2& center, double radius, int segments,
                              int region_label) {
    ClusterNet net;
    net.m = std::max(1, region_label);
    Arc arc;
    arc.id = 0;
    arc.from = arc.to = kFreeLoop;
    arc.left = region_label;  // CCW keeps the inside on the left
    arc.right = 0;
    for (int k = 0; k <= segments; ++k) {
        double a = 2.0 * M_PI * k / segments;
        arc.points.push_back(center + radius * Vec2{std::cos(a), std::sin(a)});
    }
    arc.points.back() = arc.points.front();
    net.arcs.push_back(std::move(arc));
    net.window = {center.x - 2.0 * radius, center.y - 2.0 * radius,
                  center.x + 2.0 * radius, center.y + 2.0 * radius};
    net.target_areas.assign(net.m, 1.0);
    return net;
}

namespace {

// Scales a template net about a center until its total weighted area matches
// the summed targets.
double fit_scale(const std::function<ClusterNet(double)>& make,
                 const DensityField& field, double total_target, double lo, double hi) {
    auto total_of = [&](double s) {
        ClusterNet net = make(s);
        auto areas = weighted_area(net, field);
        double sum = 0.0;
        for (double a : areas) sum += a;
        return sum - total_target;
    };
    // Expand the bracket upward if needed.
    double flo = total_of(lo);
    double fhi = total_of(hi);
    for (int i = 0; i < 40 && flo * fhi > 0.0; ++i) {
        hi *= 1.5;
        fhi = total_of(hi);
    }
    return find_root(total_of, lo, hi, 1e-12 * hi, 200);
}

// Circular arc through (0, +s) and (0, -s) with apex at (-w, 0), sampled
// top to bottom around the left side, then shifted by mid.
std::vector<Point2> lobe_points(const Point2& mid, double s, double w, int segs) {
    double cx = (s * s - w * w) / (2.0 * w);  // center on the x axis
    double R = w + cx;
    double a0 = std::atan2(s, -cx);
    std::vector<Point2> pts;
    pts.reserve(segs + 1);
    for (int k = 0; k <= segs; ++k) {
        double a = a0 + (2.0 * M_PI - 2.0 * a0) * k / segs;
        pts.push_back({mid.x + cx + R * std::cos(a), mid.y + R * std::sin(a)});
    }
    pts.front() = {mid.x, mid.y + s};
    pts.back() = {mid.x, mid.y - s};
    return pts;
}

// Two lobes of independent depth sharing a straight interface, so unequal
// target areas start near-feasible instead of fighting the restoration.
ClusterNet double_bubble_template(const Point2& mid, double s, double w1, double w2,
                                  int segs_outer, int segs_chord) {
    ClusterNet net;
    net.m = 2;
    Node n0{0, {mid.x, mid.y + s}, {}};
    Node n1{1, {mid.x, mid.y - s}, {}};
    net.nodes = {n0, n1};

    Arc left_arc;
    left_arc.id = 0;
    left_arc.from = 0;
    left_arc.to = 1;
    left_arc.left = 1;
    left_arc.right = 0;
    left_arc.points = lobe_points(mid, s, w1, segs_outer);

    Arc right_arc;
    right_arc.id = 1;
    right_arc.from = 1;
    right_arc.to = 0;
    right_arc.left = 2;
    right_arc.right = 0;
    right_arc.points = lobe_points(mid, s, w2, segs_outer);
    for (auto& p : right_arc.points) p.x = 2.0 * mid.x - p.x;  // mirror
    std::reverse(right_arc.points.begin(), right_arc.points.end());

    Arc chord;
    chord.id = 2;
    chord.from = 0;
    chord.to = 1;
    chord.left = 2;
    chord.right = 1;
    for (int k = 0; k <= segs_chord; ++k) {
        double t = static_cast<double>(k) / segs_chord;
        chord.points.push_back({mid.x, mid.y + s - 2.0 * s * t});
    }
    chord.points.front() = n0.pos;
    chord.points.back() = n1.pos;

    net.arcs = {std::move(left_arc), std::move(right_arc), std::move(chord)};
    double w_max = std::max({w1, w2, s});
    net.window = {mid.x - 2.5 * w_max, mid.y - 2.0 * w_max, mid.x + 2.5 * w_max,
                  mid.y + 2.0 * w_max};
    return net;
}

ClusterNet triple_bubble_template(const Point2& mid, double R, uint64_t seed) {
    ClusterNet net;
    net.m = 3;
    SplitMix64 rng(seed);
    double base[3] = {0.5 * M_PI, 0.5 * M_PI + 2.0 * M_PI / 3.0,
                      0.5 * M_PI + 4.0 * M_PI / 3.0};
    double jitter[3];
    for (double& j : jitter) j = 0.01 * (2.0 * rng.uniform01() - 1.0) * (2.0 * M_PI / 3.0);
    Point2 center = mid + 0.01 * R * rng.unit_vector();

    Node c{0, center, {}};
    net.nodes.push_back(c);
    Point2 rim[3];
    for (int k = 0; k < 3; ++k) {
        double a = base[k] + jitter[k];
        rim[k] = {mid.x + R * std::cos(a), mid.y + R * std::sin(a)};
        net.nodes.push_back({k + 1, rim[k], {}});
    }
    const int spoke_segs = 24, rim_segs = 64;
    // Spokes: center -> rim k, sector k (between spokes k and k+1) is region k+1.
    for (int k = 0; k < 3; ++k) {
        Arc a;
        a.id = k;
        a.from = 0;
        a.to = k + 1;
        a.left = k + 1;             // sector CCW of the spoke
        a.right = (k + 2) % 3 + 1;  // sector CW of the spoke
        for (int j = 0; j <= spoke_segs; ++j) {
            double t = static_cast<double>(j) / spoke_segs;
            a.points.push_back(center + t * (rim[k] - center));
        }
        a.points.front() = center;
        a.points.back() = rim[k];
        net.arcs.push_back(std::move(a));
    }
    // Rim arcs: rim k -> rim k+1 counterclockwise, inside on the left.
    for (int k = 0; k < 3; ++k) {
        Arc a;
        a.id = 3 + k;
        a.from = k + 1;
        a.to = (k + 1) % 3 + 1;
        a.left = k + 1;
        a.right = 0;
        double a0 = base[k] + jitter[k];
        double a1 = base[(k + 1) % 3] + jitter[(k + 1) % 3];
        if (a1 < a0) a1 += 2.0 * M_PI;
        for (int j = 0; j <= rim_segs; ++j) {
            double ang = a0 + (a1 - a0) * j / rim_segs;
            a.points.push_back({mid.x + R * std::cos(ang), mid.y + R * std::sin(ang)});
        }
        a.points.front() = rim[k];
        a.points.back() = rim[(k + 1) % 3];
        net.arcs.push_back(std::move(a));
    }
    net.window = {mid.x - 2.0 * R, mid.y - 2.0 * R, mid.x + 2.0 * R, mid.y + 2.0 * R};
    return net;
}

}  // namespace

ClusterNet build_scenario(const Scenario& input, const DensityField& field) {
    Scenario s = resolve_scenario_defaults(input);
    double total = 0.0;
    for (double a : s.areas) total += a;
    if (s.name != "custom" && !(total > 0.0))
        throw InvalidSpecError("target areas must be positive");

    ClusterNet net;
    if (s.name == "custom") {
        net = load_cluster_file(s.custom_file);
    } else if (s.name == "circle" || s.name == "grushin_bubble") {
        if (s.areas.size() != 1)
            throw InvalidSpecError(s.name + " expects one target area");
        Point2 center = s.name == "grushin_bubble" ? Point2{1.0, 0.0} : Point2{0.0, 0.0};
        double r = fit_scale(
            [&](double radius) { return polygon_circle_net(center, radius, 256); }, field,
            total, 1e-3, std::sqrt(total / M_PI) + 1.0);
        net = polygon_circle_net(center, r, 256);
    } else if (s.name == "double_bubble" || s.name == "gaussian_double_bubble" ||
               s.name == "grushin_double_bubble") {
        if (s.areas.size() != 2)
            throw InvalidSpecError(s.name + " expects two target areas");
        Point2 mid = s.name == "grushin_double_bubble" ? Point2{1.0, 0.0}
                                                       : Point2{0.0, 0.0};
        // Chord half-length from the smaller lobe, each lobe depth fitted to
        // its own target so the initial volumes are already close.
        double g_mid = std::max(field.g(mid), 1e-6);
        double r_small = std::sqrt(std::min(s.areas[0], s.areas[1]) / (M_PI * g_mid));
        double half = 0.75 * r_small;
        auto lobe_area = [&](int region, double w) {
            double wa = region == 1 ? w : half;
            double wb = region == 2 ? w : half;
            ClusterNet t = double_bubble_template(mid, half, wa, wb, 128, 32);
            return weighted_area(t, field)[region - 1];
        };
        double w_fit[2];
        for (int region = 1; region <= 2; ++region) {
            double target = s.areas[region - 1];
            double hi = half;
            for (int i = 0; i < 60 && lobe_area(region, hi) < target; ++i) hi *= 1.5;
            w_fit[region - 1] = find_root(
                [&](double w) { return lobe_area(region, w) - target; }, 0.05 * half,
                hi, 1e-12 * hi, 200);
        }
        net = double_bubble_template(mid, half, w_fit[0], w_fit[1], 128, 32);
    } else if (s.name == "triple_bubble") {
        if (s.areas.size() != 3)
            throw InvalidSpecError("triple_bubble expects three target areas");
        double guess = std::sqrt(total / M_PI);
        double scale = fit_scale(
            [&](double R) { return triple_bubble_template({0.0, 0.0}, R, s.seed); },
            field, total, 0.2 * guess, 3.0 * guess);
        net = triple_bubble_template({0.0, 0.0}, scale, s.seed);
    } else {
        throw InvalidSpecError("unknown scenario \"" + s.name + "\"");
    }

    if (s.name != "custom") net.target_areas = s.areas;
    net.m = static_cast<int>(net.target_areas.size());
    net.rebuild_incidence();
    return net;
}

}  // namespace clusterlab

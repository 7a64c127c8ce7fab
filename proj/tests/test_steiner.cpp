#include <doctest.h>

#include <cmath>

#include "clusterlab/rng.hpp"
#include "clusterlab/steiner.hpp"

using namespace clusterlab;

namespace {

double dist_sum(const Point2& w, const Point2& a, const Point2& b, const Point2& c) {
    return dist(w, a) + dist(w, b) + dist(w, c);
}

// Brute-force minimizer of the distance sum: coarse grid, then shrinking
// refinement around the best cell.
Point2 brute_force_fermat(const Point2& a, const Point2& b, const Point2& c) {
    double x0 = std::min({a.x, b.x, c.x}), x1 = std::max({a.x, b.x, c.x});
    double y0 = std::min({a.y, b.y, c.y}), y1 = std::max({a.y, b.y, c.y});
    Point2 best{0.5 * (x0 + x1), 0.5 * (y0 + y1)};
    double best_val = dist_sum(best, a, b, c);
    double hx = x1 - x0, hy = y1 - y0;
    for (int level = 0; level < 40; ++level) {
        const int n = 24;
        Point2 center = best;
        for (int i = -n; i <= n; ++i)
            for (int j = -n; j <= n; ++j) {
                Point2 p{center.x + hx * i / n, center.y + hy * j / n};
                double v = dist_sum(p, a, b, c);
                if (v < best_val) {
                    best_val = v;
                    best = p;
                }
            }
        hx *= 0.25;
        hy *= 0.25;
        if (std::max(hx, hy) < 1e-12) break;
    }
    return best;
}

double leg_angle_gap(const Tripod& t, int i, int j) {
    Vec2 u = normalized(t.legs[i].second - t.legs[i].first);
    Vec2 v = normalized(t.legs[j].second - t.legs[j].first);
    return std::acos(std::clamp(dot(u, v), -1.0, 1.0));
}

}  // namespace

TEST_CASE("equilateral triangle: fermat point is the centroid") {
    Point2 a{0, 0}, b{1, 0}, c{0.5, std::sqrt(3.0) / 2.0};
    Tripod t = fermat_point(a, b, c);
    Point2 centroid = (a + b + c) / 3.0;
    CHECK(dist(t.fermat_point, centroid) < 1e-12);
    for (int i = 0; i < 3; ++i)
        CHECK(leg_angle_gap(t, i, (i + 1) % 3) ==
              doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-10));
}

TEST_CASE("wide apex angle snaps to the vertex") {
    // Apex exactly 120 degrees at x.
    double theta = 2.0 * M_PI / 3.0;
    Point2 x{0, 0};
    Point2 y{std::cos(0.5 * theta), std::sin(0.5 * theta)};
    Point2 z{std::cos(0.5 * theta), -std::sin(0.5 * theta)};
    Tripod t = fermat_point(x, y, z);
    CHECK(t.degenerate);
    CHECK(dist(t.fermat_point, x) < 1e-14);
    CHECK(t.total_euclidean_length == doctest::Approx(2.0).epsilon(1e-12));

    // Clearly obtuse beyond 120.
    Tripod t2 = fermat_point({0, 0}, {1, 0.05}, {-1, 0.05});
    CHECK(t2.degenerate);
    CHECK(dist(t2.fermat_point, {0, 0}) < 1e-14);
}

TEST_CASE("right isoceles triangle matches the brute-force oracle") {
    Point2 a{0, 0}, b{1, 0}, c{0, 1};
    Tripod t = fermat_point(a, b, c);
    Point2 oracle = brute_force_fermat(a, b, c);
    CHECK(dist_sum(oracle, a, b, c) == doctest::Approx(t.total_euclidean_length).epsilon(1e-8));
    CHECK(dist(t.fermat_point, oracle) < 1e-6);
}

TEST_CASE("fermat optimality under perturbation") {
    SplitMix64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Point2 a = rng.point_in({-1, -1, 1, 1});
        Point2 b = rng.point_in({-1, -1, 1, 1});
        Point2 c = rng.point_in({-1, -1, 1, 1});
        double area = std::abs(orient2d(a, b, c));
        if (area < 1e-3) continue;
        Tripod t = fermat_point(a, b, c);
        double f0 = dist_sum(t.fermat_point, a, b, c);
        CHECK(f0 == doctest::Approx(t.total_euclidean_length).epsilon(1e-12));
        for (int k = 0; k < 16; ++k) {
            double ang = 2.0 * M_PI * k / 16.0;
            Point2 p = t.fermat_point + 1e-4 * Vec2{std::cos(ang), std::sin(ang)};
            CHECK(dist_sum(p, a, b, c) >= f0 - 1e-12);
        }
    }
}

TEST_CASE("l_theta endpoints, interior value, and monotonicity") {
    CHECK(l_theta(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(l_theta(2.0 * M_PI / 3.0) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(l_theta(M_PI / 3.0) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    double prev = l_theta(0.0);
    for (int k = 1; k < 1000; ++k) {
        double v = l_theta((2.0 * M_PI / 3.0) * k / 999.0);
        CHECK(v > prev);
        CHECK(v >= 1.0);
        CHECK(v <= 2.0 + 1e-15);
        prev = v;
    }
    CHECK_THROWS_AS(l_theta(-0.1), DomainError);
    CHECK_THROWS_AS(l_theta(2.2), DomainError);
}

TEST_CASE("l_theta agrees with the fermat tripod on isoceles triples") {
    // The closed form is gated on this cross-validation before anything
    // else relies on it.
    for (int k = 0; k <= 1000; ++k) {
        double theta = (2.0 * M_PI / 3.0) * k / 1000.0;
        Point2 x{0, 0};
        Point2 y{std::cos(0.5 * theta), std::sin(0.5 * theta)};
        Point2 z{std::cos(0.5 * theta), -std::sin(0.5 * theta)};
        if (k == 0) {
            // y == z: the triple degenerates to a segment of length 1.
            CHECK(l_theta(0.0) == doctest::Approx(1.0));
            continue;
        }
        Tripod t = fermat_point(x, y, z);
        CHECK(std::abs(t.total_euclidean_length - l_theta(theta)) < 1e-10);
    }
}

TEST_CASE("tripod polylines: lengths, containment, degenerate omission") {
    Point2 a{0, 0}, b{1, 0}, c{0.5, std::sqrt(3.0) / 2.0};
    auto legs = tripod_polylines(a, b, c, 0.1);
    REQUIRE(legs.size() == 3);
    for (const auto& leg : legs) {
        CHECK(polyline_length(leg) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
        for (size_t k = 1; k < leg.size(); ++k)
            CHECK(dist(leg[k - 1], leg[k]) <= 0.1 + 1e-12);
    }

    double theta = 2.0 * M_PI / 3.0;
    auto degenerate = tripod_polylines({0, 0}, {std::cos(0.5 * theta), std::sin(0.5 * theta)},
                                       {std::cos(0.5 * theta), -std::sin(0.5 * theta)}, 0.1);
    CHECK(degenerate.size() == 2);  // zero-length third leg omitted

    SplitMix64 rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        Point2 p = rng.point_in({-1, -1, 1, 1});
        Point2 q = rng.point_in({-1, -1, 1, 1});
        Point2 r = rng.point_in({-1, -1, 1, 1});
        if (std::abs(orient2d(p, q, r)) < 1e-3) continue;
        double orient = orient2d(p, q, r) > 0 ? 1.0 : -1.0;
        for (const auto& leg : tripod_polylines(p, q, r, 0.05))
            for (const auto& pt : leg) {
                CHECK(orient * orient2d(p, q, pt) >= -1e-9);
                CHECK(orient * orient2d(q, r, pt) >= -1e-9);
                CHECK(orient * orient2d(r, p, pt) >= -1e-9);
            }
    }
}

TEST_CASE("degenerate triangles raise") {
    CHECK_THROWS_AS(fermat_point({0, 0}, {0, 0}, {1, 1}), DegenerateTriangleError);
    CHECK_THROWS_AS(fermat_point({0, 0}, {1, 0}, {1.0 + 1e-16, 1e-16}),
                    DegenerateTriangleError);
    // A tiny but well-proportioned triangle is not degenerate.
    CHECK_NOTHROW(fermat_point({0, 0}, {1e-9, 0}, {0, 1e-9}));
}

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace clusterlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2 operator/(double s) const { return {x / s, y / s}; }
    Vec2 operator-() const { return {-x, -y}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
    bool operator!=(const Vec2& o) const { return !(*this == o); }
};

using Point2 = Vec2;

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm(const Vec2& v) { return std::sqrt(norm2(v)); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(b - a); }
inline double dist2(const Vec2& a, const Vec2& b) { return norm2(b - a); }
inline Vec2 perp_left(const Vec2& v) { return {-v.y, v.x}; }   // rotate +90 deg
inline Vec2 perp_right(const Vec2& v) { return {v.y, -v.x}; }  // rotate -90 deg
inline double angle_of(const Vec2& v) { return std::atan2(v.y, v.x); }
inline bool is_finite(const Vec2& v) { return std::isfinite(v.x) && std::isfinite(v.y); }

inline Vec2 normalized(const Vec2& v) {
    double n = norm(v);
    return n > 0.0 ? v / n : Vec2{0.0, 0.0};
}

inline Vec2 rotated(const Vec2& v, double a) {
    double c = std::cos(a), s = std::sin(a);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Angle difference wrapped to (0, 2*pi].
inline double ccw_angle_from_to(double from, double to) {
    double d = to - from;
    const double two_pi = 2.0 * M_PI;
    d = std::fmod(d, two_pi);
    if (d <= 0.0) d += two_pi;
    return d;
}

struct Rect {
    double xmin = 0.0, ymin = 0.0, xmax = 0.0, ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    double diagonal() const { return std::sqrt(width() * width() + height() * height()); }
    Point2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
    bool contains(const Point2& p) const {
        return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
    }
    bool valid() const { return xmax > xmin && ymax > ymin; }
};

// ---------------------------------------------------------------------------
// Segment predicates

// Twice the signed area of triangle abc (> 0 when c lies left of a->b).
inline double orient2d(const Point2& a, const Point2& b, const Point2& c) {
    return cross(b - a, c - a);
}

// Squared distance from p to segment [a,b].
double point_segment_dist2(const Point2& p, const Point2& a, const Point2& b);

// True when segments [p1,p2] and [q1,q2] share interior points (proper
// crossing, endpoint touching a foreign interior, or collinear overlap),
// ignoring bit-exact shared endpoints. eps is an absolute length tolerance.
bool segments_conflict(const Point2& p1, const Point2& p2,
                       const Point2& q1, const Point2& q2, double eps);

// Intersection parameters t in [0,1] where [a,b] meets circle (c,r),
// sorted ascending; tangential grazes are dropped.
std::vector<double> segment_circle_params(const Point2& a, const Point2& b,
                                          const Point2& c, double r);

// Euclidean length of the part of [a,b] strictly inside circle (c,r).
double segment_length_in_disk(const Point2& a, const Point2& b,
                              const Point2& c, double r);

// ---------------------------------------------------------------------------
// Polylines and polygons. A closed loop stores first == last point.

double polyline_length(const std::vector<Point2>& pts);
std::vector<double> cumulative_lengths(const std::vector<Point2>& pts);

// Resample to n segments, uniform in arclength; keeps endpoints.
std::vector<Point2> resample_polyline(const std::vector<Point2>& pts, int n_segments);

// Shoelace signed area; loop may or may not repeat the first point.
double signed_area(const std::vector<Point2>& loop);

// Even-odd test against one loop (first == last accepted but not required).
bool point_in_loop(const Point2& p, const std::vector<Point2>& loop);

// Even-odd over a set of loops.
bool point_in_loops(const Point2& p, const std::vector<std::vector<Point2>>& loops);

// Ear clipping of a simple polygon (no repeated last point required; CW input
// is handled by sign). Returns index triples into the input.
std::vector<std::array<int, 3>> ear_clip(const std::vector<Point2>& poly);

// ---------------------------------------------------------------------------
// Gauss-Legendre rules on [-1,1].

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Cached rule with n points (computed by Newton on Legendre polynomials).
const GaussRule& gauss_rule(int n);

inline constexpr double kGauss2Node = 0.57735026918962576451;  // 1/sqrt(3)
inline constexpr double kGauss3Node = 0.77459666924148337704;  // sqrt(3/5)
inline constexpr double kGauss3W0 = 0.88888888888888888889;    // 8/9
inline constexpr double kGauss3W1 = 0.55555555555555555556;    // 5/9

}  // namespace clusterlab

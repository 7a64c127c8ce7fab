#include "clusterlab/steiner.hpp"

#include <algorithm>
#include <cmath>

namespace clusterlab {

namespace {

double angle_at(const Point2& v, const Point2& p, const Point2& q) {
    Vec2 a = p - v, b = q - v;
    double c = dot(a, b) / (norm(a) * norm(b));
    return std::acos(std::clamp(c, -1.0, 1.0));
}

Tripod vertex_tripod(const Point2& w, const Point2& a, const Point2& b, const Point2& c) {
    Tripod t;
    t.fermat_point = w;
    t.legs = {{{w, a}, {w, b}, {w, c}}};
    t.total_euclidean_length = dist(w, a) + dist(w, b) + dist(w, c);
    t.degenerate = true;
    return t;
}

// Exact trigonometric construction: trilinear csc(A + pi/3) : ... mapped to
// barycentric and then cartesian. Used to start Weiszfeld near the answer.
Point2 trig_initializer(const Point2& A, const Point2& B, const Point2& C) {
    double a = dist(B, C), b = dist(C, A), c = dist(A, B);
    double alpha = angle_at(A, B, C);
    double beta = angle_at(B, C, A);
    double gamma = angle_at(C, A, B);
    double x = 1.0 / std::sin(alpha + M_PI / 3.0);
    double y = 1.0 / std::sin(beta + M_PI / 3.0);
    double z = 1.0 / std::sin(gamma + M_PI / 3.0);
    double wa = a * x, wb = b * y, wc = c * z;
    double s = wa + wb + wc;
    return (wa * A + wb * B + wc * C) / s;
}

}  // namespace

Tripod fermat_point(const Point2& a, const Point2& b, const Point2& c) {
    double scale = std::max({dist(a, b), dist(b, c), dist(c, a)});
    if (scale < 1e-300) throw DegenerateTriangleError("coincident vertices");
    double min_side = std::min({dist(a, b), dist(b, c), dist(c, a)});
    if (min_side < 1e-12 * scale)
        throw DegenerateTriangleError("two vertices nearly coincide");

    const double wide = 2.0 * M_PI / 3.0;
    if (angle_at(a, b, c) >= wide) return vertex_tripod(a, a, b, c);
    if (angle_at(b, a, c) >= wide) return vertex_tripod(b, a, b, c);
    if (angle_at(c, a, b) >= wide) return vertex_tripod(c, a, b, c);

    const Point2 pts[3] = {a, b, c};
    Point2 w = trig_initializer(a, b, c);
    double tol = 1e-12 * scale;

    // Weiszfeld with a Newton polish once steps stall; the objective is
    // smooth here because the optimum is interior.
    for (int it = 0; it < 200; ++it) {
        double sw = 0.0;
        Point2 num{0.0, 0.0};
        bool at_vertex = false;
        for (const auto& p : pts) {
            double d = dist(w, p);
            if (d < 1e-15 * scale) { at_vertex = true; break; }
            sw += 1.0 / d;
            num += p / d;
        }
        if (at_vertex) break;
        Point2 next = num / sw;
        double step = dist(next, w);
        w = next;
        if (step < tol) break;
    }
    for (int it = 0; it < 8; ++it) {  // Newton: grad = sum of unit vectors
        Vec2 grad{0.0, 0.0};
        double hxx = 0.0, hxy = 0.0, hyy = 0.0;
        for (const auto& p : pts) {
            Vec2 d = w - p;
            double r = norm(d);
            if (r < 1e-15 * scale) continue;
            Vec2 u = d / r;
            grad += u;
            hxx += (1.0 - u.x * u.x) / r;
            hxy += (-u.x * u.y) / r;
            hyy += (1.0 - u.y * u.y) / r;
        }
        double det = hxx * hyy - hxy * hxy;
        if (std::abs(det) < 1e-30) break;
        Vec2 delta{(hyy * grad.x - hxy * grad.y) / det,
                   (-hxy * grad.x + hxx * grad.y) / det};
        w -= delta;
        if (norm(delta) < 1e-16 * scale) break;
    }

    Tripod t;
    t.fermat_point = w;
    t.legs = {{{w, a}, {w, b}, {w, c}}};
    t.total_euclidean_length = dist(w, a) + dist(w, b) + dist(w, c);
    t.degenerate = false;
    return t;
}

double l_theta(double theta) {
    const double hi = 2.0 * M_PI / 3.0;
    const double slack = 1e-12;
    if (theta < -slack || theta > hi + slack)
        throw DomainError("l_theta needs theta in [0, 2pi/3]");
    theta = std::clamp(theta, 0.0, hi);
    return std::cos(0.5 * theta) + std::sqrt(3.0) * std::sin(0.5 * theta);
}

std::vector<std::vector<Point2>> tripod_polylines(const Point2& a, const Point2& b,
                                                  const Point2& c, double ell) {
    if (!(ell > 0.0)) throw DomainError("tripod spacing must be positive");
    Tripod t = fermat_point(a, b, c);
    std::vector<std::vector<Point2>> out;
    for (const auto& [w, v] : t.legs) {
        double len = dist(w, v);
        if (len == 0.0) continue;
        int n = std::max(1, static_cast<int>(std::ceil(len / ell)));
        std::vector<Point2> leg;
        leg.reserve(n + 1);
        for (int k = 0; k <= n; ++k) leg.push_back(w + (static_cast<double>(k) / n) * (v - w));
        out.push_back(std::move(leg));
    }
    return out;
}

}  // namespace clusterlab

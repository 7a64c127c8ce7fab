#include "clusterlab/geometry.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace clusterlab {

double point_segment_dist2(const Point2& p, const Point2& a, const Point2& b) {
    Vec2 ab = b - a;
    double len2 = norm2(ab);
    if (len2 == 0.0) return dist2(p, a);
    double t = dot(p - a, ab) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return dist2(p, a + t * ab);
}

bool segments_conflict(const Point2& p1, const Point2& p2,
                       const Point2& q1, const Point2& q2, double eps) {
    // Bit-exact shared endpoints are legitimate junction contacts.
    bool share11 = p1 == q1, share12 = p1 == q2;
    bool share21 = p2 == q1, share22 = p2 == q2;
    int shared = (share11 ? 1 : 0) + (share12 ? 1 : 0) + (share21 ? 1 : 0) + (share22 ? 1 : 0);
    if (shared >= 2) return true;  // identical or reversed segment

    double d1 = orient2d(q1, q2, p1);
    double d2 = orient2d(q1, q2, p2);
    double d3 = orient2d(p1, p2, q1);
    double d4 = orient2d(p1, p2, q2);

    double span = std::max({dist(p1, p2), dist(q1, q2), 1e-300});
    double area_eps = eps * span;

    auto sgn = [&](double v) { return v > area_eps ? 1 : (v < -area_eps ? -1 : 0); };
    int s1 = sgn(d1), s2 = sgn(d2), s3 = sgn(d3), s4 = sgn(d4);

    if (s1 * s2 < 0 && s3 * s4 < 0) return true;  // proper crossing

    // Collinear or touching cases: measure actual point-to-segment gaps so a
    // shared endpoint does not trip the test.
    auto interior_touch = [&](const Point2& e, const Point2& a, const Point2& b,
                              bool e_is_shared) {
        if (e_is_shared) return false;
        if (point_segment_dist2(e, a, b) > eps * eps) return false;
        // Touch counts only when e is not (within eps) one of a,b; endpoint
        // against endpoint at distance <= eps without bit equality is still a
        // conflict, because topology requires exact node sharing.
        return true;
    };
    if (interior_touch(p1, q1, q2, share11 || share12)) return true;
    if (interior_touch(p2, q1, q2, share21 || share22)) return true;
    if (interior_touch(q1, p1, p2, share11 || share21)) return true;
    if (interior_touch(q2, p1, p2, share12 || share22)) return true;
    return false;
}

std::vector<double> segment_circle_params(const Point2& a, const Point2& b,
                                          const Point2& c, double r) {
    std::vector<double> out;
    Vec2 d = b - a;
    Vec2 f = a - c;
    double A = norm2(d);
    if (A == 0.0) return out;
    double B = 2.0 * dot(f, d);
    double C = norm2(f) - r * r;
    double disc = B * B - 4.0 * A * C;
    if (disc <= 0.0) return out;  // miss or tangential graze
    double sq = std::sqrt(disc);
    // Numerically stable quadratic roots.
    double q = -0.5 * (B + (B >= 0.0 ? sq : -sq));
    double t1 = q / A;
    double t2 = (q != 0.0) ? C / q : t1;
    if (t1 > t2) std::swap(t1, t2);
    if (t1 > 0.0 && t1 < 1.0) out.push_back(t1);
    if (t2 > 0.0 && t2 < 1.0 && t2 != t1) out.push_back(t2);
    return out;
}

double segment_length_in_disk(const Point2& a, const Point2& b,
                              const Point2& c, double r) {
    double len = dist(a, b);
    if (len == 0.0) return 0.0;
    bool a_in = dist2(a, c) < r * r;
    bool b_in = dist2(b, c) < r * r;
    std::vector<double> ts = segment_circle_params(a, b, c, r);
    if (ts.empty()) return a_in && b_in ? len : 0.0;
    if (ts.size() == 1) {
        if (a_in) return ts[0] * len;
        if (b_in) return (1.0 - ts[0]) * len;
        return 0.0;
    }
    return (ts[1] - ts[0]) * len;
}

double polyline_length(const std::vector<Point2>& pts) {
    double total = 0.0;
    for (size_t i = 1; i < pts.size(); ++i) total += dist(pts[i - 1], pts[i]);
    return total;
}

std::vector<double> cumulative_lengths(const std::vector<Point2>& pts) {
    std::vector<double> s(pts.size(), 0.0);
    for (size_t i = 1; i < pts.size(); ++i) s[i] = s[i - 1] + dist(pts[i - 1], pts[i]);
    return s;
}

std::vector<Point2> resample_polyline(const std::vector<Point2>& pts, int n_segments) {
    std::vector<Point2> out;
    if (pts.size() < 2 || n_segments < 1) return pts;
    std::vector<double> s = cumulative_lengths(pts);
    double total = s.back();
    out.reserve(n_segments + 1);
    out.push_back(pts.front());
    size_t j = 0;
    for (int k = 1; k < n_segments; ++k) {
        double target = total * k / n_segments;
        while (j + 2 < pts.size() && s[j + 1] < target) ++j;
        double seg = s[j + 1] - s[j];
        double t = seg > 0.0 ? (target - s[j]) / seg : 0.0;
        out.push_back(pts[j] + t * (pts[j + 1] - pts[j]));
    }
    out.push_back(pts.back());
    return out;
}

double signed_area(const std::vector<Point2>& loop) {
    double a = 0.0;
    size_t n = loop.size();
    if (n < 3) return 0.0;
    for (size_t i = 0; i + 1 < n; ++i) a += cross(loop[i], loop[i + 1]);
    if (loop.front() != loop.back()) a += cross(loop[n - 1], loop[0]);
    return 0.5 * a;
}

bool point_in_loop(const Point2& p, const std::vector<Point2>& loop) {
    bool inside = false;
    size_t n = loop.size();
    if (n < 3) return false;
    size_t last = (loop.front() == loop.back()) ? n - 1 : n;
    for (size_t i = 0, j = last - 1; i < last; j = i++) {
        const Point2& a = loop[j];
        const Point2& b = loop[i];
        if ((b.y > p.y) != (a.y > p.y)) {
            double x_cross = b.x + (p.y - b.y) * (a.x - b.x) / (a.y - b.y);
            if (p.x < x_cross) inside = !inside;
        }
    }
    return inside;
}

bool point_in_loops(const Point2& p, const std::vector<std::vector<Point2>>& loops) {
    bool inside = false;
    for (const auto& loop : loops)
        if (point_in_loop(p, loop)) inside = !inside;
    return inside;
}

std::vector<std::array<int, 3>> ear_clip(const std::vector<Point2>& poly) {
    std::vector<std::array<int, 3>> tris;
    std::vector<int> idx;
    size_t n = poly.size();
    if (n >= 2 && poly.front() == poly.back()) --n;
    if (n < 3) return tris;
    idx.reserve(n);
    for (size_t i = 0; i < n; ++i) idx.push_back(static_cast<int>(i));

    double area = 0.0;
    for (size_t i = 0; i < n; ++i)
        area += cross(poly[i], poly[(i + 1) % n]);
    double orient = area >= 0.0 ? 1.0 : -1.0;

    int guard = 0;
    while (idx.size() > 3 && guard < 10000) {
        ++guard;
        bool clipped = false;
        size_t m = idx.size();
        for (size_t i = 0; i < m; ++i) {
            int ia = idx[(i + m - 1) % m], ib = idx[i], ic = idx[(i + 1) % m];
            const Point2 &a = poly[ia], &b = poly[ib], &c = poly[ic];
            if (orient * orient2d(a, b, c) <= 0.0) continue;  // reflex or flat
            bool contains = false;
            for (size_t j = 0; j < m; ++j) {
                int ij = idx[j];
                if (ij == ia || ij == ib || ij == ic) continue;
                const Point2& p = poly[ij];
                double s1 = orient * orient2d(a, b, p);
                double s2 = orient * orient2d(b, c, p);
                double s3 = orient * orient2d(c, a, p);
                if (s1 >= 0.0 && s2 >= 0.0 && s3 >= 0.0) { contains = true; break; }
            }
            if (contains) continue;
            tris.push_back({ia, ib, ic});
            idx.erase(idx.begin() + i);
            clipped = true;
            break;
        }
        if (!clipped) break;  // degenerate leftovers; emit fan below
    }
    if (idx.size() == 3) {
        tris.push_back({idx[0], idx[1], idx[2]});
    } else if (idx.size() > 3) {
        for (size_t i = 1; i + 1 < idx.size(); ++i)
            tris.push_back({idx[0], idx[i], idx[i + 1]});
    }
    return tris;
}

namespace {

GaussRule compute_gauss(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = x;
        rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_rule(int n) {
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

}  // namespace clusterlab

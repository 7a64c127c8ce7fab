#include "clusterlab/numerics.hpp"

#include <algorithm>
#include <cmath>

#include "clusterlab/geometry.hpp"

namespace clusterlab {

bool solve_dense(std::vector<double>& a, std::vector<double>& b, int n, double tol) {
    for (int col = 0; col < n; ++col) {
        int pivot = col;
        double best = std::abs(a[col * n + col]);
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(a[r * n + col]);
            if (v > best) { best = v; pivot = r; }
        }
        if (best <= tol) return false;
        if (pivot != col) {
            for (int c = col; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            std::swap(b[col], b[pivot]);
        }
        double inv = 1.0 / a[col * n + col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[r * n + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
            b[r] -= f * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= a[r * n + c] * b[c];
        b[r] = s / a[r * n + r];
    }
    return true;
}

std::vector<double> polyfit(const std::vector<double>& x,
                            const std::vector<double>& y, int degree) {
    int n = degree + 1;
    std::vector<double> ata(n * n, 0.0), atb(n, 0.0);
    for (size_t s = 0; s < x.size(); ++s) {
        double pw[8];
        pw[0] = 1.0;
        for (int k = 1; k < n; ++k) pw[k] = pw[k - 1] * x[s];
        for (int r = 0; r < n; ++r) {
            atb[r] += pw[r] * y[s];
            for (int c = 0; c < n; ++c) ata[r * n + c] += pw[r] * pw[c];
        }
    }
    if (!solve_dense(ata, atb, n, 1e-280)) atb.assign(n, 0.0);
    return atb;
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double xtol, int max_iter) {
    double fa = f(a), fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if (fa * fb > 0.0) {
        // Caller bracketing bug; return the endpoint closer to zero.
        return std::abs(fa) < std::abs(fb) ? a : b;
    }
    for (int it = 0; it < max_iter; ++it) {
        if (std::abs(b - a) < xtol) break;
        // Secant proposal clamped inside the bracket, fallback bisection.
        double mid = 0.5 * (a + b);
        double x = mid;
        double denom = fb - fa;
        if (denom != 0.0) {
            double sec = b - fb * (b - a) / denom;
            double lo = std::min(a, b), hi = std::max(a, b);
            double margin = 0.01 * (hi - lo);
            if (sec > lo + margin && sec < hi - margin) x = sec;
        }
        double fx = f(x);
        if (fx == 0.0) return x;
        if (fa * fx < 0.0) { b = x; fb = fx; }
        else { a = x; fa = fx; }
    }
    return 0.5 * (a + b);
}

double integrate_graded(const std::function<double(double)>& f, double a,
                        double b, bool singular_a, bool singular_b,
                        int points_per_cell, int levels) {
    if (a == b) return 0.0;
    const GaussRule& rule = gauss_rule(points_per_cell);
    auto cell = [&](double lo, double hi) {
        double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
        double s = 0.0;
        for (size_t k = 0; k < rule.nodes.size(); ++k)
            s += rule.weights[k] * f(mid + half * rule.nodes[k]);
        return s * half;
    };
    if (!singular_a && !singular_b) return cell(a, b);

    double total = 0.0;
    double lo = a, hi = b;
    if (singular_a && singular_b) {
        double mid = 0.5 * (a + b);
        return integrate_graded(f, a, mid, true, false, points_per_cell, levels) +
               integrate_graded(f, mid, b, false, true, points_per_cell, levels);
    }
    if (singular_b) {
        // Mirror to reduce to a singularity at the left end.
        return integrate_graded([&](double t) { return f(a + b - t); }, a, b,
                                true, false, points_per_cell, levels);
    }
    // Geometric cells shrinking toward lo.
    double len = hi - lo;
    double right = hi;
    for (int level = 0; level < levels; ++level) {
        double left = lo + len * std::pow(0.5, level + 1);
        total += cell(left, right);
        right = left;
    }
    total += cell(lo, right);  // innermost sliver, integrand assumed integrable
    return total;
}

}  // namespace clusterlab

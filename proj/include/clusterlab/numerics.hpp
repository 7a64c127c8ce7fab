#pragma once

#include <functional>
#include <vector>

namespace clusterlab {

// Gaussian elimination with partial pivoting for small dense systems
// (constraint normal matrices are m x m with m <= 8). a is row-major n x n,
// modified in place. Returns false when a pivot falls below tol.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, int n,
                 double tol = 1e-300);

// Least-squares polynomial fit y ~ sum c_k x^k, degree <= 4.
std::vector<double> polyfit(const std::vector<double>& x,
                            const std::vector<double>& y, int degree);

// Root of f on [a,b] with f(a)*f(b) <= 0: bisection with secant acceleration.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double xtol, int max_iter = 200);

// Integral of f over [a,b] by composite Gauss-Legendre with geometric
// grading toward endpoints flagged as singular. Sub-intervals shrink by a
// factor of 2 toward the flagged end; levels controls the depth.
double integrate_graded(const std::function<double(double)>& f, double a,
                        double b, bool singular_a, bool singular_b,
                        int points_per_cell = 16, int levels = 60);

}  // namespace clusterlab

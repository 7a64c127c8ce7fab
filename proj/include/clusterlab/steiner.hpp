#pragma once

#include <array>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/geometry.hpp"

namespace clusterlab {

struct Tripod {
    Point2 fermat_point;
    std::array<std::pair<Point2, Point2>, 3> legs;  // fermat point -> vertex
    double total_euclidean_length = 0.0;
    bool degenerate = false;  // fermat point coincides with a vertex
};

// Point minimizing the sum of distances to {a,b,c}. Interior with pairwise
// 120 degree legs when every triangle angle is below 120 degrees, otherwise
// the wide-angle vertex. Throws DegenerateTriangleError for (near-)coincident
// vertices.
Tripod fermat_point(const Point2& a, const Point2& b, const Point2& c);

// Steiner length ratio of the isoceles triple with apex angle theta:
// tripod length / leg length, increasing from 1 to 2 on [0, 2pi/3].
double l_theta(double theta);

// Tripod legs as polylines sampled at spacing <= ell; zero-length legs are
// omitted.
std::vector<std::vector<Point2>> tripod_polylines(const Point2& a, const Point2& b,
                                                  const Point2& c, double ell);

}  // namespace clusterlab

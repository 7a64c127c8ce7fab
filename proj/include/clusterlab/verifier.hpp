#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/density.hpp"
#include "clusterlab/optimizer.hpp"
#include "clusterlab/probes.hpp"

namespace clusterlab {

// ---------------------------------------------------------------------------
// Junction geometry

struct JunctionInfo {
    int node_id = 0;
    int valence = 0;
    std::vector<double> tangent_angles_deg;  // sorted CCW
    std::vector<double> gap_angles_deg;      // consecutive gaps, sum 360
    double max_dev_from_120_deg = 0.0;
};

struct JunctionReport {
    std::vector<JunctionInfo> junctions;
    int junction_count = 0;
    double min_separation = 0.0;       // infinity when < 2 junctions
    double max_dev_from_120_deg = 0.0;
    double max_angle_sum_error_deg = 0.0;
    bool all_valence_three = true;
};

// Tangents from quadratic least-squares fits through the first five
// vertices of each incident arc, evaluated at the node. A straight-line fit
// would carry an O(spacing * curvature) bias that swamps the 120 degree
// comparison, so the fit keeps the curvature term.
JunctionReport junction_report(const ClusterNet& net);

// Tangent direction of a polyline at its start (window-limited LS fit).
Vec2 endpoint_tangent(const std::vector<Point2>& pts, int window = 5);

// ---------------------------------------------------------------------------
// Regularity

struct ArcRegularity {
    int arc_id = 0;
    double k_gamma = 0.0;        // sup |theta(s)-theta(s')| / |s-s'|^gamma
    double max_turn_rate = 0.0;  // max |dtheta/ds| between window centers
    int samples = 0;
    bool flagged = false;
};

struct RegularityReport {
    double gamma_theory = 0.0;
    double eta = 0.0, beta = 0.0, alpha_h = 0.0;
    double k_gamma_max = 0.0;
    double ceiling = 50.0;  // report-only flag level
    std::vector<ArcRegularity> arcs;
};

// Smoothed tangent angles per arc (centered 5-vertex windows), unwrapped.
std::vector<double> smoothed_tangent_angles(const std::vector<Point2>& pts,
                                            int window = 5);

RegularityReport regularity_report(const ClusterNet& net, const DensityField& field,
                                   const GrowthCertificate& growth,
                                   const EpsBetaCertificate& epsbeta,
                                   double min_pair_separation);

// K_gamma of one polyline at a given exponent (exposed for analytic tests).
double holder_quotient(const std::vector<Point2>& pts, double gamma,
                       double min_separation);

// ---------------------------------------------------------------------------
// Predicate checks

struct PredicateEntry {
    std::string sample;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = true;
};

struct PredicateLog {
    std::string predicate;
    std::vector<PredicateEntry> entries;
    uint64_t seed = 0;
    bool pass = true;
    std::string note;
};

// H1(boundary inside B(x,r)) / r stays under 13/2 on sampled balls.
PredicateLog ball_length_check(const ClusterNet& net, int n_samples, double r_max,
                               uint64_t seed);

// For sampled (x,r): some rho in (r/C2, r) meets the boundary in <= 3 points;
// at junctions some rho in (24r/25, r) meets it in exactly 3.
PredicateLog circle_crossing_check(const ClusterNet& net, int n_samples,
                                   double c2_sample, double r_max, uint64_t seed);

// No region component of diameter < min_diameter enclosed by a single region.
PredicateLog island_check(const ClusterNet& net, double min_diameter);

// P(E_i) >= (h_min / C_vol^(1/eta)) |E_i|^(1/eta) per region.
PredicateLog isoperimetric_check(const ClusterNet& net, const DensityField& field,
                                 const GrowthCertificate& growth);

// Ball-fill and junction-spider competitors must not beat the converged net
// (after volume restoration away from the ball).
PredicateLog local_optimality_probe(const ClusterNet& net, const DensityField& field,
                                    int n_samples, const SolveConfig& cfg, uint64_t seed);

// Competitor constructions, exposed for direct tests.
struct BallCompetitor {
    ClusterNet net;
    std::vector<char> frozen_nodes;  // by variable, aligned with VertexIndex
    bool valid = false;
    std::string note;
};

BallCompetitor fill_ball_competitor(const ClusterNet& net, const DensityField& field,
                                    const Point2& center, double r, double spacing);
BallCompetitor spider_competitor(const ClusterNet& net, const DensityField& field,
                                 const Point2& center, double r, double spacing);

}  // namespace clusterlab

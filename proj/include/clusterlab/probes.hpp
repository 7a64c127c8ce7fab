#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/density.hpp"
#include "clusterlab/optimizer.hpp"

namespace clusterlab {

// Empirical witness that |B(x,r)| <= C_vol * r^eta held on every probe.
struct GrowthCertificate {
    double eta = 2.0;
    double c_vol = 0.0;
    double r_eta = 0.0;
    double fit_residual = 0.0;  // worst per-center log-log RMS residual
    int n_centers = 0;
    uint64_t seed = 0;
};

struct GrowthSample {
    Point2 center;
    double r = 0.0;
    double volume = 0.0;
};

std::vector<GrowthSample> growth_samples(const DensityField& field, const Rect& window,
                                         int n_centers, const std::vector<double>& r_grid,
                                         uint64_t seed);

// Fits eta per center and keeps the binding (smallest) exponent, so the
// worst sampled center governs the certificate.
GrowthCertificate growth_probe(const DensityField& field, const Rect& window,
                               int n_centers, const std::vector<double>& r_grid,
                               uint64_t seed);

// Upper-bound witness for the volume-adjustment cost around a converged net.
struct EpsBetaCertificate {
    double beta = 1.0;         // certificate exponent, capped at 1
    double beta_fitted = 1.0;  // raw log-log slope of the witness costs
    double c_per = 0.0;
    std::vector<std::pair<double, double>> cper_curve;  // (t, C_per[t]) ascending t
    double eps_bar = 0.0;
    double r_beta = 0.0;
    double fit_residual = 0.0;
    uint64_t seed = 0;
    std::string label = "witness";  // one competitor family, not the infimum
};

EpsBetaCertificate eps_beta_probe(const ClusterNet& net, const DensityField& field,
                                  const Point2& protected_center, double r_beta,
                                  const std::vector<double>& t_grid,
                                  const SolveConfig& cfg, uint64_t seed);

// A single volume bump used by the probe; exposed for the invariant tests.
ClusterNet apply_volume_bump(const ClusterNet& net, const DensityField& field,
                             int region, double signed_target,
                             const Point2& protected_center, double r_beta,
                             const SolveConfig& cfg);

// Modulus samples on the geometric grid t_n = t0 * C^-n.
struct ModulusSamples {
    std::vector<double> t;    // decreasing
    std::vector<double> phi;  // non-negative
    double ratio = 2.0;       // C
};

ModulusSamples sample_h_modulus(const DensityField& field, const Rect& window,
                                double t0, double ratio, int n, uint64_t seed);

enum class DiniVariant { Dini, HalfDini };
enum class DiniVerdict { Converges, Diverges, Inconclusive };

const char* to_string(DiniVerdict v);

struct DiniResult {
    DiniVerdict verdict = DiniVerdict::Inconclusive;
    double partial_sum = 0.0;     // sum of phi (or sqrt(phi)) over the samples
    double tail_exponent = 0.0;   // fitted power b in phi ~ a t^b
    double power_residual = 0.0;  // relative RMS of the power tail model
    double log_residual = 0.0;    // relative RMS of the a/log(1/t) model
};

// Convergence verdict for sum_n phi(C^-n) from tail model fitting. Finite
// sums cannot decide convergence, hence the explicit inconclusive verdict.
DiniResult dini_test(const ModulusSamples& samples, DiniVariant variant);

}  // namespace clusterlab

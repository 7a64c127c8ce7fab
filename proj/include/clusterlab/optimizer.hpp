#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/density.hpp"
#include "clusterlab/functionals.hpp"

namespace clusterlab {

struct SolveConfig {
    int max_iters = 20000;
    double grad_tol_rel = 1e-8;   // times window diagonal
    double area_tol = 1e-10;      // max relative volume violation
    int remesh_every = 25;
    double target_spacing = 0.0;  // 0 -> window diagonal / 200
    double pop_length = 0.0;      // 0 -> 2 * spacing
    double ls_shrink = 0.5;
    double ls_armijo = 1e-4;
    int ls_max_halvings = 40;
    uint64_t seed = 1;

    double spacing(const ClusterNet& net) const {
        return target_spacing > 0.0 ? target_spacing : net.scale() / 200.0;
    }
    double pop_eps(const ClusterNet& net) const {
        return pop_length > 0.0 ? pop_length : 2.0 * spacing(net);
    }
    double grad_tol(const ClusterNet& net) const { return grad_tol_rel * net.scale(); }
};

enum class SolveStatus { Converged, MaxIters, TopologyFault };

const char* to_string(SolveStatus s);

struct TraceRow {
    int iter = 0;
    double perimeter = 0.0;
    double max_area_violation = 0.0;  // relative
    double step = 0.0;
    double grad_inf = 0.0;
    std::string event;  // "", "remesh", "pop", "line_search_failed"
};

struct SolveTrace {
    std::vector<TraceRow> rows;
    SolveStatus status = SolveStatus::MaxIters;
    std::string fault;
    int iters = 0;
    double final_perimeter = 0.0;
    double final_grad_inf = 0.0;
    // Deterministic effort counters (wall time stays out of reports).
    long functional_evals = 0;
    long gradient_evals = 0;
    long restore_iters = 0;
    int remeshes = 0;
    int pops = 0;
};

struct StepInfo {
    double step = 0.0;
    double perimeter = 0.0;
    double grad_inf = 0.0;
    int halvings = 0;
    bool moved = false;  // false when already stationary below tolerance
};

// Newton projection onto the volume constraints: v <- v + J^T dl with
// (J J^T) dl = targets - areas. frozen marks variables excluded from the
// update (used by competitor probes that must not touch a protected ball).
ClusterNet restore_areas(const ClusterNet& net, const DensityField& field,
                         const SolveConfig& cfg,
                         const std::vector<char>* frozen = nullptr,
                         long* newton_iters = nullptr);

// One projected-gradient step with Armijo backtracking; the perimeter is
// evaluated after constraint restoration.
std::pair<ClusterNet, StepInfo> project_and_step(const ClusterNet& net,
                                                 const DensityField& field,
                                                 const SolveConfig& cfg,
                                                 double warm_step = 0.0);

// Uniform arclength resampling at the configured spacing, at least 8
// segments per arc. Node positions are unchanged.
ClusterNet remesh(const ClusterNet& net, const DensityField& field,
                  const SolveConfig& cfg);

// Splits a degree-4 node into two degree-3 nodes joined by a short arc,
// choosing the pairing with smaller local weighted perimeter.
ClusterNet pop_junction(const ClusterNet& net, int node_id, const DensityField& field,
                        const SolveConfig& cfg);

std::pair<ClusterNet, SolveTrace> solve(const ClusterNet& net, const DensityField& field,
                                        const SolveConfig& cfg);

// KKT residual per node: perimeter force plus multiplier-weighted area
// normals, evaluated from the same discrete formulas the optimizer uses.
std::map<int, double> node_force_residuals(const ClusterNet& net,
                                           const DensityField& field);

}  // namespace clusterlab

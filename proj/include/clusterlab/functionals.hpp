#pragma once

#include <map>
#include <vector>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/density.hpp"

namespace clusterlab {

struct FunctionalReport {
    std::vector<double> areas;                 // weighted, indexed by region-1
    double perimeter = 0.0;                    // weighted, every arc once
    std::map<int, double> per_arc_perimeter;   // arc id -> weighted length
    std::string area_path;                     // "flux" or "triangulation"
};

enum class AreaPath { Flux, Triangulation };

// Maps every movable coordinate of a net onto a flat vector. Junction nodes
// are shared variables across their incident arcs; a free loop's seam vertex
// (first == last point) is one variable.
class VertexIndex {
  public:
    explicit VertexIndex(const ClusterNet& net);

    int count() const { return count_; }
    // Variable id for a point of an arc, or -1 when the point aliases
    // another variable (the trailing seam point of a free loop).
    int var_of(int arc_id, int point_idx) const;
    int var_of_node(int node_id) const;

    std::vector<double> gather(const ClusterNet& net) const;       // 2*count
    void scatter(ClusterNet& net, const std::vector<double>& v) const;

  private:
    int count_ = 0;
    std::map<int, int> node_var_;
    std::map<int, std::vector<int>> arc_point_var_;  // -1 entries alias
};

struct GradientPack {
    // 2*count entries, (x,y) interleaved per variable.
    std::vector<double> dP;
    // m rows by 2*count columns, row-major.
    std::vector<double> J;
    int n_vars = 0;
    int m = 0;

    double* j_row(int region) { return J.data() + (region - 1) * 2 * n_vars; }
    const double* j_row(int region) const { return J.data() + (region - 1) * 2 * n_vars; }
};

std::vector<double> weighted_area(const ClusterNet& net, const DensityField& field);
std::vector<double> weighted_area_via(const ClusterNet& net, const DensityField& field,
                                      AreaPath path);

FunctionalReport weighted_perimeter(const ClusterNet& net, const DensityField& field);
FunctionalReport evaluate_functionals(const ClusterNet& net, const DensityField& field);

// Weighted length of all arc portions strictly inside the disk; segments are
// split exactly at the circle before quadrature.
double relative_perimeter(const ClusterNet& net, const DensityField& field,
                          const Disk& disk);

// Analytic derivatives of the discrete quadrature formulas (flux area path).
GradientPack gradients(const ClusterNet& net, const DensityField& field,
                       const VertexIndex& index);

// Perimeter part alone; works on nets whose regions do not close.
std::vector<double> perimeter_gradient(const ClusterNet& net, const DensityField& field,
                                       const VertexIndex& index);

}  // namespace clusterlab

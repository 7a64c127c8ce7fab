#pragma once

#include <string>

#include "clusterlab/cluster_net.hpp"

namespace clusterlab {

struct RenderStyle {
    double width_px = 800.0;
    double stroke_rel = 0.004;   // arc stroke width, fraction of width
    double marker_rel = 0.012;   // junction marker radius, fraction of width
    bool fill_regions = true;
    bool mark_junctions = true;
};

// Deterministic SVG: same net and style give byte-identical output.
std::string render_svg(const ClusterNet& net, const RenderStyle& style = {});

}  // namespace clusterlab

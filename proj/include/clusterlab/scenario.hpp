#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/density.hpp"

namespace clusterlab {

struct Scenario {
    std::string name = "circle";
    DensitySpec density;
    std::vector<double> areas;
    uint64_t seed = 1;
    std::string custom_file;
};

const std::vector<std::string>& scenario_names();

// Fills density kind and default areas for the named scenario when the
// caller left them empty.
Scenario resolve_scenario_defaults(Scenario s);

// Builds an initial net passing validate(); weighted areas match the
// targets to the optimizer's restoration tolerance.
ClusterNet build_scenario(const Scenario& s, const DensityField& field);

// Regular n-gon boundary as a single free-loop arc (region 1 against 0).
ClusterNet polygon_circle_net(const Point2& center, double radius, int segments,
                              int region_label = 1);

}  // namespace clusterlab

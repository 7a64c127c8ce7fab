#pragma once

#include <string>
#include <vector>

#include "clusterlab/functionals.hpp"
#include "clusterlab/optimizer.hpp"
#include "clusterlab/probes.hpp"
#include "clusterlab/scenario.hpp"
#include "clusterlab/verifier.hpp"

namespace clusterlab {

// Everything a run needs to be reproduced and judged. Wall-clock timings are
// deliberately not part of the report so repeated runs stay byte-identical;
// they go to stderr instead.
struct RunReport {
    std::string command;
    Scenario scenario;
    SolveConfig config;
    int threads = 1;

    FunctionalReport functionals;
    SolveTrace trace;
    bool has_solve = false;

    JunctionReport junctions;
    bool has_junctions = false;

    RegularityReport regularity;
    bool has_regularity = false;

    std::vector<PredicateLog> predicates;

    GrowthCertificate growth;
    bool has_growth = false;
    EpsBetaCertificate epsbeta;
    bool has_epsbeta = false;

    double angle_tolerance_deg = 2.0;  // hard junction-angle gate

    bool all_hard_predicates_pass() const;
};

std::string report_json(const RunReport& report);

// Minimal JSON-schema validation (type/required/properties/items/enum),
// enough to keep the published schema honest.
bool validate_report_schema(const std::string& report_text,
                            const std::string& schema_text, std::string* error);

// The published schema document.
std::string report_schema_json();

}  // namespace clusterlab

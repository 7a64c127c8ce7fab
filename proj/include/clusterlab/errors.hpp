#pragma once

#include <stdexcept>
#include <string>

namespace clusterlab {

#define CLUSTERLAB_DEFINE_ERROR(Name)                            \
    struct Name : std::runtime_error {                           \
        explicit Name(const std::string& what_arg)               \
            : std::runtime_error(std::string(#Name ": ") + what_arg) {} \
    }

CLUSTERLAB_DEFINE_ERROR(ParseError);
CLUSTERLAB_DEFINE_ERROR(SchemaVersionError);
CLUSTERLAB_DEFINE_ERROR(OpenLoopError);
CLUSTERLAB_DEFINE_ERROR(InvalidSpecError);
CLUSTERLAB_DEFINE_ERROR(DegenerateTriangleError);
CLUSTERLAB_DEFINE_ERROR(DomainError);
CLUSTERLAB_DEFINE_ERROR(LineSearchFailedError);
CLUSTERLAB_DEFINE_ERROR(SingularConstraintsError);
CLUSTERLAB_DEFINE_ERROR(RestoreFailedError);
CLUSTERLAB_DEFINE_ERROR(PlanarityBrokenError);
CLUSTERLAB_DEFINE_ERROR(LabelInconsistencyError);
CLUSTERLAB_DEFINE_ERROR(MissingCertificateError);
CLUSTERLAB_DEFINE_ERROR(NoEligibleArcError);
CLUSTERLAB_DEFINE_ERROR(InsufficientSamplesError);
CLUSTERLAB_DEFINE_ERROR(TopologyFaultError);

#undef CLUSTERLAB_DEFINE_ERROR

}  // namespace clusterlab

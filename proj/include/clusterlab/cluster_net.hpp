#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clusterlab/errors.hpp"
#include "clusterlab/geometry.hpp"

namespace clusterlab {

// Sentinel endpoint for arcs that close on themselves without a junction
// (a plain bubble boundary has no degree-3 node to attach to).
inline constexpr int kFreeLoop = -1;

struct Node {
    int id = 0;
    Point2 pos;
    // Arc ids leaving this node, counterclockwise by outgoing tangent.
    // Derived data: rebuilt from arcs, never serialized.
    std::vector<int> incident;
};

struct Arc {
    int id = 0;
    int from = kFreeLoop;
    int to = kFreeLoop;
    int left = 0;   // region label on the left when traversing from -> to
    int right = 0;  // region label on the right
    std::vector<Point2> points;  // first/last coincide with node positions

    bool closed() const { return from == kFreeLoop && to == kFreeLoop; }
    double euclidean_length() const { return polyline_length(points); }
};

// Planar m-cluster curve network. Region labels run 0..m with 0 the
// unbounded exterior; target areas are indexed 1..m (element i-1).
struct ClusterNet {
    int m = 0;
    Rect window;
    std::vector<Node> nodes;
    std::vector<Arc> arcs;
    std::vector<double> target_areas;

    double scale() const { return window.diagonal(); }

    const Node* find_node(int id) const;
    Node* find_node(int id);
    const Arc* find_arc(int id) const;
    Arc* find_arc(int id);
    int max_node_id() const;
    int max_arc_id() const;

    // Recomputes every node's incident list (CCW by outgoing tangent).
    void rebuild_incidence();
};

bool nets_equal(const ClusterNet& a, const ClusterNet& b);

// ---------------------------------------------------------------------------
// Validation

struct Violation {
    std::string code;
    std::string detail;
};

struct ValidationResult {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

enum class CheckLevel {
    Structural,  // everything except junction valence
    Strict,      // Structural plus degree-exactly-3 at every node
};

ValidationResult validate(const ClusterNet& net, CheckLevel level = CheckLevel::Strict);

// ---------------------------------------------------------------------------
// Region topology

// One traversal side of an arc: forward keeps arc.left on the left.
struct DirectedSide {
    int arc = 0;
    bool forward = true;
};

// Outgoing ray of an arc at a node, used for cyclic label bookkeeping.
struct IncidentRay {
    int arc = 0;
    bool leaves_forward = true;  // arc.from == node
    double angle = 0.0;
    Vec2 dir;
    int left_of_ray = 0;   // region in the CCW gap that starts at this ray
    int right_of_ray = 0;
};

// Rays at a node sorted CCW; throws LabelInconsistencyError only if asked.
std::vector<IncidentRay> node_rays(const ClusterNet& net, const Node& node);

// Boundary of region i as closed oriented side-loops (region on the left).
// Throws OpenLoopError when the walk cannot continue.
std::vector<std::vector<DirectedSide>> region_side_loops(const ClusterNet& net, int region);

// Same loops stitched into closed polylines (first point == last point).
std::vector<std::vector<Point2>> region_loops(const ClusterNet& net, int region);

std::vector<Point2> side_points(const ClusterNet& net, const DirectedSide& side);

struct RegionComponent {
    std::vector<int> loop_indices;  // indices into region_loops(net, region)
    double area = 0.0;              // Euclidean, signed sum of member loops
    double diameter = 0.0;
    bool bounded = true;
};

// Connected components of region i from loop containment (even-odd rule).
std::vector<RegionComponent> components(const ClusterNet& net, int region);

// Cached per-region loops for repeated point location.
class RegionIndex {
  public:
    explicit RegionIndex(const ClusterNet& net);
    // Region label containing p (0 when in no bounded region).
    int locate(const Point2& p) const;
    const std::vector<std::vector<Point2>>& loops(int region) const;

  private:
    int m_;
    std::vector<std::vector<std::vector<Point2>>> loops_;  // [region 0..m]
};

// ---------------------------------------------------------------------------
// Serialization (JSON, schema version "1"; numbers at 17 significant digits)

ClusterNet load_cluster(const std::string& text);
ClusterNet load_cluster_file(const std::string& path);
std::string save_cluster(const ClusterNet& net);
void save_cluster_file(const ClusterNet& net, const std::string& path);

// %.17g formatting shared by every writer that must be byte-stable.
std::string format_double(double v);

}  // namespace clusterlab

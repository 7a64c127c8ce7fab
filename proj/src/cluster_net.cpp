#include "clusterlab/cluster_net.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace clusterlab {

namespace {
constexpr double kEndpointTol = 1e-12;
}

const Node* ClusterNet::find_node(int id) const {
    for (const auto& n : nodes)
        if (n.id == id) return &n;
    return nullptr;
}

Node* ClusterNet::find_node(int id) {
    return const_cast<Node*>(static_cast<const ClusterNet*>(this)->find_node(id));
}

const Arc* ClusterNet::find_arc(int id) const {
    for (const auto& a : arcs)
        if (a.id == id) return &a;
    return nullptr;
}

Arc* ClusterNet::find_arc(int id) {
    return const_cast<Arc*>(static_cast<const ClusterNet*>(this)->find_arc(id));
}

int ClusterNet::max_node_id() const {
    int mx = -1;
    for (const auto& n : nodes) mx = std::max(mx, n.id);
    return mx;
}

int ClusterNet::max_arc_id() const {
    int mx = -1;
    for (const auto& a : arcs) mx = std::max(mx, a.id);
    return mx;
}

void ClusterNet::rebuild_incidence() {
    for (auto& n : nodes) n.incident.clear();
    for (const auto& a : arcs) {
        if (a.closed()) continue;
        if (Node* n = find_node(a.from)) n->incident.push_back(a.id);
        if (a.to != a.from) {
            if (Node* n = find_node(a.to)) n->incident.push_back(a.id);
        } else if (Node* n = find_node(a.to)) {
            n->incident.push_back(a.id);  // self-loop on a node: both ends
        }
    }
    for (auto& n : nodes) {
        auto angle_of_arc = [&](int arc_id, bool second_end) {
            const Arc* a = find_arc(arc_id);
            Vec2 d;
            if (a->from == n.id && !second_end)
                d = a->points[1] - a->points[0];
            else
                d = a->points[a->points.size() - 2] - a->points.back();
            return angle_of(d);
        };
        // A self-loop arc appears twice in the list; disambiguate by order.
        std::vector<std::pair<double, int>> keyed;
        std::map<int, int> seen;
        for (int id : n.incident) {
            int occurrence = seen[id]++;
            keyed.emplace_back(angle_of_arc(id, occurrence > 0), id);
        }
        std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return a.second < b.second;
        });
        n.incident.clear();
        for (auto& [ang, id] : keyed) n.incident.push_back(id);
    }
}

bool nets_equal(const ClusterNet& a, const ClusterNet& b) {
    if (a.m != b.m || a.target_areas != b.target_areas) return false;
    if (a.window.xmin != b.window.xmin || a.window.ymin != b.window.ymin ||
        a.window.xmax != b.window.xmax || a.window.ymax != b.window.ymax)
        return false;
    if (a.nodes.size() != b.nodes.size() || a.arcs.size() != b.arcs.size()) return false;
    for (size_t i = 0; i < a.nodes.size(); ++i) {
        if (a.nodes[i].id != b.nodes[i].id || a.nodes[i].pos != b.nodes[i].pos) return false;
    }
    for (size_t i = 0; i < a.arcs.size(); ++i) {
        const Arc &x = a.arcs[i], &y = b.arcs[i];
        if (x.id != y.id || x.from != y.from || x.to != y.to || x.left != y.left ||
            x.right != y.right || x.points != y.points)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct SegRef {
    int arc;
    int seg;  // index of the first point
    Point2 a, b;
    double xmin, xmax;
};

void check_planarity(const ClusterNet& net, std::vector<Violation>& out) {
    std::vector<SegRef> segs;
    for (const auto& arc : net.arcs)
        for (size_t i = 0; i + 1 < arc.points.size(); ++i) {
            SegRef s;
            s.arc = arc.id;
            s.seg = static_cast<int>(i);
            s.a = arc.points[i];
            s.b = arc.points[i + 1];
            s.xmin = std::min(s.a.x, s.b.x);
            s.xmax = std::max(s.a.x, s.b.x);
            segs.push_back(s);
        }
    std::sort(segs.begin(), segs.end(),
              [](const SegRef& a, const SegRef& b) { return a.xmin < b.xmin; });
    double eps = 1e-11 * std::max(net.scale(), 1e-12);
    int reported = 0;
    for (size_t i = 0; i < segs.size() && reported < 8; ++i) {
        for (size_t j = i + 1; j < segs.size(); ++j) {
            if (segs[j].xmin > segs[i].xmax + eps) break;
            const SegRef &p = segs[i], &q = segs[j];
            if (p.arc == q.arc && std::abs(p.seg - q.seg) <= 1) continue;  // adjacent
            double ylo = std::min(p.a.y, p.b.y) - eps, yhi = std::max(p.a.y, p.b.y) + eps;
            if (std::max(q.a.y, q.b.y) < ylo || std::min(q.a.y, q.b.y) > yhi) continue;
            if (segments_conflict(p.a, p.b, q.a, q.b, eps)) {
                out.push_back({p.arc == q.arc ? "self_intersection" : "planarity",
                               "arcs " + std::to_string(p.arc) + "/" + std::to_string(q.arc) +
                                   " cross away from a shared node"});
                ++reported;
                break;
            }
        }
    }
}

}  // namespace

std::vector<IncidentRay> node_rays(const ClusterNet& net, const Node& node) {
    std::vector<IncidentRay> rays;
    for (const auto& arc : net.arcs) {
        if (arc.closed()) continue;
        if (arc.from == node.id) {
            IncidentRay r;
            r.arc = arc.id;
            r.leaves_forward = true;
            r.dir = normalized(arc.points[1] - arc.points[0]);
            r.angle = angle_of(r.dir);
            r.left_of_ray = arc.left;
            r.right_of_ray = arc.right;
            rays.push_back(r);
        }
        if (arc.to == node.id) {
            IncidentRay r;
            r.arc = arc.id;
            r.leaves_forward = false;
            r.dir = normalized(arc.points[arc.points.size() - 2] - arc.points.back());
            r.angle = angle_of(r.dir);
            r.left_of_ray = arc.right;  // reversed traversal swaps sides
            r.right_of_ray = arc.left;
            rays.push_back(r);
        }
    }
    std::sort(rays.begin(), rays.end(), [](const IncidentRay& a, const IncidentRay& b) {
        if (a.angle != b.angle) return a.angle < b.angle;
        return a.arc < b.arc;
    });
    return rays;
}

ValidationResult validate(const ClusterNet& net, CheckLevel level) {
    ValidationResult res;
    auto add = [&](const std::string& code, const std::string& detail) {
        res.violations.push_back({code, detail});
    };

    if (net.m < 1) add("region_count", "m must be >= 1");
    if (!net.window.valid()) add("window", "window rectangle is empty");
    if (static_cast<int>(net.target_areas.size()) != net.m)
        add("target_areas_size", "expected m entries");
    for (size_t i = 0; i < net.target_areas.size(); ++i)
        if (!(net.target_areas[i] > 0.0) || !std::isfinite(net.target_areas[i]))
            add("target_area_nonpositive", "region " + std::to_string(i + 1));

    std::set<int> node_ids, arc_ids;
    for (const auto& n : net.nodes) {
        if (!is_finite(n.pos)) add("nonfinite_coordinate", "node " + std::to_string(n.id));
        if (!node_ids.insert(n.id).second)
            add("duplicate_id", "node " + std::to_string(n.id));
    }

    double eps = kEndpointTol;
    for (const auto& a : net.arcs) {
        std::string tag = "arc " + std::to_string(a.id);
        if (!arc_ids.insert(a.id).second) add("duplicate_id", tag);
        if (a.points.size() < 2) {
            add("arc_too_short", tag);
            continue;
        }
        for (const auto& p : a.points)
            if (!is_finite(p)) { add("nonfinite_coordinate", tag); break; }
        for (size_t i = 0; i + 1 < a.points.size(); ++i)
            if (a.points[i] == a.points[i + 1]) {
                add("duplicate_point", tag + " segment " + std::to_string(i));
                break;
            }
        if (a.left == a.right) add("degenerate_labels", tag);
        if (a.left < 0 || a.left > net.m || a.right < 0 || a.right > net.m)
            add("label_out_of_range", tag);
        if ((a.from == kFreeLoop) != (a.to == kFreeLoop)) {
            add("endpoint_mismatch", tag + " mixes free and node endpoints");
        } else if (a.closed()) {
            if (dist(a.points.front(), a.points.back()) > eps)
                add("free_loop_open", tag);
        } else {
            const Node* nf = net.find_node(a.from);
            const Node* nt = net.find_node(a.to);
            if (!nf || !nt) {
                add("unknown_node", tag);
            } else {
                if (dist(a.points.front(), nf->pos) > eps)
                    add("endpoint_mismatch", tag + " start vs node " + std::to_string(a.from));
                if (dist(a.points.back(), nt->pos) > eps)
                    add("endpoint_mismatch", tag + " end vs node " + std::to_string(a.to));
            }
        }
    }
    if (!res.ok()) return res;  // structural basics must hold before geometry

    check_planarity(net, res.violations);

    // Cyclic label consistency at nodes, plus valence when strict.
    for (const auto& n : net.nodes) {
        auto rays = node_rays(net, n);
        if (rays.empty()) {
            add("isolated_node", "node " + std::to_string(n.id));
            continue;
        }
        if (level == CheckLevel::Strict && rays.size() != 3)
            add("degree", "node " + std::to_string(n.id) + " has degree " +
                              std::to_string(rays.size()));
        for (size_t k = 0; k < rays.size(); ++k) {
            const IncidentRay& cur = rays[k];
            const IncidentRay& nxt = rays[(k + 1) % rays.size()];
            if (cur.left_of_ray != nxt.right_of_ray)
                add("label_inconsistency",
                    "node " + std::to_string(n.id) + " gap between arcs " +
                        std::to_string(cur.arc) + " and " + std::to_string(nxt.arc));
        }
    }
    if (!res.ok()) return res;

    // Region boundaries must stitch into closed loops of positive net area.
    for (int i = 1; i <= net.m; ++i) {
        try {
            auto loops = region_loops(net, i);
            if (loops.empty()) {
                add("empty_region", "region " + std::to_string(i));
                continue;
            }
            double total = 0.0;
            for (const auto& loop : loops) total += signed_area(loop);
            if (!(total > 0.0))
                add("negative_area", "region " + std::to_string(i));
        } catch (const OpenLoopError& e) {
            add("open_loop", e.what());
        }
    }
    return res;
}

// ---------------------------------------------------------------------------
// Face walking

std::vector<Point2> side_points(const ClusterNet& net, const DirectedSide& side) {
    const Arc* a = net.find_arc(side.arc);
    std::vector<Point2> pts = a->points;
    if (!side.forward) std::reverse(pts.begin(), pts.end());
    return pts;
}

namespace {

int side_start_node(const Arc& a, bool forward) { return forward ? a.from : a.to; }
int side_end_node(const Arc& a, bool forward) { return forward ? a.to : a.from; }

Vec2 side_end_incoming_dir(const Arc& a, bool forward) {
    // Direction of travel on arrival at the side's end node.
    if (forward) return normalized(a.points.back() - a.points[a.points.size() - 2]);
    return normalized(a.points[0] - a.points[1]);
}

Vec2 side_start_outgoing_dir(const Arc& a, bool forward) {
    if (forward) return normalized(a.points[1] - a.points[0]);
    return normalized(a.points[a.points.size() - 2] - a.points.back());
}

}  // namespace

std::vector<std::vector<DirectedSide>> region_side_loops(const ClusterNet& net, int region) {
    std::vector<std::vector<DirectedSide>> loops;
    // Candidate sides with the region on the left.
    struct Key {
        int arc;
        bool forward;
        bool operator<(const Key& o) const {
            return arc != o.arc ? arc < o.arc : forward < o.forward;
        }
    };
    std::set<Key> pending;
    for (const auto& a : net.arcs) {
        if (a.left == region) pending.insert({a.id, true});
        if (a.right == region) pending.insert({a.id, false});
    }

    // Free loops close on themselves.
    for (auto it = pending.begin(); it != pending.end();) {
        const Arc* a = net.find_arc(it->arc);
        if (a->closed()) {
            loops.push_back({{it->arc, it->forward}});
            it = pending.erase(it);
        } else {
            ++it;
        }
    }

    while (!pending.empty()) {
        Key start = *pending.begin();
        std::vector<DirectedSide> loop;
        Key cur = start;
        int guard = 0;
        int limit = static_cast<int>(net.arcs.size()) * 4 + 8;
        while (true) {
            if (++guard > limit)
                throw OpenLoopError("region " + std::to_string(region) +
                                    " walk does not close (cycle guard)");
            pending.erase(cur);
            loop.push_back({cur.arc, cur.forward});
            const Arc* a = net.find_arc(cur.arc);
            int end_node = side_end_node(*a, cur.forward);
            const Node* node = net.find_node(end_node);
            if (!node)
                throw OpenLoopError("region " + std::to_string(region) +
                                    " reaches missing node " + std::to_string(end_node));
            // Outgoing candidates at the node with this region on the left.
            Vec2 rev = -side_end_incoming_dir(*a, cur.forward);
            double rev_angle = angle_of(rev);
            Key best{};
            double best_delta = 1e300;
            bool found = false;
            for (const auto& cand_arc : net.arcs) {
                if (cand_arc.closed()) continue;
                auto consider = [&](bool fwd) {
                    if (side_start_node(cand_arc, fwd) != end_node) return;
                    int left_label = fwd ? cand_arc.left : cand_arc.right;
                    if (left_label != region) return;
                    // Skip the immediate about-face onto the same side.
                    Vec2 out = side_start_outgoing_dir(cand_arc, fwd);
                    double delta = ccw_angle_from_to(angle_of(out), rev_angle);
                    if (delta < best_delta ||
                        (delta == best_delta && cand_arc.id < best.arc)) {
                        best_delta = delta;
                        best = {cand_arc.id, fwd};
                        found = true;
                    }
                };
                consider(true);
                consider(false);
            }
            if (!found)
                throw OpenLoopError("region " + std::to_string(region) +
                                    " boundary stops at node " + std::to_string(end_node));
            cur = best;
            if (cur.arc == start.arc && cur.forward == start.forward) break;  // closed
            if (!pending.count(cur))
                throw OpenLoopError("region " + std::to_string(region) +
                                    " revisits arc " + std::to_string(cur.arc) +
                                    " before closing");
        }
        loops.push_back(std::move(loop));
    }
    return loops;
}

std::vector<std::vector<Point2>> region_loops(const ClusterNet& net, int region) {
    std::vector<std::vector<Point2>> out;
    for (const auto& loop : region_side_loops(net, region)) {
        std::vector<Point2> pts;
        for (size_t k = 0; k < loop.size(); ++k) {
            auto side = side_points(net, loop[k]);
            if (k == 0)
                pts = std::move(side);
            else
                pts.insert(pts.end(), side.begin() + 1, side.end());
        }
        if (pts.front() != pts.back()) pts.push_back(pts.front());
        out.push_back(std::move(pts));
    }
    return out;
}

std::vector<RegionComponent> components(const ClusterNet& net, int region) {
    auto loops = region_loops(net, region);
    std::vector<double> areas(loops.size());
    for (size_t i = 0; i < loops.size(); ++i) areas[i] = signed_area(loops[i]);

    std::vector<RegionComponent> comps;
    std::vector<int> owner(loops.size(), -1);  // component index per loop
    // Positive loops found components; order by descending area so nested
    // positive loops (island inside a hole) attach holes correctly.
    std::vector<int> order(loops.size());
    for (size_t i = 0; i < loops.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return std::abs(areas[a]) > std::abs(areas[b]);
    });

    for (int li : order) {
        if (areas[li] <= 0.0) continue;
        RegionComponent c;
        c.loop_indices.push_back(li);
        c.area = areas[li];
        c.bounded = true;
        owner[li] = static_cast<int>(comps.size());
        comps.push_back(std::move(c));
    }
    int unbounded_comp = -1;
    for (int li : order) {
        if (areas[li] > 0.0) continue;
        // Midpoint of the first segment sits on the hole boundary; nudge it
        // off before containment tests.
        Point2 rep = 0.5 * (loops[li][0] + loops[li][1]);
        int best = -1;
        double best_area = 1e300;
        for (size_t c = 0; c < comps.size(); ++c) {
            int outer = comps[c].loop_indices[0];
            if (outer == li) continue;
            if (areas[outer] < std::abs(areas[li])) continue;
            if (point_in_loop(rep, loops[outer]) && areas[outer] < best_area) {
                best = static_cast<int>(c);
                best_area = areas[outer];
            }
        }
        if (best >= 0) {
            comps[best].loop_indices.push_back(li);
            comps[best].area += areas[li];
            owner[li] = best;
        } else {
            if (unbounded_comp < 0) {
                RegionComponent c;
                c.bounded = false;
                c.area = std::numeric_limits<double>::infinity();
                c.diameter = std::numeric_limits<double>::infinity();
                unbounded_comp = static_cast<int>(comps.size());
                comps.push_back(std::move(c));
            }
            comps[unbounded_comp].loop_indices.push_back(li);
            owner[li] = unbounded_comp;
        }
    }
    for (auto& c : comps) {
        if (!c.bounded) continue;
        const auto& outer = loops[c.loop_indices[0]];
        double d2max = 0.0;
        for (size_t i = 0; i < outer.size(); ++i)
            for (size_t j = i + 1; j < outer.size(); ++j)
                d2max = std::max(d2max, dist2(outer[i], outer[j]));
        c.diameter = std::sqrt(d2max);
    }
    return comps;
}

RegionIndex::RegionIndex(const ClusterNet& net) : m_(net.m) {
    loops_.resize(net.m + 1);
    for (int i = 0; i <= net.m; ++i) loops_[i] = region_loops(net, i);
}

int RegionIndex::locate(const Point2& p) const {
    for (int i = 1; i <= m_; ++i)
        if (point_in_loops(p, loops_[i])) return i;
    return 0;
}

const std::vector<std::vector<Point2>>& RegionIndex::loops(int region) const {
    return loops_[region];
}

// ---------------------------------------------------------------------------
// Serialization

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string save_cluster(const ClusterNet& net) {
    std::string s;
    s.reserve(4096);
    auto num = [&](double v) { s += format_double(v); };
    s += "{\"version\":\"1\",\"m\":" + std::to_string(net.m);
    s += ",\"window\":[";
    num(net.window.xmin); s += ",";
    num(net.window.ymin); s += ",";
    num(net.window.xmax); s += ",";
    num(net.window.ymax); s += "]";
    s += ",\"nodes\":[";
    for (size_t i = 0; i < net.nodes.size(); ++i) {
        if (i) s += ",";
        const Node& n = net.nodes[i];
        s += "{\"id\":" + std::to_string(n.id) + ",\"x\":";
        num(n.pos.x);
        s += ",\"y\":";
        num(n.pos.y);
        s += "}";
    }
    s += "],\"arcs\":[";
    for (size_t i = 0; i < net.arcs.size(); ++i) {
        if (i) s += ",";
        const Arc& a = net.arcs[i];
        s += "{\"id\":" + std::to_string(a.id) + ",\"from\":" + std::to_string(a.from) +
             ",\"to\":" + std::to_string(a.to) + ",\"left\":" + std::to_string(a.left) +
             ",\"right\":" + std::to_string(a.right) + ",\"points\":[";
        for (size_t k = 0; k < a.points.size(); ++k) {
            if (k) s += ",";
            s += "[";
            num(a.points[k].x);
            s += ",";
            num(a.points[k].y);
            s += "]";
        }
        s += "]}";
    }
    s += "],\"target_areas\":[";
    for (size_t i = 0; i < net.target_areas.size(); ++i) {
        if (i) s += ",";
        num(net.target_areas[i]);
    }
    s += "]}";
    return s;
}

void save_cluster_file(const ClusterNet& net, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open for writing: " + path);
    f << save_cluster(net) << "\n";
}

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* field, const char* ctx) {
    auto it = obj.find(field);
    if (it == obj.end())
        throw ParseError(std::string("missing field \"") + field + "\" in " + ctx);
    return *it;
}

double require_num(const json& obj, const char* field, const char* ctx) {
    const json& v = require(obj, field, ctx);
    if (!v.is_number())
        throw ParseError(std::string("field \"") + field + "\" in " + ctx + " is not a number");
    return v.get<double>();
}

int require_int(const json& obj, const char* field, const char* ctx) {
    const json& v = require(obj, field, ctx);
    if (!v.is_number_integer())
        throw ParseError(std::string("field \"") + field + "\" in " + ctx +
                         " is not an integer");
    return v.get<int>();
}

}  // namespace

ClusterNet load_cluster(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(e.what());
    }
    if (!root.is_object()) throw ParseError("top level is not an object");

    const json& ver = require(root, "version", "top level");
    if (!ver.is_string() || ver.get<std::string>() != "1")
        throw SchemaVersionError("unsupported cluster schema version " + ver.dump());

    ClusterNet net;
    net.m = require_int(root, "m", "top level");
    const json& win = require(root, "window", "top level");
    if (!win.is_array() || win.size() != 4)
        throw ParseError("window must be [xmin,ymin,xmax,ymax]");
    net.window = {win[0].get<double>(), win[1].get<double>(), win[2].get<double>(),
                  win[3].get<double>()};

    const json& nodes = require(root, "nodes", "top level");
    if (!nodes.is_array()) throw ParseError("nodes must be an array");
    for (const auto& jn : nodes) {
        Node n;
        n.id = require_int(jn, "id", "node");
        n.pos = {require_num(jn, "x", "node"), require_num(jn, "y", "node")};
        net.nodes.push_back(std::move(n));
    }

    const json& arcs = require(root, "arcs", "top level");
    if (!arcs.is_array()) throw ParseError("arcs must be an array");
    for (const auto& ja : arcs) {
        Arc a;
        a.id = require_int(ja, "id", "arc");
        a.from = require_int(ja, "from", "arc");
        a.to = require_int(ja, "to", "arc");
        a.left = require_int(ja, "left", "arc");
        a.right = require_int(ja, "right", "arc");
        const json& pts = require(ja, "points", "arc");
        if (!pts.is_array() || pts.size() < 2)
            throw ParseError("arc " + std::to_string(a.id) + " needs >= 2 points");
        for (const auto& jp : pts) {
            if (!jp.is_array() || jp.size() != 2)
                throw ParseError("arc " + std::to_string(a.id) + " has a malformed point");
            a.points.push_back({jp[0].get<double>(), jp[1].get<double>()});
        }
        net.arcs.push_back(std::move(a));
    }

    const json& ta = require(root, "target_areas", "top level");
    if (!ta.is_array()) throw ParseError("target_areas must be an array");
    for (const auto& v : ta) net.target_areas.push_back(v.get<double>());

    // Endpoint coordinates are stored redundantly and must agree with nodes.
    for (const auto& a : net.arcs) {
        if (a.closed()) continue;
        const Node* nf = net.find_node(a.from);
        const Node* nt = net.find_node(a.to);
        if (!nf || !nt)
            throw ParseError("arc " + std::to_string(a.id) + " references unknown node");
        if (dist(a.points.front(), nf->pos) > kEndpointTol ||
            dist(a.points.back(), nt->pos) > kEndpointTol)
            throw ParseError("arc " + std::to_string(a.id) +
                             " endpoints disagree with node positions beyond 1e-12");
    }
    // Snap endpoints onto the node coordinates so shared points stay bit-exact.
    for (auto& a : net.arcs) {
        if (a.closed()) {
            a.points.back() = a.points.front();
            continue;
        }
        a.points.front() = net.find_node(a.from)->pos;
        a.points.back() = net.find_node(a.to)->pos;
    }
    net.rebuild_incidence();
    return net;
}

ClusterNet load_cluster_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return load_cluster(ss.str());
}

}  // namespace clusterlab

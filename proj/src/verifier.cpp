#include "clusterlab/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "clusterlab/functionals.hpp"
#include "clusterlab/numerics.hpp"
#include "clusterlab/rng.hpp"

namespace clusterlab {

namespace {
constexpr double kRad2Deg = 180.0 / M_PI;
}

// ---------------------------------------------------------------------------
// Tangent estimation

Vec2 endpoint_tangent(const std::vector<Point2>& pts, int window) {
    int n = static_cast<int>(pts.size());
    if (n < 2) return {1.0, 0.0};
    if (n == 2) return normalized(pts[1] - pts[0]);
    int w = std::min(window, n);
    std::vector<double> s(w), xs(w), ys(w);
    s[0] = 0.0;
    for (int k = 1; k < w; ++k) s[k] = s[k - 1] + dist(pts[k - 1], pts[k]);
    for (int k = 0; k < w; ++k) {
        xs[k] = pts[k].x;
        ys[k] = pts[k].y;
    }
    int degree = w >= 4 ? 2 : 1;
    auto cx = polyfit(s, xs, degree);
    auto cy = polyfit(s, ys, degree);
    Vec2 t{cx[1], cy[1]};  // derivative at s = 0
    if (norm(t) == 0.0) t = pts[1] - pts[0];
    t = normalized(t);
    if (dot(t, pts[1] - pts[0]) < 0.0) t = -t;
    return t;
}

JunctionReport junction_report(const ClusterNet& net) {
    JunctionReport rep;
    for (const auto& node : net.nodes) {
        auto rays = node_rays(net, node);
        JunctionInfo info;
        info.node_id = node.id;
        info.valence = static_cast<int>(rays.size());
        if (info.valence != 3) rep.all_valence_three = false;

        std::vector<double> angles;
        for (const auto& ray : rays) {
            const Arc* a = net.find_arc(ray.arc);
            std::vector<Point2> pts = a->points;
            if (!ray.leaves_forward) std::reverse(pts.begin(), pts.end());
            angles.push_back(angle_of(endpoint_tangent(pts)));
        }
        std::sort(angles.begin(), angles.end());
        double gap_sum = 0.0;
        for (size_t k = 0; k < angles.size(); ++k) {
            double next = angles[(k + 1) % angles.size()];
            double gap = ccw_angle_from_to(angles[k], next) * kRad2Deg;
            info.gap_angles_deg.push_back(gap);
            gap_sum += gap;
            if (angles.size() == 3)
                info.max_dev_from_120_deg =
                    std::max(info.max_dev_from_120_deg, std::abs(gap - 120.0));
        }
        for (double a : angles) info.tangent_angles_deg.push_back(a * kRad2Deg);
        rep.max_angle_sum_error_deg =
            std::max(rep.max_angle_sum_error_deg, std::abs(gap_sum - 360.0));
        rep.max_dev_from_120_deg =
            std::max(rep.max_dev_from_120_deg, info.max_dev_from_120_deg);
        rep.junctions.push_back(std::move(info));
    }
    rep.junction_count = static_cast<int>(rep.junctions.size());
    rep.min_separation = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < net.nodes.size(); ++i)
        for (size_t j = i + 1; j < net.nodes.size(); ++j)
            rep.min_separation =
                std::min(rep.min_separation, dist(net.nodes[i].pos, net.nodes[j].pos));
    return rep;
}

// ---------------------------------------------------------------------------
// Regularity

std::vector<double> smoothed_tangent_angles(const std::vector<Point2>& pts, int window) {
    int n = static_cast<int>(pts.size());
    std::vector<double> theta(n, 0.0);
    int half = window / 2;
    double prev = 0.0;
    for (int k = 0; k < n; ++k) {
        int lo = std::max(0, k - half);
        int hi = std::min(n - 1, k + half);
        while (hi - lo + 1 < std::min(window, n)) {
            if (lo > 0) --lo;
            else if (hi < n - 1) ++hi;
            else break;
        }
        std::vector<double> s, xs, ys;
        s.push_back(0.0);
        for (int j = lo; j <= hi; ++j) {
            if (j > lo) s.push_back(s.back() + dist(pts[j - 1], pts[j]));
            xs.push_back(pts[j].x);
            ys.push_back(pts[j].y);
        }
        auto cx = polyfit(s, xs, 1);
        auto cy = polyfit(s, ys, 1);
        Vec2 t{cx[1], cy[1]};
        Point2 chord = pts[std::min(k + 1, n - 1)] - pts[std::max(k - 1, 0)];
        if (norm(t) == 0.0) t = chord;
        if (dot(t, chord) < 0.0) t = -t;
        double a = angle_of(t);
        if (k > 0) {
            while (a - prev > M_PI) a -= 2.0 * M_PI;
            while (a - prev < -M_PI) a += 2.0 * M_PI;
        }
        theta[k] = a;
        prev = a;
    }
    return theta;
}

double holder_quotient(const std::vector<Point2>& pts, double gamma,
                       double min_separation) {
    auto theta = smoothed_tangent_angles(pts);
    auto s = cumulative_lengths(pts);
    double sup = 0.0;
    int n = static_cast<int>(pts.size());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double ds = s[j] - s[i];
            if (ds < min_separation) continue;
            sup = std::max(sup, std::abs(theta[j] - theta[i]) / std::pow(ds, gamma));
        }
    return sup;
}

RegularityReport regularity_report(const ClusterNet& net, const DensityField& field,
                                   const GrowthCertificate& growth,
                                   const EpsBetaCertificate& epsbeta,
                                   double min_pair_separation) {
    RegularityReport rep;
    rep.eta = growth.eta;
    rep.beta = epsbeta.beta;
    rep.alpha_h = field.holder_exponent_h().value_or(1.0);
    double eb = rep.eta * rep.beta - 1.0;
    rep.gamma_theory = 0.5 * std::min(std::max(eb, 0.0), rep.alpha_h);
    double gamma = std::max(rep.gamma_theory, 0.05);  // keep the quotient defined

    for (const auto& arc : net.arcs) {
        ArcRegularity ar;
        ar.arc_id = arc.id;
        ar.samples = static_cast<int>(arc.points.size());
        if (arc.points.size() >= 6) {
            ar.k_gamma = holder_quotient(arc.points, gamma, min_pair_separation);
            auto theta = smoothed_tangent_angles(arc.points);
            auto s = cumulative_lengths(arc.points);
            for (size_t k = 1; k < theta.size(); ++k) {
                double ds = s[k] - s[k - 1];
                if (ds > 0.0)
                    ar.max_turn_rate =
                        std::max(ar.max_turn_rate, std::abs(theta[k] - theta[k - 1]) / ds);
            }
        }
        ar.flagged = ar.k_gamma > rep.ceiling;
        rep.k_gamma_max = std::max(rep.k_gamma_max, ar.k_gamma);
        rep.arcs.push_back(ar);
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Sampling helpers

namespace {

struct BoundarySampler {
    std::vector<const Arc*> arcs;
    std::vector<double> lengths;

    explicit BoundarySampler(const ClusterNet& net) {
        for (const auto& a : net.arcs) {
            arcs.push_back(&a);
            lengths.push_back(a.euclidean_length());
        }
    }

    Point2 sample(SplitMix64& rng, std::string* desc) const {
        double total = 0.0;
        for (double l : lengths) total += l;
        double pick = rng.uniform(0.0, total);
        for (size_t i = 0; i < arcs.size(); ++i) {
            if (pick > lengths[i]) {
                pick -= lengths[i];
                continue;
            }
            const auto& pts = arcs[i]->points;
            auto s = cumulative_lengths(pts);
            for (size_t k = 1; k < pts.size(); ++k) {
                if (pick <= s[k] || k + 1 == pts.size()) {
                    double seg = s[k] - s[k - 1];
                    double t = seg > 0.0 ? (pick - s[k - 1]) / seg : 0.0;
                    if (desc)
                        *desc = "arc " + std::to_string(arcs[i]->id) + " @" +
                                std::to_string(pick / std::max(s.back(), 1e-300));
                    return pts[k - 1] + t * (pts[k] - pts[k - 1]);
                }
            }
        }
        if (desc) *desc = "fallback";
        return arcs.empty() ? Point2{0, 0} : arcs[0]->points[0];
    }
};

double boundary_length_in_disk(const ClusterNet& net, const Point2& c, double r) {
    double total = 0.0;
    for (const auto& arc : net.arcs)
        for (size_t k = 0; k + 1 < arc.points.size(); ++k)
            total += segment_length_in_disk(arc.points[k], arc.points[k + 1], c, r);
    return total;
}

int circle_crossings(const ClusterNet& net, const Point2& c, double rho) {
    // Tiny outward jitter sidesteps vertex tangencies.
    double r = rho * (1.0 + 1e-9);
    int count = 0;
    for (const auto& arc : net.arcs)
        for (size_t k = 0; k + 1 < arc.points.size(); ++k)
            count += static_cast<int>(
                segment_circle_params(arc.points[k], arc.points[k + 1], c, r).size());
    return count;
}

}  // namespace

PredicateLog ball_length_check(const ClusterNet& net, int n_samples, double r_max,
                               uint64_t seed) {
    PredicateLog log;
    log.predicate = "ball_length";
    log.seed = seed;
    SplitMix64 rng(seed);
    BoundarySampler sampler(net);

    std::vector<std::pair<Point2, std::string>> centers;
    for (const auto& node : net.nodes)
        centers.emplace_back(node.pos, "junction " + std::to_string(node.id));
    for (int i = 0; i < n_samples; ++i) {
        std::string desc;
        Point2 p = sampler.sample(rng, &desc);
        centers.emplace_back(p, desc);
    }
    for (const auto& [c, desc] : centers) {
        for (int j = 0; j < 6; ++j) {
            double r = r_max * std::pow(2.0, -0.5 * j);
            PredicateEntry e;
            e.sample = desc + ", r=" + format_double(r);
            e.measured = boundary_length_in_disk(net, c, r) / r;
            e.bound = 6.5;
            e.pass = e.measured < e.bound;
            log.pass = log.pass && e.pass;
            log.entries.push_back(std::move(e));
        }
    }
    return log;
}

PredicateLog circle_crossing_check(const ClusterNet& net, int n_samples,
                                   double c2_sample, double r_max, uint64_t seed) {
    PredicateLog log;
    log.predicate = "circle_crossing";
    log.seed = seed;
    SplitMix64 rng(seed);
    BoundarySampler sampler(net);

    std::vector<std::pair<Point2, bool>> centers;  // (center, is_junction)
    std::vector<std::string> descs;
    for (const auto& node : net.nodes) {
        centers.emplace_back(node.pos, true);
        descs.push_back("junction " + std::to_string(node.id));
    }
    for (int i = 0; i < n_samples; ++i) {
        std::string desc;
        Point2 p = sampler.sample(rng, &desc);
        centers.emplace_back(p, false);
        descs.push_back(desc);
    }

    for (size_t ci = 0; ci < centers.size(); ++ci) {
        const auto& [c, is_junction] = centers[ci];
        for (int j = 0; j < 4; ++j) {
            double r = r_max * std::pow(2.0, -0.5 * j);
            int best = std::numeric_limits<int>::max();
            for (int i = 0; i < 64; ++i) {
                double rho = r / c2_sample + (i + 0.5) / 64.0 * (r - r / c2_sample);
                best = std::min(best, circle_crossings(net, c, rho));
                if (best <= 3) break;
            }
            PredicateEntry e;
            e.sample = descs[ci] + ", r=" + format_double(r);
            e.measured = best;
            e.bound = 3.0;
            e.pass = best <= 3;
            log.pass = log.pass && e.pass;
            log.entries.push_back(std::move(e));

            if (is_junction) {
                bool exact3 = false;
                int closest = -1;
                for (int i = 0; i < 64; ++i) {
                    double rho = r * (24.0 / 25.0 + (i + 0.5) / 64.0 * (1.0 / 25.0));
                    int cnt = circle_crossings(net, c, rho);
                    closest = cnt;
                    if (cnt == 3) { exact3 = true; break; }
                }
                PredicateEntry e3;
                e3.sample = descs[ci] + ", r=" + format_double(r) + ", window 24r/25";
                e3.measured = exact3 ? 3.0 : closest;
                e3.bound = 3.0;
                e3.pass = exact3;
                log.pass = log.pass && e3.pass;
                log.entries.push_back(std::move(e3));
            }
        }
    }
    return log;
}

PredicateLog island_check(const ClusterNet& net, double min_diameter) {
    PredicateLog log;
    log.predicate = "no_island";
    for (int region = 0; region <= net.m; ++region) {
        auto comps = components(net, region);
        auto side_loops = region_side_loops(net, region);
        for (const auto& comp : comps) {
            if (!comp.bounded || comp.diameter >= min_diameter) continue;
            // Which regions sit on the far side of the outer loop?
            std::set<int> across;
            for (const auto& side : side_loops[comp.loop_indices[0]]) {
                const Arc* a = net.find_arc(side.arc);
                across.insert(side.forward ? a->right : a->left);
            }
            if (across.size() == 1) {
                PredicateEntry e;
                e.sample = "region " + std::to_string(region) + " component enclosed by region " +
                           std::to_string(*across.begin());
                e.measured = comp.diameter;
                e.bound = min_diameter;
                e.pass = false;
                log.pass = false;
                log.entries.push_back(std::move(e));
            }
        }
    }
    if (log.entries.empty()) {
        PredicateEntry e;
        e.sample = "no enclosed component below diameter " + format_double(min_diameter);
        e.measured = 0.0;
        e.bound = min_diameter;
        e.pass = true;
        log.entries.push_back(std::move(e));
    }
    return log;
}

PredicateLog isoperimetric_check(const ClusterNet& net, const DensityField& field,
                                 const GrowthCertificate& growth) {
    PredicateLog log;
    log.predicate = "isoperimetric";
    if (!(growth.c_vol > 0.0))
        throw MissingCertificateError("isoperimetric_check needs a growth certificate");
    double h_min = h_bounds_on_rect(field, net.window).h_min;
    auto per = weighted_perimeter(net, field);
    auto areas = weighted_area(net, field);
    for (int region = 1; region <= net.m; ++region) {
        double p_region = 0.0;
        for (const auto& arc : net.arcs)
            if (arc.left == region || arc.right == region)
                p_region += per.per_arc_perimeter.at(arc.id);
        PredicateEntry e;
        e.sample = "region " + std::to_string(region);
        e.measured = p_region;
        e.bound = h_min / std::pow(growth.c_vol, 1.0 / growth.eta) *
                  std::pow(areas[region - 1], 1.0 / growth.eta);
        e.pass = e.measured >= e.bound * (1.0 - 1e-12);
        log.pass = log.pass && e.pass;
        log.entries.push_back(std::move(e));
    }
    return log;
}

// ---------------------------------------------------------------------------
// Ball surgery

namespace {

struct Port {
    Point2 pos;
    double angle = 0.0;
    int node_id = -1;
};

struct OutsidePiece {
    std::vector<Point2> points;
    int left = 0, right = 0;
    int from_node = kFreeLoop;  // original node id or port index offset later
    int to_node = kFreeLoop;
    int from_port = -1;  // index into ports when the end is a crossing
    int to_port = -1;
};

struct CircleSplit {
    std::vector<Port> ports;
    std::vector<OutsidePiece> pieces;
    std::vector<int> dropped_arcs;
    double r = 0.0;  // jittered radius actually used
    bool ok = true;
    std::string note;
};

CircleSplit split_at_circle(const ClusterNet& net, const Point2& center, double r_in) {
    CircleSplit out;
    double r = r_in;
    // Nudge the radius off any vertex to keep crossings transversal.
    for (int attempt = 0; attempt < 20; ++attempt) {
        bool clean = true;
        for (const auto& arc : net.arcs)
            for (const auto& p : arc.points)
                if (std::abs(dist(p, center) - r) < 1e-9 * r) { clean = false; break; }
        if (clean) break;
        r *= 1.0 + 1e-7;
    }
    out.r = r;

    for (const auto& arc : net.arcs) {
        std::vector<std::vector<Point2>> chains;
        std::vector<Point2> cur = {arc.points[0]};
        for (size_t k = 0; k + 1 < arc.points.size(); ++k) {
            const Point2& a = arc.points[k];
            const Point2& b = arc.points[k + 1];
            for (double t : segment_circle_params(a, b, center, r)) {
                Point2 x = a + t * (b - a);
                cur.push_back(x);
                chains.push_back(cur);
                cur = {x};
            }
            cur.push_back(b);
        }
        chains.push_back(cur);

        // A split free loop wraps through its seam: the last chain continues
        // into the first, and every chain boundary is a circle crossing.
        bool wrapped = arc.closed() && chains.size() > 1;
        if (wrapped) {
            std::vector<Point2> joined = chains.back();
            joined.insert(joined.end(), chains[0].begin() + 1, chains[0].end());
            chains[0] = std::move(joined);
            chains.pop_back();
        }

        bool any_kept = false, any_dropped = false;
        for (size_t ci = 0; ci < chains.size(); ++ci) {
            auto& chain = chains[ci];
            if (polyline_length(chain) <= 0.0) continue;
            // Classify by the chain's midpoint in arclength.
            auto s = cumulative_lengths(chain);
            double half = 0.5 * s.back();
            Point2 mid = chain.front();
            for (size_t k = 1; k < chain.size(); ++k) {
                if (s[k] >= half) {
                    double seg = s[k] - s[k - 1];
                    double t = seg > 0.0 ? (half - s[k - 1]) / seg : 0.0;
                    mid = chain[k - 1] + t * (chain[k] - chain[k - 1]);
                    break;
                }
            }
            bool inside = dist(mid, center) < r;
            if (inside) { any_dropped = true; continue; }
            any_kept = true;
            OutsidePiece piece;
            piece.points = chain;
            piece.left = arc.left;
            piece.right = arc.right;
            bool starts_at_node = !wrapped && ci == 0 && !arc.closed();
            bool ends_at_node = !wrapped && ci + 1 == chains.size() && !arc.closed();
            bool untouched_loop = arc.closed() && chains.size() == 1;
            if (untouched_loop) {
                piece.from_node = kFreeLoop;
                piece.to_node = kFreeLoop;
            } else {
                if (starts_at_node) {
                    piece.from_node = arc.from;
                } else {
                    out.ports.push_back({chain.front(),
                                         angle_of(chain.front() - center), -1});
                    piece.from_port = static_cast<int>(out.ports.size()) - 1;
                }
                if (ends_at_node) {
                    piece.to_node = arc.to;
                } else {
                    out.ports.push_back({chain.back(), angle_of(chain.back() - center), -1});
                    piece.to_port = static_cast<int>(out.ports.size()) - 1;
                }
            }
            out.pieces.push_back(std::move(piece));
        }
        if (any_dropped && !any_kept) out.dropped_arcs.push_back(arc.id);
        (void)any_kept;
    }
    return out;
}

// Region label of the original net just outside the circle at the given
// angle, stepping outward until the probe is clear of every arc.
int probe_region_outside(const ClusterNet& net, const RegionIndex& index,
                         const Point2& center, double r, double angle) {
    Vec2 e{std::cos(angle), std::sin(angle)};
    double tol = 1e-9 * std::max(net.scale(), 1.0);
    for (double off = 1e-6; off <= 2e-2; off *= 10.0) {
        Point2 p = center + (r * (1.0 + off)) * e;
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto& arc : net.arcs)
            for (size_t k = 0; k + 1 < arc.points.size(); ++k)
                nearest = std::min(nearest, std::sqrt(point_segment_dist2(
                                                p, arc.points[k], arc.points[k + 1])));
        if (nearest > tol) return index.locate(p);
    }
    return index.locate(center + (r * 1.05) * e);
}

std::vector<Point2> circle_polyline(const Point2& center, double r, double a0,
                                    double a1, double spacing, Point2 exact_start,
                                    Point2 exact_end) {
    double span = ccw_angle_from_to(a0, a1);
    if (span <= 0.0) span = 2.0 * M_PI;
    int n = std::max(8, static_cast<int>(std::ceil(span * r / spacing)));
    std::vector<Point2> pts;
    pts.reserve(n + 1);
    pts.push_back(exact_start);
    for (int k = 1; k < n; ++k) {
        double a = a0 + span * k / n;
        pts.push_back(center + r * Vec2{std::cos(a), std::sin(a)});
    }
    pts.push_back(exact_end);
    return pts;
}

// Merges the two arcs at every degree-2 node whose labels line up.
void dissolve_degree2(ClusterNet& net) {
    bool changed = true;
    while (changed) {
        changed = false;
        net.rebuild_incidence();
        for (const auto& node : net.nodes) {
            auto rays = node_rays(net, node);
            if (rays.size() != 2) continue;
            if (rays[0].arc == rays[1].arc) {
                // Both ends of one arc: closes into a free loop.
                Arc* a = net.find_arc(rays[0].arc);
                if (a->from != node.id || a->to != node.id) continue;
                a->from = a->to = kFreeLoop;
                net.nodes.erase(std::remove_if(net.nodes.begin(), net.nodes.end(),
                                               [&](const Node& n) { return n.id == node.id; }),
                                net.nodes.end());
                changed = true;
                break;
            }
            Arc a = *net.find_arc(rays[0].arc);
            Arc b = *net.find_arc(rays[1].arc);
            // Orient a to end here and b to start here.
            if (a.from == node.id) {
                std::reverse(a.points.begin(), a.points.end());
                std::swap(a.from, a.to);
                std::swap(a.left, a.right);
            }
            if (b.to == node.id) {
                std::reverse(b.points.begin(), b.points.end());
                std::swap(b.from, b.to);
                std::swap(b.left, b.right);
            }
            if (a.to != node.id || b.from != node.id) continue;
            if (a.left != b.left || a.right != b.right) continue;  // keep the node
            Arc merged = a;
            merged.to = b.to;
            merged.points.insert(merged.points.end(), b.points.begin() + 1, b.points.end());
            int drop_id = b.id;
            for (auto& arc : net.arcs)
                if (arc.id == merged.id) arc = merged;
            net.arcs.erase(std::remove_if(net.arcs.begin(), net.arcs.end(),
                                          [&](const Arc& x) { return x.id == drop_id; }),
                           net.arcs.end());
            net.nodes.erase(std::remove_if(net.nodes.begin(), net.nodes.end(),
                                           [&](const Node& n) { return n.id == node.id; }),
                            net.nodes.end());
            changed = true;
            break;
        }
    }
    net.rebuild_incidence();
}

}  // namespace

BallCompetitor fill_ball_competitor(const ClusterNet& net, const DensityField& field,
                                    const Point2& center, double r, double spacing) {
    (void)field;
    BallCompetitor out;
    CircleSplit split = split_at_circle(net, center, r);
    RegionIndex index(net);

    ClusterNet comp;
    comp.m = net.m;
    comp.window = net.window;
    comp.target_areas = net.target_areas;
    for (const auto& node : net.nodes)
        if (dist(node.pos, center) > split.r) comp.nodes.push_back({node.id, node.pos, {}});

    int next_node = net.max_node_id() + 1;
    for (auto& port : split.ports) {
        port.node_id = next_node++;
        comp.nodes.push_back({port.node_id, port.pos, {}});
    }

    int next_arc = 0;
    auto add_arc = [&](std::vector<Point2> pts, int from, int to, int left, int right) {
        Arc a;
        a.id = next_arc++;
        a.from = from;
        a.to = to;
        a.left = left;
        a.right = right;
        a.points = std::move(pts);
        comp.arcs.push_back(std::move(a));
    };

    for (const auto& piece : split.pieces) {
        int from = piece.from_port >= 0 ? split.ports[piece.from_port].node_id
                                        : piece.from_node;
        int to = piece.to_port >= 0 ? split.ports[piece.to_port].node_id : piece.to_node;
        add_arc(piece.points, from, to, piece.left, piece.right);
    }

    if (split.ports.empty()) {
        int region = probe_region_outside(net, index, center, split.r, 0.0);
        if (region != 1) {
            auto pts = circle_polyline(center, split.r, 0.0, 2.0 * M_PI, spacing,
                                       center + Vec2{split.r, 0.0},
                                       center + Vec2{split.r, 0.0});
            add_arc(std::move(pts), kFreeLoop, kFreeLoop, 1, region);
        }
    } else {
        std::vector<int> order(split.ports.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return split.ports[a].angle < split.ports[b].angle;
        });
        for (size_t k = 0; k < order.size(); ++k) {
            const Port& p0 = split.ports[order[k]];
            const Port& p1 = split.ports[order[(k + 1) % order.size()]];
            double mid = p0.angle + 0.5 * ccw_angle_from_to(p0.angle, p1.angle);
            int region = probe_region_outside(net, index, center, split.r, mid);
            if (region == 1) continue;  // the fill region reaches the circle here
            auto pts = circle_polyline(center, split.r, p0.angle, p1.angle, spacing,
                                       p0.pos, p1.pos);
            add_arc(std::move(pts), p0.node_id, p1.node_id, 1, region);
        }
    }

    dissolve_degree2(comp);
    auto res = validate(comp, CheckLevel::Structural);
    if (!res.ok()) {
        out.note = "competitor failed validation: " + res.violations[0].code;
        out.valid = false;
        out.net = std::move(comp);
        return out;
    }
    VertexIndex vidx(comp);
    std::vector<double> v = vidx.gather(comp);
    out.frozen_nodes.assign(vidx.count(), 0);
    for (int k = 0; k < vidx.count(); ++k) {
        Point2 p{v[2 * k], v[2 * k + 1]};
        if (dist(p, center) <= split.r * (1.0 + 1e-5)) out.frozen_nodes[k] = 1;
    }
    out.net = std::move(comp);
    out.valid = true;
    return out;
}

BallCompetitor spider_competitor(const ClusterNet& net, const DensityField& field,
                                 const Point2& center, double r, double spacing) {
    (void)field;
    BallCompetitor out;
    CircleSplit split = split_at_circle(net, center, r);
    RegionIndex index(net);

    if (split.ports.size() != 3) {
        out.valid = false;
        out.note = "spider needs exactly 3 circle crossings, found " +
                   std::to_string(split.ports.size());
        return out;
    }

    ClusterNet comp;
    comp.m = net.m;
    comp.window = net.window;
    comp.target_areas = net.target_areas;
    for (const auto& node : net.nodes)
        if (dist(node.pos, center) > split.r) comp.nodes.push_back({node.id, node.pos, {}});

    int next_node = net.max_node_id() + 1;
    for (auto& port : split.ports) {
        port.node_id = next_node++;
        comp.nodes.push_back({port.node_id, port.pos, {}});
    }
    int center_node = next_node++;
    comp.nodes.push_back({center_node, center, {}});

    int next_arc = 0;
    auto add_arc = [&](std::vector<Point2> pts, int from, int to, int left, int right) {
        Arc a;
        a.id = next_arc++;
        a.from = from;
        a.to = to;
        a.left = left;
        a.right = right;
        a.points = std::move(pts);
        comp.arcs.push_back(std::move(a));
    };
    for (const auto& piece : split.pieces) {
        int from = piece.from_port >= 0 ? split.ports[piece.from_port].node_id
                                        : piece.from_node;
        int to = piece.to_port >= 0 ? split.ports[piece.to_port].node_id : piece.to_node;
        add_arc(piece.points, from, to, piece.left, piece.right);
    }

    std::vector<int> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return split.ports[a].angle < split.ports[b].angle;
    });
    int gap_region[3];
    for (int k = 0; k < 3; ++k) {
        const Port& p0 = split.ports[order[k]];
        const Port& p1 = split.ports[order[(k + 1) % 3]];
        double mid = p0.angle + 0.5 * ccw_angle_from_to(p0.angle, p1.angle);
        gap_region[k] = probe_region_outside(net, index, center, split.r, mid);
    }
    for (int k = 0; k < 3; ++k) {
        const Port& p = split.ports[order[k]];
        double len = dist(center, p.pos);
        int nseg = std::max(4, static_cast<int>(std::ceil(len / spacing)));
        std::vector<Point2> pts;
        for (int j = 0; j <= nseg; ++j)
            pts.push_back(center + (static_cast<double>(j) / nseg) * (p.pos - center));
        pts.front() = center;
        pts.back() = p.pos;
        // Heading outward along leg k: the CCW side is the gap that starts
        // at this port, the CW side is the previous gap.
        int left = gap_region[k];
        int right = gap_region[(k + 2) % 3];
        add_arc(std::move(pts), center_node, p.node_id, left, right);
    }

    dissolve_degree2(comp);
    auto res = validate(comp, CheckLevel::Structural);
    if (!res.ok()) {
        out.valid = false;
        out.note = "spider failed validation: " + res.violations[0].code;
        out.net = std::move(comp);
        return out;
    }
    VertexIndex vidx(comp);
    std::vector<double> v = vidx.gather(comp);
    out.frozen_nodes.assign(vidx.count(), 0);
    for (int k = 0; k < vidx.count(); ++k) {
        Point2 p{v[2 * k], v[2 * k + 1]};
        if (dist(p, center) <= split.r * (1.0 + 1e-5)) out.frozen_nodes[k] = 1;
    }
    out.net = std::move(comp);
    out.valid = true;
    return out;
}

PredicateLog local_optimality_probe(const ClusterNet& net, const DensityField& field,
                                    int n_samples, const SolveConfig& cfg, uint64_t seed) {
    PredicateLog log;
    log.predicate = "local_optimality";
    log.seed = seed;
    SplitMix64 rng(seed);
    BoundarySampler sampler(net);

    double ell = cfg.spacing(net);
    double p0 = weighted_perimeter(net, field).perimeter;
    double slack = 1e-6 * net.scale();

    double min_sep = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < net.nodes.size(); ++i)
        for (size_t j = i + 1; j < net.nodes.size(); ++j)
            min_sep = std::min(min_sep, dist(net.nodes[i].pos, net.nodes[j].pos));

    struct Sample {
        Point2 center;
        double r;
        bool spider;
        std::string desc;
    };
    std::vector<Sample> samples;
    double r_junction = std::min(6.0 * ell, min_sep / 3.0);
    for (const auto& node : net.nodes) {
        samples.push_back({node.pos, r_junction, true,
                           "junction " + std::to_string(node.id) + " spider"});
        samples.push_back({node.pos, r_junction, false,
                           "junction " + std::to_string(node.id) + " fill"});
    }
    for (int i = 0; i < n_samples; ++i) {
        std::string desc;
        Point2 p = sampler.sample(rng, &desc);
        double r = std::min(6.0 * ell, min_sep / 3.0);
        if (!net.nodes.empty()) {
            double d_junction = std::numeric_limits<double>::infinity();
            for (const auto& node : net.nodes)
                d_junction = std::min(d_junction, dist(p, node.pos));
            r = std::min(r, 0.5 * d_junction);  // keep junctions outside
        }
        if (r > ell) samples.push_back({p, r, false, desc + " fill"});
    }
    // A couple of interior balls: the competitor is the net itself.
    for (int i = 0; i < 3; ++i) {
        Point2 p = rng.point_in(net.window);
        double d_boundary = std::numeric_limits<double>::infinity();
        for (const auto& arc : net.arcs)
            for (size_t k = 0; k + 1 < arc.points.size(); ++k)
                d_boundary = std::min(d_boundary,
                                      std::sqrt(point_segment_dist2(p, arc.points[k],
                                                                    arc.points[k + 1])));
        if (d_boundary > 8.0 * ell)
            samples.push_back({p, 4.0 * ell, false, "interior fill"});
    }

    for (const auto& s : samples) {
        // Keep clear of the window boundary.
        Rect w = net.window;
        double margin = s.r + 2.0 * ell;
        if (s.center.x - w.xmin < margin || w.xmax - s.center.x < margin ||
            s.center.y - w.ymin < margin || w.ymax - s.center.y < margin)
            continue;

        BallCompetitor comp = s.spider
                                  ? spider_competitor(net, field, s.center, s.r, ell)
                                  : fill_ball_competitor(net, field, s.center, s.r, ell);
        PredicateEntry e;
        e.sample = s.desc + ", r=" + format_double(s.r);
        e.bound = -slack;
        if (!comp.valid) {
            e.pass = true;
            e.measured = 0.0;
            e.sample += " (skipped: " + comp.note + ")";
            log.entries.push_back(std::move(e));
            continue;
        }
        try {
            ClusterNet restored = restore_areas(comp.net, field, cfg, &comp.frozen_nodes);
            double pc = weighted_perimeter(restored, field).perimeter;
            e.measured = pc - p0;
            e.pass = e.measured >= e.bound;
        } catch (const RestoreFailedError&) {
            e.pass = true;
            e.measured = 0.0;
            e.sample += " (skipped: restore failed)";
        } catch (const SingularConstraintsError&) {
            e.pass = true;
            e.measured = 0.0;
            e.sample += " (skipped: singular constraints)";
        }
        log.pass = log.pass && e.pass;
        log.entries.push_back(std::move(e));
    }
    return log;
}

}  // namespace clusterlab

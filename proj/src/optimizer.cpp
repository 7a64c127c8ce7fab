#include "clusterlab/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "clusterlab/numerics.hpp"

namespace clusterlab {

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Converged: return "converged";
        case SolveStatus::MaxIters: return "max_iters";
        case SolveStatus::TopologyFault: return "topology_fault";
    }
    return "unknown";
}

namespace {

double max_rel_violation(const std::vector<double>& areas,
                         const std::vector<double>& targets) {
    double worst = 0.0;
    for (size_t i = 0; i < targets.size(); ++i)
        worst = std::max(worst, std::abs(areas[i] - targets[i]) / targets[i]);
    return worst;
}

// lambda solve for (J J^T + ridge I) x = rhs over the free variables.
std::vector<double> solve_normal(const GradientPack& pack,
                                 const std::vector<double>& rhs,
                                 const std::vector<char>* frozen) {
    int m = pack.m;
    int n2 = 2 * pack.n_vars;
    std::vector<double> jjt(m * m, 0.0);
    for (int r = 0; r < m; ++r) {
        const double* jr = pack.J.data() + static_cast<size_t>(r) * n2;
        for (int c = r; c < m; ++c) {
            const double* jc = pack.J.data() + static_cast<size_t>(c) * n2;
            double s = 0.0;
            for (int k = 0; k < n2; ++k) {
                if (frozen && (*frozen)[k / 2]) continue;
                s += jr[k] * jc[k];
            }
            jjt[r * m + c] = s;
            jjt[c * m + r] = s;
        }
    }
    double max_diag = 0.0;
    for (int r = 0; r < m; ++r) max_diag = std::max(max_diag, jjt[r * m + r]);
    double ridge = 1e-12 * std::max(1.0, max_diag);
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<double> a = jjt;
        std::vector<double> x = rhs;
        for (int r = 0; r < m; ++r) a[r * m + r] += ridge;
        if (solve_dense(a, x, m, 1e-250)) return x;
        ridge *= 1e3;
    }
    throw SingularConstraintsError("constraint normal matrix is rank deficient");
}

}  // namespace

ClusterNet restore_areas(const ClusterNet& net, const DensityField& field,
                         const SolveConfig& cfg, const std::vector<char>* frozen,
                         long* newton_iters) {
    ClusterNet cur = net;
    VertexIndex index(cur);
    for (int it = 0; it < 20; ++it) {
        std::vector<double> areas = weighted_area(cur, field);
        if (max_rel_violation(areas, cur.target_areas) < cfg.area_tol) return cur;
        if (newton_iters) ++(*newton_iters);
        GradientPack pack = gradients(cur, field, index);
        std::vector<double> rhs(cur.m);
        for (int i = 0; i < cur.m; ++i) rhs[i] = cur.target_areas[i] - areas[i];
        std::vector<double> dl = solve_normal(pack, rhs, frozen);
        std::vector<double> v = index.gather(cur);
        for (int k = 0; k < 2 * pack.n_vars; ++k) {
            if (frozen && (*frozen)[k / 2]) continue;
            double acc = 0.0;
            for (int r = 0; r < cur.m; ++r)
                acc += dl[r] * pack.J[static_cast<size_t>(r) * 2 * pack.n_vars + k];
            v[k] += acc;
        }
        index.scatter(cur, v);
    }
    std::vector<double> areas = weighted_area(cur, field);
    if (max_rel_violation(areas, cur.target_areas) < cfg.area_tol) return cur;
    throw RestoreFailedError("volume restoration did not converge in 20 iterations");
}

std::pair<ClusterNet, StepInfo> project_and_step(const ClusterNet& net,
                                                 const DensityField& field,
                                                 const SolveConfig& cfg,
                                                 double warm_step) {
    VertexIndex index(net);
    GradientPack pack = gradients(net, field, index);
    std::vector<double> lam = [&] {
        std::vector<double> rhs(net.m, 0.0);
        int n2 = 2 * pack.n_vars;
        for (int r = 0; r < net.m; ++r) {
            const double* jr = pack.J.data() + static_cast<size_t>(r) * n2;
            double s = 0.0;
            for (int k = 0; k < n2; ++k) s += jr[k] * pack.dP[k];
            rhs[r] = s;
        }
        return solve_normal(pack, rhs, nullptr);
    }();

    int n2 = 2 * pack.n_vars;
    std::vector<double> dir(n2);
    double grad_inf = 0.0, dir_norm2 = 0.0;
    for (int k = 0; k < n2; ++k) {
        double jt = 0.0;
        for (int r = 0; r < net.m; ++r)
            jt += lam[r] * pack.J[static_cast<size_t>(r) * n2 + k];
        dir[k] = -pack.dP[k] + jt;
        grad_inf = std::max(grad_inf, std::abs(dir[k]));
        dir_norm2 += dir[k] * dir[k];
    }

    StepInfo info;
    info.grad_inf = grad_inf;
    if (grad_inf < cfg.grad_tol(net)) {
        info.perimeter = weighted_perimeter(net, field).perimeter;
        info.moved = false;
        return {net, info};
    }

    double p0 = weighted_perimeter(net, field).perimeter;
    double cap = 0.5 * cfg.spacing(net) / grad_inf;
    double t = warm_step > 0.0 ? std::min(2.0 * warm_step, cap) : cap;
    std::vector<double> v0 = index.gather(net);

    for (int halving = 0; halving <= cfg.ls_max_halvings; ++halving) {
        std::vector<double> v = v0;
        for (int k = 0; k < n2; ++k) v[k] += t * dir[k];
        ClusterNet trial = net;
        index.scatter(trial, v);
        try {
            trial = restore_areas(trial, field, cfg);
        } catch (const RestoreFailedError&) {
            t *= cfg.ls_shrink;
            continue;
        } catch (const SingularConstraintsError&) {
            t *= cfg.ls_shrink;
            continue;
        }
        double p = weighted_perimeter(trial, field).perimeter;
        if (p <= p0 - cfg.ls_armijo * t * dir_norm2) {
            info.step = t;
            info.perimeter = p;
            info.halvings = halving;
            info.moved = true;
            return {std::move(trial), info};
        }
        t *= cfg.ls_shrink;
    }
    throw LineSearchFailedError("no Armijo decrease after " +
                                std::to_string(cfg.ls_max_halvings) + " halvings");
}

ClusterNet remesh(const ClusterNet& net, const DensityField& field,
                  const SolveConfig& cfg) {
    double ell = cfg.spacing(net);
    for (int attempt = 0; attempt < 2; ++attempt) {
        ClusterNet out = net;
        for (auto& arc : out.arcs) {
            double len = arc.euclidean_length();
            int n = std::max(8, static_cast<int>(std::llround(len / ell)));
            arc.points = resample_polyline(arc.points, n);
        }
        out.rebuild_incidence();
        auto res = validate(out, CheckLevel::Structural);
        bool planar = true;
        for (const auto& v : res.violations)
            if (v.code == "planarity" || v.code == "self_intersection") planar = false;
        if (planar) return restore_areas(out, field, cfg);
        ell *= 0.5;
    }
    throw PlanarityBrokenError("resampling produced crossings twice in a row");
}

// ---------------------------------------------------------------------------
// Junction surgery

namespace {

Point2 ray_anchor(const ClusterNet& net, const IncidentRay& ray) {
    const Arc* a = net.find_arc(ray.arc);
    return ray.leaves_forward ? a->points[1] : a->points[a->points.size() - 2];
}

void reattach_ray(ClusterNet& net, const IncidentRay& ray, int new_node, Point2 new_pos) {
    Arc* a = net.find_arc(ray.arc);
    if (ray.leaves_forward) {
        a->from = new_node;
        a->points.front() = new_pos;
    } else {
        a->to = new_node;
        a->points.back() = new_pos;
    }
}

}  // namespace

ClusterNet pop_junction(const ClusterNet& net, int node_id, const DensityField& field,
                        const SolveConfig& cfg) {
    const Node* node = net.find_node(node_id);
    if (!node) throw TopologyFaultError("pop: unknown node " + std::to_string(node_id));
    auto rays = node_rays(net, *node);
    if (rays.size() != 4)
        throw TopologyFaultError("pop: node " + std::to_string(node_id) + " has degree " +
                                 std::to_string(rays.size()));
    for (size_t k = 0; k < 4; ++k)
        if (rays[k].left_of_ray != rays[(k + 1) % 4].right_of_ray)
            throw LabelInconsistencyError("pop: cyclic labels at node " +
                                          std::to_string(node_id));

    double eps_pop = cfg.pop_eps(net);
    double delta = 0.5 * eps_pop;
    Point2 pos = node->pos;
    double h0 = field.h(pos);

    struct Pairing {
        Point2 n1, n2;
        double cost = std::numeric_limits<double>::infinity();
        bool feasible = false;
    };
    auto eval_pairing = [&](int i0, int i1, int i2, int i3) {
        // (rays i0,i1) move to n1, (rays i2,i3) to n2.
        Pairing p;
        Vec2 b1 = rays[i0].dir + rays[i1].dir;
        Vec2 b2 = rays[i2].dir + rays[i3].dir;
        if (norm(b1) < 1e-9 || norm(b2) < 1e-9) return p;
        p.n1 = pos + delta * normalized(b1);
        p.n2 = pos + delta * normalized(b2);
        p.cost = dist(ray_anchor(net, rays[i0]), p.n1) +
                 dist(ray_anchor(net, rays[i1]), p.n1) +
                 dist(ray_anchor(net, rays[i2]), p.n2) +
                 dist(ray_anchor(net, rays[i3]), p.n2) + dist(p.n1, p.n2);
        p.cost *= h0;
        p.feasible = true;
        return p;
    };

    Pairing pa = eval_pairing(0, 1, 2, 3);
    Pairing pb = eval_pairing(1, 2, 3, 0);
    if (!pa.feasible && !pb.feasible)
        throw LabelInconsistencyError("pop: both pairings collapse at node " +
                                      std::to_string(node_id));
    bool use_a;
    if (!pb.feasible) {
        use_a = true;
    } else if (!pa.feasible) {
        use_a = false;
    } else {
        double tie = 1e-12 * std::max(1.0, std::max(pa.cost, pb.cost));
        if (std::abs(pa.cost - pb.cost) > tie) {
            use_a = pa.cost < pb.cost;
        } else {
            // Deterministic tie break on the new arc midpoint, x then y.
            Point2 ma = 0.5 * (pa.n1 + pa.n2), mb = 0.5 * (pb.n1 + pb.n2);
            if (ma.x != mb.x) use_a = ma.x < mb.x;
            else if (ma.y != mb.y) use_a = ma.y < mb.y;
            else use_a = true;
        }
    }

    int i0 = use_a ? 0 : 1, i1 = use_a ? 1 : 2, i2 = use_a ? 2 : 3, i3 = use_a ? 3 : 0;
    const Pairing& p = use_a ? pa : pb;

    ClusterNet out = net;
    Node* n1 = out.find_node(node_id);
    n1->pos = p.n1;
    Node n2;
    n2.id = out.max_node_id() + 1;
    n2.pos = p.n2;
    out.nodes.push_back(n2);

    // node_rays entries index arcs of `net`; reattach on the copy.
    reattach_ray(out, rays[i0], node_id, p.n1);
    reattach_ray(out, rays[i1], node_id, p.n1);
    reattach_ray(out, rays[i2], n2.id, p.n2);
    reattach_ray(out, rays[i3], n2.id, p.n2);

    // New arc n1 -> n2 through the old junction point; its left side is the
    // wedge gap that perp_left of the travel direction points into.
    Arc bridge;
    bridge.id = out.max_arc_id() + 1;
    bridge.from = node_id;
    bridge.to = n2.id;
    bridge.points = {p.n1, pos, p.n2};
    int gap_a = rays[i1].left_of_ray;  // wedge (i1, i2)
    int gap_b = rays[i3].left_of_ray;  // wedge (i3, i0)
    Vec2 travel = normalized(p.n2 - p.n1);
    double probe = angle_of(perp_left(travel));
    double a1 = rays[i1].angle, a2 = rays[i2].angle;
    bool probe_in_gap_a = ccw_angle_from_to(a1, probe) <= ccw_angle_from_to(a1, a2);
    bridge.left = probe_in_gap_a ? gap_a : gap_b;
    bridge.right = probe_in_gap_a ? gap_b : gap_a;
    out.arcs.push_back(std::move(bridge));
    out.rebuild_incidence();
    return out;
}

namespace {

// Merges the two endpoints of a short arc into one degree-4 node and pops it.
ClusterNet collapse_and_pop(const ClusterNet& net, int arc_id, const DensityField& field,
                            const SolveConfig& cfg, std::string* fault) {
    const Arc* arc = net.find_arc(arc_id);
    int keep = arc->from, drop = arc->to;
    if (keep == drop) {
        *fault = "short self-loop at node " + std::to_string(keep) +
                 " (region component vanishing)";
        return net;
    }
    ClusterNet out = net;
    Point2 mid = 0.5 * (out.find_node(keep)->pos + out.find_node(drop)->pos);

    out.arcs.erase(std::remove_if(out.arcs.begin(), out.arcs.end(),
                                  [&](const Arc& a) { return a.id == arc_id; }),
                   out.arcs.end());
    for (auto& a : out.arcs) {
        if (a.from == drop) a.from = keep;
        if (a.to == drop) a.to = keep;
    }
    out.nodes.erase(std::remove_if(out.nodes.begin(), out.nodes.end(),
                                   [&](const Node& n) { return n.id == drop; }),
                    out.nodes.end());
    Node* merged = out.find_node(keep);
    merged->pos = mid;
    for (auto& a : out.arcs) {
        if (a.from == keep) a.points.front() = mid;
        if (a.to == keep) a.points.back() = mid;
    }
    out.rebuild_incidence();
    return pop_junction(out, keep, field, cfg);
}

}  // namespace

std::pair<ClusterNet, SolveTrace> solve(const ClusterNet& input, const DensityField& field,
                                        const SolveConfig& cfg) {
    SolveTrace trace;
    ClusterNet net = input;
    net.rebuild_incidence();

    auto fault_out = [&](const std::string& why) {
        trace.status = SolveStatus::TopologyFault;
        trace.fault = why;
        return std::make_pair(net, trace);
    };

    auto pre = validate(net, CheckLevel::Structural);
    if (!pre.ok()) return fault_out("input failed validation: " + pre.violations[0].code);

    try {
        net = restore_areas(net, field, cfg, nullptr, &trace.restore_iters);
    } catch (const std::runtime_error& e) {
        return fault_out(std::string("initial restoration failed: ") + e.what());
    }

    double warm = 0.0;
    double eps_pop = cfg.pop_eps(net);
    trace.status = SolveStatus::MaxIters;

    for (int iter = 1; iter <= cfg.max_iters; ++iter) {
        trace.iters = iter;
        std::string event;

        try {
            if (cfg.remesh_every > 0 && iter % cfg.remesh_every == 0) {
                net = remesh(net, field, cfg);
                ++trace.remeshes;
                event = "remesh";
            }

            // Junction collisions: collapse the shortest offending arc. The
            // trigger sits at half the pop length so a freshly popped bridge
            // (length eps_pop) cannot re-collapse immediately.
            int short_arc = -1;
            double short_len = 0.5 * eps_pop;
            for (const auto& a : net.arcs) {
                if (a.closed()) continue;
                double len = a.euclidean_length();
                if (len < short_len &&
                    dist(net.find_node(a.from)->pos, net.find_node(a.to)->pos) <
                        0.5 * eps_pop) {
                    short_len = len;
                    short_arc = a.id;
                }
            }
            if (short_arc >= 0) {
                std::string fault;
                net = collapse_and_pop(net, short_arc, field, cfg, &fault);
                if (!fault.empty()) return fault_out(fault);
                net = restore_areas(net, field, cfg, nullptr, &trace.restore_iters);
                ++trace.pops;
                event = event.empty() ? "pop" : event + "+pop";
                warm = 0.0;
            }

            auto [next, info] = project_and_step(net, field, cfg, warm);
            ++trace.gradient_evals;
            trace.functional_evals += 2 + info.halvings;
            net = std::move(next);
            trace.final_grad_inf = info.grad_inf;
            trace.final_perimeter = info.perimeter;

            std::vector<double> areas = weighted_area(net, field);
            TraceRow row;
            row.iter = iter;
            row.perimeter = info.perimeter;
            row.max_area_violation = max_rel_violation(areas, net.target_areas);
            row.step = info.step;
            row.grad_inf = info.grad_inf;
            row.event = event;
            trace.rows.push_back(row);

            if (!info.moved) {
                trace.status = SolveStatus::Converged;
                break;
            }
            warm = info.step;
        } catch (const LineSearchFailedError&) {
            TraceRow row;
            row.iter = iter;
            row.perimeter = trace.final_perimeter;
            row.grad_inf = trace.final_grad_inf;
            row.event = "line_search_failed";
            trace.rows.push_back(row);
            if (trace.final_grad_inf < 100.0 * cfg.grad_tol(net)) {
                trace.status = SolveStatus::Converged;
                break;
            }
            return fault_out("line search stalled at grad_inf=" +
                             std::to_string(trace.final_grad_inf));
        } catch (const PlanarityBrokenError& e) {
            return fault_out(e.what());
        } catch (const RestoreFailedError& e) {
            return fault_out(e.what());
        } catch (const SingularConstraintsError& e) {
            return fault_out(e.what());
        } catch (const LabelInconsistencyError& e) {
            return fault_out(e.what());
        } catch (const TopologyFaultError& e) {
            return fault_out(e.what());
        }
    }

    auto post = validate(net, CheckLevel::Strict);
    if (!post.ok() && trace.status != SolveStatus::TopologyFault)
        return fault_out("output failed validation: " + post.violations[0].code);
    return {net, trace};
}

std::map<int, double> node_force_residuals(const ClusterNet& net,
                                           const DensityField& field) {
    VertexIndex index(net);
    GradientPack pack = gradients(net, field, index);
    std::vector<double> rhs(net.m, 0.0);
    int n2 = 2 * pack.n_vars;
    for (int r = 0; r < net.m; ++r) {
        const double* jr = pack.J.data() + static_cast<size_t>(r) * n2;
        double s = 0.0;
        for (int k = 0; k < n2; ++k) s += jr[k] * pack.dP[k];
        rhs[r] = s;
    }
    std::vector<double> lam = solve_normal(pack, rhs, nullptr);
    std::map<int, double> out;
    for (const auto& node : net.nodes) {
        int v = index.var_of_node(node.id);
        Vec2 res{pack.dP[2 * v], pack.dP[2 * v + 1]};
        for (int r = 0; r < net.m; ++r) {
            res.x -= lam[r] * pack.J[static_cast<size_t>(r) * n2 + 2 * v];
            res.y -= lam[r] * pack.J[static_cast<size_t>(r) * n2 + 2 * v + 1];
        }
        out[node.id] = norm(res);
    }
    return out;
}

}  // namespace clusterlab

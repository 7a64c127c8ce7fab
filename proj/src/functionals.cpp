#include "clusterlab/functionals.hpp"

#include <algorithm>
#include <cmath>

namespace clusterlab {

namespace {

// 2-point Gauss on [0,1].
constexpr double kXi2a = 0.5 - 0.5 * kGauss2Node;
constexpr double kXi2b = 0.5 + 0.5 * kGauss2Node;

// 3-point Gauss on [0,1].
constexpr double kXi3[3] = {0.5 - 0.5 * kGauss3Node, 0.5, 0.5 + 0.5 * kGauss3Node};
constexpr double kW3[3] = {0.5 * kGauss3W1, 0.5 * kGauss3W0, 0.5 * kGauss3W1};

// Degree-4 symmetric 6-point triangle rule (barycentric, weights sum to 1).
struct TriPoint { double l1, l2, l3, w; };
constexpr TriPoint kTri6[6] = {
    {0.816847572980459, 0.091576213509771, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.816847572980459, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.091576213509771, 0.816847572980459, 0.109951743655322},
    {0.108103018168070, 0.445948490915965, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.108103018168070, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.445948490915965, 0.108103018168070, 0.223381589678011},
};

// Splits [0,1] at the x1 = 0 crossings of segment a->b for singular-axis
// fields; otherwise returns the whole interval.
void axis_cuts(const DensityField& field, const Point2& a, const Point2& b,
               std::vector<double>& out) {
    out.clear();
    out.push_back(0.0);
    if (field.singular_axis() && ((a.x < 0.0) != (b.x < 0.0)) && a.x != b.x) {
        double t = a.x / (a.x - b.x);
        if (t > 0.0 && t < 1.0) out.push_back(t);
    }
    out.push_back(1.0);
}

}  // namespace

// ---------------------------------------------------------------------------
// VertexIndex

VertexIndex::VertexIndex(const ClusterNet& net) {
    for (const auto& n : net.nodes) node_var_[n.id] = count_++;
    for (const auto& a : net.arcs) {
        std::vector<int> vars(a.points.size(), -1);
        size_t last = a.points.size() - 1;
        if (a.closed()) {
            vars[0] = count_++;
            vars[last] = vars[0];
        } else {
            vars[0] = node_var_.at(a.from);
            vars[last] = node_var_.at(a.to);
        }
        for (size_t k = 1; k < last; ++k) vars[k] = count_++;
        arc_point_var_[a.id] = std::move(vars);
    }
}

int VertexIndex::var_of(int arc_id, int point_idx) const {
    return arc_point_var_.at(arc_id)[point_idx];
}

int VertexIndex::var_of_node(int node_id) const { return node_var_.at(node_id); }

std::vector<double> VertexIndex::gather(const ClusterNet& net) const {
    std::vector<double> v(2 * count_, 0.0);
    for (const auto& n : net.nodes) {
        int id = node_var_.at(n.id);
        v[2 * id] = n.pos.x;
        v[2 * id + 1] = n.pos.y;
    }
    for (const auto& a : net.arcs) {
        const auto& vars = arc_point_var_.at(a.id);
        for (size_t k = 0; k < a.points.size(); ++k) {
            v[2 * vars[k]] = a.points[k].x;
            v[2 * vars[k] + 1] = a.points[k].y;
        }
    }
    return v;
}

void VertexIndex::scatter(ClusterNet& net, const std::vector<double>& v) const {
    for (auto& n : net.nodes) {
        int id = node_var_.at(n.id);
        n.pos = {v[2 * id], v[2 * id + 1]};
    }
    for (auto& a : net.arcs) {
        const auto& vars = arc_point_var_.at(a.id);
        for (size_t k = 0; k < a.points.size(); ++k)
            a.points[k] = {v[2 * vars[k]], v[2 * vars[k] + 1]};
    }
}

// ---------------------------------------------------------------------------
// Areas

namespace {

double flux_area_of_loops(const ClusterNet& net, const DensityField& field, int region) {
    double area = 0.0;
    std::vector<double> cuts;
    for (const auto& loop : region_side_loops(net, region)) {
        for (const auto& side : loop) {
            const Arc* arc = net.find_arc(side.arc);
            size_t n = arc->points.size();
            for (size_t k = 0; k + 1 < n; ++k) {
                Point2 a = arc->points[k], b = arc->points[k + 1];
                if (!side.forward) {
                    a = arc->points[n - 1 - k];
                    b = arc->points[n - 2 - k];
                }
                axis_cuts(field, a, b, cuts);
                for (size_t c = 0; c + 1 < cuts.size(); ++c) {
                    Point2 p = a + cuts[c] * (b - a);
                    Point2 q = a + cuts[c + 1] * (b - a);
                    Vec2 d = q - p;
                    double s = 0.0;
                    for (int g = 0; g < 3; ++g) {
                        Vec2 F = field.flux(p + kXi3[g] * d);
                        s += kW3[g] * (F.x * d.y - F.y * d.x);
                    }
                    area += s;
                }
            }
        }
    }
    return area;
}

double triangulated_area_of_loops(const ClusterNet& net, const DensityField& field,
                                  int region) {
    double area = 0.0;
    for (const auto& loop : region_loops(net, region)) {
        std::vector<Point2> poly(loop.begin(), loop.end() - 1);  // drop repeat
        auto tris = ear_clip(poly);
        for (const auto& t : tris) {
            const Point2 &a = poly[t[0]], &b = poly[t[1]], &c = poly[t[2]];
            // One refinement level: 4 children, degree-4 rule in each.
            Point2 ab = 0.5 * (a + b), bc = 0.5 * (b + c), ca = 0.5 * (c + a);
            const Point2 kids[4][3] = {
                {a, ab, ca}, {ab, b, bc}, {ca, bc, c}, {ab, bc, ca}};
            for (auto& kid : kids) {
                double ja = 0.5 * cross(kid[1] - kid[0], kid[2] - kid[0]);  // signed
                double s = 0.0;
                for (const auto& q : kTri6) {
                    Point2 p = q.l1 * kid[0] + q.l2 * kid[1] + q.l3 * kid[2];
                    s += q.w * field.g(p);
                }
                area += ja * s;
            }
        }
    }
    return area;
}

}  // namespace

std::vector<double> weighted_area_via(const ClusterNet& net, const DensityField& field,
                                      AreaPath path) {
    std::vector<double> areas(net.m, 0.0);
    for (int i = 1; i <= net.m; ++i)
        areas[i - 1] = path == AreaPath::Flux
                           ? flux_area_of_loops(net, field, i)
                           : triangulated_area_of_loops(net, field, i);
    return areas;
}

std::vector<double> weighted_area(const ClusterNet& net, const DensityField& field) {
    return weighted_area_via(net, field,
                             field.has_flux() ? AreaPath::Flux : AreaPath::Triangulation);
}

// ---------------------------------------------------------------------------
// Perimeter

FunctionalReport weighted_perimeter(const ClusterNet& net, const DensityField& field) {
    FunctionalReport rep;
    rep.area_path = field.has_flux() ? "flux" : "triangulation";
    for (const auto& arc : net.arcs) {
        double len = 0.0;
        for (size_t k = 0; k + 1 < arc.points.size(); ++k) {
            const Point2& a = arc.points[k];
            const Point2& b = arc.points[k + 1];
            double L = dist(a, b);
            Vec2 d = b - a;
            double h1 = field.h(a + kXi2a * d);
            double h2 = field.h(a + kXi2b * d);
            len += L * 0.5 * (h1 + h2);
        }
        rep.per_arc_perimeter[arc.id] = len;
        rep.perimeter += len;
    }
    return rep;
}

FunctionalReport evaluate_functionals(const ClusterNet& net, const DensityField& field) {
    FunctionalReport rep = weighted_perimeter(net, field);
    rep.areas = weighted_area(net, field);
    return rep;
}

double relative_perimeter(const ClusterNet& net, const DensityField& field,
                          const Disk& disk) {
    double total = 0.0;
    double r2 = disk.radius * disk.radius;
    for (const auto& arc : net.arcs) {
        for (size_t k = 0; k + 1 < arc.points.size(); ++k) {
            const Point2& a = arc.points[k];
            const Point2& b = arc.points[k + 1];
            bool a_in = dist2(a, disk.center) < r2;
            bool b_in = dist2(b, disk.center) < r2;
            auto ts = segment_circle_params(a, b, disk.center, disk.radius);
            double t0, t1;
            if (ts.empty()) {
                if (!(a_in && b_in)) continue;
                t0 = 0.0; t1 = 1.0;
            } else if (ts.size() == 1) {
                if (a_in) { t0 = 0.0; t1 = ts[0]; }
                else if (b_in) { t0 = ts[0]; t1 = 1.0; }
                else continue;
            } else {
                t0 = ts[0]; t1 = ts[1];
            }
            Vec2 d = b - a;
            Point2 p = a + t0 * d;
            Point2 q = a + t1 * d;
            double L = dist(p, q);
            Vec2 e = q - p;
            double h1 = field.h(p + kXi2a * e);
            double h2 = field.h(p + kXi2b * e);
            total += L * 0.5 * (h1 + h2);
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// Gradients

std::vector<double> perimeter_gradient(const ClusterNet& net, const DensityField& field,
                                       const VertexIndex& index) {
    std::vector<double> dP(2 * index.count(), 0.0);
    for (const auto& arc : net.arcs) {
        for (size_t k = 0; k + 1 < arc.points.size(); ++k) {
            const Point2& a = arc.points[k];
            const Point2& b = arc.points[k + 1];
            int va = index.var_of(arc.id, static_cast<int>(k));
            int vb = index.var_of(arc.id, static_cast<int>(k + 1));
            Vec2 d = b - a;
            double L = norm(d);
            if (L == 0.0) continue;
            Vec2 t = d / L;
            Point2 q1 = a + kXi2a * d;
            Point2 q2 = a + kXi2b * d;
            double h1 = field.h(q1), h2 = field.h(q2);
            Vec2 gh1 = field.grad_h(q1), gh2 = field.grad_h(q2);
            double hbar = 0.5 * (h1 + h2);
            Vec2 da = -hbar * t + 0.5 * L * ((1.0 - kXi2a) * gh1 + (1.0 - kXi2b) * gh2);
            Vec2 db = hbar * t + 0.5 * L * (kXi2a * gh1 + kXi2b * gh2);
            dP[2 * va] += da.x;
            dP[2 * va + 1] += da.y;
            dP[2 * vb] += db.x;
            dP[2 * vb + 1] += db.y;
        }
    }
    return dP;
}

GradientPack gradients(const ClusterNet& net, const DensityField& field,
                       const VertexIndex& index) {
    GradientPack pack;
    pack.n_vars = index.count();
    pack.m = net.m;
    pack.dP = perimeter_gradient(net, field, index);
    pack.J.assign(static_cast<size_t>(net.m) * 2 * pack.n_vars, 0.0);

    // Area Jacobian rows, differentiating the flux quadrature exactly. The
    // axis split parameter t* = a.x / (a.x - b.x) moves with the endpoints,
    // so its derivatives enter the chain rule for the x coordinates.
    std::vector<double> cuts;
    for (int region = 1; region <= net.m; ++region) {
        double* row = pack.j_row(region);
        for (const auto& loop : region_side_loops(net, region)) {
            for (const auto& side : loop) {
                const Arc* arc = net.find_arc(side.arc);
                size_t n = arc->points.size();
                for (size_t k = 0; k + 1 < n; ++k) {
                    size_t ia = side.forward ? k : n - 1 - k;
                    size_t ib = side.forward ? k + 1 : n - 2 - k;
                    Point2 a = arc->points[ia];
                    Point2 b = arc->points[ib];
                    int va = index.var_of(arc->id, static_cast<int>(ia));
                    int vb = index.var_of(arc->id, static_cast<int>(ib));
                    axis_cuts(field, a, b, cuts);
                    Vec2 d = b - a;
                    bool has_cut = cuts.size() == 3;
                    double dstar_ax = 0.0, dstar_bx = 0.0;
                    if (has_cut) {
                        double den = a.x - b.x;
                        dstar_ax = -b.x / (den * den);
                        dstar_bx = a.x / (den * den);
                    }
                    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
                        double t0 = cuts[c], t1 = cuts[c + 1];
                        double span = t1 - t0;
                        Vec2 dd = span * d;
                        // Cut-parameter derivatives for this sub-piece.
                        double dt0_ax = (has_cut && c == 1) ? dstar_ax : 0.0;
                        double dt0_bx = (has_cut && c == 1) ? dstar_bx : 0.0;
                        double dt1_ax = (has_cut && c == 0) ? dstar_ax : 0.0;
                        double dt1_bx = (has_cut && c == 0) ? dstar_bx : 0.0;
                        double dspan_ax = dt1_ax - dt0_ax;
                        double dspan_bx = dt1_bx - dt0_bx;
                        for (int gq = 0; gq < 3; ++gq) {
                            double xi = t0 + kXi3[gq] * span;  // in [0,1] of a->b
                            Point2 p = a + xi * d;
                            Vec2 F = field.flux(p);
                            auto Jf = field.flux_jacobian(p);
                            double w = kW3[gq];
                            double dxi_ax = dt0_ax + kXi3[gq] * dspan_ax;
                            double dxi_bx = dt0_bx + kXi3[gq] * dspan_bx;
                            // a.x
                            double dqx = (1.0 - xi) + dxi_ax * d.x;
                            double dqy = dxi_ax * d.y;
                            double dDx = -span + dspan_ax * d.x;
                            double dDy = dspan_ax * d.y;
                            row[2 * va] += w * ((Jf[0] * dqx + Jf[1] * dqy) * dd.y +
                                                F.x * dDy -
                                                (Jf[2] * dqx + Jf[3] * dqy) * dd.x -
                                                F.y * dDx);
                            // a.y
                            row[2 * va + 1] += w * (Jf[1] * (1.0 - xi) * dd.y -
                                                    Jf[3] * (1.0 - xi) * dd.x -
                                                    span * F.x);
                            // b.x
                            dqx = xi + dxi_bx * d.x;
                            dqy = dxi_bx * d.y;
                            dDx = span + dspan_bx * d.x;
                            dDy = dspan_bx * d.y;
                            row[2 * vb] += w * ((Jf[0] * dqx + Jf[1] * dqy) * dd.y +
                                                F.x * dDy -
                                                (Jf[2] * dqx + Jf[3] * dqy) * dd.x -
                                                F.y * dDx);
                            // b.y
                            row[2 * vb + 1] += w * (Jf[1] * xi * dd.y -
                                                    Jf[3] * xi * dd.x + span * F.x);
                        }
                    }
                }
            }
        }
    }
    return pack;
}

}  // namespace clusterlab

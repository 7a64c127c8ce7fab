#include <doctest.h>

#include <cmath>

#include "clusterlab/functionals.hpp"
#include "clusterlab/numerics.hpp"
#include "fixtures.hpp"

using namespace clusterlab;

namespace {

// Central finite differences of perimeter and areas over every free
// coordinate; the oracle for the analytic GradientPack.
struct FDPack {
    std::vector<double> dP;
    std::vector<double> J;
};

FDPack fd_gradients(const ClusterNet& net, const DensityField& field, double step) {
    VertexIndex index(net);
    int n2 = 2 * index.count();
    FDPack out;
    out.dP.assign(n2, 0.0);
    out.J.assign(static_cast<size_t>(net.m) * n2, 0.0);
    std::vector<double> v0 = index.gather(net);
    ClusterNet work = net;
    for (int k = 0; k < n2; ++k) {
        std::vector<double> v = v0;
        v[k] = v0[k] + step;
        index.scatter(work, v);
        double pp = weighted_perimeter(work, field).perimeter;
        auto ap = weighted_area(work, field);
        v[k] = v0[k] - step;
        index.scatter(work, v);
        double pm = weighted_perimeter(work, field).perimeter;
        auto am = weighted_area(work, field);
        out.dP[k] = (pp - pm) / (2.0 * step);
        for (int r = 0; r < net.m; ++r)
            out.J[static_cast<size_t>(r) * n2 + k] = (ap[r] - am[r]) / (2.0 * step);
    }
    return out;
}

double rel_inf_error(const std::vector<double>& a, const std::vector<double>& b) {
    double nrm = 0.0, err = 0.0;
    for (size_t k = 0; k < a.size(); ++k) {
        nrm = std::max(nrm, std::abs(a[k]));
        err = std::max(err, std::abs(a[k] - b[k]));
    }
    return err / (1.0 + nrm);
}

void check_gradients(const ClusterNet& net, const DensityField& field) {
    VertexIndex index(net);
    GradientPack pack = gradients(net, field, index);
    FDPack fd = fd_gradients(net, field, 1e-7 * net.scale());
    CHECK(rel_inf_error(pack.dP, fd.dP) < 1e-5);
    CHECK(rel_inf_error(pack.J, fd.J) < 1e-5);
}

}  // namespace

TEST_CASE("weighted area: unit square under constant and grushin") {
    ClusterNet net = fixtures::square_net();
    auto c1 = DensityField::constant(1.0);
    CHECK(weighted_area(net, c1)[0] == doctest::Approx(1.0).epsilon(1e-12));

    // int_0^1 (2x)^(-1/2) dx = sqrt(2), exact for the flux path because the
    // flux is constant along the vertical edges.
    auto gr = DensityField::grushin(1.0);
    CHECK(weighted_area(net, gr)[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("weighted area: inscribed polygon deficit") {
    const int n = 256;
    ClusterNet net = fixtures::disk_net(1.0, n);
    auto c1 = DensityField::constant(1.0);
    double area = weighted_area(net, c1)[0];
    double polygon = 0.5 * n * std::sin(2.0 * M_PI / n);
    CHECK(area == doctest::Approx(polygon).epsilon(1e-12));
    CHECK(std::abs(area - M_PI) / M_PI < 3e-4);
}

TEST_CASE("area paths agree on smooth densities") {
    ClusterNet db = fixtures::double_bubble_init();
    for (const auto& field : {DensityField::constant(1.0), DensityField::gaussian()}) {
        auto flux = weighted_area_via(db, field, AreaPath::Flux);
        auto tri = weighted_area_via(db, field, AreaPath::Triangulation);
        for (int i = 0; i < db.m; ++i)
            CHECK(std::abs(flux[i] - tri[i]) / std::abs(flux[i]) < 1e-6);
    }
}

TEST_CASE("weighted perimeter: square, polygon circle, gaussian segment") {
    auto c1 = DensityField::constant(1.0);
    CHECK(weighted_perimeter(fixtures::square_net(), c1).perimeter ==
          doctest::Approx(4.0).epsilon(1e-12));

    const int n = 256;
    auto rep = weighted_perimeter(fixtures::disk_net(1.0, n), c1);
    CHECK(rep.perimeter == doctest::Approx(2.0 * n * std::sin(M_PI / n)).epsilon(1e-12));
    CHECK(std::abs(rep.perimeter - 2.0 * M_PI) / (2.0 * M_PI) < 2e-4);

    // Single vertical segment under the gaussian: 2-point Gauss against an
    // accurate 1D quadrature oracle.
    auto gs = DensityField::gaussian();
    double oracle = integrate_graded(
        [&](double t) { return gs.h({0.0, t}); }, 0.0, 1.0, false, false, 64, 1);
    ClusterNet seg;
    seg.m = 1;
    seg.target_areas = {1.0};
    seg.window = {-1, -1, 1, 2};
    seg.nodes.push_back({0, {0, 0}, {}});
    seg.nodes.push_back({1, {0, 1}, {}});
    Arc a;
    a.id = 0;
    a.from = 0;
    a.to = 1;
    a.left = 1;
    a.right = 0;
    a.points = {{0, 0}, {0, 1}};
    seg.arcs.push_back(a);
    double coarse = weighted_perimeter(seg, gs).perimeter;
    // Frozen from the quadrature oracle; the closed form is
    // sqrt(pi/2) erf(1/sqrt(2)) / (2 pi).
    CHECK(oracle == doctest::Approx(0.13617685139963248).epsilon(1e-9));
    double closed_form = std::sqrt(M_PI / 2.0) * std::erf(1.0 / std::sqrt(2.0)) /
                         (2.0 * M_PI);
    CHECK(oracle == doctest::Approx(closed_form).epsilon(1e-13));
    CHECK(std::abs(coarse - oracle) / oracle < 5e-4);  // one segment, 2-pt Gauss

    auto& pts = seg.arcs[0].points;
    pts = resample_polyline({{0, 0}, {0, 1}}, 64);
    double fine = weighted_perimeter(seg, gs).perimeter;
    CHECK(std::abs(fine - oracle) / oracle < 1e-8);
}

TEST_CASE("relative perimeter") {
    auto c1 = DensityField::constant(1.0);
    ClusterNet disk = fixtures::disk_net(1.0, 128);
    double whole = weighted_perimeter(disk, c1).perimeter;
    CHECK(relative_perimeter(disk, c1, {{0, 0}, 5.0}) == doctest::Approx(whole));
    CHECK(relative_perimeter(disk, c1, {{10, 10}, 1.0}) == 0.0);

    // Chord through the disk center: a straight horizontal line.
    ClusterNet line;
    line.m = 1;
    line.target_areas = {1.0};
    line.window = {-4, -4, 4, 4};
    line.nodes.push_back({0, {-3, 0}, {}});
    line.nodes.push_back({1, {3, 0}, {}});
    Arc a;
    a.id = 0;
    a.from = 0;
    a.to = 1;
    a.left = 1;
    a.right = 0;
    a.points = resample_polyline({{-3, 0}, {3, 0}}, 48);
    line.arcs.push_back(a);
    double r = 0.8;
    CHECK(relative_perimeter(line, c1, {{0.1, 0}, r}) == doctest::Approx(2.0 * r).epsilon(1e-12));
}

TEST_CASE("single segment perimeter gradient is the unit tangent") {
    ClusterNet line;
    line.m = 1;
    line.target_areas = {1.0};
    line.window = {-2, -2, 2, 2};
    line.nodes.push_back({0, {0, 0}, {}});
    line.nodes.push_back({1, {1, 0}, {}});
    Arc a;
    a.id = 0;
    a.from = 0;
    a.to = 1;
    a.left = 1;
    a.right = 0;
    a.points = {{0, 0}, {1, 0}};
    line.arcs.push_back(a);
    line.rebuild_incidence();

    VertexIndex index(line);
    auto dP = perimeter_gradient(line, DensityField::constant(1.0), index);
    int v1 = index.var_of_node(1);
    CHECK(dP[2 * v1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(dP[2 * v1 + 1]) < 1e-14);
}

TEST_CASE("square area Jacobian equals the shoelace gradient") {
    ClusterNet net = fixtures::square_net();
    VertexIndex index(net);
    auto pack = gradients(net, DensityField::constant(1.0), index);
    // d(area)/d(corner) = half the perpendicular of the neighbor chord.
    // For the unit square each corner gets (+-1/2, +-1/2).
    FDPack fd = fd_gradients(net, DensityField::constant(1.0), 1e-7);
    CHECK(rel_inf_error(pack.J, fd.J) < 1e-6);
    int v0 = index.var_of_node(0);  // corner (0,0)
    CHECK(pack.j_row(1)[2 * v0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(pack.j_row(1)[2 * v0 + 1] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("gradients match finite differences on the fixture nets") {
    check_gradients(fixtures::square_net(), DensityField::constant(1.0));
    check_gradients(fixtures::disk_net(1.0, 48), DensityField::constant(1.0));
    check_gradients(fixtures::disk_net(1.0, 48), DensityField::gaussian());
    check_gradients(fixtures::double_bubble_init(), DensityField::gaussian());
    // Grushin fixture kept off the singular axis.
    ClusterNet off = fixtures::disk_net(0.4, 48);
    for (auto& arc : off.arcs)
        for (auto& p : arc.points) p.x += 1.0;
    for (auto& node : off.nodes) node.pos.x += 1.0;
    off.window = {0.0, -1.0, 2.0, 1.0};
    check_gradients(off, DensityField::grushin(1.0));
}

TEST_CASE("translation equivariance under constant density") {
    ClusterNet net = fixtures::double_bubble_init();
    auto c2 = DensityField::constant(2.0);
    auto a0 = weighted_area(net, c2);
    double p0 = weighted_perimeter(net, c2).perimeter;
    ClusterNet moved = net;
    Vec2 shift{3.25, -1.5};
    for (auto& n : moved.nodes) n.pos += shift;
    for (auto& arc : moved.arcs)
        for (auto& p : arc.points) p += shift;
    moved.window.xmin += shift.x;
    moved.window.xmax += shift.x;
    moved.window.ymin += shift.y;
    moved.window.ymax += shift.y;
    auto a1 = weighted_area(moved, c2);
    double p1 = weighted_perimeter(moved, c2).perimeter;
    for (int i = 0; i < net.m; ++i) CHECK(a1[i] == doctest::Approx(a0[i]).epsilon(1e-12));
    CHECK(p1 == doctest::Approx(p0).epsilon(1e-12));
}

TEST_CASE("orientation reversal leaves perimeter invariant") {
    ClusterNet net = fixtures::double_bubble_init();
    auto gs = DensityField::gaussian();
    double p0 = weighted_perimeter(net, gs).perimeter;
    ClusterNet flipped = net;
    Arc& arc = flipped.arcs[2];  // the interface
    std::reverse(arc.points.begin(), arc.points.end());
    std::swap(arc.from, arc.to);
    std::swap(arc.left, arc.right);
    flipped.rebuild_incidence();
    CHECK(validate(flipped).ok());
    double p1 = weighted_perimeter(flipped, gs).perimeter;
    CHECK(p1 == doctest::Approx(p0).epsilon(1e-12));
    auto a0 = weighted_area(net, gs);
    auto a1 = weighted_area(flipped, gs);
    for (int i = 0; i < net.m; ++i) CHECK(a1[i] == doctest::Approx(a0[i]).epsilon(1e-10));
}

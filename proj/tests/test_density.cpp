#include <doctest.h>

#include <cmath>

#include "clusterlab/density.hpp"
#include "clusterlab/rng.hpp"

using namespace clusterlab;

#include "clusterlab/numerics.hpp"

namespace {

// Independent 1D-reduction oracle for grushin disks: g only depends on x,
// so the disk volume is the adaptive integral of g(x) * chord(x).
double grushin_disk_oracle(double alpha, const Point2& c, double r) {
    auto slab = [&](double x) {
        double dx = x - c.x;
        double chord = 2.0 * std::sqrt(std::max(0.0, r * r - dx * dx));
        return std::pow(std::abs((1.0 + alpha) * x), -alpha / (1.0 + alpha)) * chord;
    };
    std::vector<double> cuts = {c.x - r, c.x + r};
    if (std::abs(c.x) < r) cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate_graded(slab, cuts[i], cuts[i + 1], true, true, 24, 30);
    return total;
}

}  // namespace

TEST_CASE("make_density examples") {
    auto c1 = DensityField::constant(1.0);
    CHECK(c1.g({2, 3}) == 1.0);
    CHECK(c1.h({2, 3}) == 1.0);

    auto gs = DensityField::gaussian();
    CHECK(gs.g({0, 0}) == doctest::Approx(0.15915494309189535).epsilon(1e-14));

    auto gr = DensityField::grushin(1.0);
    CHECK(gr.g({0.5, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gr.h({0.5, 0.0}) == 1.0);

    CHECK_THROWS_AS(DensityField::constant(0.0), InvalidSpecError);
    CHECK_THROWS_AS(DensityField::constant(-1.0), InvalidSpecError);
    CHECK_THROWS_AS(DensityField::grushin(-0.5), InvalidSpecError);
    CHECK_THROWS_AS(make_density({"nope", 1, 1, 1}), InvalidSpecError);
}

TEST_CASE("analytic flux matches g by central-difference divergence") {
    SplitMix64 rng(11);
    const double step = 1e-5;
    for (const auto& field :
         {DensityField::constant(2.0), DensityField::gaussian(),
          DensityField::grushin(1.0), DensityField::radial_power(1.5)}) {
        double worst = 0.0;
        int tested = 0;
        for (int i = 0; i < 1000; ++i) {
            Point2 p = rng.point_in({-2, -2, 2, 2});
            if (field.singular_axis() && std::abs(p.x) < 0.05) continue;
            if (field.kind() == DensityField::Kind::RadialPower && norm(p) < 0.05)
                continue;
            double div = (field.flux({p.x + step, p.y}).x - field.flux({p.x - step, p.y}).x +
                          field.flux({p.x, p.y + step}).y - field.flux({p.x, p.y - step}).y) /
                         (2.0 * step);
            worst = std::max(worst, std::abs(div - field.g(p)) / field.g(p));
            ++tested;
        }
        CHECK(tested > 900);
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("grad_h matches central differences") {
    SplitMix64 rng(13);
    const double step = 2e-6;  // independent of any internal step choice
    for (const auto& field : {DensityField::gaussian(), DensityField::radial_power(2.0)}) {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            Point2 p = rng.point_in({-2, -2, 2, 2});
            if (norm(p) < 0.05) continue;
            Vec2 fd{(field.h({p.x + step, p.y}) - field.h({p.x - step, p.y})) / (2 * step),
                    (field.h({p.x, p.y + step}) - field.h({p.x, p.y - step})) / (2 * step)};
            Vec2 an = field.grad_h(p);
            worst = std::max(worst, norm(an - fd) / (1.0 + norm(an)));
        }
        CHECK(worst < 1e-5);
    }
}

TEST_CASE("local bounds") {
    auto c1 = DensityField::constant(1.0);
    auto b = local_bounds(c1, {{3, 4}, 2.0});
    CHECK(b.h_min == 1.0);
    CHECK(b.h_max == 1.0);

    auto gs = DensityField::gaussian();
    auto bg = local_bounds(gs, {{0, 0}, 1.0});
    CHECK(bg.h_max == doctest::Approx(0.15915494309189535).epsilon(1e-12));
    CHECK(bg.h_min == doctest::Approx(0.15915494309189535 * std::exp(-0.5)).epsilon(1e-12));

    auto gr = DensityField::grushin(1.0);
    auto bgr = local_bounds(gr, {{1, 0}, 0.5});
    CHECK(bgr.h_min == 1.0);
    CHECK(bgr.h_max == 1.0);
}

TEST_CASE("weighted disk volume: constant and gaussian closed forms") {
    auto c1 = DensityField::constant(1.0);
    CHECK(weighted_disk_volume(c1, {0.3, -0.2}, 1.0) == doctest::Approx(M_PI).epsilon(1e-8));

    auto gs = DensityField::gaussian();
    for (double r : {0.5, 1.0, 2.0}) {
        double expected = 1.0 - std::exp(-0.5 * r * r);
        CHECK(weighted_disk_volume(gs, {0, 0}, r) == doctest::Approx(expected).epsilon(1e-8));
    }
    CHECK(weighted_disk_volume(gs, {0, 0}, 5.0) ==
          doctest::Approx(1.0 - std::exp(-12.5)).epsilon(1e-8));
}

TEST_CASE("grushin disk volume vs adaptive oracle and closed form") {
    auto gr = DensityField::grushin(1.0);
    double v = weighted_disk_volume(gr, {0, 0}, 1.0);
    CHECK(std::isfinite(v));

    double oracle = grushin_disk_oracle(1.0, {0, 0}, 1.0);
    CHECK(v == doctest::Approx(oracle).epsilon(1e-4));

    // Independent closed form: sqrt(2) * B(1/4, 3/2) for the unit disk.
    double beta = std::tgamma(0.25) * std::tgamma(1.5) / std::tgamma(1.75);
    CHECK(v == doctest::Approx(std::sqrt(2.0) * beta).epsilon(1e-6));

    // Off-axis disks see the singular line too.
    double v2 = weighted_disk_volume(gr, {0.5, 0.3}, 1.0);
    CHECK(v2 == doctest::Approx(grushin_disk_oracle(1.0, {0.5, 0.3}, 1.0)).epsilon(1e-4));

    auto gr05 = DensityField::grushin(0.5);
    double v3 = weighted_disk_volume(gr05, {0.2, -0.1}, 0.7);
    CHECK(v3 == doctest::Approx(grushin_disk_oracle(0.5, {0.2, -0.1}, 0.7)).epsilon(1e-4));
}

TEST_CASE("density spec parsing") {
    auto s = parse_density_spec("{\"kind\":\"grushin\",\"alpha\":0.5}");
    CHECK(s.kind == "grushin");
    CHECK(s.alpha == 0.5);
    CHECK_THROWS_AS(parse_density_spec("{\"alpha\":0.5}"), ParseError);
    CHECK_THROWS_AS(parse_density_spec("not json"), ParseError);
}

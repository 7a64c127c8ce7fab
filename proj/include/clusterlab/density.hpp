#pragma once

#include <optional>
#include <string>

#include "clusterlab/errors.hpp"
#include "clusterlab/geometry.hpp"

namespace clusterlab {

// Evaluable double density (g weights volume, h weights perimeter).
//
// Built-in kinds:
//   constant(c)      g = h = c
//   gaussian         g = h = (1/2pi) exp(-|x|^2/2)
//   grushin(alpha)   g = |(1+alpha) x1|^(-alpha/(1+alpha)), h = 1
//   radial_power(p)  g = h = |x|^p, p >= 0
//
// Every built-in carries an analytic flux F with div F = g, so weighted
// areas can be taken as boundary line integrals, which stays accurate even
// across the grushin singular axis where g blows up.
class DensityField {
  public:
    enum class Kind { Constant, Gaussian, Grushin, RadialPower };

    static DensityField constant(double c);
    static DensityField gaussian();
    static DensityField grushin(double alpha);
    static DensityField radial_power(double p);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    double param() const { return param_; }

    double g(const Point2& p) const;
    double h(const Point2& p) const;
    Vec2 grad_h(const Point2& p) const;

    bool has_flux() const { return true; }
    Vec2 flux(const Point2& p) const;
    // Row-major d(F_i)/d(x_j): [F1x, F1y, F2x, F2y].
    std::array<double, 4> flux_jacobian(const Point2& p) const;

    // Holder exponent of h (all built-ins are locally Lipschitz).
    std::optional<double> holder_exponent_h() const { return holder_h_; }

    // True when g is singular along the x1 = 0 axis (grushin).
    bool singular_axis() const { return kind_ == Kind::Grushin; }

  private:
    Kind kind_ = Kind::Constant;
    double param_ = 1.0;
    std::string name_ = "constant";
    std::optional<double> holder_h_ = 1.0;
};

struct DensitySpec {
    std::string kind = "constant";
    double c = 1.0;
    double alpha = 1.0;
    double p = 1.0;
};

DensityField make_density(const DensitySpec& spec);
DensitySpec parse_density_spec(const std::string& json_text);
std::string density_spec_json(const DensitySpec& spec);

struct Disk {
    Point2 center;
    double radius = 0.0;
};

struct LocalBounds {
    double h_min = 0.0;
    double h_max = 0.0;
    Disk disk;
};

// Extrema of h over a disk; analytic for the built-ins (monotone radial
// structure), sampled with a 1% widening otherwise.
LocalBounds local_bounds(const DensityField& field, const Disk& disk);

// Range of h over an axis-aligned rectangle (same analytic shortcuts).
LocalBounds h_bounds_on_rect(const DensityField& field, const Rect& rect);

// Weighted volume of a disk: integral of g over B(center, r).
double weighted_disk_volume(const DensityField& field, const Point2& center, double r);

}  // namespace clusterlab

#include "clusterlab/density.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "clusterlab/cluster_net.hpp"
#include "clusterlab/numerics.hpp"
#include "clusterlab/rng.hpp"

namespace clusterlab {

namespace {
constexpr double kInv2Pi = 0.15915494309189533577;  // 1/(2 pi)

double gaussian_g(const Point2& p) { return kInv2Pi * std::exp(-0.5 * norm2(p)); }

// int_0^x exp(-t^2/2) dt = sqrt(pi/2) erf(x/sqrt(2)), good to ~1e-15.
double gauss_antider(double x) {
    return std::sqrt(M_PI / 2.0) * std::erf(x / std::sqrt(2.0));
}
}  // namespace

DensityField DensityField::constant(double c) {
    if (!(c > 0.0)) throw InvalidSpecError("constant density needs c > 0");
    DensityField f;
    f.kind_ = Kind::Constant;
    f.param_ = c;
    f.name_ = "constant";
    f.holder_h_ = 1.0;
    return f;
}

DensityField DensityField::gaussian() {
    DensityField f;
    f.kind_ = Kind::Gaussian;
    f.param_ = 0.0;
    f.name_ = "gaussian";
    f.holder_h_ = 1.0;
    return f;
}

DensityField DensityField::grushin(double alpha) {
    if (alpha < 0.0) throw InvalidSpecError("grushin density needs alpha >= 0");
    DensityField f;
    f.kind_ = Kind::Grushin;
    f.param_ = alpha;
    f.name_ = "grushin";
    f.holder_h_ = 1.0;  // h == 1
    return f;
}

DensityField DensityField::radial_power(double p) {
    if (p < 0.0) throw InvalidSpecError("radial_power density needs p >= 0");
    DensityField f;
    f.kind_ = Kind::RadialPower;
    f.param_ = p;
    f.name_ = "radial_power";
    f.holder_h_ = std::min(p, 1.0);
    if (p == 0.0) f.holder_h_ = 1.0;
    return f;
}

double DensityField::g(const Point2& p) const {
    switch (kind_) {
        case Kind::Constant: return param_;
        case Kind::Gaussian: return gaussian_g(p);
        case Kind::Grushin: {
            double a = param_;
            double t = std::abs((1.0 + a) * p.x);
            return std::pow(t, -a / (1.0 + a));
        }
        case Kind::RadialPower: return std::pow(norm(p), param_);
    }
    return 0.0;
}

double DensityField::h(const Point2& p) const {
    switch (kind_) {
        case Kind::Constant: return param_;
        case Kind::Gaussian: return gaussian_g(p);
        case Kind::Grushin: return 1.0;
        case Kind::RadialPower: return std::pow(norm(p), param_);
    }
    return 0.0;
}

Vec2 DensityField::grad_h(const Point2& p) const {
    switch (kind_) {
        case Kind::Constant: return {0.0, 0.0};
        case Kind::Gaussian: {
            double v = gaussian_g(p);
            return {-p.x * v, -p.y * v};
        }
        case Kind::Grushin: return {0.0, 0.0};
        case Kind::RadialPower: {
            double r = norm(p);
            if (r == 0.0) return {0.0, 0.0};
            double f = param_ * std::pow(r, param_ - 2.0);
            return {f * p.x, f * p.y};
        }
    }
    return {0.0, 0.0};
}

Vec2 DensityField::flux(const Point2& p) const {
    switch (kind_) {
        case Kind::Constant: return {param_ * p.x, 0.0};
        case Kind::Gaussian: {
            double pre = kInv2Pi * std::exp(-0.5 * p.y * p.y);
            return {pre * gauss_antider(p.x), 0.0};
        }
        case Kind::Grushin: {
            double a = param_;
            double t = std::abs((1.0 + a) * p.x);
            double mag = std::pow(t, 1.0 / (1.0 + a));
            return {p.x >= 0.0 ? mag : -mag, 0.0};
        }
        case Kind::RadialPower: {
            double r = norm(p);
            double f = std::pow(r, param_) / (param_ + 2.0);
            return {f * p.x, f * p.y};
        }
    }
    return {0.0, 0.0};
}

std::array<double, 4> DensityField::flux_jacobian(const Point2& p) const {
    switch (kind_) {
        case Kind::Constant: return {param_, 0.0, 0.0, 0.0};
        case Kind::Gaussian: {
            Vec2 F = flux(p);
            return {g(p), -p.y * F.x, 0.0, 0.0};
        }
        case Kind::Grushin: return {g(p), 0.0, 0.0, 0.0};
        case Kind::RadialPower: {
            double r = norm(p);
            double q = param_;
            if (r == 0.0) {
                double v = q == 0.0 ? 1.0 / (q + 2.0) : 0.0;
                return {v, 0.0, 0.0, v};
            }
            double rp = std::pow(r, q);
            double rpm2 = std::pow(r, q - 2.0);
            double c = 1.0 / (q + 2.0);
            return {c * (rp + q * p.x * p.x * rpm2), c * q * p.x * p.y * rpm2,
                    c * q * p.x * p.y * rpm2, c * (rp + q * p.y * p.y * rpm2)};
        }
    }
    return {0.0, 0.0, 0.0, 0.0};
}

DensityField make_density(const DensitySpec& spec) {
    if (spec.kind == "constant") return DensityField::constant(spec.c);
    if (spec.kind == "gaussian") return DensityField::gaussian();
    if (spec.kind == "grushin") return DensityField::grushin(spec.alpha);
    if (spec.kind == "radial_power") return DensityField::radial_power(spec.p);
    throw InvalidSpecError("unknown density kind \"" + spec.kind + "\"");
}

DensitySpec parse_density_spec(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("density spec: ") + e.what());
    }
    DensitySpec s;
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("density spec needs a \"kind\" field");
    s.kind = j["kind"].get<std::string>();
    if (j.contains("c")) s.c = j["c"].get<double>();
    if (j.contains("alpha")) s.alpha = j["alpha"].get<double>();
    if (j.contains("p")) s.p = j["p"].get<double>();
    return s;
}

std::string density_spec_json(const DensitySpec& spec) {
    std::string s = "{\"kind\":\"" + spec.kind + "\"";
    if (spec.kind == "constant") s += ",\"c\":" + format_double(spec.c);
    if (spec.kind == "grushin") s += ",\"alpha\":" + format_double(spec.alpha);
    if (spec.kind == "radial_power") s += ",\"p\":" + format_double(spec.p);
    s += "}";
    return s;
}

LocalBounds local_bounds(const DensityField& field, const Disk& disk) {
    LocalBounds b;
    b.disk = disk;
    double d0 = norm(disk.center);
    switch (field.kind()) {
        case DensityField::Kind::Constant:
            b.h_min = b.h_max = field.param();
            return b;
        case DensityField::Kind::Grushin:
            b.h_min = b.h_max = 1.0;
            return b;
        case DensityField::Kind::Gaussian: {
            double rn = std::max(0.0, d0 - disk.radius);  // closest to origin
            double rf = d0 + disk.radius;
            b.h_max = kInv2Pi * std::exp(-0.5 * rn * rn);
            b.h_min = kInv2Pi * std::exp(-0.5 * rf * rf);
            return b;
        }
        case DensityField::Kind::RadialPower: {
            double rn = std::max(0.0, d0 - disk.radius);
            double rf = d0 + disk.radius;
            b.h_min = std::pow(rn, field.param());
            b.h_max = std::pow(rf, field.param());
            if (field.param() == 0.0) b.h_min = b.h_max = 1.0;
            return b;
        }
    }
    // Sampled fallback with a 1% widening.
    SplitMix64 rng(0x10CA1B0D5ULL);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < 4096; ++i) {
        double a = rng.uniform(0.0, 2.0 * M_PI);
        double r = disk.radius * std::sqrt(rng.uniform01());
        Point2 p = disk.center + r * Vec2{std::cos(a), std::sin(a)};
        double v = field.h(p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    b.h_min = lo * 0.99;
    b.h_max = hi * 1.01;
    return b;
}

LocalBounds h_bounds_on_rect(const DensityField& field, const Rect& rect) {
    LocalBounds b;
    b.disk = {rect.center(), 0.5 * rect.diagonal()};
    switch (field.kind()) {
        case DensityField::Kind::Constant:
            b.h_min = b.h_max = field.param();
            return b;
        case DensityField::Kind::Grushin:
            b.h_min = b.h_max = 1.0;
            return b;
        default: break;
    }
    // Radial h: extremes sit at the closest/farthest point of the rectangle.
    double cx = std::clamp(0.0, rect.xmin, rect.xmax);
    double cy = std::clamp(0.0, rect.ymin, rect.ymax);
    double rn = std::sqrt(cx * cx + cy * cy);
    double rf = 0.0;
    for (double x : {rect.xmin, rect.xmax})
        for (double y : {rect.ymin, rect.ymax})
            rf = std::max(rf, std::sqrt(x * x + y * y));
    if (field.kind() == DensityField::Kind::Gaussian) {
        b.h_max = kInv2Pi * std::exp(-0.5 * rn * rn);
        b.h_min = kInv2Pi * std::exp(-0.5 * rf * rf);
    } else {  // radial power, increasing
        b.h_min = std::pow(rn, field.param());
        b.h_max = std::pow(rf, field.param());
        if (field.param() == 0.0) b.h_min = b.h_max = 1.0;
    }
    return b;
}

namespace {

// Polar tensor quadrature about the disk center, 64 radial x 128 angular.
double disk_volume_polar(const DensityField& field, const Point2& c, double r) {
    const GaussRule& rad = gauss_rule(64);
    const GaussRule& ang = gauss_rule(128);
    double total = 0.0;
    for (size_t i = 0; i < ang.nodes.size(); ++i) {
        double theta = M_PI * (ang.nodes[i] + 1.0);  // [0, 2pi)
        Vec2 e{std::cos(theta), std::sin(theta)};
        double inner = 0.0;
        for (size_t k = 0; k < rad.nodes.size(); ++k) {
            double rho = 0.5 * r * (rad.nodes[k] + 1.0);
            inner += rad.weights[k] * rho * field.g(c + rho * e);
        }
        total += ang.weights[i] * inner;
    }
    return total * 0.5 * r * M_PI;
}

// Boundary flux integral, splitting the circle where it crosses the
// singular axis and grading the quadrature into those endpoints.
double disk_volume_flux(const DensityField& field, const Point2& c, double r) {
    std::vector<double> cuts = {0.0, 2.0 * M_PI};
    bool crosses_axis = false;
    if (field.singular_axis() && std::abs(c.x) < r) {
        double phi = std::acos(-c.x / r);  // cos(theta) = -c.x/r at the axis
        for (double t : {phi, 2.0 * M_PI - phi})
            if (t > 0.0 && t < 2.0 * M_PI) cuts.push_back(t);
        crosses_axis = true;
    }
    std::sort(cuts.begin(), cuts.end());
    auto integrand = [&](double theta) {
        Vec2 e{std::cos(theta), std::sin(theta)};
        Point2 p = c + r * e;
        // Outward normal is e; ds = r dtheta.
        return dot(field.flux(p), e) * r;
    };
    double total = 0.0;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        bool sing_a = crosses_axis && i > 0;
        bool sing_b = crosses_axis && i + 2 < cuts.size();
        // Endpoints at 0 and 2pi are singular too when the axis passes
        // exactly through theta = 0 or pi; grade whenever the axis is hit.
        total += integrate_graded(integrand, cuts[i], cuts[i + 1],
                                  crosses_axis ? true : sing_a,
                                  crosses_axis ? true : sing_b, 16, 24);
    }
    return total;
}

}  // namespace

double weighted_disk_volume(const DensityField& field, const Point2& center, double r) {
    if (!(r > 0.0)) return 0.0;
    if (field.singular_axis()) return disk_volume_flux(field, center, r);
    return disk_volume_polar(field, center, r);
}

}  // namespace clusterlab

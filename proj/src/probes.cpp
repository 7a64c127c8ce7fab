#include "clusterlab/probes.hpp"

#include <algorithm>
#include <cmath>

#include "clusterlab/functionals.hpp"
#include "clusterlab/numerics.hpp"
#include "clusterlab/rng.hpp"

namespace clusterlab {

std::vector<GrowthSample> growth_samples(const DensityField& field, const Rect& window,
                                         int n_centers, const std::vector<double>& r_grid,
                                         uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<Point2> centers;
    for (int i = 0; i < n_centers; ++i) centers.push_back(rng.point_in(window));
    if (field.singular_axis()) {
        // The singular locus is where the growth exponent binds; probe it.
        size_t base = centers.size();
        for (size_t i = 0; i < base; ++i) centers.push_back({0.0, centers[i].y});
    }
    std::vector<GrowthSample> out;
    out.reserve(centers.size() * r_grid.size());
    for (const auto& c : centers)
        for (double r : r_grid)
            out.push_back({c, r, weighted_disk_volume(field, c, r)});
    return out;
}

GrowthCertificate growth_probe(const DensityField& field, const Rect& window,
                               int n_centers, const std::vector<double>& r_grid,
                               uint64_t seed) {
    GrowthCertificate cert;
    cert.seed = seed;
    cert.n_centers = n_centers;
    auto samples = growth_samples(field, window, n_centers, r_grid, seed);
    size_t per_center = r_grid.size();
    size_t centers = samples.size() / per_center;

    double eta_min = std::numeric_limits<double>::infinity();
    double worst_residual = 0.0;
    for (size_t c = 0; c < centers; ++c) {
        std::vector<double> lx, ly;
        for (size_t k = 0; k < per_center; ++k) {
            const auto& s = samples[c * per_center + k];
            if (s.volume <= 0.0) continue;
            lx.push_back(std::log(s.r));
            ly.push_back(std::log(s.volume));
        }
        if (lx.size() < 2) continue;
        auto fit = polyfit(lx, ly, 1);
        double rms = 0.0;
        for (size_t k = 0; k < lx.size(); ++k) {
            double e = ly[k] - (fit[0] + fit[1] * lx[k]);
            rms += e * e;
        }
        rms = std::sqrt(rms / lx.size());
        worst_residual = std::max(worst_residual, rms);
        eta_min = std::min(eta_min, fit[1]);
    }
    cert.eta = std::max(1.0, eta_min);
    cert.fit_residual = worst_residual;
    double c_vol = 0.0, r_max = 0.0;
    for (const auto& s : samples) {
        c_vol = std::max(c_vol, s.volume / std::pow(s.r, cert.eta));
        r_max = std::max(r_max, s.r);
    }
    cert.c_vol = c_vol;
    cert.r_eta = r_max;
    return cert;
}

// ---------------------------------------------------------------------------
// eps-beta probe

namespace {

struct BumpSite {
    int arc_id = -1;
    int center_idx = 0;
    int half_width = 0;  // vertices on each side of the center
    bool outward_is_right = true;
};

// Picks a support window on an arc separating `region` from the exterior,
// entirely outside the protected ball, farthest from the protected center.
BumpSite find_bump_site(const ClusterNet& net, int region, const Point2& protect,
                        double r_beta, double ell) {
    BumpSite best;
    double best_dist = -1.0;
    for (const auto& arc : net.arcs) {
        bool fwd = arc.left == region && arc.right == 0;
        bool rev = arc.right == region && arc.left == 0;
        if (!fwd && !rev) continue;
        int n = static_cast<int>(arc.points.size());
        auto s = cumulative_lengths(arc.points);
        double seg = s.back() / (n - 1);
        int hw = std::max(3, static_cast<int>(std::ceil(10.0 * ell / std::max(seg, 1e-12))));
        for (int k = hw + 1; k + hw + 1 < n; ++k) {
            bool clear = true;
            for (int j = k - hw; j <= k + hw && clear; ++j)
                if (dist(arc.points[j], protect) <= r_beta * 1.0000001) clear = false;
            if (!clear) continue;
            double d = dist(arc.points[k], protect);
            if (d > best_dist) {
                best_dist = d;
                best = {arc.id, k, hw, fwd};
            }
        }
    }
    if (best.arc_id < 0)
        throw NoEligibleArcError("region " + std::to_string(region) +
                                 " has no exterior arc clear of the protected ball");
    return best;
}

ClusterNet bumped_net(const ClusterNet& net, const BumpSite& site, double amplitude) {
    ClusterNet out = net;
    const auto& base = net.find_arc(site.arc_id)->points;  // normals from the input
    auto& pts = out.find_arc(site.arc_id)->points;
    int n = static_cast<int>(pts.size());
    for (int j = site.center_idx - site.half_width; j <= site.center_idx + site.half_width;
         ++j) {
        if (j <= 0 || j >= n - 1) continue;  // endpoints stay on their nodes
        double u = static_cast<double>(j - site.center_idx) / (site.half_width + 1);
        double phi = 0.5 * (1.0 + std::cos(M_PI * u));
        Vec2 t = normalized(base[j + 1] - base[j - 1]);
        Vec2 nrm = site.outward_is_right ? perp_right(t) : perp_left(t);
        pts[j] = base[j] + amplitude * phi * nrm;
    }
    return out;
}

}  // namespace

ClusterNet apply_volume_bump(const ClusterNet& net, const DensityField& field,
                             int region, double signed_target,
                             const Point2& protected_center, double r_beta,
                             const SolveConfig& cfg) {
    double ell = cfg.spacing(net);
    BumpSite site = find_bump_site(net, region, protected_center, r_beta, ell);
    double base = weighted_area(net, field)[region - 1];
    auto delta_of = [&](double amp) {
        return weighted_area(bumped_net(net, site, amp), field)[region - 1] - base;
    };
    // Bracket the amplitude; outward bumps grow the region.
    double sign = signed_target >= 0.0 ? 1.0 : -1.0;
    double hi = 1e-6 * ell;
    double t = std::abs(signed_target);
    for (int i = 0; i < 60; ++i) {
        if (std::abs(delta_of(sign * hi)) >= t) break;
        hi *= 2.0;
    }
    auto shortfall = [&](double a) { return sign * delta_of(sign * a) - t; };
    double amp = find_root(shortfall, 0.0, hi, 1e-17 * std::max(hi, 1.0), 200);
    // Secant polish to push |delta - target| under 1e-10.
    double f = delta_of(sign * amp) - signed_target;
    double h = std::max(1e-6 * std::max(amp, hi * 1e-6), 1e-18);
    for (int i = 0; i < 20 && std::abs(f) > 1e-10; ++i) {
        double fp = (delta_of(sign * (amp + h)) - signed_target - f) / h;
        if (fp == 0.0) break;
        amp -= f / fp;
        f = delta_of(sign * amp) - signed_target;
    }
    return bumped_net(net, site, sign * amp);
}

EpsBetaCertificate eps_beta_probe(const ClusterNet& net, const DensityField& field,
                                  const Point2& protected_center, double r_beta,
                                  const std::vector<double>& t_grid,
                                  const SolveConfig& cfg, uint64_t seed) {
    EpsBetaCertificate cert;
    cert.seed = seed;
    cert.r_beta = r_beta;
    double p0 = weighted_perimeter(net, field).perimeter;

    std::vector<double> ts = t_grid;
    std::sort(ts.begin(), ts.end());
    std::vector<double> dp_plus(ts.size(), 0.0);
    for (size_t k = 0; k < ts.size(); ++k) {
        for (int region = 1; region <= net.m; ++region) {
            for (double sign : {1.0, -1.0}) {
                ClusterNet mod = apply_volume_bump(net, field, region, sign * ts[k],
                                                   protected_center, r_beta, cfg);
                double dp = weighted_perimeter(mod, field).perimeter - p0;
                dp_plus[k] = std::max(dp_plus[k], dp);
            }
        }
    }

    std::vector<double> lx, ly;
    for (size_t k = 0; k < ts.size(); ++k) {
        if (dp_plus[k] > 0.0) {
            lx.push_back(std::log(ts[k]));
            ly.push_back(std::log(dp_plus[k]));
        }
    }
    if (lx.size() >= 2) {
        auto fit = polyfit(lx, ly, 1);
        cert.beta_fitted = fit[1];
        // The property with exponent 1 implies it for any smaller slope on
        // t < 1, so the certificate exponent caps at 1.
        cert.beta = std::clamp(fit[1], 1e-3, 1.0);
        double rms = 0.0;
        for (size_t k = 0; k < lx.size(); ++k) {
            double e = ly[k] - (fit[0] + fit[1] * lx[k]);
            rms += e * e;
        }
        cert.fit_residual = std::sqrt(rms / lx.size());
    } else {
        cert.beta = 1.0;
        cert.beta_fitted = 1.0;
    }
    // C_per[t] is the smallest constant valid for all |eps| <= t, hence the
    // running max; that also makes the curve non-decreasing by construction.
    double running = 0.0;
    for (size_t k = 0; k < ts.size(); ++k) {
        running = std::max(running, dp_plus[k] / std::pow(ts[k], cert.beta));
        cert.cper_curve.emplace_back(ts[k], running);
    }
    cert.eps_bar = ts.empty() ? 0.0 : ts.back();
    cert.c_per = running;
    return cert;
}

// ---------------------------------------------------------------------------
// Moduli and Dini tests

ModulusSamples sample_h_modulus(const DensityField& field, const Rect& window,
                                double t0, double ratio, int n, uint64_t seed) {
    ModulusSamples out;
    out.ratio = ratio;
    SplitMix64 rng(seed);
    const int pairs = 256;
    std::vector<Point2> xs;
    std::vector<Vec2> dirs;
    for (int i = 0; i < pairs; ++i) {
        xs.push_back(rng.point_in(window));
        dirs.push_back(rng.unit_vector());
    }
    double t = t0;
    for (int k = 0; k < n; ++k) {
        double worst = 0.0;
        for (int i = 0; i < pairs; ++i) {
            Point2 y = xs[i] + t * dirs[i];
            if (!window.contains(y)) continue;
            worst = std::max(worst, std::abs(field.h(y) - field.h(xs[i])));
        }
        out.t.push_back(t);
        out.phi.push_back(worst);
        t /= ratio;
    }
    // A modulus is non-decreasing; enforce it on the samples from below.
    for (int k = static_cast<int>(out.phi.size()) - 2; k >= 0; --k)
        out.phi[k] = std::max(out.phi[k], out.phi[k + 1]);
    return out;
}

const char* to_string(DiniVerdict v) {
    switch (v) {
        case DiniVerdict::Converges: return "converges";
        case DiniVerdict::Diverges: return "diverges";
        case DiniVerdict::Inconclusive: return "inconclusive";
    }
    return "unknown";
}

DiniResult dini_test(const ModulusSamples& samples, DiniVariant variant) {
    if (samples.t.size() < 32)
        throw InsufficientSamplesError("dini_test needs at least 32 modulus samples");
    DiniResult res;
    size_t n = samples.t.size();
    std::vector<double> phi(n);
    for (size_t k = 0; k < n; ++k) {
        double v = std::max(samples.phi[k], 0.0);
        phi[k] = variant == DiniVariant::HalfDini ? std::sqrt(v) : v;
        res.partial_sum += phi[k];
    }

    bool all_zero = true;
    for (double v : phi)
        if (v > 0.0) { all_zero = false; break; }
    if (all_zero) {
        res.verdict = DiniVerdict::Converges;
        return res;
    }

    // Tail models over the smaller half of the grid.
    size_t lo = n / 2;
    std::vector<double> lx, ly, tv, pv;
    for (size_t k = lo; k < n; ++k) {
        if (phi[k] <= 0.0) continue;
        tv.push_back(samples.t[k]);
        pv.push_back(phi[k]);
        lx.push_back(std::log(samples.t[k]));
        ly.push_back(std::log(phi[k]));
    }
    if (lx.size() < 8) {
        // Modulus hits exact zero in the tail: trivially summable.
        res.verdict = DiniVerdict::Converges;
        return res;
    }
    auto fit = polyfit(lx, ly, 1);
    res.tail_exponent = fit[1];
    double pow_rms = 0.0;
    for (size_t k = 0; k < lx.size(); ++k) {
        double model = std::exp(fit[0] + fit[1] * lx[k]);
        double e = (model - pv[k]) / pv[k];
        pow_rms += e * e;
    }
    res.power_residual = std::sqrt(pow_rms / lx.size());

    // phi ~ a / log(1/t): least squares for a.
    double num = 0.0, den = 0.0;
    for (size_t k = 0; k < tv.size(); ++k) {
        double L = std::log(1.0 / tv[k]);
        if (L <= 0.0) continue;
        num += pv[k] / L;
        den += 1.0 / (L * L);
    }
    double a = den > 0.0 ? num / den : 0.0;
    double log_rms = 0.0;
    int cnt = 0;
    for (size_t k = 0; k < tv.size(); ++k) {
        double L = std::log(1.0 / tv[k]);
        if (L <= 0.0) continue;
        double e = (a / L - pv[k]) / pv[k];
        log_rms += e * e;
        ++cnt;
    }
    res.log_residual = cnt ? std::sqrt(log_rms / cnt) : 1e300;

    if (res.log_residual < res.power_residual) {
        res.verdict = DiniVerdict::Diverges;
    } else if (res.tail_exponent > 0.01 && res.power_residual < 0.05) {
        res.verdict = DiniVerdict::Converges;
    } else {
        res.verdict = DiniVerdict::Inconclusive;
    }
    return res;
}

}  // namespace clusterlab

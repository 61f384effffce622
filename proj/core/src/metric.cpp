#include "weyllab/metric.hpp"

#include <cmath>

namespace weyllab {

BumpSeriesPhi::BumpSeriesPhi(std::vector<PlanePoint> centers, double radius, double amplitude)
    : radius_(radius), amplitude_(amplitude) {
    if (!(radius > 0.0)) throw Error("geom_core.Phi", "bump radius must be positive");
    centers_.reserve(centers.size());
    for (const auto& c : centers) {
        // Hyperbolic disk of radius R about (x,y) is the Euclidean disk with
        // center (x, y cosh R) and radius y sinh R.
        Center e{c, c.x, c.y * std::cosh(radius), 0.0};
        double r = c.y * std::sinh(radius);
        e.boxR2 = r * r;
        centers_.push_back(e);
    }
}

double BumpSeriesPhi::profile(double d) const {
    double t = (d / radius_) * (d / radius_);
    if (t >= 1.0) return 0.0;
    return amplitude_ * std::exp(-1.0 / (1.0 - t));
}

double BumpSeriesPhi::profile_over_d(double d) const {
    double t = (d / radius_) * (d / radius_);
    if (t >= 1.0) return 0.0;
    double om = 1.0 - t;
    double sp = -1.0 / (om * om); // ds/dt for s(t) = -1/(1-t)
    return profile(d) * sp * 2.0 / (radius_ * radius_);
}

double BumpSeriesPhi::profile_second(double d) const {
    double t = (d / radius_) * (d / radius_);
    if (t >= 1.0) return 0.0;
    double om = 1.0 - t;
    double sp = -1.0 / (om * om);
    double spp = -2.0 / (om * om * om);
    double b = profile(d);
    double dtdd = 2.0 * d / (radius_ * radius_);
    return b * (sp * dtdd) * (sp * dtdd) + b * spp * (dtdd * dtdd) +
           b * sp * 2.0 / (radius_ * radius_);
}

double BumpSeriesPhi::value(const PlanePoint& p) const {
    double s = 0.0;
    for (const auto& c : centers_) {
        double ex = p.x - c.boxCx, ey = p.y - c.boxCy;
        if (ex * ex + ey * ey >= c.boxR2) continue;
        s += profile(hyp_distance(c.p, p));
    }
    return s;
}

Vec2 BumpSeriesPhi::gradient(const PlanePoint& p) const {
    Vec2 g{0.0, 0.0};
    for (const auto& c : centers_) {
        double ex = p.x - c.boxCx, ey = p.y - c.boxCy;
        if (ex * ex + ey * ey >= c.boxR2) continue;
        double d = hyp_distance(c.p, p);
        // b'(d) grad d = (b'/d) * (d/sinh d) * (sinh d * grad d); the last
        // factor is analytic, so the product is smooth through d = 0.
        double dx = p.x - c.p.x, dy = p.y - c.p.y;
        double u = dx * dx + dy * dy;
        double inv = 1.0 / (c.p.y * p.y);
        Vec2 sg{dx * inv, dy * inv - 0.5 * u * inv / p.y};
        double ratio = d < 1e-8 ? 1.0 : d / std::sinh(d);
        double cfac = profile_over_d(d) * ratio;
        g.x += cfac * sg.x;
        g.y += cfac * sg.y;
    }
    return g;
}

double BumpSeriesPhi::hyp_laplacian(const PlanePoint& p) const {
    double s = 0.0;
    for (const auto& c : centers_) {
        double ex = p.x - c.boxCx, ey = p.y - c.boxCy;
        if (ex * ex + ey * ey >= c.boxR2) continue;
        double d = hyp_distance(c.p, p);
        // Radial Laplacian on the hyperbolic plane: f'' + coth(d) f'.
        double dcoth = d < 1e-8 ? 1.0 + d * d / 3.0 : d / std::tanh(d);
        s += profile_second(d) + dcoth * profile_over_d(d);
    }
    return s;
}

ConformalMetric ConformalMetric::base() {
    return ConformalMetric{std::make_shared<ZeroPhi>(), 1.0, 1.0};
}

bool ConformalMetric::is_base() const {
    return dynamic_cast<const ZeroPhi*>(phi.get()) != nullptr;
}

double curvature_at(const ConformalMetric& m, const PlanePoint& p) {
    double ph = m.phi->value(p);
    return std::exp(-2.0 * ph) * (-1.0 - m.phi->hyp_laplacian(p));
}

PinchingBounds pinching_bounds(const ConformalMetric& m,
                               const std::vector<PlanePoint>& samples) {
    if (samples.empty()) throw Error("geom_core.Pinching", "empty sample set");
    double kmin = 0.0, kmax = -1e300; // of -K
    bool first = true;
    for (const auto& p : samples) {
        double K = curvature_at(m, p);
        if (K >= 0.0)
            throw NotNegativelyCurvedError("sample with K >= 0 at (" +
                                           std::to_string(p.x) + "," + std::to_string(p.y) + ")");
        double mk = -K;
        if (first) { kmin = kmax = mk; first = false; }
        kmin = std::min(kmin, mk);
        kmax = std::max(kmax, mk);
    }
    return {std::sqrt(kmax), std::sqrt(kmin)};
}

std::vector<PlanePoint> metric_sample_grid(double hypRadius, int perAxis) {
    // Euclidean disk image of the hyperbolic disk about i.
    double cy = std::cosh(hypRadius);
    double r = std::sinh(hypRadius);
    std::vector<PlanePoint> pts;
    pts.reserve(static_cast<std::size_t>(perAxis) * perAxis);
    for (int i = 0; i < perAxis; ++i) {
        for (int j = 0; j < perAxis; ++j) {
            double u = -1.0 + 2.0 * (i + 0.5) / perAxis;
            double v = -1.0 + 2.0 * (j + 0.5) / perAxis;
            if (u * u + v * v > 1.0) continue;
            double x = u * r;
            double y = cy + v * r;
            if (y <= 1e-9) continue;
            pts.emplace_back(x, y);
        }
    }
    return pts;
}

} // namespace weyllab

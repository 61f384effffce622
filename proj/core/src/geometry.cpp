#include "weyllab/geometry.hpp"

#include <cmath>
#include <numbers>

namespace weyllab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
} // namespace

double wrap_angle(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    return r;
}

double wrap_angle_signed(double a) {
    double r = std::fmod(a, kTwoPi);
    if (r <= -kPi) r += kTwoPi;
    if (r > kPi) r -= kTwoPi;
    return r;
}

MoebiusElement MoebiusElement::normalized() const {
    double dt = det();
    if (!(dt > 0.0))
        throw Error("geom_core.Degenerate", "Moebius element must have positive determinant");
    double s = 1.0 / std::sqrt(dt);
    MoebiusElement r{a * s, b * s, c * s, d * s};
    const double eps = 1e-14;
    double lead = std::fabs(r.a) > eps ? r.a
                : std::fabs(r.b) > eps ? r.b
                : std::fabs(r.c) > eps ? r.c
                                       : r.d;
    if (lead < 0.0) { r.a = -r.a; r.b = -r.b; r.c = -r.c; r.d = -r.d; }
    return r;
}

bool MoebiusElement::approx_equal(const MoebiusElement& o, double tol) const {
    MoebiusElement x = normalized(), y = o.normalized();
    return std::fabs(x.a - y.a) <= tol && std::fabs(x.b - y.b) <= tol &&
           std::fabs(x.c - y.c) <= tol && std::fabs(x.d - y.d) <= tol;
}

MoebiusElement compose(const MoebiusElement& g, const MoebiusElement& h) {
    return MoebiusElement{g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                          g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

MoebiusClass classify(const MoebiusElement& g, double parabolicTol) {
    MoebiusElement n = g.normalized();
    double offDiag = std::fabs(n.b) + std::fabs(n.c);
    double diagGap = std::fabs(n.a - n.d);
    if (offDiag + diagGap < 1e-12) return MoebiusClass::Identity;
    double t = std::fabs(n.trace());
    if (std::fabs(t - 2.0) < parabolicTol) return MoebiusClass::Parabolic;
    if (t < 2.0) return MoebiusClass::Elliptic;
    return MoebiusClass::Hyperbolic;
}

double translation_length(const MoebiusElement& g) {
    switch (classify(g)) {
    case MoebiusClass::Identity:
        throw NotHyperbolicError(NonHyperbolicKind::Identity, "identity has no axis");
    case MoebiusClass::Elliptic:
        throw NotHyperbolicError(NonHyperbolicKind::Elliptic, "elliptic element");
    case MoebiusClass::Parabolic:
        throw NotHyperbolicError(NonHyperbolicKind::Parabolic, "parabolic element");
    case MoebiusClass::Hyperbolic:
        break;
    }
    double t = std::fabs(g.normalized().trace()) / 2.0;
    return 2.0 * std::acosh(t);
}

PlanePoint apply_moebius(const MoebiusElement& g, const PlanePoint& p) {
    // z' = (az+b)(conj(cz+d))/|cz+d|^2; Im z' = det * y / |cz+d|^2.
    double wr = g.c * p.x + g.d;
    double wi = g.c * p.y;
    double den = wr * wr + wi * wi;
    if (!(den > 0.0)) throw Error("geom_core.Degenerate", "cz+d vanished on half-plane input");
    double nr = (g.a * p.x + g.b) * wr + g.a * g.c * p.y * p.y;
    double ni = g.det() * p.y;
    return PlanePoint(nr / den, ni / den);
}

std::array<std::array<double, 2>, 2> moebius_jacobian(const MoebiusElement& g,
                                                      const PlanePoint& p) {
    // derivative = det / (cz+d)^2 as a complex number u+iv
    double wr = g.c * p.x + g.d;
    double wi = g.c * p.y;
    double den = (wr * wr + wi * wi);
    den *= den;
    double u = g.det() * (wr * wr - wi * wi) / den;
    double v = g.det() * (-2.0 * wr * wi) / den;
    return {{{u, -v}, {v, u}}};
}

double hyp_distance(const PlanePoint& p, const PlanePoint& q) {
    // 2*asinh(|p-q| / (2 sqrt(py qy))) is the stable form of the arccosh formula.
    double dx = p.x - q.x, dy = p.y - q.y;
    double chord = std::sqrt(dx * dx + dy * dy);
    return 2.0 * std::asinh(0.5 * chord / std::sqrt(p.y * q.y));
}

Vec2 hyp_distance_gradient(const PlanePoint& p, const PlanePoint& q) {
    // From cosh d = 1 + |p-q|^2/(2 py qy), differentiated in q.
    double dx = q.x - p.x, dy = q.y - p.y;
    double u = dx * dx + dy * dy;
    double d = hyp_distance(p, q);
    double sh = std::sinh(d);
    if (sh < 1e-300) return {0.0, 0.0};
    double inv = 1.0 / (p.y * q.y);
    double gx = dx * inv / sh;
    double gy = (dy * inv - 0.5 * u * inv / q.y) / sh;
    return {gx, gy};
}

double geodesic_bearing(const PlanePoint& p, const PlanePoint& q) {
    double dx = q.x - p.x;
    double scale = std::max({std::fabs(p.x), std::fabs(q.x), p.y, q.y, 1.0});
    if (std::fabs(dx) < 1e-14 * scale)
        return q.y > p.y ? kPi / 2.0 : 3.0 * kPi / 2.0;
    // Semicircle centred at (c,0) through p and q.
    double c = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * dx);
    double phiP = std::atan2(p.y, p.x - c);
    double phiQ = std::atan2(q.y, q.x - c);
    // Tangent along increasing circle angle is (-sin phi, cos phi).
    double tx = -std::sin(phiP), ty = std::cos(phiP);
    if (phiQ < phiP) { tx = -tx; ty = -ty; }
    return wrap_angle(std::atan2(ty, tx));
}

UnitTangent::UnitTangent(PlanePoint p, double ang) : base(p), angle(wrap_angle(ang)) {}

UnitTangent apply_moebius(const MoebiusElement& g, const UnitTangent& u) {
    PlanePoint q = apply_moebius(g, u.base);
    // Conformal map: rotate the direction by arg of the derivative.
    double wr = g.c * u.base.x + g.d;
    double wi = g.c * u.base.y;
    double rot = -2.0 * std::atan2(wi, wr);
    return UnitTangent(q, u.angle + rot);
}

double parallel_transport_angle(const PlanePoint& p, const PlanePoint& q, double angleAtP) {
    double d = hyp_distance(p, q);
    if (d < 1e-14) return angleAtP;
    double depart = geodesic_bearing(p, q);
    double arrive = wrap_angle(geodesic_bearing(q, p) + kPi);
    return wrap_angle(arrive + (angleAtP - depart));
}

double sasaki_distance(const UnitTangent& u, const UnitTangent& v) {
    double d = hyp_distance(u.base, v.base);
    double transported = parallel_transport_angle(u.base, v.base, u.angle);
    double gap = wrap_angle_signed(v.angle - transported);
    return std::sqrt(d * d + gap * gap);
}

AxisEndpoints axis_endpoints(const MoebiusElement& g0) {
    if (classify(g0) != MoebiusClass::Hyperbolic)
        throw NotHyperbolicError(NonHyperbolicKind::Elliptic, "axis of non-hyperbolic element");
    MoebiusElement g = g0.normalized();
    if (g.trace() < 0.0) { g.a = -g.a; g.b = -g.b; g.c = -g.c; g.d = -g.d; }
    AxisEndpoints r;
    if (std::fabs(g.c) < 1e-14) {
        r.vertical = true;
        // Fixed points: x0 = b/(d-a) and infinity; |a|>|d| iff infinity attracts.
        r.x0 = std::fabs(g.a - g.d) > 1e-14 ? g.b / (g.d - g.a) : 0.0;
        r.repelling = std::fabs(g.a) > std::fabs(g.d) ? r.x0 : std::numeric_limits<double>::infinity();
        r.attracting = std::fabs(g.a) > std::fabs(g.d) ? std::numeric_limits<double>::infinity() : r.x0;
        return r;
    }
    double disc = g.trace() * g.trace() - 4.0;
    double s = std::sqrt(disc);
    double f1 = (g.a - g.d + s) / (2.0 * g.c);
    double f2 = (g.a - g.d - s) / (2.0 * g.c);
    // Attracting fixed point has |g'(z)| = 1/(cz+d)^2 < 1.
    auto deriv_mag = [&](double z) {
        double w = g.c * z + g.d;
        return 1.0 / (w * w);
    };
    if (deriv_mag(f1) < 1.0) {
        r.attracting = f1;
        r.repelling = f2;
    } else {
        r.attracting = f2;
        r.repelling = f1;
    }
    return r;
}

double distance_to_axis(const MoebiusElement& g, const PlanePoint& p) {
    AxisEndpoints e = axis_endpoints(g);
    if (e.vertical) {
        // sinh(dist) = |x - x0| / y
        return std::asinh(std::fabs(p.x - e.x0) / p.y);
    }
    double m = 0.5 * (e.repelling + e.attracting);
    double rad = 0.5 * std::fabs(e.repelling - e.attracting);
    double dx = p.x - m;
    double num = dx * dx + p.y * p.y - rad * rad;
    return std::asinh(std::fabs(num) / (2.0 * rad * p.y));
}

} // namespace weyllab

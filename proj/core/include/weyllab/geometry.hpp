#pragma once

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <array>
#include <optional>

namespace weyllab {

/// Point of the upper half-plane model; y > 0 is enforced at construction.
struct PlanePoint {
    double x;
    double y;

    PlanePoint(double px, double py) : x(px), y(py) {
        if (!(y > 0.0)) throw Error("geom_core.HalfPlane", "point requires y > 0");
    }
};

/// Orientation-preserving isometry z -> (az+b)/(cz+d), kept with det = 1.
/// g and -g describe the same isometry; normalized() fixes the sign.
struct MoebiusElement {
    double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

    static MoebiusElement identity() { return {}; }

    double det() const { return a * d - b * c; }
    double trace() const { return a + d; }

    MoebiusElement inverse() const { return {d, -b, -c, a}; }

    /// Rescales entries so det == 1 and the sign is canonical
    /// (first nonzero of a,b,c,d positive).
    MoebiusElement normalized() const;

    bool approx_equal(const MoebiusElement& o, double tol) const;
};

MoebiusElement compose(const MoebiusElement& g, const MoebiusElement& h);

enum class MoebiusClass { Identity, Elliptic, Parabolic, Hyperbolic };

/// Classification with the cocompact-group parabolic guard: ||tr|-2| < parabolicTol
/// flags numerical corruption rather than a genuine parabolic.
MoebiusClass classify(const MoebiusElement& g, double parabolicTol = 1e-9);

/// Length of the closed geodesic of a hyperbolic element: 2 arccosh(|tr|/2).
/// Throws NotHyperbolicError for identity/elliptic/parabolic input.
double translation_length(const MoebiusElement& g);

PlanePoint apply_moebius(const MoebiusElement& g, const PlanePoint& p);

/// Real 2x2 Jacobian of g at p (the complex derivative 1/(cz+d)^2 as a
/// rotation-scaling matrix).
std::array<std::array<double, 2>, 2> moebius_jacobian(const MoebiusElement& g,
                                                      const PlanePoint& p);

double hyp_distance(const PlanePoint& p, const PlanePoint& q);

/// Euclidean-coordinate gradient of q -> hyp_distance(p, q) in the q slot,
/// evaluated at q. Undefined (zero vector returned) when p == q.
Vec2 hyp_distance_gradient(const PlanePoint& p, const PlanePoint& q);

/// Initial bearing (Euclidean angle of the unit tangent in the hyperbolic
/// metric) at p of the geodesic from p to q. Requires p != q.
double geodesic_bearing(const PlanePoint& p, const PlanePoint& q);

/// Unit tangent vector: base point plus Euclidean angle of the direction.
/// In the base hyperbolic metric the represented vector y*(cos a, sin a) has
/// unit length automatically.
struct UnitTangent {
    PlanePoint base;
    double angle; // radians in [0, 2*pi)

    UnitTangent(PlanePoint p, double ang);
};

UnitTangent apply_moebius(const MoebiusElement& g, const UnitTangent& u);

/// Angle at q of the parallel transport of the direction `angleAtP` along the
/// geodesic from p to q (identity transport when p == q).
double parallel_transport_angle(const PlanePoint& p, const PlanePoint& q, double angleAtP);

/// Quasi-isometric proxy for the Sasaki distance on the unit tangent bundle:
/// sqrt(base_distance^2 + transported_angle_gap^2).
double sasaki_distance(const UnitTangent& u, const UnitTangent& v);

/// Hyperbolic distance from p to the complete geodesic fixed by a hyperbolic g.
double distance_to_axis(const MoebiusElement& g, const PlanePoint& p);

/// Fixed points of a hyperbolic element on the real boundary, (repelling, attracting).
/// The attracting point may be +inf for vertical axes (encoded as NaN x with flag).
struct AxisEndpoints {
    bool vertical = false;
    double x0 = 0.0;        // vertical line abscissa when vertical
    double repelling = 0.0; // boundary coordinates otherwise
    double attracting = 0.0;
};

AxisEndpoints axis_endpoints(const MoebiusElement& g);

double wrap_angle(double a);            // into [0, 2*pi)
double wrap_angle_signed(double a);     // into (-pi, pi]

} // namespace weyllab

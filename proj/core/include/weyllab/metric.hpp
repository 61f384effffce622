#pragma once

#include "weyllab/geometry.hpp"

#include <memory>
#include <vector>

namespace weyllab {

/// Smooth conformal factor phi with the evaluators the Riccati and
/// curve-shortening paths need: value, Euclidean-coordinate gradient, and
/// hyperbolic Laplacian.
class PhiField {
public:
    virtual ~PhiField() = default;
    virtual double value(const PlanePoint& p) const = 0;
    virtual Vec2 gradient(const PlanePoint& p) const = 0;
    virtual double hyp_laplacian(const PlanePoint& p) const = 0;
};

class ZeroPhi final : public PhiField {
public:
    double value(const PlanePoint&) const override { return 0.0; }
    Vec2 gradient(const PlanePoint&) const override { return {0.0, 0.0}; }
    double hyp_laplacian(const PlanePoint&) const override { return 0.0; }
};

class ConstantPhi final : public PhiField {
public:
    explicit ConstantPhi(double c) : c_(c) {}
    double value(const PlanePoint&) const override { return c_; }
    Vec2 gradient(const PlanePoint&) const override { return {0.0, 0.0}; }
    double hyp_laplacian(const PlanePoint&) const override { return 0.0; }

private:
    double c_;
};

/// Sum of compactly supported radial bumps amplitude * exp(-1/(1-(d/R)^2))
/// placed at the given centers (a truncated Poincare series when the centers
/// are a group orbit). All derivatives analytic.
class BumpSeriesPhi final : public PhiField {
public:
    BumpSeriesPhi(std::vector<PlanePoint> centers, double radius, double amplitude);

    double value(const PlanePoint& p) const override;
    Vec2 gradient(const PlanePoint& p) const override;
    double hyp_laplacian(const PlanePoint& p) const override;

    std::size_t center_count() const { return centers_.size(); }

private:
    struct Center {
        PlanePoint p;
        double boxCx, boxCy, boxR2; // Euclidean disk bounding the bump support
    };
    std::vector<Center> centers_;
    double radius_, amplitude_;

    // radial profile and derivatives in the distance variable
    double profile(double d) const;
    double profile_over_d(double d) const;  // b'(d)/d, smooth through 0
    double profile_second(double d) const;
};

/// Conformal metric e^{2 phi} g_hyp with certified pinching constants
/// -K1^2 <= K <= -K2^2.
struct ConformalMetric {
    std::shared_ptr<const PhiField> phi;
    double K1 = 1.0;
    double K2 = 1.0;

    static ConformalMetric base();

    bool is_base() const;
    double phi_value(const PlanePoint& p) const { return phi->value(p); }
};

/// Gaussian curvature K = e^{-2 phi} (-1 - Laplace_hyp phi).
double curvature_at(const ConformalMetric& m, const PlanePoint& p);

struct PinchingBounds {
    double K1emp; // sqrt(sup -K)
    double K2emp; // sqrt(inf -K)
};

/// Empirical pinching over the sample set; throws NotNegativelyCurvedError
/// if any sample has K >= 0.
PinchingBounds pinching_bounds(const ConformalMetric& m,
                               const std::vector<PlanePoint>& samples);

/// Deterministic sample grid covering the hyperbolic disk of the given radius
/// about (0, 1); used for pinching certification and invariance checks.
std::vector<PlanePoint> metric_sample_grid(double hypRadius, int perAxis);

} // namespace weyllab

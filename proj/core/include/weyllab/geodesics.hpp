#pragma once

#include "weyllab/fuchsian.hpp"
#include "weyllab/geometry.hpp"
#include "weyllab/metric.hpp"

#include <vector>

namespace weyllab {

/// Closed geodesic as a lift over one period: samples[k] at arclength
/// k*length/n; the continuation past the end is classElement * samples[0].
struct ClosedGeodesic {
    std::vector<UnitTangent> samples; // n samples over [0, L)
    double length = 0.0;
    MoebiusElement classElement;
    GroupWord classWord;

    /// Construction-time closure check. For axis-built curves this is the
    /// independently verified gap sasaki(g * at(s), at(s + L)); refined curves
    /// inherit the stationarity residual.
    double buildResidual = 0.0;

    std::size_t sample_count() const { return samples.size(); }
};

/// Exact unit-speed parametrization of the axis of a hyperbolic element.
/// at(0) is the foot of the perpendicular from i onto the axis; the curve
/// runs toward the attracting fixed point, so g * at(s) == at(s + L).
class AxisCurve {
public:
    explicit AxisCurve(const MoebiusElement& g);
    UnitTangent at(double s) const;
    double period() const { return length_; }

private:
    MoebiusElement fromStd_; // maps the imaginary axis onto the axis of g
    double length_;
    double s0_;
};

/// Samples the axis of g; length = translation_length(g).
ClosedGeodesic axis_geodesic(const MoebiusElement& g, int nSamples);

struct RefineOptions {
    int samplesPerUnitLength = 512;
    double gradTol = 1e-9;
    int maxIterations = 60;
};

/// Unique closed geodesic in the free homotopy class of init under the
/// conformal metric: Newton iteration on the stationarity equations of the
/// discrete length functional
///   L = sum d_hyp(p_k, p_{k+1}) * (e^{phi(p_k)} + e^{phi(p_{k+1})})/2
/// with the wrap p_n = g p_0, safeguarded by a backtracking line search.
ClosedGeodesic refine_closed_geodesic(const ConformalMetric& m, const ClosedGeodesic& init,
                                      const RefineOptions& opts = {});

/// Discrete length of the polygon in the given metric.
double discrete_length(const ConformalMetric& m, const ClosedGeodesic& g);

/// Sup norm of the discrete stationarity residual (the geodesic-equation
/// check for sampled curves).
double geodesic_residual(const ConformalMetric& m, const ClosedGeodesic& g);

} // namespace weyllab

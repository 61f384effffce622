#pragma once

#include "weyllab/numerics.hpp"

#include <memory>

namespace weyllab {

/// Smoothing pair (rho, rhoHat) built from a bump g-hat on [-1/2, 1/2]:
///   ghat(s) = c * exp(-1/(1/4 - s^2)),  rhoHat = ghat * ghat (convolution),
///   rho(x)  = integral of rhoHat(s) e^{isx} ds  (= g(x)^2 >= 0),
/// with the transform convention rhoHat(s) = (1/2pi) int e^{-is z} rho(z) dz.
/// supp rhoHat lies in [-1,1]; c normalizes rhoHat(0) = 1. The whole pair can
/// be rescaled by a positive factor (admissibility is scale-invariant).
class SmoothingKernel {
public:
    /// resolution >= 4096: rhoHat table size and quadrature node count.
    static SmoothingKernel build(int resolution = 4096, double tableRange = 256.0);

    double ghat(double s) const;
    double rho_hat(double s) const; // 0 exactly for |s| >= 1
    double rho(double x) const;     // 0 beyond the table range (Schwartz tail)
    double rho0() const { return scale_ * rho0_; }
    double scale() const { return scale_; }
    double table_range() const { return tableRange_; }

    SmoothingKernel scaled(double s) const;

private:
    struct Tables {
        CubicSpline rhoHat;
        CubicSpline rho;
        double ghatNorm = 1.0;
        double rho0 = 0.0;
        double tableRange = 0.0;
    };
    std::shared_ptr<const Tables> t_;
    double scale_ = 1.0;
    double rho0_ = 0.0;
    double tableRange_ = 0.0;
};

/// H_{lambda,T}(r) = [rho(T(lambda-r)) + rho(T(lambda+r))] / 2, both terms
/// always evaluated.
double window_H(const SmoothingKernel& k, double lambda, double T, double r);

/// Time cutoff chi(t,T) = (1 - psi(t)) rhoHat(t/T) with psi == 1 on
/// [-T0, T0], == 0 off [-2T0, 2T0], and a smooth bump-quotient ramp between.
struct TimeCutoff {
    double T0;

    explicit TimeCutoff(double t0);

    /// Default T0 = ln(2 / deltaPrime) / K1 with deltaPrime = inj/4.
    static TimeCutoff from_geometry(double injectivityRadius, double K1 = 1.0);

    double psi(double t) const;
    double chi(const SmoothingKernel& k, double t, double T) const;
};

} // namespace weyllab

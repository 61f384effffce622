#pragma once

#include "weyllab/geodesics.hpp"
#include "weyllab/metric.hpp"

namespace weyllab {

/// Unstable-eigenvalue data of the linearized first-return map for one
/// closed geodesic: log mu = integral of the unstable Riccati solution u
/// (u' = -u^2 - K along the curve), |det(I - P)| = mu - 2 + 1/mu.
struct PoincareData {
    double logMu = 0.0;
    double mu = 0.0;
    double detTerm = 0.0;
    int relaxationPeriods = 0;
};

struct RiccatiOptions {
    int stepsPerPeriod = 2048;
    int maxRelaxationPeriods = 50;
    double periodTol = 1e-10;
};

/// Integrates the unstable Riccati equation along the (refined) closed
/// geodesic: forward relaxation from u(0) = K2 until the solution is
/// periodic, then one more period accumulating log mu with the same RK4 grid.
PoincareData integrate_unstable(const ConformalMetric& m, const ClosedGeodesic& g,
                                const RiccatiOptions& opts = {});

/// Fills entry detTerms for a base-metric spectrum by integrating along each
/// axis. Deterministic and parallel over entries.
void fill_poincare_data(LengthSpectrum& ls, const RiccatiOptions& opts = {}, int threads = 1,
                        int axisSamples = 256);

} // namespace weyllab

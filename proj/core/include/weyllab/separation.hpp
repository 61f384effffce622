#pragma once

#include "weyllab/fuchsian.hpp"
#include "weyllab/geodesics.hpp"

#include <limits>

namespace weyllab {

struct SeparationReport {
    double minDistance = std::numeric_limits<double>::infinity();
    double threshold = 0.0; // 2 e^{-B T}
    bool pass = false;
    bool emptyWindow = false;
    int geodesicsInWindow = 0;
    long pairCount = 0;
    double windowLo = 0.0, windowHi = 0.0;
};

struct SeparationOptions {
    double coarseStep = 0.05;
    int threads = 1;
    int refineIterations = 12;
};

/// Lemma-style phase-space separation check: minimum pairwise distance (in
/// the Sasaki proxy metric on the unit tangent bundle) between distinct
/// closed geodesics with lengths in [T - deltaPrime, T], refined by local
/// minimization over both arclength parameters; pass iff min > 2 e^{-B T}.
/// Preconditions: deltaPrime < inj/3 and T > T0 with 2 e^{-K1 T0} = deltaPrime.
SeparationReport separation_report(const LengthSpectrum& spec, double T, double deltaPrime,
                                   double B, double injectivityRadius, double K1 = 1.0,
                                   const SeparationOptions& opts = {});

} // namespace weyllab

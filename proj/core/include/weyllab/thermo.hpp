#pragma once

#include "weyllab/fuchsian.hpp"

#include <string>
#include <vector>

namespace weyllab {

/// One weighted closed geodesic as the orbit sums consume it.
struct WeightedLength {
    double length;
    double primitiveLength;
    double detTerm;
};

/// S(T) = sum_{L <= T} L / sqrt|det(I-P)| and the primitive-weighted variant
/// with L# in the numerator, tabulated on a T grid together with entry counts
/// and the number of distinct lengths.
struct OrbitSumSeries {
    std::vector<double> T;
    std::vector<double> S;
    std::vector<double> Sprim;
    std::vector<long> counts;
    std::vector<int> nuDistinct;
};

OrbitSumSeries orbit_sums(const LengthSpectrum& spec, const std::vector<double>& grid);

/// Same sums over explicit rows (used for perturbed-metric lengths and
/// synthetic spectra).
OrbitSumSeries orbit_sums_rows(std::vector<WeightedLength> rows, const std::vector<double>& grid,
                               double clusterTol = 1e-9);

struct ExponentFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // max abs deviation over the window
    double windowLo = 0.0, windowHi = 0.0;
    bool logTCorrected = false; // entropy fit: ln(counts * T) instead of ln counts
    int pointsUsed = 0;
};

/// Least-squares slope of ln S(T) over the window; estimates P(-H/2).
ExponentFit pressure_fit(const OrbitSumSeries& series, double lo, double hi);

/// Least-squares slope of ln(counts(T) * T) over the window; estimates the
/// topological entropy h. The *T factor absorbs the 1/(hT) in the Margulis
/// asymptotics and is flagged in the result; pass correct=false for the
/// uncorrected ln counts fit.
ExponentFit entropy_fit(const OrbitSumSeries& series, double lo, double hi, bool correct = true);

std::string orbit_series_to_csv(const OrbitSumSeries& s);

std::vector<double> make_grid(double lo, double hi, double step);

} // namespace weyllab

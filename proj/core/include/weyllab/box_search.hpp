#pragma once

#include "weyllab/fuchsian.hpp"
#include "weyllab/kernel.hpp"

#include <vector>

namespace weyllab {

/// Parameter schedule of the contradiction argument: alpha below the bound
/// h*eps/(2(1-eps)), M1 = exp(exp(alpha T)), b = P(-H/2)(1-eps)/h.
struct ProofSchedule {
    double T = 0.0;
    double eps = 0.0;
    double h = 0.0;
    double pressureHalf = 0.0;
    double alpha = 0.0;
    double alphaBound = 0.0;
    double M1 = 0.0;
    double b = 0.0;
    bool degenerate = false; // T <= 0 collapses M1 to e
};

/// Default alpha = 0.45 h eps, strictly below the bound for every eps in (0,1).
ProofSchedule schedule_parameters(double T, double eps, double h, double pressureHalf);

struct ResonanceProblem {
    std::vector<double> lengths; // distinct, ascending
    double M1 = 0.0;
    double cap = 0.0;       // defaults to M1 * 2^nu
    double tolerance = 0.5; // phase radius in radians

    static ResonanceProblem from_lengths(std::vector<double> distinctLengths, double M1,
                                         double tolerance = 0.5);
    void validate() const;
};

struct ResonanceResult {
    double lambda = 0.0;
    std::vector<double> phases; // dist(lambda L_j, 2 pi Z)
    double maxPhase = 0.0;
    long samplesTried = 0;
    bool found = false;
    double bestPhaseSeen = 0.0; // best max-phase over the scan
};

struct ResonanceOptions {
    int threads = 1;
    long sampleBudget = 20000000;
};

/// Deterministic ascending scan over lambda_k = M1 + k * delta0 with
/// delta0 = pi / (2 max L_j); the first sample whose phases all verify wins
/// (re-verified independently before returning). Throws SearchExhaustedError
/// with the best phase radius when the budget or cap is exhausted.
ResonanceResult find_resonant_lambda(const ResonanceProblem& rp,
                                     const ResonanceOptions& opts = {});

/// Independent verification of the postcondition.
double max_phase_distance(double lambda, const std::vector<double>& lengths);

struct AmplitudeReport {
    double lambda = 0.0;
    double T = 0.0;
    double eps = 0.0;
    double sigma = 0.0;      // Sigma(lambda, T)
    double rhs = 0.0;        // (1/(4T)) sum_{T0 < L <= T(1-eps/2)} L# / sqrt(det)
    bool pass = false;
    double minChiOnWindow = 0.0;
    double minCosOnLengths = 0.0;
    double kernelScale = 1.0;
    double lnSigma = 0.0;
    double fittedLine = 0.0; // P(-H/2) T (1 - eps/2) - ln T
    double C3 = 0.0;         // lnSigma - fittedLine (fitted, never asserted)
    int retainedTerms = 0;
};

/// Smallest chi(L, T) over spectrum lengths in (T0, T(1-eps/2)].
double min_chi_on_window(const LengthSpectrum& spec, const TimeCutoff& tc,
                         const SmoothingKernel& k, double T, double eps);

/// Scale that lifts min chi on the retained window to at least 1/2 (with a
/// 5% margin); returns 1 when already sufficient.
double kernel_scale_for_window(const LengthSpectrum& spec, const TimeCutoff& tc,
                               const SmoothingKernel& k, double T, double eps);

/// Evaluates both sides of the amplitude inequality at the resonant lambda.
AmplitudeReport amplitude_check(const LengthSpectrum& spec, double lambda, double T, double eps,
                                const TimeCutoff& tc, const SmoothingKernel& k,
                                double pressureHalf);

} // namespace weyllab

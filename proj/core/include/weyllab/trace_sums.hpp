#pragma once

#include "weyllab/fuchsian.hpp"
#include "weyllab/kernel.hpp"
#include "weyllab/spectra.hpp"

namespace weyllab {

/// Spectral-side windowed trace with the Weyl main term removed:
///   kappa(lambda, T) = sum_i H_{lambda,T}(sqrt(lambda_i)) - main,
/// main = (A/4pi) int_0^inf H * 2r dr for surfaces, (L/pi) int_0^inf H dr for
/// the circle variant (dimension 1). Requires eigenvalue coverage up to
/// lambda + 10/T.
double kappa_spectral(const SpectrumData& sd, const SmoothingKernel& k, double lambda, double T);

/// Geometric exponential sum
///   Sigma(lambda,T) = sum_{L <= T} L# cos(lambda L) chi(L,T)
///                     / (T sqrt|det(I-P)|),
/// deterministic compensated summation in length order; terms with
/// chi = 0 (L <= T0) are skipped. Set timesT to return the form without the
/// 1/T factor.
double sigma_geometric(const LengthSpectrum& spec, const TimeCutoff& tc,
                       const SmoothingKernel& k, double lambda, double T, bool timesT = false);

/// Closed-form geometric side of the circle trace by Poisson summation:
///   (L/T) * 2 * sum_{n>=1} rhoHat(nL/T) cos(n lambda L).
double poisson_oracle_circle(const SmoothingKernel& k, double circumference, double lambda,
                             double T);

} // namespace weyllab

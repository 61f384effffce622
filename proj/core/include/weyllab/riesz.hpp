#pragma once

#include "weyllab/spectra.hpp"

#include <functional>
#include <vector>

namespace weyllab {

/// Riesz mean R_k f(lambda) = (k/lambda) int_0^lambda (1 - t/lambda)^{k-1} f(t) dt
/// by adaptive quadrature, splitting at the supplied jump points.
double riesz_mean(const std::function<double(double)>& f, double lambda, int k,
                  const std::vector<double>& jumps = {}, double absTol = 1e-10);

/// Exact Riesz mean of the counting function: R_k N(lambda) =
/// sum mult_i (1 - r_i/lambda)^k over sqrt(lambda_i) <= lambda.
double riesz_counting(const SpectrumData& sd, double lambda, int k);

/// Exact Riesz mean of the Weyl remainder R = N - main (osc = true subtracts
/// the heat-invariant polynomial instead). Polynomial part integrated in
/// closed form: R_k[t^p] = lambda^p p! k! / (p+k)!.
double riesz_remainder(const SpectrumData& sd, double lambda, int k, bool osc = false);

/// (1/lambda) int_0^lambda |R(t)| dt, exact between eigenvalue jumps
/// (the main term is monotone on each piece, so each sign change is bracketed
/// and solved).
double l1_average_remainder(const SpectrumData& sd, double lambda);

} // namespace weyllab

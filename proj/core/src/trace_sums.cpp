#include "weyllab/trace_sums.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <cmath>
#include <numbers>

namespace weyllab {

double kappa_spectral(const SpectrumData& sd, const SmoothingKernel& k, double lambda, double T) {
    if (sd.dimension != 1 && sd.dimension != 2)
        throw Error("spectral.Kappa", "kappa implemented for surfaces and the circle oracle");
    if (sd.coverage() + 1e-12 < lambda + 10.0 / T)
        throw SpectrumTruncatedError("need eigenvalues up to sqrt-lambda " +
                                     std::to_string(lambda + 10.0 / T));

    KahanSum sum;
    for (std::size_t i = 0; i < sd.lambda.size(); ++i) {
        double r = std::sqrt(sd.lambda[i]);
        double h = window_H(k, lambda, T, r);
        if (h != 0.0) sum.add(static_cast<double>(sd.mult[i]) * h);
    }

    // Weyl main term: integrate H against the smooth counting density.
    double reach = k.table_range() / T;
    double lo = std::max(0.0, lambda - reach);
    double hi = lambda + reach;
    double main;
    if (sd.dimension == 2) {
        auto f = [&](double r) { return window_H(k, lambda, T, r) * 2.0 * r; };
        main = sd.volume / (4.0 * std::numbers::pi) *
               (adaptive_simpson(f, lo, lambda, 5e-11) + adaptive_simpson(f, lambda, hi, 5e-11));
    } else {
        auto f = [&](double r) { return window_H(k, lambda, T, r); };
        main = sd.volume / std::numbers::pi *
               (adaptive_simpson(f, lo, lambda, 5e-11) + adaptive_simpson(f, lambda, hi, 5e-11));
    }
    return sum.value() - main;
}

double sigma_geometric(const LengthSpectrum& spec, const TimeCutoff& tc,
                       const SmoothingKernel& k, double lambda, double T, bool timesT) {
    if (T > spec.cutoff + 1e-12)
        throw IncompleteSpectrumError("Sigma needs the spectrum complete to T");
    KahanSum sum;
    for (const auto& e : spec.entries) {
        if (e.length > T) break;
        if (std::isnan(e.detTerm)) throw MissingDetTermError("entry at L=" + std::to_string(e.length));
        double chi = tc.chi(k, e.length, T);
        if (chi == 0.0) continue;
        sum.add(e.primitiveLength * std::cos(lambda * e.length) * chi /
                std::sqrt(e.detTerm));
    }
    return timesT ? sum.value() : sum.value() / T;
}

double poisson_oracle_circle(const SmoothingKernel& k, double circumference, double lambda,
                             double T) {
    KahanSum sum;
    for (int n = 1; n * circumference < T; ++n)
        sum.add(k.rho_hat(n * circumference / T) * std::cos(n * lambda * circumference));
    return circumference / T * 2.0 * sum.value();
}

} // namespace weyllab

#include "weyllab/riesz.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weyllab {

double riesz_mean(const std::function<double(double)>& f, double lambda, int k,
                  const std::vector<double>& jumps, double absTol) {
    if (!(lambda > 0.0) || k < 1) throw Error("spectral.Riesz", "lambda > 0 and k >= 1 required");
    std::vector<double> cuts{0.0, lambda};
    for (double j : jumps)
        if (j > 0.0 && j < lambda) cuts.push_back(j);
    std::sort(cuts.begin(), cuts.end());
    auto integrand = [&](double t) {
        return std::pow(1.0 - t / lambda, k - 1) * f(t);
    };
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        if (cuts[i + 1] - cuts[i] < 1e-15) continue;
        acc.add(adaptive_simpson(integrand, cuts[i], cuts[i + 1],
                                 absTol / static_cast<double>(cuts.size())));
    }
    return static_cast<double>(k) / lambda * acc.value();
}

double riesz_counting(const SpectrumData& sd, double lambda, int k) {
    if (lambda > sd.coverage() + 1e-12)
        throw CoverageError("Riesz mean beyond spectrum coverage");
    KahanSum acc;
    for (std::size_t i = 0; i < sd.lambda.size(); ++i) {
        double r = std::sqrt(sd.lambda[i]);
        if (r > lambda) break;
        acc.add(static_cast<double>(sd.mult[i]) * std::pow(1.0 - r / lambda, k));
    }
    return acc.value();
}

namespace {

double riesz_power(double lambda, int p, int k) {
    // R_k[t^p] = lambda^p * p! k! / (p+k)!
    double c = 1.0;
    for (int j = 1; j <= k; ++j) c *= static_cast<double>(j) / (p + j);
    return std::pow(lambda, p) * c;
}

} // namespace

double riesz_remainder(const SpectrumData& sd, double lambda, int k, bool osc) {
    double n = sd.dimension;
    double pref = std::pow(4.0 * std::numbers::pi, -n / 2.0);
    double main;
    if (!osc) {
        double c = pref * sd.volume / std::tgamma(n / 2.0 + 1.0);
        main = c * riesz_power(lambda, sd.dimension, k);
    } else {
        if (sd.dimension > 3)
            throw Error("spectral.Riesz", "osc polynomial tracks a_0, a_1 only (n <= 3)");
        main = 0.0;
        int jmax = (sd.dimension - 1) / 2;
        for (int j = 0; j <= jmax; ++j) {
            double aj = j == 0 ? sd.heatA0() : sd.heatA1();
            double c = pref * aj / std::tgamma(n / 2.0 - j + 1.0);
            main += c * riesz_power(lambda, sd.dimension - 2 * j, k);
        }
    }
    return riesz_counting(sd, lambda, k) - main;
}

double l1_average_remainder(const SpectrumData& sd, double lambda) {
    if (lambda > sd.coverage() + 1e-12)
        throw CoverageError("L1 average beyond spectrum coverage");
    double n = sd.dimension;
    double c = std::pow(4.0 * std::numbers::pi, -n / 2.0) * sd.volume /
               std::tgamma(n / 2.0 + 1.0);
    auto mainInt = [&](double t) { return c * std::pow(t, n + 1.0) / (n + 1.0); };

    // Piecewise exact: R(t) = N_piece - c t^n between jumps; the main term is
    // strictly increasing so each piece has at most one sign change.
    std::vector<double> cuts{0.0};
    for (std::size_t i = 0; i < sd.lambda.size(); ++i) {
        double r = std::sqrt(sd.lambda[i]);
        if (r > 0.0 && r < lambda) cuts.push_back(r);
        if (r >= lambda) break;
    }
    cuts.push_back(lambda);
    KahanSum acc;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        if (b - a < 1e-15) continue;
        double Np = static_cast<double>(sd.counting(0.5 * (a + b)));
        auto signedInt = [&](double x, double y) {
            return Np * (y - x) - (mainInt(y) - mainInt(x));
        };
        double Ra = Np - c * std::pow(a, n);
        double Rb = Np - c * std::pow(b, n);
        if (Ra >= 0.0 && Rb >= 0.0)
            acc.add(signedInt(a, b));
        else if (Ra <= 0.0 && Rb <= 0.0)
            acc.add(-signedInt(a, b));
        else {
            double cross = std::pow(Np / c, 1.0 / n);
            cross = std::clamp(cross, a, b);
            acc.add(std::fabs(signedInt(a, cross)) + std::fabs(signedInt(cross, b)));
        }
    }
    return acc.value() / lambda;
}

} // namespace weyllab

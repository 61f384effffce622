#include "weyllab/box_search.hpp"

#include "weyllab/errors.hpp"
#include "weyllab/numerics.hpp"
#include "weyllab/trace_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace weyllab {

ProofSchedule schedule_parameters(double T, double eps, double h, double pressureHalf) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error("box_search.Schedule", "need 0 < eps < 1");
    if (!(h > 0.0)) throw Error("box_search.Schedule", "need h > 0");
    ProofSchedule s;
    s.T = T;
    s.eps = eps;
    s.h = h;
    s.pressureHalf = pressureHalf;
    s.alphaBound = h * eps / (2.0 * (1.0 - eps));
    s.alpha = 0.45 * h * eps;
    if (!(s.alpha < s.alphaBound)) throw Error("box_search.Schedule", "alpha rule violated");
    if (T <= 0.0) {
        s.degenerate = true;
        s.M1 = std::exp(1.0);
    } else {
        s.M1 = std::exp(std::exp(s.alpha * T));
    }
    s.b = pressureHalf * (1.0 - eps) / h;
    // coefficient inequality of the contradiction step
    if (!(h + s.alpha < h * (1.0 - eps / 2.0) / (1.0 - eps)))
        throw Error("box_search.Schedule", "coefficient inequality violated");
    return s;
}

ResonanceProblem ResonanceProblem::from_lengths(std::vector<double> distinctLengths, double M1,
                                                double tolerance) {
    ResonanceProblem rp;
    rp.lengths = std::move(distinctLengths);
    std::sort(rp.lengths.begin(), rp.lengths.end());
    rp.M1 = M1;
    rp.tolerance = tolerance;
    rp.cap = M1 * std::ldexp(1.0, static_cast<int>(rp.lengths.size()));
    rp.validate();
    return rp;
}

void ResonanceProblem::validate() const {
    if (lengths.empty()) throw Error("box_search.Resonance", "need nu >= 1 lengths");
    if (lengths.size() > 26) throw Error("box_search.Resonance", "nu <= 26 (table budget)");
    for (std::size_t i = 0; i + 1 < lengths.size(); ++i)
        if (!(lengths[i] < lengths[i + 1] - 1e-9))
            throw Error("box_search.Resonance", "lengths must be distinct ascending");
    if (!(cap >= M1)) throw Error("box_search.Resonance", "cap must be >= M1");
    if (!(tolerance > 0.0)) throw Error("box_search.Resonance", "tolerance must be positive");
}

double max_phase_distance(double lambda, const std::vector<double>& lengths) {
    double worst = 0.0;
    for (double L : lengths)
        worst = std::max(worst, std::fabs(std::remainder(lambda * L, 2.0 * std::numbers::pi)));
    return worst;
}

ResonanceResult find_resonant_lambda(const ResonanceProblem& rp, const ResonanceOptions& opts) {
    rp.validate();
    const double Lmax = rp.lengths.back();
    // The phase of the largest length advances by delta0 * Lmax per sample;
    // half the tolerance guarantees no resonance window is stepped over.
    // (A step of pi/(2 Lmax) aliases the largest-length phase onto four
    // values and can miss every window.)
    const double delta0 = rp.tolerance / (2.0 * Lmax);
    long nSamples = static_cast<long>(std::floor((rp.cap - rp.M1) / delta0)) + 1;
    bool budgetHit = false;
    if (nSamples > opts.sampleBudget) {
        nSamples = opts.sampleBudget;
        budgetHit = true;
    }

    // Parallel over disjoint k-ranges; the lowest verified k wins, which makes
    // the result independent of the thread count.
    const std::size_t chunks = 64;
    std::vector<long> hits(chunks, -1);
    std::vector<double> best(chunks, std::numeric_limits<double>::infinity());
    const long per = (nSamples + static_cast<long>(chunks) - 1) / static_cast<long>(chunks);
    parallel_for_chunks(chunks, opts.threads, [&](std::size_t cb, std::size_t ce) {
        for (std::size_t ci = cb; ci < ce; ++ci) {
            long kLo = static_cast<long>(ci) * per;
            long kHi = std::min(nSamples, kLo + per);
            for (long k = kLo; k < kHi; ++k) {
                double lambda = rp.M1 + static_cast<double>(k) * delta0;
                double worst = 0.0;
                for (double L : rp.lengths) {
                    double ph = std::fabs(std::remainder(lambda * L, 2.0 * std::numbers::pi));
                    if (ph > worst) worst = ph;
                    if (worst > rp.tolerance) break;
                }
                best[ci] = std::min(best[ci], worst);
                if (worst <= rp.tolerance) {
                    hits[ci] = k;
                    break;
                }
            }
        }
    });
    long hit = -1;
    double bestSeen = std::numeric_limits<double>::infinity();
    for (std::size_t ci = 0; ci < chunks; ++ci) {
        bestSeen = std::min(bestSeen, best[ci]);
        if (hits[ci] >= 0 && (hit < 0 || hits[ci] < hit)) hit = hits[ci];
    }
    if (hit < 0)
        throw SearchExhaustedError(budgetHit ? "sample budget exhausted" : "cap reached",
                                   bestSeen);

    ResonanceResult res;
    res.lambda = rp.M1 + static_cast<double>(hit) * delta0;
    res.samplesTried = hit + 1;
    res.found = true;
    res.bestPhaseSeen = std::min(bestSeen, rp.tolerance);
    for (double L : rp.lengths)
        res.phases.push_back(std::fabs(std::remainder(res.lambda * L, 2.0 * std::numbers::pi)));
    // independent re-verification of the postcondition before returning
    res.maxPhase = max_phase_distance(res.lambda, rp.lengths);
    if (res.maxPhase > rp.tolerance + 1e-9)
        throw Error("box_search.Resonance", "postcondition verification failed");
    if (res.lambda < rp.M1 - 1e-9 || res.lambda > rp.cap + 1e-9)
        throw Error("box_search.Resonance", "lambda outside [M1, cap]");
    return res;
}

double min_chi_on_window(const LengthSpectrum& spec, const TimeCutoff& tc,
                         const SmoothingKernel& k, double T, double eps) {
    double hi = T * (1.0 - eps / 2.0);
    double minChi = std::numeric_limits<double>::infinity();
    for (const auto& e : spec.entries) {
        if (e.length <= tc.T0 || e.length > hi) continue;
        minChi = std::min(minChi, tc.chi(k, e.length, T));
    }
    return minChi;
}

double kernel_scale_for_window(const LengthSpectrum& spec, const TimeCutoff& tc,
                               const SmoothingKernel& k, double T, double eps) {
    double m = min_chi_on_window(spec, tc, k, T, eps);
    if (std::isinf(m)) throw WindowEmptyError("no lengths in (T0, T(1-eps/2)]");
    if (m <= 0.0) throw Error("box_search.Amplitude", "chi vanishes on the retained window");
    double target = 0.525;
    return m >= target ? 1.0 : target / m;
}

AmplitudeReport amplitude_check(const LengthSpectrum& spec, double lambda, double T, double eps,
                                const TimeCutoff& tc, const SmoothingKernel& k,
                                double pressureHalf) {
    AmplitudeReport rep;
    rep.lambda = lambda;
    rep.T = T;
    rep.eps = eps;
    rep.kernelScale = k.scale();

    const double hi = T * (1.0 - eps / 2.0);
    KahanSum rhs;
    int retained = 0;
    double minCos = std::numeric_limits<double>::infinity();
    for (const auto& e : spec.entries) {
        if (e.length > T) break;
        if (e.length <= tc.T0) continue;
        minCos = std::min(minCos, std::cos(
            std::fabs(std::remainder(lambda * e.length, 2.0 * std::numbers::pi))));
        if (e.length > hi) continue;
        if (std::isnan(e.detTerm))
            throw MissingDetTermError("entry at L=" + std::to_string(e.length));
        rhs.add(e.primitiveLength / std::sqrt(e.detTerm));
        ++retained;
    }
    if (retained == 0) throw WindowEmptyError("no lengths in (T0, T(1-eps/2)]");
    rep.retainedTerms = retained;
    rep.rhs = rhs.value() / (4.0 * T);
    rep.minChiOnWindow = min_chi_on_window(spec, tc, k, T, eps);
    rep.minCosOnLengths = minCos;
    rep.sigma = sigma_geometric(spec, tc, k, lambda, T);
    rep.pass = rep.sigma >= rep.rhs;
    rep.lnSigma = rep.sigma > 0.0 ? std::log(rep.sigma) : std::numeric_limits<double>::quiet_NaN();
    rep.fittedLine = pressureHalf * T * (1.0 - eps / 2.0) - std::log(T);
    rep.C3 = rep.lnSigma - rep.fittedLine;
    return rep;
}

} // namespace weyllab

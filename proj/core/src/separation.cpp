#include "weyllab/separation.hpp"

#include "weyllab/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace weyllab {

namespace {

struct CurveSamples {
    AxisCurve curve;
    std::vector<UnitTangent> pts;
    std::vector<double> params;

    CurveSamples(const MoebiusElement& g, double step) : curve(g) {
        double L = curve.period();
        int n = std::max(8, static_cast<int>(std::ceil(L / step)));
        pts.reserve(static_cast<std::size_t>(n));
        params.reserve(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            double s = L * static_cast<double>(k) / n;
            params.push_back(s);
            pts.push_back(curve.at(s));
        }
    }
};

double refine_pair(const CurveSamples& a, const CurveSamples& b, double s0, double t0,
                   double coarseStep, int iters) {
    // Local minimization of f(s,t) = sasaki(a(s), b(t))^2 by damped Newton with
    // finite differences, clamped to the coarse cell.
    auto f = [&](double s, double t) {
        double d = sasaki_distance(a.curve.at(s), b.curve.at(t));
        return d * d;
    };
    double s = s0, t = t0;
    double best = f(s, t);
    double h = 1e-4;
    for (int it = 0; it < iters; ++it) {
        double fs = (f(s + h, t) - f(s - h, t)) / (2 * h);
        double ft = (f(s, t + h) - f(s, t - h)) / (2 * h);
        double fss = (f(s + h, t) - 2 * best + f(s - h, t)) / (h * h);
        double ftt = (f(s, t + h) - 2 * best + f(s, t - h)) / (h * h);
        double fst = (f(s + h, t + h) - f(s + h, t - h) - f(s - h, t + h) + f(s - h, t - h)) /
                     (4 * h * h);
        double det = fss * ftt - fst * fst;
        double ds, dt;
        if (std::fabs(det) > 1e-14 && fss > 0 && ftt > 0) {
            ds = -(ftt * fs - fst * ft) / det;
            dt = -(fss * ft - fst * fs) / det;
        } else { // gradient step
            ds = -0.25 * fs;
            dt = -0.25 * ft;
        }
        double clamp = coarseStep;
        ds = std::clamp(ds, -clamp, clamp);
        dt = std::clamp(dt, -clamp, clamp);
        double fn = f(s + ds, t + dt);
        int bt = 0;
        while (fn > best && bt++ < 8) {
            ds *= 0.5;
            dt *= 0.5;
            fn = f(s + ds, t + dt);
        }
        if (fn >= best - 1e-18) break;
        s += ds;
        t += dt;
        best = fn;
    }
    return std::sqrt(std::max(0.0, best));
}

} // namespace

SeparationReport separation_report(const LengthSpectrum& spec, double T, double deltaPrime,
                                   double B, double injectivityRadius, double K1,
                                   const SeparationOptions& opts) {
    if (!(deltaPrime < injectivityRadius / 3.0))
        throw Error("flow_dynamics.Separation", "deltaPrime must be below inj/3");
    double T0 = std::log(2.0 / deltaPrime) / K1;
    if (!(T > T0))
        throw Error("flow_dynamics.Separation",
                    "T must exceed T0 = ln(2/deltaPrime)/K1 = " + std::to_string(T0));
    if (T > spec.cutoff + 1e-12)
        throw IncompleteSpectrumError("separation window exceeds spectrum cutoff");

    SeparationReport rep;
    rep.threshold = 2.0 * std::exp(-B * T);
    rep.windowLo = T - deltaPrime;
    rep.windowHi = T;

    std::vector<const LengthSpectrumEntry*> window;
    for (const auto& e : spec.entries)
        if (e.length >= rep.windowLo - 1e-12 && e.length <= rep.windowHi + 1e-12)
            window.push_back(&e);
    rep.geodesicsInWindow = static_cast<int>(window.size());
    if (window.size() < 2) {
        rep.emptyWindow = window.empty();
        rep.pass = true; // vacuous, minDistance stays +inf
        return rep;
    }

    std::vector<CurveSamples> curves;
    curves.reserve(window.size());
    for (const auto* e : window) curves.emplace_back(e->element, opts.coarseStep);

    struct Pair {
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < window.size(); ++i)
        for (std::size_t j = i + 1; j < window.size(); ++j) pairs.push_back({i, j});
    rep.pairCount = static_cast<long>(pairs.size());

    std::vector<double> mins(pairs.size(), std::numeric_limits<double>::infinity());
    parallel_for_chunks(pairs.size(), opts.threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t p = b; p < e; ++p) {
            const CurveSamples& A = curves[pairs[p].i];
            const CurveSamples& Bc = curves[pairs[p].j];
            double best = std::numeric_limits<double>::infinity();
            double bs = 0, bt = 0;
            for (std::size_t si = 0; si < A.pts.size(); ++si) {
                for (std::size_t tj = 0; tj < Bc.pts.size(); ++tj) {
                    double d = sasaki_distance(A.pts[si], Bc.pts[tj]);
                    if (d < best) {
                        best = d;
                        bs = A.params[si];
                        bt = Bc.params[tj];
                    }
                }
            }
            mins[p] = refine_pair(A, Bc, bs, bt, opts.coarseStep, opts.refineIterations);
        }
    });
    for (double d : mins) rep.minDistance = std::min(rep.minDistance, d);
    rep.pass = rep.minDistance > rep.threshold;
    return rep;
}

} // namespace weyllab

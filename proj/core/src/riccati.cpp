#include "weyllab/riccati.hpp"

#include "weyllab/numerics.hpp"

#include <cmath>

namespace weyllab {

PoincareData integrate_unstable(const ConformalMetric& m, const ClosedGeodesic& g,
                                const RiccatiOptions& opts) {
    const double L = g.length;
    const std::size_t n = g.samples.size();
    if (n < 4) throw Error("flow_dynamics.Riccati", "geodesic has too few samples");

    // Curvature along the curve, periodically interpolated. Arclength in the
    // active metric is uniform across samples by construction.
    std::vector<double> ts(n + 1), ks(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        ts[j] = L * static_cast<double>(j) / static_cast<double>(n);
        ks[j] = curvature_at(m, g.samples[j].base);
    }
    ts[n] = L;
    ks[n] = ks[0];
    CubicSpline K(ts, ks, CubicSpline::Boundary::Periodic);

    auto rhs = [&](double t, double u) {
        double tw = std::fmod(t, L);
        if (tw < 0.0) tw += L;
        return -u * u - K(tw);
    };

    const int steps = opts.stepsPerPeriod;
    const double h = L / steps;
    auto advance_period = [&](double u0) {
        double u = u0;
        for (int i = 0; i < steps; ++i) {
            double t = i * h;
            double k1 = rhs(t, u);
            double k2 = rhs(t + 0.5 * h, u + 0.5 * h * k1);
            double k3 = rhs(t + 0.5 * h, u + 0.5 * h * k2);
            double k4 = rhs(t + h, u + h * k3);
            u = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        return u;
    };

    double u = m.K2;
    int periods = 0;
    for (;;) {
        double next = advance_period(u);
        ++periods;
        if (std::fabs(next - u) < opts.periodTol) {
            u = next;
            break;
        }
        u = next;
        if (periods >= opts.maxRelaxationPeriods)
            throw RelaxationError("unstable Riccati solution did not become periodic");
    }

    // One more period with the integral accumulated by the same RK4 grid:
    // augment the state with y' = u.
    double logMu;
    {
        double uu = u;
        KahanSum y;
        for (int i = 0; i < steps; ++i) {
            double t = i * h;
            double k1u = rhs(t, uu);
            double k1y = uu;
            double u2 = uu + 0.5 * h * k1u;
            double k2u = rhs(t + 0.5 * h, u2);
            double k2y = u2;
            double u3 = uu + 0.5 * h * k2u;
            double k3u = rhs(t + 0.5 * h, u3);
            double k3y = u3;
            double u4 = uu + h * k3u;
            double k4u = rhs(t + h, u4);
            double k4y = u4;
            y.add(h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y));
            uu = uu + h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        }
        logMu = y.value();
    }

    PoincareData pd;
    pd.logMu = logMu;
    pd.mu = std::exp(logMu);
    pd.detTerm = pd.mu - 2.0 + 1.0 / pd.mu;
    pd.relaxationPeriods = periods;
    return pd;
}

void fill_poincare_data(LengthSpectrum& ls, const RiccatiOptions& opts, int threads,
                        int axisSamples) {
    ConformalMetric base = ConformalMetric::base();
    parallel_for_chunks(ls.entries.size(), threads, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            ClosedGeodesic axis = axis_geodesic(ls.entries[i].element, axisSamples);
            ls.entries[i].detTerm = integrate_unstable(base, axis, opts).detTerm;
        }
    });
}

} // namespace weyllab

#include "weyllab/kernel.hpp"

#include "weyllab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace weyllab {

namespace {

double ghat_raw(double s) {
    double q = 0.25 - s * s;
    if (q <= 0.0) return 0.0;
    return std::exp(-1.0 / q);
}

} // namespace

SmoothingKernel SmoothingKernel::build(int resolution, double tableRange) {
    if (resolution < 4096) throw Error("spectral.Kernel", "resolution >= 4096 required");

    auto tables = std::make_shared<Tables>();
    tables->tableRange = tableRange;

    // Normalize ghat so that rhoHat(0) = int ghat^2 = 1.
    {
        double s2 = 0.0;
        const int nq = resolution;
        double h = 1.0 / nq; // integrate over [-1/2, 1/2]
        for (int i = 0; i <= nq; ++i) {
            double s = -0.5 + i * h;
            double v = ghat_raw(s);
            s2 += (i == 0 || i == nq ? 0.5 : 1.0) * v * v;
        }
        s2 *= h;
        tables->ghatNorm = 1.0 / std::sqrt(s2);
    }
    const double c = tables->ghatNorm;

    // rhoHat(s) = int ghat(u) ghat(s-u) du on the support overlap.
    const int nh = resolution;
    std::vector<double> hs(nh + 1), hv(nh + 1);
    for (int i = 0; i <= nh; ++i) {
        double s = static_cast<double>(i) / nh;
        hs[i] = s;
        double lo = std::max(-0.5, s - 0.5);
        double hi = std::min(0.5, s + 0.5);
        double acc = 0.0;
        if (hi > lo) {
            const int m = 2048;
            double hq = (hi - lo) / m;
            for (int j = 0; j <= m; ++j) {
                double u = lo + j * hq;
                double v = ghat_raw(u) * ghat_raw(s - u);
                acc += (j == 0 || j == m ? 0.5 : 1.0) * v;
            }
            acc *= hq * c * c;
        }
        hv[i] = acc;
    }
    hv[nh] = 0.0;
    tables->rhoHat = CubicSpline(hs, hv, CubicSpline::Boundary::Clamped, 0.0, 0.0);

    // rho by the inverse transform: rho(x) = 2 int_0^1 rhoHat(s) cos(sx) ds.
    // rhoHat extends to an even C^inf function vanishing to all orders at
    // s = 1, so the trapezoid sum on the table grid is spectrally accurate.
    const double hx = 1.0 / 64.0;
    const int nx = static_cast<int>(std::lround(tableRange / hx));
    std::vector<double> xs(nx + 1), xv(nx + 1);
    const double hq = 1.0 / nh;
    parallel_for_chunks(static_cast<std::size_t>(nx) + 1, 2, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) {
            double x = static_cast<double>(i) * hx;
            // phasor recurrence for cos(s_k x)
            double cs = 1.0, sn = 0.0;
            double dc = std::cos(hq * x), dsn = std::sin(hq * x);
            double acc = 0.5 * hv[0];
            for (int k = 1; k <= nh; ++k) {
                double ncs = cs * dc - sn * dsn;
                sn = cs * dsn + sn * dc;
                cs = ncs;
                acc += (k == nh ? 0.5 : 1.0) * hv[static_cast<std::size_t>(k)] * cs;
            }
            xs[i] = x;
            xv[i] = 2.0 * hq * acc;
        }
    });
    tables->rho0 = xv[0];
    tables->rho = CubicSpline(xs, xv, CubicSpline::Boundary::Clamped, 0.0, 0.0);

    // Admissibility on the full table: rho is g^2, so anything below -1e-12
    // indicates a quadrature bug.
    for (double v : xv)
        if (v < -1e-12) throw Error("spectral.Kernel", "tabulated rho dips below -1e-12");
    if (std::fabs(xv.back()) > 1e-11)
        throw Error("spectral.Kernel", "rho table range too small for the Schwartz tail");

    SmoothingKernel k;
    k.t_ = tables;
    k.scale_ = 1.0;
    k.rho0_ = tables->rho0;
    k.tableRange_ = tableRange;
    return k;
}

double SmoothingKernel::ghat(double s) const {
    return t_->ghatNorm * ghat_raw(s) * std::sqrt(scale_);
}

double SmoothingKernel::rho_hat(double s) const {
    double a = std::fabs(s);
    if (a >= 1.0) return 0.0;
    // ghat * ghat is nonnegative; clamping removes spline undershoot in the
    // flat tail where the true values sit below the noise floor
    return scale_ * std::max(0.0, t_->rhoHat(a));
}

double SmoothingKernel::rho(double x) const {
    double a = std::fabs(x);
    if (a >= tableRange_) return 0.0;
    return scale_ * std::max(0.0, t_->rho(a));
}

SmoothingKernel SmoothingKernel::scaled(double s) const {
    if (!(s > 0.0)) throw Error("spectral.Kernel", "scale must be positive");
    SmoothingKernel k = *this;
    k.scale_ *= s;
    return k;
}

double window_H(const SmoothingKernel& k, double lambda, double T, double r) {
    return 0.5 * (k.rho(T * (lambda - r)) + k.rho(T * (lambda + r)));
}

TimeCutoff::TimeCutoff(double t0) : T0(t0) {
    if (!(t0 > 0.0)) throw Error("spectral.TimeCutoff", "T0 must be positive");
}

TimeCutoff TimeCutoff::from_geometry(double injectivityRadius, double K1) {
    double deltaPrime = injectivityRadius / 4.0;
    return TimeCutoff(std::log(2.0 / deltaPrime) / K1);
}

double TimeCutoff::psi(double t) const {
    double a = std::fabs(t);
    if (a <= T0) return 1.0;
    if (a >= 2.0 * T0) return 0.0;
    double x = (a - T0) / T0; // in (0,1)
    auto f = [](double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; };
    return f(1.0 - x) / (f(x) + f(1.0 - x));
}

double TimeCutoff::chi(const SmoothingKernel& k, double t, double T) const {
    return (1.0 - psi(t)) * k.rho_hat(t / T);
}

} // namespace weyllab

#include "weyllab/geodesics.hpp"

#include "weyllab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace weyllab {

AxisCurve::AxisCurve(const MoebiusElement& g) {
    length_ = translation_length(g);
    AxisEndpoints e = axis_endpoints(g);
    MoebiusElement toStd;
    if (e.vertical) {
        if (std::isinf(e.attracting)) {
            toStd = MoebiusElement{1.0, -e.x0, 0.0, 1.0}; // repelling -> 0, inf fixed
        } else {
            toStd = MoebiusElement{0.0, -1.0, 1.0, -e.x0}; // inf -> 0, x0 -> inf
        }
    } else {
        double r = e.repelling, a = e.attracting;
        toStd = MoebiusElement{1.0, -r, 1.0, -a};
        if (toStd.det() <= 0.0) toStd = MoebiusElement{-1.0, r, 1.0, -a};
        toStd = toStd.normalized();
    }
    fromStd_ = toStd.inverse();
    // Foot of the perpendicular from i: for the standard vertical axis the
    // perpendicular geodesics are semicircles around 0, so the foot of w is
    // at height |w|.
    PlanePoint w = apply_moebius(toStd, PlanePoint(0.0, 1.0));
    s0_ = 0.5 * std::log(w.x * w.x + w.y * w.y);
}

UnitTangent AxisCurve::at(double s) const {
    double y = std::exp(s0_ + s);
    UnitTangent up(PlanePoint(0.0, y), std::numbers::pi / 2.0);
    return apply_moebius(fromStd_, up);
}

ClosedGeodesic axis_geodesic(const MoebiusElement& g, int nSamples) {
    if (nSamples < 4) throw Error("flow_dynamics.Axis", "need at least 4 samples");
    AxisCurve curve(g);
    double L = curve.period();
    ClosedGeodesic out;
    out.length = L;
    out.classElement = g.normalized();
    out.samples.reserve(static_cast<std::size_t>(nSamples));
    double h = L / nSamples;
    for (int k = 0; k < nSamples; ++k) out.samples.push_back(curve.at(k * h));
    // Independent closure check: the class element must advance the curve by
    // exactly one period.
    double worst = 0.0;
    for (int k = 0; k < nSamples; k += std::max(1, nSamples / 8)) {
        UnitTangent mapped = apply_moebius(g, curve.at(k * h));
        worst = std::max(worst, sasaki_distance(mapped, curve.at(k * h + L)));
    }
    out.buildResidual = worst;
    return out;
}

namespace {

struct SegmentGrads {
    Vec2 atP; // d length / d p
    Vec2 atQ; // d length / d q
};

SegmentGrads segment_gradients(const ConformalMetric& m, const PlanePoint& p,
                               const PlanePoint& q) {
    double d = hyp_distance(p, q);
    double ep = std::exp(m.phi->value(p));
    double eq = std::exp(m.phi->value(q));
    double w = 0.5 * (ep + eq);
    Vec2 gq = hyp_distance_gradient(p, q); // gradient in q
    Vec2 gp = hyp_distance_gradient(q, p); // gradient in p
    Vec2 php = m.phi->gradient(p);
    Vec2 phq = m.phi->gradient(q);
    SegmentGrads s;
    s.atP = w * gp + (0.5 * d * ep) * php;
    s.atQ = w * gq + (0.5 * d * eq) * phq;
    return s;
}

struct Wrap {
    const MoebiusElement* g;
    const ConformalMetric* m;
    const std::vector<PlanePoint>* pts;

    PlanePoint point(std::size_t k) const {
        const std::size_t n = pts->size();
        if (k < n) return (*pts)[k];
        return apply_moebius(*g, (*pts)[k - n]);
    }
};

double segment_length(const ConformalMetric& m, const PlanePoint& p, const PlanePoint& q) {
    return hyp_distance(p, q) * 0.5 * (std::exp(m.phi->value(p)) + std::exp(m.phi->value(q)));
}

/// Stationarity residual at vertex k: gradient of total length when
/// energyWeighted is false, gradient of sum ell_k^2 when true. The energy
/// functional pins the parametrization (its minimizer has equal segment
/// lengths), which removes the tangential null space that makes the plain
/// length Hessian singular; at the energy minimizer the length gradient
/// vanishes as well.
Vec2 vertex_residual(const Wrap& w, std::size_t k, bool energyWeighted = false) {
    const std::size_t n = w.pts->size();
    PlanePoint prev = k > 0 ? (*w.pts)[k - 1] : PlanePoint(0.0, 1.0);
    PlanePoint cur = (*w.pts)[k];
    PlanePoint next = w.point(k + 1);
    double wIn = 1.0, wOut = 1.0;
    if (energyWeighted) {
        wOut = 2.0 * segment_length(*w.m, cur, next);
        if (k > 0)
            wIn = 2.0 * segment_length(*w.m, prev, cur);
        else
            wIn = 2.0 * segment_length(*w.m, (*w.pts)[n - 1], apply_moebius(*w.g, cur));
    }
    Vec2 a;
    if (k > 0) {
        a = wIn * segment_gradients(*w.m, prev, cur).atQ;
    } else {
        // Wrap segment (p_{n-1}, g p_0) moves with p_0 through the class map.
        PlanePoint gp0 = apply_moebius(*w.g, cur);
        Vec2 c = wIn * segment_gradients(*w.m, (*w.pts)[n - 1], gp0).atQ;
        auto J = moebius_jacobian(*w.g, cur);
        a.x = J[0][0] * c.x + J[1][0] * c.y;
        a.y = J[0][1] * c.x + J[1][1] * c.y;
    }
    Vec2 b = wOut * segment_gradients(*w.m, cur, next).atP;
    return a + b;
}

double total_energy(const ConformalMetric& m, const MoebiusElement& g,
                    const std::vector<PlanePoint>& pts) {
    KahanSum s;
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k < n; ++k) {
        PlanePoint a = pts[k];
        PlanePoint b = k + 1 < n ? pts[k + 1] : apply_moebius(g, pts[0]);
        double l = segment_length(m, a, b);
        s.add(l * l);
    }
    return s.value();
}

double total_length(const ConformalMetric& m, const MoebiusElement& g,
                    const std::vector<PlanePoint>& pts) {
    KahanSum s;
    const std::size_t n = pts.size();
    for (std::size_t k = 0; k < n; ++k) {
        PlanePoint a = pts[k];
        PlanePoint b = k + 1 < n ? pts[k + 1] : apply_moebius(g, pts[0]);
        double d = hyp_distance(a, b);
        s.add(d * 0.5 * (std::exp(m.phi->value(a)) + std::exp(m.phi->value(b))));
    }
    return s.value();
}

} // namespace

double discrete_length(const ConformalMetric& m, const ClosedGeodesic& g) {
    std::vector<PlanePoint> pts;
    pts.reserve(g.samples.size());
    for (const auto& u : g.samples) pts.push_back(u.base);
    return total_length(m, g.classElement, pts);
}

double geodesic_residual(const ConformalMetric& m, const ClosedGeodesic& g) {
    // Discrete geodesics are stationary points of the segment energy
    // sum ell_k^2; the residual is that stationarity gradient rescaled by
    // 2 * (mean segment length) so it carries the scale of a length gradient.
    std::vector<PlanePoint> pts;
    pts.reserve(g.samples.size());
    for (const auto& u : g.samples) pts.push_back(u.base);
    Wrap w{&g.classElement, &m, &pts};
    double worst = 0.0;
    for (std::size_t k = 0; k < pts.size(); ++k) {
        Vec2 r = vertex_residual(w, k, /*energyWeighted=*/true);
        worst = std::max(worst, std::max(std::fabs(r.x), std::fabs(r.y)));
    }
    double meanSeg = g.length / static_cast<double>(pts.size());
    return worst / (2.0 * meanSeg);
}

ClosedGeodesic refine_closed_geodesic(const ConformalMetric& m, const ClosedGeodesic& init,
                                      const RefineOptions& opts) {
    const MoebiusElement g = init.classElement;
    std::vector<PlanePoint> pts;
    {
        // resample to the requested density
        int n = std::max<int>(32, static_cast<int>(std::lround(
                                       opts.samplesPerUnitLength * init.length)));
        if (static_cast<int>(init.samples.size()) == n) {
            for (const auto& u : init.samples) pts.push_back(u.base);
        } else {
            AxisCurve curve(g);
            double h = curve.period() / n;
            for (int k = 0; k < n; ++k) pts.push_back(curve.at(k * h).base);
        }
    }
    const std::size_t n = pts.size();
    Wrap wrap{&g, &m, &pts};

    auto residual_norm = [&](std::vector<Vec2>& F) {
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            F[k] = vertex_residual(wrap, k, /*energyWeighted=*/true);
            worst = std::max(worst, std::max(std::fabs(F[k].x), std::fabs(F[k].y)));
        }
        return worst;
    };

    // Stationarity target for the optimizer's own gradient. The evaluation
    // noise floor of the energy gradient sits near 1e-11 at the default
    // sampling density, so 1e-9 is reachable with margin while the rescaled
    // geodesic-equation residual stays below 1e-8.
    const double energyTol = opts.gradTol;

    std::vector<Vec2> F(n);
    double norm = residual_norm(F);
    double curEnergy = total_energy(m, g, pts);
    int iter = 0;
    while (norm > energyTol) {
        if (++iter > opts.maxIterations)
            throw NoConvergenceError("flow_dynamics.NoConvergence",
                                     "curve refinement did not reach the gradient tolerance");
        // central-difference block-tridiagonal Jacobian; the near-flat
        // tangential modes need Hessian entries good to ~1e-9, which forward
        // differences cannot deliver
        std::vector<Block2> sub(n), diag(n), sup(n);
        for (std::size_t j = 0; j < n; ++j) {
            double hx = 3e-6 * std::max(1.0, std::fabs(pts[j].x) + pts[j].y);
            for (int comp = 0; comp < 2; ++comp) {
                PlanePoint saved = pts[j];
                double* coord = comp == 0 ? &pts[j].x : &pts[j].y;
                *coord = (comp == 0 ? saved.x : saved.y) + hx;
                Vec2 pPrev = vertex_residual(wrap, (j + n - 1) % n, true);
                Vec2 pSelf = vertex_residual(wrap, j, true);
                Vec2 pNext = vertex_residual(wrap, (j + 1) % n, true);
                *coord = (comp == 0 ? saved.x : saved.y) - hx;
                Vec2 mPrev = vertex_residual(wrap, (j + n - 1) % n, true);
                Vec2 mSelf = vertex_residual(wrap, j, true);
                Vec2 mNext = vertex_residual(wrap, (j + 1) % n, true);
                pts[j] = saved;
                double inv = 0.5 / hx;
                sup[(j + n - 1) % n].a[0][comp] = (pPrev.x - mPrev.x) * inv;
                sup[(j + n - 1) % n].a[1][comp] = (pPrev.y - mPrev.y) * inv;
                diag[j].a[0][comp] = (pSelf.x - mSelf.x) * inv;
                diag[j].a[1][comp] = (pSelf.y - mSelf.y) * inv;
                sub[(j + 1) % n].a[0][comp] = (pNext.x - mNext.x) * inv;
                sub[(j + 1) % n].a[1][comp] = (pNext.y - mNext.y) * inv;
            }
        }
        std::vector<Vec2> rhs(n);
        for (std::size_t k = 0; k < n; ++k) rhs[k] = Vec2{-F[k].x, -F[k].y};

        // The length functional has a tangential null space (reparametrization)
        // and its Hessian can be indefinite away from the minimizer, so the
        // Newton system is damped until the step is a descent direction for
        // the length itself, and the line search is Armijo on the length.
        double diagScale = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            diagScale += std::fabs(diag[k].a[0][0]) + std::fabs(diag[k].a[1][1]);
        diagScale = std::max(1e-12, diagScale / (2.0 * static_cast<double>(n)));

        bool accepted = false;
        double mu = 0.0;
        std::vector<PlanePoint> trial = pts;
        std::vector<Vec2> Ftrial(n);
        for (int attempt = 0; attempt < 10 && !accepted; ++attempt) {
            std::vector<Block2> dampedDiag = diag;
            if (mu > 0.0)
                for (std::size_t k = 0; k < n; ++k) {
                    dampedDiag[k].a[0][0] += mu;
                    dampedDiag[k].a[1][1] += mu;
                }
            std::vector<Vec2> step;
            bool usable = true;
            try {
                step = solve_cyclic_block_tridiagonal(sub, dampedDiag, sup, rhs);
            } catch (const std::exception&) {
                usable = false;
            }
            double slope = 0.0; // d^T grad L, must be negative
            if (usable) {
                for (std::size_t k = 0; k < n; ++k) slope += dot(step[k], F[k]);
                usable = slope < 0.0;
            }
            if (usable) {
                double alpha = 1.0;
                for (int bt = 0; bt < 20 && !accepted; ++bt) {
                    bool ok = true;
                    for (std::size_t k = 0; k < n; ++k) {
                        double ny = pts[k].y + alpha * step[k].y;
                        if (ny <= 1e-12) { ok = false; break; }
                        trial[k] = PlanePoint(pts[k].x + alpha * step[k].x, ny);
                    }
                    if (ok) {
                        std::swap(pts, trial);
                        double newEnergy = total_energy(m, g, pts);
                        if (newEnergy <= curEnergy + 1e-4 * alpha * slope) {
                            curEnergy = newEnergy;
                            norm = residual_norm(Ftrial);
                            F.swap(Ftrial);
                            accepted = true;
                            break;
                        }
                        std::swap(pts, trial); // revert
                    }
                    alpha *= 0.5;
                }
            }
            mu = mu == 0.0 ? 1e-4 * diagScale : mu * 25.0;
        }
        if (!accepted)
            throw NoConvergenceError("flow_dynamics.NoConvergence",
                                     "line search failed in curve refinement");
        if (std::getenv("WEYLLAB_DEBUG_REFINE"))
            std::fprintf(stderr, "refine iter %d: |F|=%.3e E=%.12f mu=%.2e\n", iter, norm,
                         curEnergy, mu);
    }

    ClosedGeodesic out;
    out.classElement = g;
    out.classWord = init.classWord;
    out.length = total_length(m, g, pts);
    out.buildResidual = norm / (2.0 * init.length / static_cast<double>(n));
    out.samples.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        PlanePoint next = wrap.point(k + 1);
        double ang = hyp_distance(pts[k], next) > 1e-14 ? geodesic_bearing(pts[k], next)
                                                        : 0.0;
        out.samples.emplace_back(pts[k], ang);
    }
    return out;
}

} // namespace weyllab

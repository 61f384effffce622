#include "test_helpers.hpp"
#include "weyllab/metric.hpp"

#include <doctest.h>

#include <cmath>

using namespace weyllab;
using namespace weyllab::testing;

TEST_SUITE_BEGIN("metric");

namespace {

/// Richardson-extrapolated 5-point finite-difference hyperbolic Laplacian
/// y^2 (f_xx + f_yy); the independent oracle for the analytic evaluators.
double fd_hyp_laplacian(const PhiField& phi, const PlanePoint& p, double h) {
    auto lap = [&](double hh) {
        double c = phi.value(p);
        double xp = phi.value(PlanePoint(p.x + hh, p.y));
        double xm = phi.value(PlanePoint(p.x - hh, p.y));
        double yp = phi.value(PlanePoint(p.x, p.y + hh));
        double ym = phi.value(PlanePoint(p.x, p.y - hh));
        return p.y * p.y * (xp + xm + yp + ym - 4.0 * c) / (hh * hh);
    };
    double e1 = lap(h), e2 = lap(h / 2.0);
    return (4.0 * e2 - e1) / 3.0;
}

std::vector<PlanePoint> orbit_centers(int depth) {
    const GeneratorSet& gs = bolza();
    double maxDisp = 0.0;
    for (const auto& g : gs.generators)
        maxDisp = std::max(maxDisp, hyp_distance(apply_moebius(g, PlanePoint(0, 1)),
                                                 PlanePoint(0, 1)));
    auto ball = orbit_ball(gs, depth * maxDisp + 1e-9);
    std::vector<PlanePoint> centers;
    for (const auto& e : ball)
        if (static_cast<int>(e.word.size()) <= depth)
            centers.push_back(apply_moebius(e.m, PlanePoint(0.0, 1.0)));
    return centers;
}

} // namespace

TEST_CASE("flat conformal factors") {
    ConformalMetric base = ConformalMetric::base();
    for (int t = 0; t < 1000; ++t) {
        PlanePoint p = random_point();
        CHECK(curvature_at(base, p) == -1.0);
    }
    ConformalMetric shifted{std::make_shared<ConstantPhi>(0.3), 2.0, 0.1};
    double expect = -std::exp(-0.6);
    for (int t = 0; t < 50; ++t)
        CHECK(curvature_at(shifted, random_point()) == doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("bump laplacian and gradient match finite differences") {
    BumpSeriesPhi phi({PlanePoint(0.2, 1.1)}, 1.0, 0.7);
    // probe points inside the support but away from its boundary
    std::vector<PlanePoint> probes{PlanePoint(0.2, 1.1), PlanePoint(0.4, 1.3),
                                   PlanePoint(0.0, 0.9), PlanePoint(0.5, 1.0),
                                   PlanePoint(0.1, 1.5)};
    for (const auto& p : probes) {
        double fd = fd_hyp_laplacian(phi, p, 2e-3);
        CHECK(phi.hyp_laplacian(p) == doctest::Approx(fd).epsilon(1e-6));
        double h = 1e-6;
        Vec2 g = phi.gradient(p);
        double gx = (phi.value(PlanePoint(p.x + h, p.y)) - phi.value(PlanePoint(p.x - h, p.y))) /
                    (2 * h);
        double gy = (phi.value(PlanePoint(p.x, p.y + h)) - phi.value(PlanePoint(p.x, p.y - h))) /
                    (2 * h);
        CHECK(g.x == doctest::Approx(gx).epsilon(1e-5));
        CHECK(g.y == doctest::Approx(gy).epsilon(1e-5));
    }
}

TEST_CASE("pinching certification of the orbit bump series") {
    auto centers = orbit_centers(4);
    CHECK(centers.size() > 50);
    auto phi = std::make_shared<BumpSeriesPhi>(centers, 1.0, 0.01);
    ConformalMetric m{phi, 0.0, 0.0};
    auto grid = metric_sample_grid(2.6, 64);
    PinchingBounds pb = pinching_bounds(m, grid);
    m.K1 = pb.K1emp;
    m.K2 = pb.K2emp;
    CHECK(pb.K2emp <= pb.K1emp);
    CHECK(pb.K2emp > 0.9);
    CHECK(pb.K1emp < 1.1);

    // a huge amplitude pushes the curvature past zero somewhere
    auto wild = std::make_shared<BumpSeriesPhi>(centers, 1.0, 10.0);
    ConformalMetric bad{wild, 0.0, 0.0};
    CHECK_THROWS_AS(pinching_bounds(bad, grid), NotNegativelyCurvedError);
}

TEST_CASE("group invariance of the truncated bump series") {
    auto centers = orbit_centers(4);
    BumpSeriesPhi phi(centers, 1.0, 0.01);
    const GeneratorSet& gs = bolza();
    auto grid = metric_sample_grid(2.0, 24);
    double worst = 0.0;
    for (const auto& p : grid) {
        double v = phi.value(p);
        for (const auto& g : gs.generators) {
            worst = std::max(worst, std::fabs(phi.value(apply_moebius(g, p)) - v));
            worst = std::max(worst,
                             std::fabs(phi.value(apply_moebius(g.inverse(), p)) - v));
        }
    }
    CHECK(worst < 1e-9);
}

TEST_SUITE_END();

#include "test_helpers.hpp"
#include "weyllab/kernel.hpp"

#include <doctest.h>

#include <cmath>

using namespace weyllab;
using namespace weyllab::testing;

TEST_SUITE_BEGIN("kernel");

TEST_CASE("support and admissibility") {
    const SmoothingKernel& k = shared_kernel();
    CHECK(k.rho_hat(1.5) == 0.0);
    CHECK(k.rho_hat(-1.5) == 0.0);
    CHECK(k.rho_hat(1.0 + 1e-12) == 0.0);
    CHECK(k.rho_hat(0.0) == doctest::Approx(1.0).epsilon(1e-10));
    for (double s = 0.0; s <= 1.0; s += 1e-3) {
        CHECK(k.rho_hat(s) >= 0.0);
        CHECK(k.rho_hat(-s) == k.rho_hat(s));
    }
    for (double x = 0.0; x < k.table_range(); x += 0.013) {
        CHECK(k.rho(x) >= -1e-12);
        CHECK(k.rho(-x) == k.rho(x));
    }
    CHECK(k.rho(k.table_range() + 5.0) == 0.0);
}

TEST_CASE("parseval cross check of the normalization") {
    const SmoothingKernel& k = shared_kernel();
    // (1/2pi) int rho = rhoHat(0)
    double mass = 2.0 * adaptive_simpson([&](double x) { return k.rho(x); }, 0.0,
                                         k.table_range(), 1e-10);
    CHECK(mass / (2.0 * std::numbers::pi) == doctest::Approx(k.rho_hat(0.0)).epsilon(1e-8));
}

TEST_CASE("rho agrees with a doubled-resolution rebuild") {
    const SmoothingKernel& k = shared_kernel();
    SmoothingKernel fine = SmoothingKernel::build(8192, 256.0);
    for (int t = 0; t < 20; ++t) {
        double x = urand(0.0, 60.0);
        CHECK(k.rho(x) == doctest::Approx(fine.rho(x)).epsilon(1e-8));
    }
}

TEST_CASE("rho equals g squared through an independent quadrature") {
    const SmoothingKernel& k = shared_kernel();
    for (double x : {0.0, 0.7, 2.3, 5.1, 11.0, 24.0}) {
        // g(x) = int ghat(s) e^{isx} ds = 2 int_0^{1/2} ghat cos(sx) ds
        double g = 2.0 * adaptive_simpson([&](double s) { return k.ghat(s) * std::cos(s * x); },
                                          0.0, 0.5, 1e-12);
        CHECK(k.rho(x) == doctest::Approx(g * g).epsilon(1e-8));
    }
}

TEST_CASE("window H evaluates both terms and integrates to the kernel mass") {
    const SmoothingKernel& k = shared_kernel();
    double lambda = 30.0, T = 5.0;
    CHECK(window_H(k, lambda, T, lambda) ==
          doctest::Approx(0.5 * k.rho0() + 0.5 * k.rho(2.0 * lambda * T)).epsilon(1e-14));
    CHECK(window_H(k, lambda, T, lambda) == doctest::Approx(0.5 * k.rho0()).epsilon(1e-10));

    // far beyond the table both terms vanish by the Schwartz tail
    CHECK(window_H(k, lambda, T, lambda + 2.0 * k.table_range() / T) == 0.0);

    // mass: sum over a fine r grid == (1/T) int_0^inf rho within 1e-6
    double step = 1e-3;
    KahanSum s;
    for (double r = 0.0; r <= lambda + k.table_range() / T; r += step)
        s.add(window_H(k, lambda, T, r));
    double lhs = s.value() * step;
    double rhs = adaptive_simpson([&](double x) { return k.rho(x); }, 0.0, k.table_range(),
                                  1e-11) / T;
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("time cutoff vanishes inside T0 and beyond T") {
    const SmoothingKernel& k = shared_kernel();
    TimeCutoff tc = TimeCutoff::from_geometry(3.0571418150697410 / 2.0);
    CHECK(tc.T0 == doctest::Approx(std::log(2.0 / (3.0571418150697410 / 8.0))).epsilon(1e-12));
    double T = 6.0;
    for (double t = 0.0; t <= tc.T0; t += 0.05) CHECK(tc.chi(k, t, T) == 0.0);
    for (double t = T; t < T + 3.0; t += 0.25) CHECK(tc.chi(k, t, T) == 0.0);
    for (double t = 0.0; t < T; t += 0.01) {
        double c = tc.chi(k, t, T);
        CHECK(c >= 0.0);
        CHECK(c <= k.rho_hat(0.0) + 1e-15);
        CHECK(tc.psi(t) >= 0.0);
        CHECK(tc.psi(t) <= 1.0);
    }
}

TEST_CASE("scaling preserves admissibility and scales the tables") {
    const SmoothingKernel& k = shared_kernel();
    SmoothingKernel s = k.scaled(37.5);
    CHECK(s.rho_hat(0.3) == doctest::Approx(37.5 * k.rho_hat(0.3)).epsilon(1e-14));
    CHECK(s.rho(4.2) == doctest::Approx(37.5 * k.rho(4.2)).epsilon(1e-14));
    CHECK(s.rho_hat(1.2) == 0.0);
    CHECK(s.rho0() == doctest::Approx(37.5 * k.rho0()).epsilon(1e-14));
    CHECK_THROWS_AS(k.scaled(-1.0), Error);
}

TEST_CASE("resolution precondition") {
    CHECK_THROWS_AS(SmoothingKernel::build(1024), Error);
}

TEST_SUITE_END();
